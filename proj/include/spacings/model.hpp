#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace spacings {

inline void validate_probability(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError("survival probability p must lie in (0, 1], got " + std::to_string(p));
  }
}

/// Grid size n (the grid has n+1 points), survival probability p, and the
/// index i of the spacing under study.
class ModelParams {
 public:
  ModelParams(std::int64_t n, double p, std::int64_t i) : n_(n), p_(p), i_(i) {
    if (n < 1) throw DomainError("grid size n must be >= 1");
    validate_probability(p);
    if (i < 1 || i > n) throw DomainError("spacing index i must satisfy 1 <= i <= n");
  }

  std::int64_t n() const { return n_; }
  double p() const { return p_; }
  std::int64_t i() const { return i_; }

  // Largest scaled spacing with nonzero mass; i survivors must fit before it.
  std::int64_t max_support() const { return n_ - i_ + 1; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  std::int64_t n_;
  double p_;
  std::int64_t i_;
};

/// Conditional law of the scaled spacing over d = 1..n.
class DistributionTable {
 public:
  DistributionTable(ModelParams params, std::vector<double> masses, std::vector<double> cdf)
      : params_(params), masses_(std::move(masses)), cdf_(std::move(cdf)) {}

  const ModelParams& params() const { return params_; }
  std::int64_t size() const { return static_cast<std::int64_t>(masses_.size()); }

  double mass(std::int64_t d) const {
    check(d);
    return masses_[static_cast<std::size_t>(d - 1)];
  }
  double cdf(std::int64_t d) const {
    check(d);
    return cdf_[static_cast<std::size_t>(d - 1)];
  }

  const std::vector<double>& masses() const { return masses_; }
  const std::vector<double>& cdf_values() const { return cdf_; }

 private:
  void check(std::int64_t d) const {
    if (d < 1 || d > size()) throw DomainError("scaled spacing d out of range 1..n");
  }

  ModelParams params_;
  std::vector<double> masses_;
  std::vector<double> cdf_;
};

}  // namespace spacings
