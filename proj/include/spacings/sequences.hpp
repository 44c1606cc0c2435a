#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace spacings {

struct GridSpec {
  std::int64_t n;
};
struct FareySpec {
  std::int64_t order;
};
struct RotationSpec {
  double alpha;
  std::int64_t count;
};

using SequenceDescriptor = std::variant<GridSpec, FareySpec, RotationSpec>;

inline std::string describe(const SequenceDescriptor& desc) {
  struct Visitor {
    std::string operator()(const GridSpec& g) const { return "grid(" + std::to_string(g.n) + ")"; }
    std::string operator()(const FareySpec& f) const { return "farey(" + std::to_string(f.order) + ")"; }
    std::string operator()(const RotationSpec& r) const {
      char buf[64];
      std::snprintf(buf, sizeof buf, "rotation(%.17g,%lld)", r.alpha, static_cast<long long>(r.count));
      return buf;
    }
  };
  return std::visit(Visitor{}, desc);
}

/// Strictly increasing points in [0, 1] together with how they were made.
struct PointSet {
  SequenceDescriptor descriptor;
  std::vector<double> points;

  std::size_t size() const { return points.size(); }
};

struct Fraction {
  std::int64_t num;
  std::int64_t den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

inline PointSet grid(std::int64_t n) {
  if (n < 1) throw DomainError("grid size n must be >= 1");
  PointSet out{GridSpec{n}, std::vector<double>(static_cast<std::size_t>(n + 1))};
  for (std::int64_t k = 0; k <= n; ++k) {
    out.points[static_cast<std::size_t>(k)] = static_cast<double>(k) / static_cast<double>(n);
  }
  return out;
}

/// Farey sequence of order Q as exact fractions, via the next-term
/// recurrence: after a/b, c/d comes (k c - a)/(k d - b), k = (Q + b) / d.
inline std::vector<Fraction> farey_fractions(std::int64_t order) {
  if (order < 1) throw DomainError("Farey order Q must be >= 1");
  std::vector<Fraction> out;
  Fraction prev{0, 1};
  Fraction cur{1, order};
  out.push_back(prev);
  while (cur.num <= cur.den) {
    out.push_back(cur);
    if (cur.num == cur.den) break;
    const std::int64_t k = (order + prev.den) / cur.den;
    const Fraction next{k * cur.num - prev.num, k * cur.den - prev.den};
    prev = cur;
    cur = next;
  }
  return out;
}

inline PointSet farey(std::int64_t order) {
  const auto fractions = farey_fractions(order);
  PointSet out{FareySpec{order}, {}};
  out.points.reserve(fractions.size());
  for (const auto& f : fractions) out.points.push_back(f.value());
  return out;
}

/// Sorted distinct values of k*alpha mod 1 for k = 1..count.
///
/// Values within 1e-12 of each other (or of 1, which wraps to 0) are merged
/// so that rational alpha, which cycles, does not produce near-duplicates
/// from rounding.
inline PointSet rotation(double alpha, std::int64_t count) {
  if (count < 1) throw DomainError("rotation count must be >= 1");
  if (!std::isfinite(alpha)) throw DomainError("rotation alpha must be finite");
  constexpr double kMergeTol = 1e-12;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count));
  for (std::int64_t k = 1; k <= count; ++k) {
    double x = std::fmod(static_cast<double>(k) * alpha, 1.0);
    if (x < 0.0) x += 1.0;
    if (x >= 1.0 - kMergeTol) x = 0.0;
    values.push_back(x);
  }
  std::sort(values.begin(), values.end());
  std::vector<double> unique;
  unique.reserve(values.size());
  for (double v : values) {
    if (unique.empty() || v - unique.back() > kMergeTol) unique.push_back(v);
  }
  return PointSet{RotationSpec{alpha, count}, std::move(unique)};
}

}  // namespace spacings
