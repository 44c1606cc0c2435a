#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "core_dist.hpp"
#include "errors.hpp"
#include "sampler.hpp"

// KS distances here are discrete: the sup of |F_a - F_b| over atoms, with
// right-continuous CDFs and no continuity correction.
namespace spacings::diagnostics {

struct DistanceReport {
  double ks = 0.0;
  double tv = 0.0;
  std::uint64_t n_effective = 0;  // 0 for exact-vs-exact comparisons
};

/// Empirical law of D against Geometric(p).
inline DistanceReport ks_to_geometric(const EmpiricalDistribution& emp, double p) {
  validate_probability(p);
  if (emp.total == 0) throw SampleSizeError("empirical distribution is empty");
  DistanceReport r;
  r.n_effective = emp.total;
  const auto total = static_cast<double>(emp.total);
  std::uint64_t running = 0;
  numeric::CompensatedSum l1;
  // Observed values below 1 (impossible for a spacing) count fully toward TV.
  for (const auto& [d, c] : emp.counts) {
    if (d < 1) {
      running += c;
      l1.add(static_cast<double>(c) / total);
    }
  }
  const std::int64_t top = emp.max_value();
  for (std::int64_t d = 1; d <= top; ++d) {
    const double m = emp.mass(d);
    if (const auto it = emp.counts.find(d); it != emp.counts.end()) running += it->second;
    const double f_emp = static_cast<double>(running) / total;
    r.ks = std::max(r.ks, std::abs(f_emp - limit_cdf(p, d)));
    l1.add(std::abs(m - limit_pmf(p, d)));
  }
  // Geometric mass above the largest observation.
  l1.add(top >= 1 ? std::exp(numeric::log_pow_q(top, p)) : 1.0);
  r.tv = std::min(1.0, 0.5 * l1.value());
  return r;
}

/// Two pmfs on the common support 1..size (missing tail entries read as 0).
inline DistanceReport compare_pmfs(std::span<const double> a, std::span<const double> b) {
  DistanceReport r;
  const std::size_t len = std::max(a.size(), b.size());
  numeric::CompensatedSum fa;
  numeric::CompensatedSum fb;
  numeric::CompensatedSum l1;
  for (std::size_t k = 0; k < len; ++k) {
    const double ma = k < a.size() ? a[k] : 0.0;
    const double mb = k < b.size() ? b[k] : 0.0;
    fa.add(ma);
    fb.add(mb);
    r.ks = std::max(r.ks, std::abs(fa.value() - fb.value()));
    l1.add(std::abs(ma - mb));
  }
  r.tv = std::min(1.0, 0.5 * l1.value());
  return r;
}

inline std::vector<double> empirical_masses(const EmpiricalDistribution& emp, std::int64_t upto) {
  std::vector<double> out(static_cast<std::size_t>(std::max<std::int64_t>(upto, 0)), 0.0);
  for (std::int64_t d = 1; d <= upto; ++d) out[static_cast<std::size_t>(d - 1)] = emp.mass(d);
  return out;
}

/// Two-sample comparison of empirical laws on {1, 2, ...}.
inline DistanceReport compare_empirical(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  if (a.total == 0 || b.total == 0) throw SampleSizeError("empirical distribution is empty");
  const std::int64_t top = std::max(a.max_value(), b.max_value());
  auto r = compare_pmfs(empirical_masses(a, top), empirical_masses(b, top));
  r.n_effective = std::min(a.total, b.total);
  return r;
}

enum class SweepMethod { kSummed, kClosedForm };

struct SweepRow {
  std::int64_t n;
  double sup_distance;
};

/// Exact sup_{d <= d_max} |F_n(d) - (1 - (1-p)^d)| for each n, ordered by n.
inline std::vector<SweepRow> convergence_sweep(double p, std::int64_t i, std::vector<std::int64_t> n_list,
                                               std::int64_t d_max, SweepMethod method = SweepMethod::kSummed) {
  validate_probability(p);
  if (n_list.empty()) throw DomainError("n-list must not be empty");
  if (d_max < 1) throw DomainError("d-max must be >= 1");
  std::sort(n_list.begin(), n_list.end());
  if (n_list.front() < i) throw DomainError("every n in n-list must be >= i");
  if (d_max > n_list.front()) throw DomainError("d-max must not exceed the smallest n");
  if (method == SweepMethod::kClosedForm && i != 1) {
    throw DomainError("closed-form sweep is only available for i = 1");
  }

  std::vector<SweepRow> rows;
  rows.reserve(n_list.size());
  for (const auto n : n_list) {
    double sup = 0.0;
    if (method == SweepMethod::kClosedForm) {
      for (std::int64_t d = 1; d <= d_max; ++d) {
        sup = std::max(sup, std::abs(cdf_scaled_closed_i1(n, p, d) - limit_cdf(p, d)));
      }
    } else {
      const auto table = pmf_table(ModelParams(n, p, i));
      for (std::int64_t d = 1; d <= d_max; ++d) {
        sup = std::max(sup, std::abs(table.cdf(d) - limit_cdf(p, d)));
      }
    }
    rows.push_back({n, sup});
  }
  return rows;
}

inline constexpr std::size_t kMinExponentialSample = 100;

/// Divides spacings by their mean and measures the KS distance to the unit
/// exponential CDF 1 - e^{-x}, over the observed atoms.
inline DistanceReport scaled_mean_exponential_check(std::span<const double> spacings) {
  if (spacings.size() < kMinExponentialSample) {
    throw SampleSizeError("exponential check needs at least 100 spacings");
  }
  const double mean = numeric::compensated_sum(spacings) / static_cast<double>(spacings.size());
  if (!(mean > 0.0)) throw DomainError("spacings must have a positive mean");
  std::vector<double> scaled(spacings.begin(), spacings.end());
  for (auto& x : scaled) x /= mean;
  std::sort(scaled.begin(), scaled.end());

  DistanceReport r;
  r.n_effective = scaled.size();
  const auto total = static_cast<double>(scaled.size());
  for (std::size_t k = 0; k < scaled.size(); ++k) {
    // Only the last of a run of ties carries the right-continuous value.
    if (k + 1 < scaled.size() && scaled[k + 1] == scaled[k]) continue;
    const double f_emp = static_cast<double>(k + 1) / total;
    r.ks = std::max(r.ks, std::abs(f_emp + std::expm1(-scaled[k])));
  }
  return r;
}

}  // namespace spacings::diagnostics
