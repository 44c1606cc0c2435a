#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "log_prob.hpp"
#include "model.hpp"
#include "numeric.hpp"

/// Exact law of the i-th spacing of a Bernoulli-thinned uniform grid.
///
/// Notation: the grid {0, 1/n, ..., 1} is thinned with survival
/// probability p and conditioned on keeping more than i points. D is the
/// gap, in grid steps, between survivors i and i+1. All sums are carried in
/// the log domain so n in the millions is fine.
namespace spacings {

namespace detail {

inline void check_d(std::int64_t n, std::int64_t d) {
  if (d < 1 || d > n) throw DomainError("scaled spacing d must satisfy 1 <= d <= n");
}

// Running log-sums of survivor_index_pmf over j = 0..m, for m = 0..last.
inline std::vector<LogProb> survivor_prefix(std::int64_t i, double p, std::int64_t last) {
  std::vector<LogProb> out(static_cast<std::size_t>(std::max<std::int64_t>(last + 1, 0)));
  LogProb acc = LogProb::zero();
  const double log_p = std::log(p);
  for (std::int64_t j = 0; j <= last; ++j) {
    if (j >= i - 1) {
      acc += LogProb::from_log(log_p + numeric::log_binomial_pmf(i - 1, j, p));
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

// Gap factor p (1-p)^(d-1): d-1 losses then a survivor.
inline LogProb gap_factor(double p, std::int64_t d) {
  return LogProb::from_log(std::log(p) + numeric::log_pow_q(d - 1, p));
}

// Direct (linear) arithmetic is used for small grids whose smallest relevant
// quantities stay far from underflow; it reproduces exact binary values such
// as 3/4 bit for bit. Everything else stays in the log domain.
inline constexpr std::int64_t kDirectMaxN = 512;

inline bool use_direct(std::int64_t n, double p, std::int64_t i, LogProb tail) {
  return n <= kDirectMaxN && tail.log() > -600.0 && static_cast<double>(i) * std::log(p) > -600.0;
}

inline double choose_double(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::int64_t m = 1; m <= k; ++m) r = r * static_cast<double>(n - k + m) / static_cast<double>(m);
  return std::round(r) < 9007199254740992.0 ? std::round(r) : r;
}

// Linear-domain prefix sums of survivor_index_pmf over j = 0..m.
inline std::vector<double> direct_survivor_prefix(std::int64_t i, double p, std::int64_t last) {
  std::vector<double> out(static_cast<std::size_t>(std::max<std::int64_t>(last + 1, 0)), 0.0);
  const double q = 1.0 - p;
  const double head = std::pow(p, static_cast<double>(i));
  numeric::CompensatedSum acc;
  for (std::int64_t j = 0; j <= last; ++j) {
    if (j >= i - 1) acc.add(choose_double(j, i - 1) * head * std::pow(q, static_cast<double>(j - i + 1)));
    out[static_cast<std::size_t>(j)] = acc.value();
  }
  return out;
}

inline double direct_tail(std::int64_t n, double p, std::int64_t i) {
  const double q = 1.0 - p;
  numeric::CompensatedSum acc;
  for (std::int64_t k = i + 1; k <= n + 1; ++k) {
    acc.add(choose_double(n + 1, k) * std::pow(p, static_cast<double>(k)) * std::pow(q, static_cast<double>(n + 1 - k)));
  }
  return acc.value();
}

inline double direct_gap_factor(double p, std::int64_t d) { return p * std::pow(1.0 - p, static_cast<double>(d - 1)); }

}  // namespace detail

/// P(s'_i = j/n): the i-th survivor sits at grid index j.
/// Equals C(j, i-1) p^i (1-p)^(j-i+1) for j >= i-1 and zero below.
inline LogProb survivor_index_pmf(std::int64_t n, double p, std::int64_t i, std::int64_t j) {
  validate_probability(p);
  detail::require(n >= 1, "grid size n must be >= 1");
  detail::require(i >= 1, "survivor index i must be >= 1");
  detail::require(j >= 0 && j <= n, "grid index j must satisfy 0 <= j <= n");
  if (j < i - 1) return LogProb::zero();
  return LogProb::from_log(std::log(p) + numeric::log_binomial_pmf(i - 1, j, p));
}

/// Unconditional P(D = d), before conditioning on having i+1 survivors.
inline LogProb unconditional_spacing_prob(const ModelParams& params, std::int64_t d) {
  detail::check_d(params.n(), d);
  const std::int64_t last = params.n() - d;
  if (last < params.i() - 1) return LogProb::zero();
  const auto prefix = detail::survivor_prefix(params.i(), params.p(), last);
  return detail::gap_factor(params.p(), d) * prefix.back();
}

/// P(|S'| > i) for |S'| ~ Binomial(n+1, p).
///
/// The upper tail k = i+1..n+1 is summed directly, never as 1 - lower tail,
/// and stops once past the mode with terms 60 nats under the running max.
inline LogProb size_tail(std::int64_t n, double p, std::int64_t i) {
  detail::require(n >= 1, "grid size n must be >= 1");
  validate_probability(p);
  detail::require(i >= 0 && i <= n, "size threshold i must satisfy 0 <= i <= n");
  const std::int64_t trials = n + 1;
  const auto mode = static_cast<std::int64_t>(std::floor(static_cast<double>(trials + 1) * p));
  LogProb acc = LogProb::zero();
  double running_max = numeric::kNegInf;
  for (std::int64_t k = i + 1; k <= trials; ++k) {
    const double term = numeric::log_binomial_pmf(k, trials, p);
    acc += LogProb::from_log(term);
    running_max = std::max(running_max, term);
    if (k > mode && term < running_max - 60.0) break;
  }
  return acc;
}

/// log P(|S'| <= i), the lower binomial tail that vanishes as n grows.
inline LogProb binomial_cdf_tail_check(std::int64_t n, double p, std::int64_t i) {
  detail::require(n >= 1, "grid size n must be >= 1");
  validate_probability(p);
  detail::require(i >= 0 && i <= n, "size threshold i must satisfy 0 <= i <= n");
  LogProb acc = LogProb::zero();
  for (std::int64_t k = 0; k <= i; ++k) {
    acc += LogProb::from_log(numeric::log_binomial_pmf(k, n + 1, p));
  }
  return acc;
}

inline LogProb conditioning_mass(const ModelParams& params) {
  const LogProb tail = size_tail(params.n(), params.p(), params.i());
  if (tail.is_zero()) throw ConditioningError("P(|S'| > i) underflows to zero");
  return tail;
}

/// Conditional mass P(D = d | more than i survivors).
inline double pmf_scaled(const ModelParams& params, std::int64_t d) {
  const LogProb tail = conditioning_mass(params);
  if (detail::use_direct(params.n(), params.p(), params.i(), tail)) {
    detail::check_d(params.n(), d);
    const std::int64_t last = params.n() - d;
    if (last < params.i() - 1) return 0.0;
    const auto prefix = detail::direct_survivor_prefix(params.i(), params.p(), last);
    return detail::direct_gap_factor(params.p(), d) * prefix.back() /
           detail::direct_tail(params.n(), params.p(), params.i());
  }
  return (unconditional_spacing_prob(params, d) / tail).prob();
}

/// Same mass indexed by the unscaled gap delta = d/n; n*delta must be an integer.
inline double pmf_delta(const ModelParams& params, double delta) {
  const double scaled = delta * static_cast<double>(params.n());
  const double d = std::round(scaled);
  if (std::abs(scaled - d) > 1e-9 * std::max(1.0, scaled)) {
    throw DomainError("delta * n is not an integer");
  }
  return pmf_scaled(params, static_cast<std::int64_t>(d));
}

/// Whole pmf/cdf table for d = 1..n in O(n).
inline DistributionTable pmf_table(const ModelParams& params) {
  const std::int64_t n = params.n();
  const double p = params.p();
  const LogProb tail = conditioning_mass(params);
  std::vector<double> masses(static_cast<std::size_t>(n), 0.0);
  std::vector<double> cdf(static_cast<std::size_t>(n), 0.0);
  if (detail::use_direct(n, p, params.i(), tail)) {
    const auto prefix = detail::direct_survivor_prefix(params.i(), p, n - 1);
    const double direct_tail = detail::direct_tail(n, p, params.i());
    for (std::int64_t d = 1; d <= n; ++d) {
      masses[static_cast<std::size_t>(d - 1)] =
          detail::direct_gap_factor(p, d) * prefix[static_cast<std::size_t>(n - d)] / direct_tail;
    }
  } else {
    const auto prefix = detail::survivor_prefix(params.i(), p, n - 1);
    for (std::int64_t d = 1; d <= n; ++d) {
      const LogProb mass = detail::gap_factor(p, d) * prefix[static_cast<std::size_t>(n - d)] / tail;
      masses[static_cast<std::size_t>(d - 1)] = mass.prob();
    }
  }
  numeric::CompensatedSum running;
  for (std::int64_t d = 1; d <= n; ++d) {
    running.add(masses[static_cast<std::size_t>(d - 1)]);
    cdf[static_cast<std::size_t>(d - 1)] = running.value();
  }
  return DistributionTable(params, std::move(masses), std::move(cdf));
}

/// F(d) = sum of pmf_scaled over h = 1..d.
inline double cdf_scaled(const ModelParams& params, std::int64_t d) {
  detail::check_d(params.n(), d);
  return pmf_table(params).cdf(d);
}

/// Closed form of the i = 1 cdf:
///   [1 - q^d - d p q^n] / [1 - q^(n+1) - (n+1) p q^n],  q = 1 - p.
inline double cdf_scaled_closed_i1(std::int64_t n, double p, std::int64_t d) {
  detail::require(n >= 1, "grid size n must be >= 1");
  validate_probability(p);
  detail::check_d(n, d);
  if (p == 1.0) return 1.0;
  const double lq = std::log1p(-p);
  const double qn = std::exp(static_cast<double>(n) * lq);
  const double num = -std::expm1(static_cast<double>(d) * lq) - static_cast<double>(d) * p * qn;
  const double den =
      -std::expm1(static_cast<double>(n + 1) * lq) - static_cast<double>(n + 1) * p * qn;
  return num / den;
}

/// Geometric(p) limit law on {1, 2, ...}.
inline double limit_cdf(double p, std::int64_t d) {
  validate_probability(p);
  detail::require(d >= 1, "d must be >= 1");
  if (p == 1.0) return 1.0;
  return -std::expm1(static_cast<double>(d) * std::log1p(-p));
}

inline double limit_pmf(double p, std::int64_t d) {
  validate_probability(p);
  detail::require(d >= 1, "d must be >= 1");
  return p * std::exp(numeric::log_pow_q(d - 1, p));
}

struct BinomialSum {
  double partial;  // sum_{j=0}^{J} C(j, i-1) (1-p)^j
  double closed;   // (1-p)^(i-1) / p^i
};

/// Partial sum of the series whose total is (1-p)^(i-1) / p^i.
inline BinomialSum binomial_sum_partial(double p, std::int64_t i, std::int64_t upto) {
  validate_probability(p);
  detail::require(i >= 1, "i must be >= 1");
  detail::require(upto >= 0, "J must be >= 0");
  numeric::CompensatedSum acc;
  for (std::int64_t j = i - 1; j <= upto; ++j) {
    const double lt = numeric::log_choose(j, i - 1) + numeric::log_pow_q(j, p);
    if (lt != numeric::kNegInf) acc.add(std::exp(lt));
  }
  const double closed = std::exp(numeric::log_pow_q(i - 1, p) - static_cast<double>(i) * std::log(p));
  return {acc.value(), closed};
}

/// Index past which the remaining series terms are negligible:
/// i + ceil(60 / -log(1-p)).
inline std::int64_t binomial_sum_stopping_index(double p, std::int64_t i) {
  validate_probability(p);
  if (p == 1.0) return i;
  return i + static_cast<std::int64_t>(std::ceil(60.0 / -std::log1p(-p)));
}

}  // namespace spacings
