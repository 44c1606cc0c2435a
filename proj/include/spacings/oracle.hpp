#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

/// Exact ground truth for small grids.
///
/// enumerate_conditional_pmf walks every survival pattern of the n+1 grid
/// points; exact_closed_form_pmf evaluates the closed-form pmf in rationals.
/// The two share nothing but the Rational type, so agreement is a genuine
/// cross-check.
namespace spacings::oracle {

inline constexpr std::int64_t kMaxEnumerationN = 16;

struct ExactTable {
  std::int64_t n;
  Rational p;
  std::int64_t i;
  std::vector<Rational> masses;  // masses[d - 1] for d = 1..n

  const Rational& mass(std::int64_t d) const { return masses.at(static_cast<std::size_t>(d - 1)); }

  Rational total() const {
    Rational s = 0;
    for (const auto& m : masses) s += m;
    return s;
  }

  friend bool operator==(const ExactTable&, const ExactTable&) = default;
};

namespace detail {

inline void validate(std::int64_t n, const Rational& p, std::int64_t i) {
  if (n < 1) throw DomainError("grid size n must be >= 1");
  if (n > kMaxEnumerationN) throw SizeError("oracle enumeration is limited to n <= 16");
  if (!(p > 0 && p <= 1)) throw DomainError("survival probability p must lie in (0, 1]");
  if (i < 1 || i > n) throw DomainError("spacing index i must satisfy 1 <= i <= n");
}

}  // namespace detail

/// Conditional law of D computed from its definition: sum pattern
/// probabilities by observed gap, then divide by P(more than i survivors).
inline ExactTable enumerate_conditional_pmf(std::int64_t n, const Rational& p, std::int64_t i) {
  detail::validate(n, p, i);
  const std::int64_t points = n + 1;
  const Rational q = 1 - p;

  // counts[d][k]: patterns with gap d and k survivors. Weights are applied
  // once per (d, k) instead of once per pattern.
  std::vector<std::vector<std::uint64_t>> counts(
      static_cast<std::size_t>(n + 1), std::vector<std::uint64_t>(static_cast<std::size_t>(points + 1), 0));
  const std::uint64_t patterns = std::uint64_t{1} << points;
  for (std::uint64_t bits = 0; bits < patterns; ++bits) {
    const int k = std::popcount(bits);
    if (k <= i) continue;
    std::uint64_t rest = bits;
    for (std::int64_t skip = 1; skip < i; ++skip) rest &= rest - 1;
    const int lo = std::countr_zero(rest);
    rest &= rest - 1;
    const int hi = std::countr_zero(rest);
    ++counts[static_cast<std::size_t>(hi - lo)][static_cast<std::size_t>(k)];
  }

  std::vector<Rational> weight(static_cast<std::size_t>(points + 1));
  for (std::int64_t k = 0; k <= points; ++k) {
    weight[static_cast<std::size_t>(k)] = rational_pow(p, k) * rational_pow(q, points - k);
  }

  ExactTable table{n, p, i, std::vector<Rational>(static_cast<std::size_t>(n), Rational(0))};
  Rational conditioning = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    Rational mass = 0;
    for (std::int64_t k = i + 1; k <= points; ++k) {
      const auto c = counts[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)];
      if (c != 0) mass += Rational(c) * weight[static_cast<std::size_t>(k)];
    }
    table.masses[static_cast<std::size_t>(d - 1)] = mass;
    conditioning += mass;
  }
  if (conditioning == 0) throw ConditioningError("P(|S'| > i) is zero");
  for (auto& m : table.masses) m /= conditioning;
  return table;
}

/// Closed-form pmf
///   p^(i+1) q^(d-1) sum_{j=i-1}^{n-d} C(j, i-1) q^(j-i+1)
///   / (1 - sum_{k=0}^{i} C(n+1, k) p^k q^(n+1-k))
/// in exact arithmetic.
inline ExactTable exact_closed_form_pmf(std::int64_t n, const Rational& p, std::int64_t i) {
  detail::validate(n, p, i);
  const Rational q = 1 - p;

  Rational lower = 0;
  for (std::int64_t k = 0; k <= i; ++k) {
    lower += Rational(exact_choose(n + 1, k)) * rational_pow(p, k) * rational_pow(q, n + 1 - k);
  }
  const Rational denominator = 1 - lower;
  if (denominator == 0) throw ConditioningError("P(|S'| > i) is zero");

  ExactTable table{n, p, i, std::vector<Rational>(static_cast<std::size_t>(n), Rational(0))};
  const Rational head = rational_pow(p, i + 1);
  for (std::int64_t d = 1; d <= n; ++d) {
    Rational inner = 0;
    for (std::int64_t j = i - 1; j <= n - d; ++j) {
      inner += Rational(exact_choose(j, i - 1)) * rational_pow(q, j - i + 1);
    }
    table.masses[static_cast<std::size_t>(d - 1)] = head * rational_pow(q, d - 1) * inner / denominator;
  }
  return table;
}

}  // namespace spacings::oracle
