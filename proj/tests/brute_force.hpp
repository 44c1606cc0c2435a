#pragma once

// Test-only reference: enumerates every survival pattern of the n+1 grid
// points in long double. Shares no code with the library.

#include <cstdint>
#include <vector>

namespace spacings::testing {

struct BruteForce {
  // joint[d]: P(i-th gap = d and more than i survivors), d = 0..n
  std::vector<long double> joint;
  long double more_than_i = 0;  // P(|S'| > i)
  std::vector<long double> first_index;  // P(i-th survivor at index j), j = 0..n
};

inline BruteForce brute_force(int n, long double p, int i) {
  BruteForce out;
  out.joint.assign(static_cast<std::size_t>(n + 1), 0.0L);
  out.first_index.assign(static_cast<std::size_t>(n + 1), 0.0L);
  const int points = n + 1;
  for (std::uint32_t bits = 0; bits < (1u << points); ++bits) {
    long double w = 1.0L;
    std::vector<int> kept;
    for (int k = 0; k < points; ++k) {
      if (bits & (1u << k)) {
        w *= p;
        kept.push_back(k);
      } else {
        w *= 1.0L - p;
      }
    }
    if (static_cast<int>(kept.size()) >= i) out.first_index[static_cast<std::size_t>(kept[i - 1])] += w;
    if (static_cast<int>(kept.size()) > i) {
      out.more_than_i += w;
      out.joint[static_cast<std::size_t>(kept[i] - kept[i - 1])] += w;
    }
  }
  return out;
}

}  // namespace spacings::testing
