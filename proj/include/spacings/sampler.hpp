#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "model.hpp"
#include "sequences.hpp"

namespace spacings {

struct RngSeed {
  std::uint64_t value = 0;
  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Sub-seed for block b of a parallel run. Depends only on (seed, b).
inline RngSeed derive_seed(RngSeed seed, std::uint64_t block) {
  return RngSeed{splitmix64(splitmix64(seed.value) ^ splitmix64(block + 0x632be59bd9b4e019ULL))};
}

/// 64-bit Mersenne Twister seeded through splitmix64. Uniforms are built
/// from the top 53 bits, so streams do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(splitmix64(seed.value)) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on (0, 1].
  double uniform_positive() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Trials up to and including the first success.
  std::int64_t geometric(double p) {
    if (p == 1.0) return 1;
    return 1 + static_cast<std::int64_t>(std::floor(std::log(uniform_positive()) / std::log1p(-p)));
  }

 private:
  std::mt19937_64 engine_;
};

/// One Bernoulli thinning of a point set.
struct SampleRun {
  SequenceDescriptor descriptor;
  double p = 1.0;
  RngSeed seed;
  std::vector<std::size_t> survivors;  // increasing indices into the point set
  std::vector<double> spacings;        // gaps between consecutive survivors

  static SampleRun from_survivors(const PointSet& points, std::vector<std::size_t> survivors, double p,
                                  RngSeed seed) {
    SampleRun run{points.descriptor, p, seed, std::move(survivors), {}};
    if (run.survivors.size() > 1) {
      run.spacings.reserve(run.survivors.size() - 1);
      for (std::size_t k = 1; k < run.survivors.size(); ++k) {
        run.spacings.push_back(points.points.at(run.survivors[k]) - points.points.at(run.survivors[k - 1]));
      }
    }
    return run;
  }
};

inline SampleRun sample_subset(const PointSet& points, double p, RngSeed seed) {
  validate_probability(p);
  Rng rng(seed);
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (rng.bernoulli(p)) kept.push_back(k);
  }
  return SampleRun::from_survivors(points, std::move(kept), p, seed);
}

/// Raw gap between survivors i and i+1 (1-based); empty with i or fewer survivors.
inline std::optional<double> ith_spacing(const SampleRun& run, std::int64_t i) {
  if (i < 1 || static_cast<std::size_t>(i) > run.spacings.size()) return std::nullopt;
  return run.spacings[static_cast<std::size_t>(i - 1)];
}

/// n times the i-th gap, rounded to whole grid steps.
inline std::optional<std::int64_t> ith_scaled_spacing(const SampleRun& run, std::int64_t i, std::int64_t n) {
  const auto gap = ith_spacing(run, i);
  if (!gap) return std::nullopt;
  return std::llround(static_cast<double>(n) * *gap);
}

/// Counts of observed scaled spacings plus the trials that never reached
/// i+1 survivors.
struct EmpiricalDistribution {
  std::map<std::int64_t, std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t discarded = 0;

  void add(std::int64_t d, std::uint64_t times = 1) {
    counts[d] += times;
    total += times;
  }

  void merge(const EmpiricalDistribution& other) {
    for (const auto& [d, c] : other.counts) counts[d] += c;
    total += other.total;
    discarded += other.discarded;
  }

  double mass(std::int64_t d) const {
    if (total == 0) return 0.0;
    const auto it = counts.find(d);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
  }

  std::int64_t max_value() const { return counts.empty() ? 0 : counts.rbegin()->first; }
};

// Grid indices of the first `wanted` survivors of one thinning of grid(n).
// Points after the last one needed are never drawn; they cannot change the
// answer.
inline std::vector<std::int64_t> first_survivors(std::int64_t n, double p, std::int64_t wanted, Rng& rng) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(wanted));
  for (std::int64_t k = 0; k <= n && static_cast<std::int64_t>(out.size()) < wanted; ++k) {
    if (rng.bernoulli(p)) out.push_back(k);
  }
  return out;
}

inline constexpr std::uint64_t kTrialsPerBlock = 1 << 14;

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs fn(block) for every block on up to `threads` workers.
template <class Fn>
void for_each_block(std::uint64_t blocks, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(blocks, 1))));
  if (threads == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) fn(b);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::uint64_t b = next++; b < blocks; b = next++) fn(b);
    });
  }
}

/// Monte Carlo law of D on grid(n): `trials` independent thinnings, each
/// recording the i-th scaled spacing when it exists.
///
/// Trials are cut into fixed-size blocks; block b draws from
/// derive_seed(seed, b), so the result does not depend on `threads`.
inline EmpiricalDistribution collect_empirical(std::int64_t n, double p, std::int64_t i, std::uint64_t trials,
                                               RngSeed seed, unsigned threads = default_threads()) {
  const ModelParams params(n, p, i);
  if (trials < 1) throw DomainError("trials must be >= 1");
  const std::uint64_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<EmpiricalDistribution> partial(blocks);
  for_each_block(blocks, threads, [&](std::uint64_t b) {
    Rng rng(derive_seed(seed, b));
    const std::uint64_t begin = b * kTrialsPerBlock;
    const std::uint64_t end = std::min(trials, begin + kTrialsPerBlock);
    auto& out = partial[b];
    for (std::uint64_t t = begin; t < end; ++t) {
      const auto kept = first_survivors(params.n(), params.p(), params.i() + 1, rng);
      if (static_cast<std::int64_t>(kept.size()) <= params.i()) {
        ++out.discarded;
        continue;
      }
      out.add(kept[static_cast<std::size_t>(i)] - kept[static_cast<std::size_t>(i - 1)]);
    }
  });
  EmpiricalDistribution merged;
  for (const auto& part : partial) merged.merge(part);
  return merged;
}

/// Inter-arrival times M_1, M_2, ... of an unbounded Bernoulli(p) process.
inline std::vector<std::int64_t> inter_arrival_stream(double p, RngSeed seed, std::int64_t count) {
  validate_probability(p);
  if (count < 1) throw DomainError("count must be >= 1");
  Rng rng(seed);
  std::vector<std::int64_t> out(static_cast<std::size_t>(count));
  for (auto& m : out) m = rng.geometric(p);
  return out;
}

}  // namespace spacings
