#pragma once

// Seedable, platform-independent random streams and the scalar samplers the
// group constructions are built from. Nothing here goes through <random>'s
// distributions, whose output is implementation-defined.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "wid/group.hpp"
#include "wid/measure.hpp"

namespace wid {

namespace detail {
constexpr std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace detail

/// xoshiro256** keyed by (seed, stream index). Distinct stream indices under
/// the same seed give statistically independent sequences. Single owner.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::uint64_t x = seed;
    std::uint64_t key = detail::splitmix64(x) ^ (stream * 0xD1B54A32D192ED03ULL);
    for (auto& v : state_) v = detail::splitmix64(key);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return UINT64_MAX; }

  result_type operator()() {
    const std::uint64_t result = detail::rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::array<std::uint64_t, 4> state_{};
};

inline double sample_uniform_real(RngStream& rng, double lo, double hi) {
  if (!(lo < hi)) throw Error("sample_uniform_real requires lo < hi");
  const double x = lo + (hi - lo) * rng.uniform01();
  return x < hi ? x : std::nextafter(hi, lo);
}

/// Uniform on {0, ..., n-1}: Lemire's multiply-shift with rejection, unbiased.
inline std::uint64_t sample_uniform_index(RngStream& rng, std::uint64_t n) {
  if (n == 0) throw Error("sample_uniform_index requires n >= 1");
  using u128 = unsigned __int128;
  u128 m = static_cast<u128>(rng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<u128>(rng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

inline int sample_uniform_digit(RngStream& rng, const Prime& p) {
  return static_cast<int>(sample_uniform_index(rng, static_cast<std::uint64_t>(p.value())));
}

/// N(0, b) by the Marsaglia polar method; the spare variate is discarded.
inline double sample_normal(RngStream& rng, double variance) {
  if (!(variance >= 0.0)) throw Error("normal variance must be >= 0");
  if (variance == 0.0) return 0.0;
  double u, v, s;
  do {
    u = 2.0 * rng.uniform01() - 1.0;
    v = 2.0 * rng.uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  return std::sqrt(variance) * u * std::sqrt(-2.0 * std::log(s) / s);
}

/// Exact Poisson(lambda): sequential inversion below 30, Hormann's
/// transformed rejection with squeeze (PTRS) above.
inline std::int64_t sample_poisson_count(RngStream& rng, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error("Poisson mean must be finite and >= 0");
  if (lambda == 0.0) return 0;
  if (lambda < 30.0) {
    double u = rng.uniform01();
    double prob = std::exp(-lambda);
    std::int64_t k = 0;
    while (u > prob) {
      u -= prob;
      ++k;
      prob *= lambda / static_cast<double>(k);
      if (prob == 0.0) break;  // floating-point tail; u is already within rounding of 0
    }
    return k;
  }
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double U = rng.uniform01() - 0.5;
    const double V = rng.uniform01();
    const double us = 0.5 - std::abs(U);
    const auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * U + lambda + 0.43));
    if (us >= 0.07 && V <= vr) return k;
    if (k < 0 || (us < 0.013 && V > us)) continue;
    if (std::log(V) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -lambda + static_cast<double>(k) * loglam - std::lgamma(static_cast<double>(k) + 1.0)) {
      return k;
    }
  }
}

/// Sampler for the compound Poisson law e(m) of a finite lattice measure:
/// a Poisson(m(total)) number of jumps, each an atom chosen with probability
/// proportional to its mass via binary search in a cumulative table.
class CompoundPoissonSampler {
 public:
  explicit CompoundPoissonSampler(LatticeMeasure m) : measure_(std::move(m)) {
    cumulative_.reserve(measure_.atoms.size());
    double acc = 0.0;
    for (const auto& a : measure_.atoms) {
      acc += a.mass;
      cumulative_.push_back(acc);
    }
    total_ = acc;
  }

  const LatticeMeasure& measure() const noexcept { return measure_; }

  LatticePoint operator()(RngStream& rng) const {
    LatticePoint out{0.0, std::vector<std::int64_t>(measure_.integer_dims, 0)};
    accumulate(rng, out.real, out.integers);
    return out;
  }

  /// Adds one draw to (real, integers) in place; `integers` must have
  /// integer_dims entries.
  void accumulate(RngStream& rng, double& real, std::span<std::int64_t> integers) const {
    if (measure_.atoms.empty()) return;
    const std::int64_t n = sample_poisson_count(rng, total_);
    for (std::int64_t i = 0; i < n; ++i) {
      const LatticePoint& jump = measure_.atoms[pick(rng)].point;
      real += jump.real;
      for (std::size_t k = 0; k < integers.size(); ++k) integers[k] += jump.integers[k];
    }
  }

 private:
  std::size_t pick(RngStream& rng) const {
    const double u = rng.uniform01() * total_;
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
  }

  LatticeMeasure measure_;
  std::vector<double> cumulative_;
  double total_ = 0.0;
};

inline LatticePoint sample_compound_poisson(RngStream& rng, const LatticeMeasure& m) {
  return CompoundPoissonSampler(m)(rng);
}

}  // namespace wid
