#pragma once

#include <cstdint>

namespace gbcfb {

/// Inverse of the standard normal CDF (Wichura's AS241 PPND16 rational
/// approximations, accurate to roughly 1e-16 relative). p must lie in (0,1).
double inverse_normal_cdf(double p);

/// Counter-based random source: every value is a pure function of
/// (seed, stream, index), so any subset of the stream can be generated in
/// any order, on any thread, with identical results.
///
/// Construction: two chained SplitMix64 steps,
///   key  = finalize(seed + (stream + 1) * GOLDEN)
///   bits = finalize(key  + (index  + 1) * GOLDEN)
/// where GOLDEN = 0x9E3779B97F4A7C15 and finalize is the SplitMix64
/// output mix (Steele, Lea & Flood 2014). Uniforms take the top 53 bits
/// offset by half an ulp, giving doubles strictly inside (0,1); normals
/// apply inverse_normal_cdf to that uniform.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits(std::uint64_t stream, std::uint64_t index) const;
  double uniform_open(std::uint64_t stream, std::uint64_t index) const;
  double normal(std::uint64_t stream, std::uint64_t index) const;

private:
  std::uint64_t seed_;
};

} // namespace gbcfb
