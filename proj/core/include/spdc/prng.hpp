#pragma once

#include <cstdint>

namespace spdc {

/// Splittable counter-based generator (SplitMix64 over a hashed
/// (seed, stream) pair). Every map cell draws from its own stream, so
/// parallel evaluation order cannot change the output.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  /// Uniform in (0, 1) (never exactly 0, safe for logs).
  double next_double();

private:
  std::uint64_t state_;
};

/// Exact Poisson draw: inversion by sequential search for small means,
/// transformed rejection (PTRS) otherwise. mean <= 0 yields 0.
std::int64_t poisson_sample(CounterRng& rng, double mean);

} // namespace spdc
