#include "spdc/prng.hpp"

#include <cmath>

namespace spdc {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) {
  // Mix seed and stream so adjacent streams are decorrelated.
  std::uint64_t s = seed ^ 0x5851f42d4c957f2dULL;
  const std::uint64_t a = splitmix64(s);
  s ^= stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL;
  state_ = a ^ splitmix64(s);
}

std::uint64_t CounterRng::next_u64() { return splitmix64(state_); }

double CounterRng::next_double() {
  // 53 random bits into (0, 1]: add 1 ulp-scale offset to avoid exact zero.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

namespace {

// log(k!) via lgamma.
double log_factorial(double k) { return std::lgamma(k + 1.0); }

// Hoermann's PTRS transformed-rejection sampler, exact for mean >= 10.
std::int64_t poisson_ptrs(CounterRng& rng, double mean) {
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);

  for (;;) {
    double u = rng.next_double() - 0.5;
    const double v = rng.next_double();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = k * log_mean - mean - log_factorial(k);
    if (lhs <= rhs) return static_cast<std::int64_t>(k);
  }
}

// Inversion by sequential search, exact for small means.
std::int64_t poisson_inversion(CounterRng& rng, double mean) {
  const double l = std::exp(-mean);
  std::int64_t k = 0;
  double p = rng.next_double();
  while (p > l) {
    p *= rng.next_double();
    ++k;
  }
  return k;
}

} // namespace

std::int64_t poisson_sample(CounterRng& rng, double mean) {
  if (!(mean > 0.0)) return 0;
  if (mean < 10.0) return poisson_inversion(rng, mean);
  return poisson_ptrs(rng, mean);
}

} // namespace spdc
