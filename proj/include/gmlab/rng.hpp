#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace gmlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream for one trial. Depends only on (seed, trial), never on the worker
// that runs it, so reports are identical for any worker count.
inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(trial + 1)));
}

inline std::complex<double> standard_complex_gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

}  // namespace gmlab
