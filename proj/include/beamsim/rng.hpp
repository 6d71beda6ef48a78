#pragma once

#include <cstdint>
#include <random>

namespace beamsim {

// Mixes (seed, index) into an independent stream seed. Used to derive
// per-drop and per-replication seeds from one master seed so that no
// global RNG state exists anywhere in the simulator.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Deterministic random source. The engine is std::mt19937_64 (bit-exact
// across platforms); the variate mappings below are implemented by hand
// because the standard library distributions are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  bool bernoulli(double p);
  // Inverse-CDF exponential with the given mean.
  double exponential(double mean);
  // Knuth product-of-uniforms, chunked so large means do not underflow.
  int poisson(double mean);
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace beamsim
