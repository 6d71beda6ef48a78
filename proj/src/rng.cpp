#include "beamsim/rng.hpp"

#include <cmath>

#include "beamsim/errors.hpp"

namespace beamsim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index * 0xD1B54A32D192ED03ULL + 1));
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

bool Rng::bernoulli(double p) {
  return uniform() < p;
}

double Rng::exponential(double mean) {
  if (!(mean > 0.0)) throw InvalidArgument("exponential mean must be positive");
  return -mean * std::log1p(-uniform());
}

int Rng::poisson(double mean) {
  if (mean < 0.0) throw InvalidArgument("poisson mean must be non-negative");
  // Split large means into chunks of at most 32 so exp(-mean) stays well
  // inside double range for each chunk.
  int total = 0;
  double remaining = mean;
  while (remaining > 0.0) {
    const double chunk = remaining > 32.0 ? 32.0 : remaining;
    remaining -= chunk;
    const double limit = std::exp(-chunk);
    double product = 1.0;
    int count = -1;
    do {
      product *= uniform();
      ++count;
    } while (product > limit);
    total += count;
  }
  return total;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("below(0) is undefined");
  // Rejection sampling keeps the result exactly uniform.
  const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

}  // namespace beamsim
