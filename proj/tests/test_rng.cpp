#include <doctest.h>

#include "beamsim/errors.hpp"
#include "beamsim/rng.hpp"

using namespace beamsim;

TEST_CASE("identical seeds give identical streams") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("derive_seed separates indices and seeds") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("uniform stays in [0, 1)") {
  Rng rng(3);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("poisson matches its mean and variance") {
  Rng rng(11);
  const double mean = 37.5;  // above the chunking limit
  double sum = 0.0;
  double sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const int k = rng.poisson(mean);
    sum += k;
    sq += static_cast<double>(k) * k;
  }
  const double m = sum / n;
  const double var = sq / n - m * m;
  CHECK(m == doctest::Approx(mean).epsilon(0.01));
  CHECK(var == doctest::Approx(mean).epsilon(0.05));
}

TEST_CASE("bernoulli frequency tracks p") {
  Rng rng(5);
  int hits = 0;
  for (int i = 0; i < 100000; ++i) hits += rng.bernoulli(0.1) ? 1 : 0;
  CHECK(hits / 100000.0 == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("exponential rejects non-positive mean") {
  Rng rng(1);
  CHECK_THROWS_AS(rng.exponential(0.0), InvalidArgument);
}
