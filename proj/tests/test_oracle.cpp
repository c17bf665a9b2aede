#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "covkit/errors.hpp"
#include "covkit/estimators.hpp"
#include "covkit/oracle.hpp"

using namespace covkit;

TEST_CASE("exhaustive pass@k counts subsets directly") {
  // 45 pairs from 10 samples, 21 drawn entirely from the 7 incorrect ones
  CHECK(pass_at_k_exhaustive(10, 3, 2) == doctest::Approx(24.0 / 45.0).epsilon(1e-15));
  CHECK(pass_at_k_exhaustive(5, 0, 3) == 0.0);
  CHECK(pass_at_k_exhaustive(5, 5, 1) == 1.0);
  CHECK(pass_at_k_exhaustive(12, 1, 12) == 1.0);
  CHECK(pass_at_k_exhaustive(4, 2, 1) == 0.5);
}

TEST_CASE("exhaustive oracle rejects out-of-range inputs") {
  CHECK_THROWS_AS(pass_at_k_exhaustive(13, 0, 1), NTooLarge);
  CHECK_THROWS_AS(pass_at_k_exhaustive(10, 11, 1), MalformedRecord);
  CHECK_THROWS_AS(pass_at_k_exhaustive(10, 3, 11), KExceedsN);
  CHECK_THROWS_AS(pass_at_k_exhaustive(10, 3, 0), KExceedsN);
}

TEST_CASE("mixture oracle short-circuits on guessed golds") {
  CHECK(mixture_exhaustive(10, 3, 2, false) == doctest::Approx(8.0 / 15.0).epsilon(1e-15));
  CHECK(mixture_exhaustive(10, 3, 2, true) == 1.0);
  CHECK(mixture_exhaustive(10, 0, 10, false) == 0.0);
}

TEST_CASE("closed-form estimator tracks the oracle across the lattice") {
  double worst = 0.0;
  for (std::int64_t n = 1; n <= 10; ++n)
    for (std::int64_t c = 0; c <= n; ++c)
      for (std::int64_t k = 1; k <= n; ++k)
        worst = std::max(worst,
                         std::abs(pass_at_k({n, c}, k) - pass_at_k_exhaustive(n, c, k)));
  CHECK(worst <= 1e-12);
}
