#include <cmath>

#include "doctest.h"

#include "chromatic/bounds.hpp"
#include "chromatic/error.hpp"
#include "fixtures.hpp"

using namespace chromatic;

TEST_CASE("log-domain chromatic bound at n = 100") {
  const auto b = color::theorem1_bound(100, 1.0, 2.0);
  CHECK(b.ln_value == doctest::Approx(116.855614815943).epsilon(1e-12));
  CHECK(b.bracket == doctest::Approx(1090.4938534035773).epsilon(1e-12));
  CHECK_FALSE(b.small_n_warning);
  // Linear-scale value: e^116.86 ~ 5.6e50, still within double range here.
  CHECK(std::exp(b.ln_value) == doctest::Approx(5.620160185406327e+50).epsilon(1e-9));
}

TEST_CASE("n-th root of the bound decreases toward its base") {
  const double r3 = std::exp(color::theorem1_bound(1000, 1.0, 2.0).ln_value / 1000.0);
  const double r4 = std::exp(color::theorem1_bound(10000, 1.0, 2.0).ln_value / 10000.0);
  const double r5 = std::exp(color::theorem1_bound(100000, 1.0, 2.0).ln_value / 100000.0);
  CHECK(r3 == doctest::Approx(3.02869268).epsilon(1e-8));
  CHECK(r4 == doctest::Approx(3.00360083).epsilon(1e-8));
  CHECK(r5 == doctest::Approx(3.00043332).epsilon(1e-8));
  CHECK(r3 > r4);
  CHECK(r4 > r5);
  CHECK(r5 > 3.0);
  CHECK(r4 <= 3.01);
}

TEST_CASE("translate-count dependence stays logarithmic") {
  const auto base = color::theorem1_bound(50, 1.0, 2.0);
  const auto more = color::theorem1_bound(50, 1e300, 2.0);
  CHECK(std::isfinite(more.ln_value));
  CHECK(more.ln_value > base.ln_value);
  // Doubling k adds at most 2 ln 2 inside the bracket.
  const auto twice = color::theorem1_bound(50, 2.0, 2.0);
  CHECK(twice.bracket - base.bracket == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("small dimension warning") {
  CHECK(color::theorem1_bound(2, 1.0, 2.0).small_n_warning);
  CHECK_FALSE(color::theorem1_bound(3, 1.0, 2.0).small_n_warning);
  CHECK(fixtures::raises([] { color::theorem1_bound(1, 1.0, 2.0); }, Errc::InvalidInput));
  CHECK(fixtures::raises([] { color::theorem1_bound(10, 0.5, 2.0); }, Errc::InvalidInput));
  CHECK(fixtures::raises([] { color::theorem1_bound(10, 1.0, 0.5); }, Errc::InvalidInput));
}

TEST_CASE("volume-ratio root bound") {
  // Huge ratios enter through their logarithm: 2^1000 overflows a double.
  CHECK(color::butler_bound_ln(1000, 1000.0 * std::log(2.0), 0.0) ==
        doctest::Approx(2.038893994095).epsilon(1e-11));
  CHECK(color::butler_bound(1000, 1.0, 0.0) ==
        doctest::Approx(1.019446997048).epsilon(1e-11));
  CHECK(color::butler_bound_ln(1000, 1000.0 * std::log(2.0), 3.0) ==
        doctest::Approx(2.081587381666).epsilon(1e-11));
  CHECK(color::butler_bound(3, 8.0, 3.0) ==
        doctest::Approx(6.305655290591476).epsilon(1e-12));
  // The two entry points agree where both are usable.
  CHECK(color::butler_bound(10, 1024.0, 1.0) ==
        doctest::Approx(color::butler_bound_ln(10, std::log(1024.0), 1.0)).epsilon(1e-13));

  CHECK(fixtures::raises([] { color::butler_bound(2, 4.0, 0.0); }, Errc::InvalidInput));
  CHECK(fixtures::raises([] { color::butler_bound(10, 0.5, 0.0); }, Errc::InvalidInput));
}

TEST_CASE("greedy guarantee formula") {
  CHECK(color::finite_run_bound(1, 2.5) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(color::finite_run_bound(12, 9.194341766084483) ==
        doctest::Approx((1.0 + std::log(12.0)) * 9.194341766084483).epsilon(1e-15));
  CHECK(fixtures::raises([] { color::finite_run_bound(0, 1.0); }, Errc::InvalidInput));
  CHECK(fixtures::raises([] { color::finite_run_bound(3, 0.0); }, Errc::InvalidInput));
}
