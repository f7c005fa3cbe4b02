#include <cmath>
#include <limits>
#include <random>

#include "chromacert/errors.hpp"
#include "chromacert/special_fn.hpp"
#include "doctest.h"
#include "oracle/bessel_oracle.hpp"

using chromacert::bessel_j0;
using chromacert::bessel_magnitude_bound;
using chromacert::DomainError;

TEST_CASE("J0 at the origin is exactly one") {
  const auto v = bessel_j0(0.0);
  CHECK(v.value == 1.0);
  CHECK(v.abs_error >= 0.0);
}

TEST_CASE("J0 at its minimum and first zero") {
  CHECK(std::abs(bessel_j0(3.8317060).value + 0.4027593957) <= 1e-8);

  const double z = 2.404825557695773;
  CHECK(std::abs(oracle::j0_series(z, 40)) <= 1e-10);
  CHECK(std::abs(bessel_j0(z).value) <= 1e-10);
}

TEST_CASE("J0 matches the 50-digit series on 10^4 points of [0, 30]") {
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double t = 30.0 * i / 9999.0;
    worst = std::max(worst, std::abs(bessel_j0(t).value - oracle::j0_series(t)));
  }
  CHECK(worst <= 1e-10);
  MESSAGE("max deviation from series oracle on [0, 30]: " << worst);
}

TEST_CASE("J0 error contract on [0, 500]") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> dist(0.0, 500.0);
  double worst = 0.0;
  for (int i = 0; i < 4000; ++i) {
    const double t = i < 1000 ? 0.5 * i : dist(gen);
    const auto v = bessel_j0(t);
    const double err = std::abs(v.value - oracle::j0_reference(t));
    CHECK(v.abs_error <= 1e-12);
    CHECK(err <= v.abs_error);
    worst = std::max(worst, err);
  }
  MESSAGE("max deviation from reference on [0, 500]: " << worst);
}

TEST_CASE("J0 is bounded by one and by the t^(-1/3) envelope") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> all(0.0, 500.0);
  std::uniform_real_distribution<double> tail(1.0, 500.0);
  for (int i = 0; i < 20000; ++i) {
    CHECK(std::abs(bessel_j0(all(gen)).value) <= 1.0 + 1e-12);
    const double t = tail(gen);
    CHECK(std::abs(bessel_j0(t).value) <= bessel_magnitude_bound(t) + 1e-9);
  }
}

TEST_CASE("J0 changes sign across the first three zeros") {
  const double brackets[3][2] = {{2.0, 3.0}, {5.0, 6.0}, {8.0, 9.0}};
  for (const auto& b : brackets) {
    const double z = oracle::j0_zero(b[0], b[1]);
    CHECK(bessel_j0(z - 1e-6).value * bessel_j0(z + 1e-6).value < 0.0);
  }
}

TEST_CASE("magnitude bound values") {
  CHECK(bessel_magnitude_bound(8.0) == doctest::Approx(0.5));
  CHECK(bessel_magnitude_bound(1.0) == 1.0);
  CHECK(bessel_magnitude_bound(50.0) == doctest::Approx(0.271441761659491));
  CHECK(std::abs(bessel_j0(50.0).value) <= bessel_magnitude_bound(50.0));
  CHECK(oracle::j0_series(1.0) == doctest::Approx(0.7651976866).epsilon(1e-10));
  CHECK(std::abs(bessel_j0(1.0).value) <= bessel_magnitude_bound(1.0));
}

TEST_CASE("domain errors") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(bessel_j0(-1e-300), DomainError);
  CHECK_THROWS_AS(bessel_j0(std::nan("")), DomainError);
  CHECK_THROWS_AS(bessel_j0(inf), DomainError);
  CHECK_THROWS_AS(bessel_magnitude_bound(0.0), DomainError);
  CHECK_THROWS_AS(bessel_magnitude_bound(-2.0), DomainError);
  CHECK_THROWS_AS(bessel_magnitude_bound(inf), DomainError);
}
