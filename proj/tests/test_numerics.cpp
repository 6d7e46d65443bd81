//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "qbayes/errors.hpp"
#include "qbayes/numerics.hpp"

using namespace qbayes;
using namespace qbayes::numerics;

TEST_CASE("periodic grid validation") {
  CHECK_THROWS_AS(PeriodicGrid(7), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicGrid(24), std::invalid_argument);  // not a power of 2
  CHECK_THROWS_AS(PeriodicGrid(std::size_t{1} << 21), std::invalid_argument);
  PeriodicGrid grid(8);
  CHECK(grid.node_count() == 8);
  CHECK(grid.node(0) == 0.0);
  CHECK(grid.node(4) == doctest::Approx(M_PI));
}

TEST_CASE("periodic_integrate constant and trig") {
  PeriodicGrid grid(64);
  CHECK(periodic_integrate([](double) { return 1.0; }, grid) ==
        doctest::Approx(two_pi).epsilon(1e-15));
  CHECK(std::fabs(periodic_integrate([](double p) { return std::cos(p); },
                                     grid)) < 1e-14);
  // (1 + cos phi)/(2 pi) integrates to 1
  PeriodicGrid fine(256);
  CHECK(periodic_integrate(
            [](double p) { return (1.0 + std::cos(p)) / two_pi; }, fine) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("periodic_integrate rejects non-finite values") {
  PeriodicGrid grid(8);
  CHECK_THROWS_AS(periodic_integrate(
                      [](double p) {
                        return p == 0.0
                                   ? std::numeric_limits<double>::infinity()
                                   : 1.0;
                      },
                      grid),
                  EvaluationError);
}

TEST_CASE("doubling error estimate reported") {
  PeriodicGrid grid(8);
  auto result = periodic_integrate_with_error(
      [](double p) { return std::exp(std::cos(p)); }, grid);
  CHECK(result.doubling_error >= 0.0);
  CHECK(result.value == doctest::Approx(periodic_integrate(
                            [](double p) { return std::exp(std::cos(p)); },
                            grid)));
}

TEST_CASE("log_integrate basics") {
  PeriodicGrid grid(64);
  SUBCASE("no terms gives log(2 pi)") {
    LogWeightedIntegrand integrand;
    CHECK(log_integrate(integrand, grid) ==
          doctest::Approx(std::log(two_pi)).epsilon(1e-14));
  }
  SUBCASE("huge exponent does not overflow") {
    LogWeightedIntegrand integrand;
    integrand.log_terms.push_back(
        {1e4, [](double p) { return std::log((1.0 + std::cos(p)) / 2.0); }});
    PeriodicGrid big(4096);
    const double lv = log_integrate(integrand, big);
    CHECK(std::isfinite(lv));
    // scaling cross-check at exponent 10 against the direct path
    LogWeightedIntegrand small;
    small.log_terms.push_back(
        {10.0, [](double p) { return std::log((1.0 + std::cos(p)) / 2.0); }});
    const double direct = periodic_integrate(
        [](double p) { return std::pow((1.0 + std::cos(p)) / 2.0, 10.0); },
        big);
    CHECK(log_integrate(small, big) ==
          doctest::Approx(std::log(direct)).epsilon(1e-12));
  }
  SUBCASE("zero-base node contributes zero weight") {
    LogWeightedIntegrand integrand;
    integrand.log_terms.push_back(
        {1.0, [](double p) { return std::log((1.0 - std::cos(p)) / 2.0); }});
    // node phi = 0 is -inf; integral of (1 - cos)/2 is pi
    CHECK(log_integrate(integrand, grid) ==
          doctest::Approx(std::log(M_PI)).epsilon(1e-13));
  }
  SUBCASE("all nodes -inf is an error") {
    LogWeightedIntegrand integrand;
    integrand.log_terms.push_back(
        {1.0, [](double) { return -std::numeric_limits<double>::infinity(); }});
    CHECK_THROWS_WITH_AS(log_integrate(integrand, grid),
                         "log_integrate: zero integrand", EvaluationError);
  }
}

TEST_CASE("log_integrate agrees with direct path") {
  PeriodicGrid grid(512);
  LogWeightedIntegrand integrand;
  integrand.log_terms.push_back(
      {3.0, [](double p) { return std::log(1.5 + std::cos(p)); }});
  integrand.extra_log_factor = [](double p) {
    return -0.3 * (1.5 + std::cos(p));
  };
  const double direct = periodic_integrate(
      [](double p) {
        return std::pow(1.5 + std::cos(p), 3.0) *
               std::exp(-0.3 * (1.5 + std::cos(p)));
      },
      grid);
  CHECK(log_integrate(integrand, grid) ==
        doctest::Approx(std::log(direct)).epsilon(1e-12));
}

TEST_CASE("gauss_legendre basics") {
  CHECK(gauss_legendre_integrate([](double) { return 1.0; }, 4) ==
        doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::fabs(gauss_legendre_integrate(
            [](double x) { return std::pow(x, 7.0); }, 4)) < 1e-14);
  // ((1+x)/2)^2 (1-x)/2 integrates to 1/6 over [-1, 1]
  CHECK(gauss_legendre_integrate(
            [](double x) {
              return std::pow((1.0 + x) / 2.0, 2.0) * (1.0 - x) / 2.0;
            },
            4) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK_THROWS_AS(gauss_legendre_integrate([](double) { return 1.0; }, 1),
                  std::invalid_argument);
}

TEST_CASE("gauss_legendre reproduces the Beta identity") {
  // int_{-1}^{1} (dx/2) ((1+x)/2)^p ((1-x)/2)^q = p! q! / (p+q+1)!
  for (unsigned p = 0; p <= 12; ++p) {
    for (unsigned q = 0; q <= 12; ++q) {
      const unsigned order = (p + q) / 2 + 2;
      const double got = 0.5 * gauss_legendre_integrate(
                                   [&](double x) {
                                     return std::pow((1.0 + x) / 2.0, p) *
                                            std::pow((1.0 - x) / 2.0, q);
                                   },
                                   order);
      const double expected = std::exp(log_factorial(p) + log_factorial(q) -
                                       log_factorial(p + q + 1));
      CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("log_factorial") {
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
  // 170! overflows double; compare the log against big-integer arithmetic
  boost::multiprecision::cpp_int f = 1;
  for (unsigned k = 2; k <= 170; ++k) {
    f *= k;
  }
  const double expected =
      static_cast<double>(boost::multiprecision::log(
          boost::multiprecision::cpp_dec_float_50(f)));
  CHECK(std::isfinite(log_factorial(170)));
  CHECK(log_factorial(170) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(log_factorial(170) == doctest::Approx(706.573).epsilon(1e-4));
}

TEST_CASE("trapezoid doubling converges for smooth periodic integrands") {
  PeriodicGrid grid(2048);
  auto f = [](double p) {
    return std::pow(1.2 + std::cos(p), 5.0) *
           std::exp(-0.4 * (1.2 + std::cos(p)));
  };
  const double coarse = periodic_integrate(f, grid);
  const double fine = periodic_integrate(f, grid.doubled());
  CHECK(std::fabs(coarse - fine) / std::fabs(fine) <= 1e-10);
}
