#include <cmath>
#include <numbers>

#include "blockrel/quadrature.hpp"
#include "blockrel/special.hpp"
#include "doctest.h"

using namespace blockrel;

TEST_CASE("erfcx against extended-precision erfc") {
  for (double x = -5.0; x <= 26.0; x += 0.173) {
    const long double ref = std::exp(static_cast<long double>(x) * x) * std::erfc(static_cast<long double>(x));
    const double got = erfcx(x);
    CHECK(std::fabs(got - static_cast<double>(ref)) <= 4e-15 * static_cast<double>(ref));
  }
}

TEST_CASE("erfcx far tail follows its asymptotic series") {
  for (double x : {50.0, 300.0, 1e4, 1e8}) {
    const double u = 1.0 / (2.0 * x * x);
    const double series = (1.0 - u + 3.0 * u * u - 15.0 * u * u * u) / (x * std::sqrt(std::numbers::pi));
    CHECK(erfcx(x) == doctest::Approx(series).epsilon(1e-14));
  }
  CHECK(std::isfinite(erfcx(1e300)));
  CHECK(erfcx(1e300) > 0.0);
}

TEST_CASE("W function values and shape") {
  CHECK(w_func(0.0) == doctest::Approx(0.8862269254527580).epsilon(1e-15));
  CHECK(w_func(2.0) < w_func(1.0));
  CHECK(w_func(10.0) == doctest::Approx(1.0 / 20.0).epsilon(0.01));
  double prev = w_func(0.0);
  for (double x = 0.01; x < 50.0; x *= 1.3) {
    const double w = w_func(x);
    CHECK(w < prev);
    prev = w;
  }
}

TEST_CASE("W derivatives match the defining ODE and finite differences") {
  // W' = 2xW - 1
  for (double x : {0.0, 0.3, 1.0, 4.0}) {
    CHECK(w_derivative(0, x) == doctest::Approx(w_func(x)).epsilon(1e-10));
    CHECK(w_derivative(1, x) == doctest::Approx(2.0 * x * w_func(x) - 1.0).epsilon(1e-9));
    const double h = 1e-3;
    const double fd = (w_derivative(1, x + h) - w_derivative(1, std::max(0.0, x - h))) / (x > 0.0 ? 2.0 * h : h);
    CHECK(w_derivative(2, x) == doctest::Approx(fd).epsilon(x > 0.0 ? 1e-5 : 2e-3));
  }
}

TEST_CASE("W Taylor coefficients reproduce W(s g) for small g") {
  for (double s : {1.0, 2.0, 0.7}) {
    const auto c = w_series(s, 10);
    for (double g : {1e-3, 1e-2, 0.05}) {
      double v = 0.0, gk = 1.0;
      for (double ck : c) {
        v += ck * gk;
        gk *= g;
      }
      CHECK(v == doctest::Approx(w_func(s * g)).epsilon(1e-13));
    }
  }
}
