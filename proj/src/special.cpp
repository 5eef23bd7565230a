#include "blockrel/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "blockrel/quadrature.hpp"

namespace blockrel {

namespace {

// Laplace continued fraction, evaluated from the tail. 50 levels give full
// double precision for x >= 2.5.
double erfcx_cf(double x) {
  double f = x;
  for (int k = 50; k >= 1; --k) f = x + 0.5 * k / f;
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

}  // namespace

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x >= 2.5) return erfcx_cf(x);
  if (x >= -0.5) return std::exp(x * x) * std::erfc(x);
  // erfcx(-y) = 2 e^{y^2} - erfcx(y)
  const double y = -x;
  return 2.0 * std::exp(y * y) - erfcx(y);
}

double w_func(double x) { return 0.5 * std::sqrt(std::numbers::pi) * erfcx(x); }

double w_derivative(int j, double x) {
  if (j < 0) throw std::invalid_argument("w_derivative: negative order");
  if (j == 0) return w_func(x);
  if (x < 0) throw std::invalid_argument("w_derivative: x must be nonnegative");
  // The integrand peaks near t = j / (2x + ...) and decays like e^{-t^2}.
  const double upper = 12.0 + std::sqrt(static_cast<double>(j)) * 2.0;
  QuadratureConfig q;
  q.abs_tol = 1e-300;
  q.rel_tol = 1e-14;
  auto f = [&](double t) {
    return std::pow(-2.0 * t, j) * std::exp(-t * t - 2.0 * x * t);
  };
  return integrate(f, 0.0, upper, q).value;
}

std::vector<double> w_series(double s, int order) {
  std::vector<double> c(order + 1);
  const double half_sqrt_pi = 0.5 * std::sqrt(std::numbers::pi);
  double sk = 1.0;
  for (int k = 0; k <= order; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c[k] = half_sqrt_pi * sign * sk / std::tgamma(0.5 * k + 1.0);
    sk *= s;
  }
  return c;
}

}  // namespace blockrel
