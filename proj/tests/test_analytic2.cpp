#include <cmath>
#include <numbers>
#include <vector>

#include "blockrel/analytic2.hpp"
#include "blockrel/analytic_n.hpp"
#include "doctest.h"

using namespace blockrel;
using namespace blockrel::analytic2;

namespace {
constexpr double kPi = std::numbers::pi;

QuadratureConfig tol(double t) {
  QuadratureConfig q;
  q.abs_tol = t;
  q.rel_tol = t;
  return q;
}

double closed_first_part(double g) { return 2.0 + g * g - g * (5.0 + 2.0 * g * g) * w_func(g); }

// Two-link reliability with the mean union area replaced by mu_n(x1, x2, phi)
// (beta-normalised), integrated as three plain nested quadratures.
template <class MuN>
double substituted_reliability(double g, MuN mu_n, double t) {
  const QuadratureConfig q = tol(t);
  const double X = x_cutoff(g);
  auto over_phi = [&](double phi) {
    auto over_x2 = [&](double x2) {
      auto over_x1 = [&](double x1) { return x1 * std::exp(-mu_n(x1, x2, phi)); };
      return x2 * std::exp(-x2 * x2 / (4.0 * g * g)) * integrate(over_x1, 0.0, x2, q).value;
    };
    return integrate(over_x2, 0.0, X, q).value;
  };
  return closed_first_part(g) - integrate(over_phi, 0.0, kPi, q).value / (4.0 * g * g * g * g * kPi);
}

double ind_double_integral(double g) {
  const QuadratureConfig q = tol(1e-13);
  auto outer = [&](double x2) {
    auto inner = [&](double x1) { return x1 * (1.0 - std::exp(-x1)) * (1.0 - std::exp(-x2)); };
    return x2 * std::exp(-x2 * x2 / (4.0 * g * g)) * integrate(inner, 0.0, x2, q).value;
  };
  return 1.0 - integrate(outer, 0.0, x_cutoff(g), q).value / (4.0 * g * g * g * g);
}

// F from its definition: the mean of the subtracted lower-bound term
// (triangle T, or all of A1 when the triangle test fails) over uniform length
// on (0, 1) and orientation, divided by the mean of A1 = a E[l] 2/pi.
double f_oracle(double a, double Phi) {
  const QuadratureConfig q = tol(1e-12);
  const double s = std::sin(Phi);
  auto over_theta = [&](double th) {
    const double lstar = 2.0 * a * s / std::sin(th);
    auto sub = [&](double l) {
      if (l < lstar) return l * l * std::sin(th) * std::sin(th - Phi) / (2.0 * s);
      return l * a * std::sin(th - Phi);
    };
    if (lstar > 0.0 && lstar < 1.0) return integrate(sub, {0.0, lstar, 1.0}, q).value;
    return integrate(sub, 0.0, 1.0, q).value;
  };
  std::vector<double> br{Phi, kPi};
  const double u = 2.0 * a * s;
  if (u < 1.0) {
    const double t1 = std::asin(u);
    if (t1 > Phi) br.push_back(t1);
    if (kPi - t1 > Phi) br.push_back(kPi - t1);
  }
  std::sort(br.begin(), br.end());
  return integrate(over_theta, std::span<const double>(br), q).value / kPi / (a / kPi);
}
}  // namespace

TEST_CASE("independent closed form against its double integral") {
  for (double g : {0.1, 0.3, 1.0, 3.0}) {
    CHECK(reliability_ind(g).value == doctest::Approx(ind_double_integral(g)).epsilon(1e-8).scale(1.0));
  }
  CHECK(reliability_ind(10.0).value < 0.05);
  CHECK(reliability_ind(1e-6).value == doctest::Approx(1.0).epsilon(1e-9));
  // both sides of the series switch agree with the integral
  for (double g : {0.999e-3, 1e-3, 1.001e-3}) {
    CHECK(reliability_ind(g).value == doctest::Approx(ind_double_integral(g)).epsilon(1e-10));
  }
}

TEST_CASE("required density round trip") {
  const double b = per_km(6.4);
  for (double t : {0.3, 0.5, 0.9, 0.99}) {
    const double lam = required_density(t, b);
    CHECK(reliability_ind(gamma(b, lam)).value == doctest::Approx(t).epsilon(1e-9));
  }
  CHECK(required_density(1e-4, b) < required_density(0.01, b));
  CHECK(to_per_km2(required_density(0.9, b)) ==
        doctest::Approx(to_per_km2(analytic_n::required_density_n(0.9, b, 2))).epsilon(1e-8));
  CHECK_THROWS(required_density(1.0, b));
}

TEST_CASE("F(a, Phi) limits and values") {
  for (double a : {0.01, 0.3, 0.7, 3.0}) {
    CHECK(f_lb1(a, 0.0) == 1.0);
    CHECK(f_lb1(a, kPi) == 0.0);
  }
  for (double Phi : {0.3, 1.2, 2.5}) {
    // a = r1 / L_max: long blockages (a -> 0) recover the full overlap
    CHECK(f_lb1(1e-7, Phi) == doctest::Approx(0.5 * (1.0 + std::cos(Phi))).epsilon(1e-5));
    CHECK(f_lb1(1e6, Phi) == doctest::Approx(0.0).epsilon(1e-5));
  }
}

TEST_CASE("F(a, Phi) every branch matches direct quadrature") {
  for (double Phi : {0.2, 0.6, 1.0, 1.4, 1.8, 2.4, 3.0}) {
    for (double a : {0.05, 0.2, 0.45, 0.6, 1.0, 2.0, 6.0}) {
      CAPTURE(Phi);
      CAPTURE(a);
      CHECK(f_lb1(a, Phi) == doctest::Approx(f_oracle(a, Phi)).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("F(a, Phi) is continuous across branch boundaries") {
  const double e = 1e-9;
  for (double Phi : {0.3, 0.9, 1.4}) {
    CHECK(f_lb1(0.5 - e, Phi) == doctest::Approx(f_lb1(0.5 + e, Phi)).epsilon(1e-6));
    const double edge = 0.5 / std::sin(Phi);
    CHECK(f_lb1(edge - e, Phi) == doctest::Approx(f_lb1(edge + e, Phi)).epsilon(1e-6));
  }
  for (double a : {0.2, 0.8}) {
    CHECK(f_lb1(a, 0.5 * kPi - e) == doctest::Approx(f_lb1(a, 0.5 * kPi + e)).epsilon(1e-6));
  }
}

TEST_CASE("lower bound I equals the dependent formula with the LB-I area substituted") {
  const double lam = per_km2(30.0);
  for (double l_max : {40.0, 100.0}) {
    const BlockageSpec spec = BlockageSpec::uniform(per_km2(100.0), l_max);
    const double b = beta(spec);
    const double g = gamma(b, lam);
    const double bl = b * l_max;
    auto mu_n = [&](double x1, double x2, double phi) { return x1 + x2 - x1 * f_lb1(x1 / bl, phi); };
    CHECK(reliability_lb1(lam, b, l_max, tol(1e-9)).value ==
          doctest::Approx(substituted_reliability(g, mu_n, 1e-8)).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("asymptotic lower bound equals the dependent formula with the LB-II area substituted") {
  for (double g : {0.1, 0.4, 1.5}) {
    auto mu_n = [](double x1, double x2, double phi) { return x2 + x1 * std::pow(std::sin(0.5 * phi), 2); };
    CHECK(reliability_asym_lb(g).value == doctest::Approx(substituted_reliability(g, mu_n, 1e-9)).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("linear approximation equals its defining integral") {
  for (double g : {0.2, 1.0}) {
    auto mu_n = [](double x1, double x2, double phi) { return x2 + x1 * phi / kPi; };
    CHECK(reliability_asym_lb_linear(g).value ==
          doctest::Approx(substituted_reliability(g, mu_n, 1e-11)).epsilon(1e-8).scale(1.0));
  }
  double prev = 1.0;
  for (double g = 0.01; g <= 10.0; g *= 1.25) {
    const double v = reliability_asym_lb_linear(g).value;
    CHECK(v < prev);
    prev = v;
  }
  CHECK(1.0 - reliability_asym_lb_linear(1e-6).value < 1e-5);
  CHECK(1.0 - reliability_asym_lb_linear(1e-6).value > 0.0);
  for (double g = 0.1; g <= 2.0; g += 0.1) {
    CHECK(std::fabs(reliability_asym_lb(g).value - reliability_asym_lb_linear(g).value) < 0.02);
  }
}

TEST_CASE("asymptotic bound series branch near zero angle") {
  // the bound is a smooth function of g, so nearby values stay close
  for (double g : {0.05, 0.5, 5.0}) {
    const double a = reliability_asym_lb(g).value;
    CHECK(a <= reliability_ind(g).value);
    CHECK(a >= 0.0);
    CHECK(reliability_asym_lb(g * (1 + 1e-6)).value == doctest::Approx(a).epsilon(1e-5));
  }
}

TEST_CASE("gamma-only dependence of closed forms") {
  const double b = per_km(3.0), lam = per_km2(30.0);
  const double g1 = gamma(b, lam), g2 = gamma(2.0 * b, 4.0 * lam);
  CHECK(reliability_ind(g2).value == doctest::Approx(reliability_ind(g1).value).epsilon(1e-10));
  CHECK(reliability_asym_lb(g2).value == doctest::Approx(reliability_asym_lb(g1).value).epsilon(1e-10));
  CHECK(reliability_asym_lb_linear(g2).value == doctest::Approx(reliability_asym_lb_linear(g1).value).epsilon(1e-10));
}

TEST_CASE("joint LOS probability properties") {
  const BlockageSpec none = BlockageSpec::uniform(0.0, 100.0);
  CHECK(joint_los_prob(50.0, 80.0, 1.0, none).joint == 1.0);
  const BlockageSpec spec = BlockageSpec::uniform(per_km2(100.0), 100.0);
  const double b = beta(spec);
  CHECK(joint_los_prob(60.0, 60.0, 0.0, spec).joint == doctest::Approx(std::exp(-b * 60.0)).epsilon(1e-9));
  for (double phi : {0.1, 0.9, 2.0, 3.1}) {
    const auto j = joint_los_prob(45.0, 120.0, phi, spec);
    CHECK(j.joint >= std::exp(-b * 165.0) * (1 - 1e-12));
    CHECK(j.joint <= std::exp(-b * 120.0) * (1 + 1e-12));
    CHECK(j.marginal1 == doctest::Approx(std::exp(-b * 45.0)));
    CHECK(j.marginal2 == doctest::Approx(std::exp(-b * 120.0)));
  }
}

TEST_CASE("dependent reliability: limits and bound sandwich") {
  const double lam = per_km2(30.0);
  CHECK(reliability_dep(lam, BlockageSpec::uniform(0.0, 100.0)).value == 1.0);
  for (double mu : {50.0, 200.0, 800.0}) {
    const BlockageSpec spec = BlockageSpec::uniform(per_km2(mu), 100.0);
    const double b = beta(spec);
    const double g = gamma(b, lam);
    const auto dep = reliability_dep(lam, spec);
    CHECK(dep.converged);
    const double lb1 = reliability_lb1(lam, b, 100.0).value;
    CHECK(reliability_asym_lb(g).value <= lb1 + 1e-9);
    CHECK(lb1 <= dep.value + 1e-6);
    CHECK(dep.value <= reliability_ind(g).value + 1e-9);
  }
  // short blockages at fixed beta behave independently
  const double b = per_km(3.0);
  const BlockageSpec tiny = BlockageSpec::uniform(mu_for_beta(b, 0.5), 0.5);
  CHECK(reliability_dep(lam, tiny).value == doctest::Approx(reliability_ind(gamma(b, lam)).value).epsilon(5e-4));
  CHECK(reliability_lb1(lam, b, 0.5).value == doctest::Approx(reliability_ind(gamma(b, lam)).value).epsilon(5e-4));
}
