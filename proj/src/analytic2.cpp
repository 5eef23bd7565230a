#include "blockrel/analytic2.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

namespace blockrel::analytic2 {

namespace {

constexpr double kPi = std::numbers::pi;

using Poly = std::vector<double>;

Poly mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Poly add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

Poly scale(Poly a, double s) {
  for (double& v : a) v *= s;
  return a;
}

// Evaluates (sum_k c_k g^k) / g, given c_0 == 0 up to rounding.
double eval_over_g(const Poly& c, double g, int order) {
  double s = 0.0;
  for (int k = std::min<int>(order, static_cast<int>(c.size()) - 1); k >= 1; --k) s = s * g + c[k];
  return s;
}

constexpr int kSeriesOrder = 14;
constexpr double kSeriesBelow = 1e-3;

ReliabilityEstimate make(double v, double err, Method m, bool ok = true) {
  ReliabilityEstimate e;
  e.value = v;
  e.error = err;
  e.method = m;
  e.converged = ok;
  return e;
}

}  // namespace

QuadratureConfig triple_defaults() {
  QuadratureConfig q;
  q.abs_tol = 1e-6;
  q.rel_tol = 1e-6;
  return q;
}

double x_cutoff(double g) { return 2.0 * g * std::sqrt(16.0 * std::log(10.0)); }

double clamp_probability(double v, double tol) {
  if (v < 0.0 && v >= -tol) return 0.0;
  if (v > 1.0 && v <= 1.0 + tol) return 1.0;
  return v;
}

QuadResult mean_union_area(double r1, double r2, double Phi, const BlockageSpec& spec,
                           const QuadratureConfig& q) {
  if (!(r1 > 0.0 && r1 <= r2)) throw std::invalid_argument("mean_union_area: need 0 < r1 <= r2");
  if (!(Phi >= 0.0 && Phi <= kPi)) throw std::invalid_argument("mean_union_area: Phi must lie in [0, pi]");
  const std::array<Point, 2> ends{Point{r1 * std::cos(Phi), r1 * std::sin(Phi)}, Point{r2, 0.0}};
  return blockrel::mean_union_area(std::span<const Point>(ends), spec, q);
}

JointLos joint_los_prob(double r1, double r2, double Phi, const BlockageSpec& spec, const QuadratureConfig& q) {
  JointLos out;
  const double b = beta(spec);
  out.marginal1 = std::exp(-b * r1);
  out.marginal2 = std::exp(-b * r2);
  if (spec.mu == 0.0) return out;
  const QuadResult n = mean_union_area(r1, r2, Phi, spec, q);
  out.joint = std::exp(-spec.mu * n.value);
  out.error = out.joint * spec.mu * n.error;
  out.converged = n.converged;
  return out;
}

double marginal_sum(double g) {
  return 2.0 + g * g - g * (5.0 + 2.0 * g * g) * w_func(g);
}

ReliabilityEstimate reliability_dep(double lambda, const BlockageSpec& spec, const QuadratureConfig& q) {
  if (!(lambda > 0.0)) throw std::invalid_argument("reliability_dep: lambda must be positive");
  spec.validate();
  const double b = beta(spec);
  if (spec.mu == 0.0 || b == 0.0) return make(1.0, 0.0, Method::AnalyticDep);
  const double g = gamma(b, lambda);
  const double X = x_cutoff(g);
  const double mu = spec.mu;

  const double rel = std::min(q.rel_tol, q.abs_tol);
  QuadratureConfig q_mid = q;
  q_mid.abs_tol = 1e-300;
  q_mid.rel_tol = std::max(0.1 * rel, 1e-13);
  QuadratureConfig q_in = q_mid;
  q_in.rel_tol = std::max(0.1 * q_mid.rel_tol, 1e-13);
  QuadratureConfig q_area = q_mid;
  q_area.rel_tol = std::max(1e-3 * rel, 1e-12);
  q_area.nodes = 15;

  bool ok = true;
  const double norm = 1.0 / (4.0 * g * g * g * g * kPi);
  auto outer = [&](double phi) {
    const double c = std::cos(phi), s = std::sin(phi);
    auto middle = [&](double x2) {
      if (x2 == 0.0) return 0.0;
      const Point e2{x2 / b, 0.0};
      auto inner = [&](double x1) {
        if (x1 == 0.0) return 0.0;
        const std::array<Point, 2> ends{Point{x1 / b * c, x1 / b * s}, e2};
        const QuadResult n = blockrel::mean_union_area(std::span<const Point>(ends), spec, q_area);
        ok = ok && n.converged;
        return x1 * std::exp(-mu * n.value);
      };
      const QuadResult in = integrate(inner, 0.0, x2, q_in);
      ok = ok && in.converged;
      return x2 * std::exp(-x2 * x2 / (4.0 * g * g)) * in.value;
    };
    const QuadResult mid = integrate(middle, 0.0, X, q_mid);
    ok = ok && mid.converged;
    return norm * mid.value;
  };
  const QuadResult d = integrate(outer, 0.0, kPi, q);
  ok = ok && d.converged;
  const double v = marginal_sum(g) - d.value;
  const double err = d.error + 1e-15;
  return make(clamp_probability(v, std::max(err, 1e-12)), err, Method::AnalyticDep, ok);
}

ReliabilityEstimate reliability_ind(double g) {
  if (!(g > 0.0)) throw std::invalid_argument("reliability_ind: gamma must be positive");
  if (g <= kSeriesBelow) {
    const Poly w1 = w_series(1.0, kSeriesOrder + 2);
    const Poly w2 = w_series(2.0, kSeriesOrder + 2);
    Poly c = add(scale(mul(w1, Poly{-1.0, 0.0, 5.0, 0.0, 2.0}), -1.0), mul(w2, Poly{-1.0, 0.0, 8.0}));
    c = add(c, Poly{0.0, 0.0, 0.0, 1.0});
    return make(eval_over_g(c, g, kSeriesOrder), 0.0, Method::AnalyticInd);
  }
  const double g2 = g * g;
  const double v =
      (g2 * g - w_func(g) * (2.0 * g2 * g2 + 5.0 * g2 - 1.0) + w_func(2.0 * g) * (8.0 * g2 - 1.0)) / g;
  return make(clamp_probability(v, 1e-14), 0.0, Method::AnalyticInd);
}

double gamma_for_target(const std::function<double(double)>& p, double target) {
  if (!(target > 0.0 && target < 1.0)) throw std::invalid_argument("required density: target must lie in (0, 1)");
  auto f = [&](double lg) { return p(std::exp(lg)) - target; };
  double lo = std::log(1e-6), hi = std::log(1.0);
  while (f(lo) < 0.0) {
    lo -= 2.0;
    if (lo < std::log(1e-300)) throw std::invalid_argument("required density: target not reachable");
  }
  while (f(hi) > 0.0) {
    hi += 1.0;
    if (hi > std::log(1e6)) throw std::invalid_argument("required density: target too small");
  }
  boost::uintmax_t iters = 200;
  auto res = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  const double a = std::exp(res.first), c = std::exp(res.second);
  return std::fabs(p(a) - target) <= std::fabs(p(c) - target) ? a : c;
}

double required_density(double target, double beta_v) {
  if (!(beta_v > 0.0)) throw std::invalid_argument("required_density: beta must be positive");
  const double gs = gamma_for_target([](double g) { return reliability_ind(g).value; }, target);
  return beta_v * beta_v / (4.0 * kPi * gs * gs);
}

double f_lb1(double a, double Phi) {
  if (!(a >= 0.0)) throw std::invalid_argument("f_lb1: a must be nonnegative");
  if (!(Phi >= 0.0 && Phi <= kPi)) throw std::invalid_argument("f_lb1: Phi must lie in [0, pi]");
  if (Phi == 0.0) return 1.0;
  if (Phi == kPi) return 0.0;
  const double s = std::sin(Phi), c = std::cos(Phi);
  if (a < 1e-12) return 0.5 * (1.0 + c);
  const double as2 = a * a * s * s;
  const double q = std::max(0.0, 1.0 - 4.0 * as2);
  const double sq = std::sqrt(q);
  const double T1 = c * sq;
  const double T2 = as2 * c * std::log1p(sq);
  const double T6 = (1.0 / a) * (c / s) * std::asin(std::min(1.0, 2.0 * a * s));
  const double far = (1.0 / (12.0 * a)) * (1.0 + (kPi - Phi) * c / s);
  if (Phi <= 0.5 * kPi) {
    if (2.0 * a <= 1.0) {
      const double T3 = as2 * c * std::log(2.0 * a * s);
      const double T4 = as2 * c * std::log(2.0 * a * (1.0 + c));
      return 0.5 + a / 3.0 * (2.0 * a - 3.0) * s * s + T1 / 3.0 - 2.0 * T2 / 3.0 + 4.0 * T3 / 3.0 -
             2.0 * T4 / 3.0 + T6 / 12.0;
    }
    if (2.0 * a * s <= 1.0) {
      // Orientation splits into a triangle-limited part near Phi and pi and a
      // link-limited middle part; GT and GM are the antiderivatives.
      auto GT = [&](double th) { return (th * c - 0.5 * std::sin(2.0 * th - Phi)) / (12.0 * s); };
      auto GM = [&](double th) {
        return -0.5 * a * std::cos(th - Phi) -
               (2.0 / 3.0) * a * a * a * s * s * (c * std::log(std::tan(0.5 * th)) + s / std::sin(th));
      };
      const double t1 = std::asin(2.0 * a * s);
      return (GT(t1) - GT(Phi) + GM(kPi - t1) - GM(t1) + GT(kPi) - GT(kPi - t1)) / a;
    }
    return far;
  }
  if (2.0 * a <= 1.0) {
    const double T5 = as2 * c * std::log(2.0 * a * (1.0 - c));
    return 0.5 + a / 3.0 * (2.0 * a - 3.0) * s * s + T1 / 3.0 - 2.0 * T2 / 3.0 + 2.0 * T5 / 3.0 + T6 / 12.0;
  }
  return far;
}

ReliabilityEstimate reliability_lb1(double lambda, double beta_v, double l_max, const QuadratureConfig& q) {
  if (!(lambda > 0.0)) throw std::invalid_argument("reliability_lb1: lambda must be positive");
  if (!(beta_v > 0.0) || !(l_max > 0.0))
    throw std::invalid_argument("reliability_lb1: beta and l_max must be positive");
  const double g = gamma(beta_v, lambda);
  const double X = x_cutoff(g);
  const double bl = beta_v * l_max;
  const double rel = std::min(q.rel_tol, q.abs_tol);
  QuadratureConfig q_in = q;
  q_in.abs_tol = 1e-300;
  q_in.rel_tol = std::max(0.1 * rel, 1e-13);
  bool ok = true;
  auto S = [g](double x) {
    const double z = x / (2.0 * g) + g;
    return std::exp(-x * x / (4.0 * g * g) - x) * (1.0 - 2.0 * g * w_func(z));
  };
  const double norm = 1.0 / (2.0 * g * g * kPi);
  auto outer = [&](double phi) {
    std::vector<double> br{0.0, X};
    auto add_break = [&](double x) {
      if (x > 0.0 && x < X) br.push_back(x);
    };
    add_break(0.5 * bl);
    if (phi > 0.0 && phi < kPi) add_break(0.5 * bl / std::sin(phi));
    std::sort(br.begin(), br.end());
    auto inner = [&](double x) { return std::exp(-x * (1.0 - f_lb1(x / bl, phi))) * x * S(x); };
    const QuadResult r = integrate(inner, std::span<const double>(br), q_in);
    ok = ok && r.converged;
    return norm * r.value;
  };
  const QuadResult d = integrate(outer, {0.0, 0.5 * kPi, kPi}, q);
  ok = ok && d.converged;
  const double v = marginal_sum(g) - d.value;
  return make(clamp_probability(v, std::max(d.error, 1e-12)), d.error, Method::Lb1, ok);
}

ReliabilityEstimate reliability_asym_lb(double g, const QuadratureConfig& q) {
  if (!(g > 0.0)) throw std::invalid_argument("reliability_asym_lb: gamma must be positive");
  const double wg = w_func(g);
  // Taylor coefficients of the bracket / sin^4 in u = sin^2 phi.
  constexpr int kOrder = 8;
  std::array<double, kOrder + 1> d{};
  double gk = 1.0, fact = 1.0;
  for (int k = 0; k <= kOrder; ++k) {
    if (k > 0) fact *= k;
    d[k] = w_derivative(k, g) * gk / fact;
    gk *= g;
  }
  std::array<double, kOrder - 1> coef{};
  for (int k = 2; k <= kOrder; ++k) coef[k - 2] = -d[k] + 2.0 * g * g * d[k - 1];
  constexpr double kSwitch = 1e-2;
  auto f1 = [&](double phi) {
    const double u = std::sin(phi) * std::sin(phi);
    return (2.0 + u) * w_func((1.0 + u) * g);
  };
  auto f2 = [&](double phi) {
    const double u = std::sin(phi) * std::sin(phi);
    if (phi < kSwitch) {
      double s = 0.0;
      for (int k = kOrder - 2; k >= 0; --k) s = s * u + coef[k];
      return s;
    }
    const double wu = w_func((1.0 + u) * g);
    return (wg - wu + 2.0 * g * g * u * wu - u * g) / (u * u);
  };
  const QuadResult i1 = integrate(f1, 0.0, 0.5 * kPi, q);
  const QuadResult i2 = integrate(f2, {0.0, kSwitch, 0.5 * kPi}, q);
  const double v = 1.0 + g * g - g * (5.0 + 2.0 * g * g) * wg + 4.0 * g / kPi * i1.value +
                   2.0 / (kPi * g) * i2.value;
  const double err = 4.0 * g / kPi * i1.error + 2.0 / (kPi * g) * i2.error;
  return make(clamp_probability(v, std::max(err, 1e-12)), err, Method::AsymLb, i1.converged && i2.converged);
}

ReliabilityEstimate reliability_asym_lb_linear(double g) {
  if (!(g > 0.0)) throw std::invalid_argument("reliability_asym_lb_linear: gamma must be positive");
  if (g <= kSeriesBelow) {
    const Poly w1 = w_series(1.0, kSeriesOrder + 2);
    const Poly w2 = w_series(2.0, kSeriesOrder + 2);
    Poly c = add(scale(mul(w1, Poly{2.0, 0.0, 7.0, 0.0, 2.0}), -1.0), scale(w2, 2.0));
    c = add(c, Poly{0.0, 3.0, 0.0, 1.0});
    return make(eval_over_g(c, g, kSeriesOrder), 0.0, Method::AsymLbLinear);
  }
  const double g2 = g * g;
  const double v = (3.0 * g + g2 * g - w_func(g) * (2.0 * g2 * g2 + 7.0 * g2 + 2.0) + 2.0 * w_func(2.0 * g)) / g;
  return make(clamp_probability(v, 1e-14), 0.0, Method::AsymLbLinear);
}

}  // namespace blockrel::analytic2
