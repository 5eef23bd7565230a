#include "blockrel/selfblock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "blockrel/mean_area.hpp"
#include "blockrel/special.hpp"

namespace blockrel::selfblock {

namespace {

constexpr double kPi = std::numbers::pi;

void check_omega(double omega) {
  if (!(omega > 0.0 && omega < kPi)) throw std::invalid_argument("self-blocking: omega must lie in (0, pi)");
}

ReliabilityEstimate make(double v, double err, Method m, bool ok = true) {
  ReliabilityEstimate e;
  e.value = v;
  e.error = err;
  e.method = m;
  e.converged = ok;
  return e;
}

std::vector<double> phi_breaks(double omega, JointSurvival model) {
  std::vector<double> b{omega, kPi};
  if (model == JointSurvival::ArcOverlap) {
    for (double x : {2.0 * omega, 2.0 * kPi - 2.0 * omega}) {
      if (x > omega && x < kPi) b.push_back(x);
    }
  }
  std::sort(b.begin(), b.end());
  return b;
}

}  // namespace

SelfBlockParams SelfBlockParams::from_omega(double omega) {
  check_omega(omega);
  return {omega, 1.0 - omega / kPi, std::max(0.0, 1.0 - 2.0 * omega / kPi)};
}

double joint_survival(double phi, double omega, JointSurvival model) {
  const double base = 1.0 - 2.0 * omega / kPi;
  if (model == JointSurvival::DisjointCones) return std::max(0.0, base);
  const double p = std::fabs(std::remainder(phi, 2.0 * kPi));
  const double overlap = std::max(0.0, 2.0 * omega - p) + std::max(0.0, 2.0 * omega - (2.0 * kPi - p));
  return std::clamp(base + overlap / (2.0 * kPi), 0.0, 1.0);
}

double mean_joint_survival(double omega, JointSurvival model) {
  check_omega(omega);
  if (model == JointSurvival::DisjointCones) return std::max(0.0, 1.0 - 2.0 * omega / kPi);
  // Piecewise linear in phi with kinks only at the breaks, so the rule is exact.
  const std::vector<double> br = phi_breaks(omega, model);
  QuadratureConfig q;
  q.nodes = 15;
  const QuadResult r = integrate([omega](double phi) { return joint_survival(phi, omega); },
                                 std::span<const double>(br), q);
  return std::clamp(r.value / (kPi - omega), 0.0, 1.0);
}

double d2_density(double r2, double lambda, double c) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("d2_density: c must lie in (0, 1)");
  if (!(lambda > 0.0)) throw std::invalid_argument("d2_density: lambda must be positive");
  if (!(r2 > 0.0)) return 0.0;
  const double a = lambda * kPi * r2 * r2;
  return -2.0 * c * kPi * lambda * r2 / (1.0 - c) * std::exp(-a * c) * std::expm1(-a * (1.0 - c));
}

double closed_part(double g, double c) {
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("closed_part: c must lie in (0, 1)");
  const double sc = std::sqrt(c);
  return c * (2.0 - 2.0 * g / (1.0 - c) * (w_func(g / sc) / sc - (2.0 * c - 1.0) * w_func(g)));
}

ReliabilityEstimate reliability_sb_dep(double lambda, const BlockageSpec& spec, double omega,
                                       const QuadratureConfig& q, JointSurvival model) {
  if (!(lambda > 0.0)) throw std::invalid_argument("reliability_sb_dep: lambda must be positive");
  spec.validate();
  const SelfBlockParams sb = SelfBlockParams::from_omega(omega);
  const double b = beta(spec);
  const double c = sb.c;
  if (spec.mu == 0.0 || b == 0.0) {
    // No blockages: only the body matters.
    const double v = 2.0 * c - mean_joint_survival(omega, model);
    return make(std::clamp(v, 0.0, 1.0), 0.0, Method::AnalyticDep);
  }
  const double g = gamma(b, lambda);
  const double X = analytic2::x_cutoff(g) / std::sqrt(c);
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
  const double g2 = 4.0 * g * g;
  const double norm = 1.0 / (4.0 * kPi * g * g * g * g);
  auto outer = [&](double phi) {
    const double cs = std::cos(phi), sn = std::sin(phi);
    auto middle = [&](double x2) {
      if (x2 == 0.0) return 0.0;
      const Point e2{x2 / b, 0.0};
      auto inner = [&](double x1) {
        if (x1 == 0.0) return 0.0;
        const std::array<Point, 2> ends{Point{x1 / b * cs, x1 / b * sn}, e2};
        const QuadResult n = blockrel::mean_union_area(std::span<const Point>(ends), spec, q_area);
        ok = ok && n.converged;
        return x1 * std::exp(-(1.0 - c) * x1 * x1 / g2 - mu * n.value);
      };
      const QuadResult in = integrate(inner, 0.0, x2, q_in);
      ok = ok && in.converged;
      return x2 * std::exp(-c * x2 * x2 / g2) * in.value;
    };
    const QuadResult mid = integrate(middle, 0.0, X, q_mid);
    ok = ok && mid.converged;
    return norm * joint_survival(phi, omega, model) * mid.value;
  };
  const std::vector<double> br = phi_breaks(omega, model);
  const QuadResult d = integrate(outer, std::span<const double>(br), q);
  ok = ok && d.converged;
  const double v = closed_part(g, c) - d.value;
  return make(analytic2::clamp_probability(v, std::max(d.error, 1e-12)), d.error, Method::AnalyticDep, ok);
}

ReliabilityEstimate reliability_sb_ind(double g, double omega, JointSurvival model) {
  if (!(g > 0.0)) throw std::invalid_argument("reliability_sb_ind: gamma must be positive");
  const SelfBlockParams sb = SelfBlockParams::from_omega(omega);
  const double c = sb.c;
  const double gc = g / std::sqrt(c);
  // x2 integrated in closed form, leaving one dimension.
  auto f = [&](double x) {
    const double z = x / (2.0 * gc) + gc;
    return 2.0 * gc * gc * x * std::exp(-2.0 * x - x * x / (4.0 * g * g)) * (1.0 - 2.0 * gc * w_func(z));
  };
  QuadratureConfig q;
  q.abs_tol = 1e-300;
  q.rel_tol = 1e-13;
  const QuadResult r = integrate(f, 0.0, analytic2::x_cutoff(g), q);
  const double joint = c / (4.0 * g * g * g * g) * r.value;
  const double v = closed_part(g, c) - mean_joint_survival(omega, model) * joint;
  return make(analytic2::clamp_probability(v, 1e-12), r.error * c / (4.0 * g * g * g * g), Method::AnalyticInd,
              r.converged);
}

double sb_ind_half_closed(double g, JointSurvival model) {
  const double s2 = std::sqrt(2.0);
  const double e = 1.0 - 2.0 * s2 * g * w_func(s2 * g);
  return closed_part(g, 0.5) - mean_joint_survival(0.5 * kPi, model) * e * e;
}

ReliabilityEstimate reliability_sb_asym_lb(double g, double omega, const QuadratureConfig& q, JointSurvival model) {
  if (!(g > 0.0)) throw std::invalid_argument("reliability_sb_asym_lb: gamma must be positive");
  const SelfBlockParams sb = SelfBlockParams::from_omega(omega);
  const double c = sb.c;
  const double gc = g / std::sqrt(c);
  const double X = analytic2::x_cutoff(g);
  QuadratureConfig q_in = q;
  q_in.abs_tol = 1e-300;
  q_in.rel_tol = std::max(0.1 * std::min(q.rel_tol, q.abs_tol), 1e-13);
  bool ok = true;
  auto Sc = [&](double x) {
    const double z = x / (2.0 * gc) + gc;
    return std::exp(-c * x * x / (4.0 * g * g) - x) * (1.0 - 2.0 * gc * w_func(z)) / c;
  };
  const double norm = 1.0 / (2.0 * kPi * g * g);
  auto outer = [&](double phi) {
    const double s = std::sin(0.5 * phi);
    const double s2 = s * s;
    auto inner = [&](double x) { return Sc(x) * std::exp(-x * s2 - (1.0 - c) * x * x / (4.0 * g * g)) * x; };
    const QuadResult r = integrate(inner, 0.0, X, q_in);
    ok = ok && r.converged;
    return norm * joint_survival(phi, omega, model) * r.value;
  };
  const std::vector<double> br = phi_breaks(omega, model);
  const QuadResult d = integrate(outer, std::span<const double>(br), q);
  ok = ok && d.converged;
  const double v = closed_part(g, c) - d.value;
  return make(analytic2::clamp_probability(v, std::max(d.error, 1e-12)), d.error, Method::AsymLb, ok);
}

}  // namespace blockrel::selfblock
