#include "blockrel/analytic_n.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "blockrel/analytic2.hpp"
#include "blockrel/mean_area.hpp"
#include "blockrel/qmc.hpp"

namespace blockrel::analytic_n {

namespace {

constexpr double kPi = std::numbers::pi;

ReliabilityEstimate make(double v, double err, Method m, std::uint64_t samples, bool ok = true) {
  ReliabilityEstimate e;
  e.value = v;
  e.error = err;
  e.method = m;
  e.samples = samples;
  e.converged = ok;
  return e;
}

void check_n(int n) {
  if (n < 1) throw std::invalid_argument("diversity order n must be at least 1");
}

double k_lower_bound(std::span<const double> x, std::span<const double> phi) {
  const std::size_t n = x.size();
  const std::uint32_t full = (1u << n) - 1;
  double total = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    int top = 31 - __builtin_clz(mask);
    const double ref = top + 1 < static_cast<int>(n) ? phi[top] : 0.0;
    double e = x[top];
    double w = 1.0;
    for (int i = 0; i < top; ++i) {
      if (!(mask & (1u << i))) continue;
      const double a = (i + 1 < static_cast<int>(n) ? phi[i] : 0.0) - ref;
      const double s = std::sin(0.5 * a);
      e += x[i] * s * s * w;
      w *= 0.5;
    }
    const int bits = __builtin_popcount(mask);
    total += (bits % 2 == 1 ? 1.0 : -1.0) * std::exp(-e);
  }
  return total;
}

double k_exact(std::span<const double> x, std::span<const double> phi, const ExactMode& m) {
  const std::size_t n = x.size();
  if (n > 12) throw std::invalid_argument("k_func: exact mode supports at most 12 links");
  const double b = beta(*m.spec);
  if (m.spec->mu == 0.0 || b == 0.0) return 1.0;
  std::vector<Point> ends(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i + 1 < n ? phi[i] : 0.0;
    ends[i] = {x[i] / b * std::cos(a), x[i] / b * std::sin(a)};
  }
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> masks(full);
  for (std::uint32_t k = 0; k < full; ++k) masks[k] = k + 1;
  const VecQuadResult areas = mean_union_areas(ends, masks, *m.spec, m.q);
  double total = 0.0;
  for (std::uint32_t k = 0; k < full; ++k) {
    const int bits = __builtin_popcount(masks[k]);
    total += (bits % 2 == 1 ? 1.0 : -1.0) * std::exp(-m.spec->mu * areas.value[k]);
  }
  return total;
}

}  // namespace

double g_kernel(double y) {
  if (std::fabs(y) < 0.5) {
    // 2 sum_{m>=1} (-1)^{m+1} y^{m+2} / ((m+2) m!)
    double term = 1.0;  // y^m / m!
    double s = 0.0;
    for (int m = 1; m <= 30; ++m) {
      term *= y / m;
      const double t = term / (m + 2);
      s += (m % 2 == 1 ? t : -t);
      if (std::fabs(t) < 1e-18 * std::fabs(s)) break;
    }
    return 2.0 * y * y * s;
  }
  return y * y - 2.0 + 2.0 * (y + 1.0) * std::exp(-y);
}

double j_func(int i, double y) {
  if (i < 0) throw std::invalid_argument("j_func: i must be nonnegative");
  if (i == 0) return 1.0;
  return std::pow(0.5 * g_kernel(y), i) / std::tgamma(i + 1.0);
}

ReliabilityEstimate reliability_n_ind(double g, int n, const QuadratureConfig& q) {
  check_n(n);
  if (!(g > 0.0)) throw std::invalid_argument("reliability_n_ind: gamma must be positive");
  const double log_pref = std::log(2.0) - (2.0 * n + 2.0) * std::log(2.0 * g) - std::lgamma(n + 1.0);
  const double t_max = 2.0 * g * (std::sqrt(16.0 * std::log(10.0)) + 1.2 * std::sqrt(static_cast<double>(n)));
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double k = g_kernel(t);
    if (k <= 0.0) return 0.0;
    return std::exp(log_pref + std::log(t) - t * t / (4.0 * g * g) + n * std::log(k));
  };
  QuadratureConfig qq = q;
  qq.abs_tol = std::min(q.abs_tol, 1e-12);
  qq.rel_tol = std::min(q.rel_tol, 1e-12);
  // The kernel's mass sits near t = 2g sqrt(n); a split there helps for small g.
  const double mid = std::min(0.5 * t_max, 2.0 * g * std::sqrt(static_cast<double>(n)));
  const QuadResult r = integrate(f, {0.0, mid, t_max}, qq);
  return make(analytic2::clamp_probability(1.0 - r.value, std::max(r.error, 1e-14)), r.error, Method::NInd, 0,
              r.converged);
}

double required_density_n(double target, double beta_v, int n) {
  check_n(n);
  if (!(beta_v > 0.0)) throw std::invalid_argument("required_density_n: beta must be positive");
  const double gs =
      analytic2::gamma_for_target([n](double g) { return reliability_n_ind(g, n).value; }, target);
  return beta_v * beta_v / (4.0 * kPi * gs * gs);
}

double lb_mean_area_n(std::span<const int> subset, const LinkGeometry& links, double l_max) {
  if (subset.empty()) throw std::invalid_argument("lb_mean_area_n: subset must be nonempty");
  for (std::size_t j = 0; j < subset.size(); ++j) {
    if (subset[j] < 0 || static_cast<std::size_t>(subset[j]) >= links.size())
      throw std::invalid_argument("lb_mean_area_n: index out of range");
    if (j > 0 && subset[j] <= subset[j - 1])
      throw std::invalid_argument("lb_mean_area_n: indices must be strictly ascending");
  }
  const int top = subset.back();
  const double ref = links.angle(top);
  double s = links.r[top];
  double w = 1.0;
  for (std::size_t j = 0; j + 1 < subset.size(); ++j) {
    const double h = std::sin(0.5 * (links.angle(subset[j]) - ref));
    s += links.r[subset[j]] * h * h * w;
    w *= 0.5;
  }
  return l_max / kPi * s;
}

double k_func(std::span<const double> x, std::span<const double> phi, const KMode& mode) {
  if (x.empty()) throw std::invalid_argument("k_func: need at least one link");
  if (phi.size() + 1 != x.size()) throw std::invalid_argument("k_func: phi must have n-1 entries");
  if (const auto* e = std::get_if<ExactMode>(&mode)) return k_exact(x, phi, *e);
  if (x.size() > 30) throw std::invalid_argument("k_func: too many links");
  return k_lower_bound(x, phi);
}

void map_link_sample(std::span<const double> u, double g, int n, std::span<double> x, std::span<double> phi) {
  const double big = boost::math::gamma_p_inv(static_cast<double>(n), u[0]);
  const double xn = 2.0 * g * std::sqrt(big);
  for (int i = 0; i + 1 < n; ++i) x[i] = xn * std::sqrt(u[1 + i]);
  std::sort(x.begin(), x.begin() + (n - 1));
  x[n - 1] = xn;
  for (int i = 0; i + 1 < n; ++i) phi[i] = 2.0 * kPi * u[n + i];
}

ReliabilityEstimate reliability_n_lb(double g, int n, std::uint64_t samples, std::uint64_t seed,
                                     const QmcConfig& cfg) {
  check_n(n);
  if (!(g > 0.0)) throw std::invalid_argument("reliability_n_lb: gamma must be positive");
  const std::size_t dims = static_cast<std::size_t>(2 * n - 1);
  const QmcEstimate e = qmc_mean(dims, samples, cfg.replicates, seed, cfg.workers, [&](std::span<const double> u) {
    std::vector<double> x(n), phi(n - 1);
    map_link_sample(u, g, n, x, phi);
    return k_lower_bound(x, phi);
  });
  return make(std::clamp(e.mean, 0.0, 1.0), e.stderr_, Method::NLb, e.samples);
}

ReliabilityEstimate reliability_n_dep(double lambda, const BlockageSpec& spec, int n, std::uint64_t samples,
                                      std::uint64_t seed, const QmcConfig& cfg) {
  check_n(n);
  if (n > 12) throw std::invalid_argument("reliability_n_dep: n must be at most 12");
  if (!(lambda > 0.0)) throw std::invalid_argument("reliability_n_dep: lambda must be positive");
  spec.validate();
  const double b = beta(spec);
  if (spec.mu == 0.0 || b == 0.0) return make(1.0, 0.0, Method::AnalyticDep, 0);
  const double g = gamma(b, lambda);
  ExactMode mode{&spec, {}};
  mode.q.abs_tol = 1e-300;
  mode.q.rel_tol = 1e-7;
  mode.q.nodes = 15;
  const std::size_t dims = static_cast<std::size_t>(2 * n - 1);
  const QmcEstimate e = qmc_mean(dims, samples, cfg.replicates, seed, cfg.workers, [&](std::span<const double> u) {
    std::vector<double> x(n), phi(n - 1);
    map_link_sample(u, g, n, x, phi);
    return k_exact(x, phi, mode);
  });
  return make(std::clamp(e.mean, 0.0, 1.0), e.stderr_, Method::AnalyticDep, e.samples);
}

}  // namespace blockrel::analytic_n
