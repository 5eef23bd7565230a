#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "blockrel/analytic2.hpp"
#include "blockrel/analytic_n.hpp"
#include "blockrel/experiment.hpp"
#include "blockrel/geometry.hpp"
#include "blockrel/mean_area.hpp"
#include "blockrel/montecarlo.hpp"
#include "blockrel/quadrature.hpp"
#include "blockrel/rng.hpp"
#include "blockrel/selfblock.hpp"
#include "blockrel/special.hpp"

namespace blockrel::experiment {

namespace {

constexpr double kPi = std::numbers::pi;

class Suite {
 public:
  explicit Suite(std::ostream& out) : out_(out) {}

  void check(const std::string& name, double got, double want, double tol) {
    const double d = std::fabs(got - want);
    const bool ok = d <= tol;
    char buf[320];
    std::snprintf(buf, sizeof buf, "%s %-48s got %.12g want %.12g (|diff| %.2e, tol %.1e)\n", ok ? "PASS" : "FAIL",
                  name.c_str(), got, want, d, tol);
    out_ << buf;
    failures_ += ok ? 0 : 1;
  }

  void check_true(const std::string& name, bool ok, const std::string& detail) {
    out_ << (ok ? "PASS " : "FAIL ") << name << ' ' << detail << '\n';
    failures_ += ok ? 0 : 1;
  }

  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

// Independent-blocking reliability from the joint law of the two nearest
// distances, integrated directly in normalised units.
double ind_double_integral(double g) {
  QuadratureConfig q;
  q.abs_tol = 1e-13;
  q.rel_tol = 1e-12;
  const double X = analytic2::x_cutoff(g);
  auto outer = [&](double x2) {
    auto inner = [&](double x1) { return x1 * (1.0 - std::exp(-x1)) * (1.0 - std::exp(-x2)); };
    return x2 * std::exp(-x2 * x2 / (4.0 * g * g)) * integrate(inner, 0.0, x2, q).value;
  };
  return 1.0 - integrate(outer, 0.0, X, q).value / (4.0 * g * g * g * g);
}

double j_recursion(int i, double y) {
  if (i == 0) return 1.0;
  QuadratureConfig q;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-12;
  auto f = [&](double t) { return t * (1.0 - std::exp(-t)) * j_recursion(i - 1, t); };
  return integrate(f, 0.0, y, q).value;
}

}  // namespace

int run_quick_verify(std::ostream& out) {
  Suite s(out);

  s.check("erfcx(0)", erfcx(0.0), 1.0, 1e-15);
  {
    const double u = 1.0 / (2.0 * 30.0 * 30.0);
    s.check("erfcx(30) asymptote", erfcx(30.0) * 30.0 * std::sqrt(kPi),
            1.0 - u + 3.0 * u * u - 15.0 * u * u * u + 105.0 * u * u * u * u, 1e-12);
  }

  for (double g : {0.1, 0.3, 1.0, 3.0}) {
    const std::string tag = "gamma=" + std::to_string(g).substr(0, 4);
    const double closed = analytic2::reliability_ind(g).value;
    s.check("ind closed vs double integral " + tag, closed, ind_double_integral(g), 1e-8);
    s.check("n-order ind at n=2 vs closed " + tag, analytic_n::reliability_n_ind(g, 2).value, closed, 1e-8);
  }

  for (int i = 1; i <= 3; ++i) {
    s.check("J(" + std::to_string(i) + ", 1.7) vs nested recursion", analytic_n::j_func(i, 1.7), j_recursion(i, 1.7),
            1e-10);
  }

  {
    StreamRng rng(7, 0, 0);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
      const double r1 = 5.0 + 95.0 * rng.uniform();
      const double r2 = 5.0 + 95.0 * rng.uniform();
      const double phi = 0.01 + (kPi - 0.02) * rng.uniform();
      const double l = 1.0 + 60.0 * rng.uniform();
      const double th = 0.01 + (kPi - 0.02) * rng.uniform();
      const double closed = geometry::pair_union_area_closed(r1, r2, phi, l, th);
      const Point ends[2] = {{r1 * std::cos(phi), r1 * std::sin(phi)}, {r2, 0.0}};
      const double exact = geometry::union_area_exact(ends, l, th);
      worst = std::max(worst, std::fabs(closed - exact) / exact);
    }
    s.check("pair union closed vs clipping (max rel)", worst, 0.0, 1e-9);
  }

  {
    const BlockageSpec spec = BlockageSpec::uniform(per_km2(100.0), 40.0);
    const LinkGeometry links{{30.0, 55.0, 80.0}, {0.4, 2.1}};
    QuadratureConfig q;
    q.abs_tol = 1e-9;
    q.rel_tol = 1e-10;
    const double sweep = mean_union_area(links, spec, q, AreaRoute::Sweep).value;
    const double clip = mean_union_area(links, spec, q, AreaRoute::Clipping).value;
    s.check("mean union area sweep vs clipping (rel)", sweep / clip - 1.0, 0.0, 1e-7);
  }

  s.check("omega=pi/2 closed form vs quadrature", selfblock::sb_ind_half_closed(0.4),
          selfblock::reliability_sb_ind(0.4, 0.5 * kPi).value, 1e-8);

  for (double g : {0.1, 0.5, 2.0}) {
    const double asym = analytic2::reliability_asym_lb(g).value;
    const double ind = analytic2::reliability_ind(g).value;
    s.check_true("asym lb <= ind at gamma=" + std::to_string(g).substr(0, 3), asym <= ind + 1e-12,
                 std::to_string(asym) + " <= " + std::to_string(ind));
  }

  {
    const double lambda = per_km2(30.0);
    const BlockageSpec spec = BlockageSpec::uniform(per_km2(100.0), 100.0);
    const auto dep = analytic2::reliability_dep(lambda, spec);
    const auto mc = montecarlo::estimate_reliability(NetworkSpec{lambda, 2, 0.0}, spec, 200000, 11);
    const double z = (dep.value - mc.value) / std::hypot(mc.error, dep.error);
    char buf[160];
    std::snprintf(buf, sizeof buf, "dep %.6f, mc %.6f +- %.6f, z %+.2f", dep.value, mc.value, mc.error, z);
    s.check_true("dependent quadrature vs simulation (3 sigma)", std::fabs(z) <= 3.0, buf);
  }

  out << (s.failures() == 0 ? "all checks passed\n" : std::to_string(s.failures()) + " check(s) failed\n");
  return s.failures();
}

}  // namespace blockrel::experiment
