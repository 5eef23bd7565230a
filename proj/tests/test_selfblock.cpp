#include <cmath>
#include <numbers>

#include "blockrel/analytic2.hpp"
#include "blockrel/rng.hpp"
#include "blockrel/selfblock.hpp"
#include "doctest.h"

using namespace blockrel;
using namespace blockrel::selfblock;

namespace {
constexpr double kPi = std::numbers::pi;

QuadratureConfig tol(double t) {
  QuadratureConfig q;
  q.abs_tol = t;
  q.rel_tol = t;
  return q;
}

// Reliability with self-blocking from the joint law of (R1, D2, |Phi|) in
// beta-normalised units, with mu N replaced by mu_n. The law: nearest station
// at x1, second one uniform in angle outside the cone, so
//   density = x1 x2 exp(-(1-c) x1^2/4g^2 - c x2^2/4g^2) / (4 pi g^4)
// on x1 < x2, |Phi| in (omega, pi).
template <class MuN>
double sb_oracle(double g, double omega, MuN mu_n, double t, JointSurvival model = JointSurvival::ArcOverlap) {
  const QuadratureConfig q = tol(t);
  const double c = 1.0 - omega / kPi;
  const double X = analytic2::x_cutoff(g) / std::sqrt(c);
  auto over_phi = [&](double phi) {
    const double c2 = joint_survival(phi, omega, model);
    auto over_x2 = [&](double x2) {
      auto over_x1 = [&](double x1) {
        const double w = x1 * std::exp(-(1.0 - c) * x1 * x1 / (4.0 * g * g));
        return w * (c * std::exp(-x1) + c * std::exp(-x2) - c2 * std::exp(-mu_n(x1, x2, phi)));
      };
      return x2 * std::exp(-c * x2 * x2 / (4.0 * g * g)) * integrate(over_x1, 0.0, x2, q).value;
    };
    return integrate(over_x2, 0.0, X, q).value;
  };
  std::vector<double> br{omega, kPi};
  if (2.0 * omega < kPi && 2.0 * omega > omega) br.insert(br.begin() + 1, 2.0 * omega);
  if (2.0 * kPi - 2.0 * omega > omega && 2.0 * kPi - 2.0 * omega < kPi) br.insert(br.end() - 1, 2.0 * kPi - 2.0 * omega);
  return integrate(over_phi, std::span<const double>(br), q).value / (4.0 * kPi * g * g * g * g);
}
}  // namespace

TEST_CASE("joint survival of the two links") {
  for (double w : {0.2, 0.7, 1.2}) {
    CHECK(joint_survival(kPi, w) == doctest::Approx(std::max(0.0, 1.0 - 2.0 * w / kPi) +
                                                    std::max(0.0, 2.0 * w - kPi) / kPi));
    if (2.0 * w < kPi) CHECK(joint_survival(2.0 * w + 0.01, w) == doctest::Approx(1.0 - 2.0 * w / kPi));
    CHECK(joint_survival(1.0, w, JointSurvival::DisjointCones) == doctest::Approx(std::max(0.0, 1.0 - 2.0 * w / kPi)));
  }
  CHECK(mean_joint_survival(0.5 * kPi) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(mean_joint_survival(0.5 * kPi, JointSurvival::DisjointCones) == 0.0);
}

TEST_CASE("joint survival matches a simulated body heading") {
  StreamRng rng(21, 0);
  for (double w : {0.4, 1.0}) {
    for (double phi : {0.5, 1.3, 2.9}) {
      const int N = 400000;
      int both = 0;
      for (int i = 0; i < N; ++i) {
        const double h = 2.0 * kPi * rng.uniform();
        auto dist = [](double a, double b) {
          double d = std::fmod(std::fabs(a - b), 2.0 * kPi);
          return std::min(d, 2.0 * kPi - d);
        };
        if (dist(h, 0.0) > w && dist(h, phi) > w) ++both;
      }
      const double p = static_cast<double>(both) / N;
      CHECK(std::fabs(p - joint_survival(phi, w)) <= 3.5 * std::sqrt(p * (1 - p) / N) + 1e-12);
    }
  }
}

TEST_CASE("second-link distance density") {
  const double lam = per_km2(30.0);
  for (double c : {0.2, 0.5, 2.0 / 3.0, 0.95}) {
    const auto r = integrate([&](double x) { return d2_density(x, lam, c); }, 0.0, 2000.0, tol(1e-12));
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(d2_density(0.0, lam, c) == 0.0);
    for (double x = 1.0; x < 1000.0; x *= 1.7) CHECK(d2_density(x, lam, c) >= 0.0);
  }
  CHECK_THROWS(d2_density(10.0, lam, 1.0));
}

TEST_CASE("closed first part equals the marginal expectations") {
  const double lam = per_km2(30.0);
  for (double g : {0.1, 0.4, 1.5}) {
    for (double w : {0.3, 1.0, 0.5 * kPi, 2.2}) {
      const double c = 1.0 - w / kPi;
      const double b = 2.0 * g * std::sqrt(kPi * lam);
      const double e1 = integrate([&](double r) { return 2 * kPi * lam * r * std::exp(-kPi * lam * r * r - b * r); },
                                  0.0, 3000.0, tol(1e-13)).value;
      const double e2 =
          integrate([&](double r) { return d2_density(r, lam, c) * std::exp(-b * r); }, 0.0, 5000.0, tol(1e-13)).value;
      CHECK(closed_part(g, c) == doctest::Approx(c * (e1 + e2)).epsilon(1e-9));
    }
  }
}

TEST_CASE("independent self-blocking reliability against the triple-integral oracle") {
  auto ind = [](double x1, double x2, double) { return x1 + x2; };
  for (double g : {0.2, 0.8}) {
    for (double w : {0.4, 1.2}) {
      CHECK(reliability_sb_ind(g, w).value == doctest::Approx(sb_oracle(g, w, ind, 1e-10)).epsilon(1e-7).scale(1.0));
    }
  }
}

TEST_CASE("half-angle closed form") {
  for (double g : {0.05, 0.4, 2.0}) {
    CHECK(sb_ind_half_closed(g) == doctest::Approx(reliability_sb_ind(g, 0.5 * kPi).value).epsilon(1e-8));
    CHECK(sb_ind_half_closed(g, JointSurvival::DisjointCones) ==
          doctest::Approx(reliability_sb_ind(g, 0.5 * kPi, JointSurvival::DisjointCones).value).epsilon(1e-8));
    // with the constant survival the squared term drops out entirely
    CHECK(sb_ind_half_closed(g, JointSurvival::DisjointCones) == doctest::Approx(closed_part(g, 0.5)).epsilon(1e-12));
  }
}

TEST_CASE("asymptotic self-blocking bound against the substitution oracle") {
  auto lb = [](double x1, double x2, double phi) { return x2 + x1 * std::pow(std::sin(0.5 * phi), 2); };
  for (double g : {0.2, 0.8}) {
    for (double w : {0.4, 1.2}) {
      CHECK(reliability_sb_asym_lb(g, w).value == doctest::Approx(sb_oracle(g, w, lb, 1e-10)).epsilon(1e-5).scale(1.0));
      CHECK(reliability_sb_asym_lb(g, w).value <= reliability_sb_ind(g, w).value + 1e-12);
    }
  }
}

TEST_CASE("self-blocking results reduce to the plain ones as the cone closes") {
  for (double g : {0.1, 0.5, 1.5}) {
    CHECK(reliability_sb_ind(g, 1e-3).value == doctest::Approx(analytic2::reliability_ind(g).value).epsilon(1e-4));
    CHECK(reliability_sb_asym_lb(g, 1e-3).value ==
          doctest::Approx(analytic2::reliability_asym_lb(g).value).epsilon(1e-4));
  }
  const double lam = per_km2(30.0);
  const BlockageSpec spec = BlockageSpec::uniform(per_km2(100.0), 100.0);
  const double dep = analytic2::reliability_dep(lam, spec).value;
  CHECK(reliability_sb_dep(lam, spec, 1e-3).value == doctest::Approx(dep).epsilon(1e-4));
  CHECK(reliability_sb_dep(lam, spec, kPi / 3).value <= dep);
}

TEST_CASE("self-blocking reliabilities shrink as the cone widens") {
  for (double g : {0.1, 0.5, 1.5}) {
    double prev_i = 1.0, prev_a = 1.0;
    for (double w = 0.05; w < kPi - 0.05; w += 0.15) {
      const double i = reliability_sb_ind(g, w).value;
      const double a = reliability_sb_asym_lb(g, w).value;
      CHECK(i <= prev_i + 1e-12);
      CHECK(a <= prev_a + 1e-9);
      CHECK(i >= 0.0);
      CHECK(a >= 0.0);
      prev_i = i;
      prev_a = a;
    }
  }
}

TEST_CASE("no blockages: only the body can block") {
  const BlockageSpec none = BlockageSpec::uniform(0.0, 100.0);
  const double w = kPi / 3;
  const double c = 1.0 - w / kPi;
  CHECK(reliability_sb_dep(per_km2(30.0), none, w).value == doctest::Approx(2.0 * c - mean_joint_survival(w)));
}
