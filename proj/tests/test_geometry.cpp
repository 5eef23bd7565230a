#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "blockrel/geometry.hpp"
#include "blockrel/rng.hpp"
#include "doctest.h"

using namespace blockrel;
using namespace blockrel::geometry;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<Point> ends_of(const LinkGeometry& g) {
  std::vector<Point> e;
  for (std::size_t i = 0; i < g.size(); ++i) e.push_back(g.endpoint(i));
  return e;
}

LinkGeometry random_links(StreamRng& rng, int n) {
  LinkGeometry g;
  for (int i = 0; i < n; ++i) g.r.push_back(1.0 + 120.0 * rng.uniform());
  std::sort(g.r.begin(), g.r.end());
  for (int i = 0; i + 1 < n; ++i) g.phi.push_back(2.0 * kPi * rng.uniform());
  return g;
}
}  // namespace

TEST_CASE("orientation predicate is exact near collinearity") {
  CHECK(orient2d({0, 0}, {1, 0}, {0, 1}) > 0);
  CHECK(orient2d({0, 0}, {1, 0}, {0, -1}) < 0);
  CHECK(orient2d({0, 0}, {1, 1}, {2, 2}) == 0);
  // Points on y = x offset by one ulp: naive floating evaluation gets these wrong.
  const double a = 0.1, b = 0.3;
  CHECK(orient2d({a, a}, {b, b}, {0.2, std::nextafter(0.2, 1.0)}) > 0);
  CHECK(orient2d({a, a}, {b, b}, {0.2, std::nextafter(0.2, 0.0)}) < 0);
  CHECK(orient2d({a, a}, {b, b}, {0.2, 0.2}) == 0);
}

TEST_CASE("segment intersection with touching counted as blocked") {
  CHECK(segments_intersect({{0, 0}, {2, 0}}, {{1, -1}, {1, 1}}));
  CHECK_FALSE(segments_intersect({{0, 0}, {1, 0}}, {{2, 0}, {3, 0}}));
  CHECK(segments_intersect({{0, 0}, {1, 0}}, {{1, 0}, {1, 1}}));
  CHECK(segments_intersect({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}));
  CHECK_FALSE(segments_intersect({{0, 0}, {1, 1}}, {{0, 1}, {0.4, 0.6000001}}));
  CHECK(segments_intersect({{0, 0}, {0, 0}}, {{-1, 0}, {1, 0}}));
}

TEST_CASE("blocking parallelogram area") {
  CHECK(blocking_parallelogram(10, 0, 2, kPi / 2).area() == doctest::Approx(20.0));
  CHECK(blocking_parallelogram(10, 0.7, 2, 0.7).area() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(blocking_parallelogram(5, kPi / 6, 3, kPi / 2).area() == doctest::Approx(15.0 * std::sin(kPi / 3)));
}

TEST_CASE("parallelogram is exactly the set of blocking centres") {
  StreamRng rng(3, 0);
  for (int k = 0; k < 3000; ++k) {
    const double r = 5.0 + 50.0 * rng.uniform();
    const double phi = 2.0 * kPi * rng.uniform();
    const double l = 1.0 + 30.0 * rng.uniform();
    const double th = kPi * rng.uniform();
    const Point c{-40.0 + 100.0 * rng.uniform(), -40.0 + 100.0 * rng.uniform()};
    const Segment link{{0, 0}, {r * std::cos(phi), r * std::sin(phi)}};
    const Segment blk{{c.x - 0.5 * l * std::cos(th), c.y - 0.5 * l * std::sin(th)},
                      {c.x + 0.5 * l * std::cos(th), c.y + 0.5 * l * std::sin(th)}};
    CHECK(blocking_parallelogram(r, phi, l, th).contains(c) == segments_intersect(link, blk));
  }
}

TEST_CASE("pair closed form matches exact clipping") {
  StreamRng rng(17, 0);
  for (int k = 0; k < 2000; ++k) {
    const double r1 = 0.5 + 100.0 * rng.uniform();
    const double r2 = 0.5 + 100.0 * rng.uniform();
    const double Phi = kPi * (0.001 + 0.998 * rng.uniform());
    const double l = 0.1 + 150.0 * rng.uniform();
    const double th = kPi * (0.001 + 0.998 * rng.uniform());
    const Point ends[2] = {{r1 * std::cos(Phi), r1 * std::sin(Phi)}, {r2, 0.0}};
    const double exact = union_area_exact(ends, l, th);
    CHECK(pair_union_area_closed(r1, r2, Phi, l, th) == doctest::Approx(exact).epsilon(1e-9));
  }
  CHECK_THROWS(pair_union_area_closed(1, 1, 0.0, 1, 1));
  CHECK_THROWS(pair_union_area_closed(1, 1, kPi, 1, 1));
}

TEST_CASE("pair closed form special cases") {
  // disjoint parallelograms when theta <= Phi
  CHECK(pair_union_area_closed(30, 50, 1.2, 10, 0.9) == doctest::Approx(10 * 30 * std::sin(0.3) + 10 * 50 * std::sin(0.9)));
  const Point ends[2] = {{0.0, 100.0}, {100.0, 0.0}};
  CHECK(pair_union_area_closed(100, 100, kPi / 2, 10, 3 * kPi / 4) ==
        doctest::Approx(union_area_exact(ends, 10, 3 * kPi / 4)).epsilon(1e-12));
  CHECK(pair_union_area_closed(100, 100, kPi / 2, 1e-9, 2.0) < 1e-6);
}

TEST_CASE("exact union special cases") {
  const LinkGeometry one{{40.0}, {}};
  CHECK(union_area_exact(one, 7.0, 1.1) == doctest::Approx(7.0 * 40.0 * std::sin(1.1)));
  const LinkGeometry nested{{20.0, 50.0}, {0.0}};
  CHECK(union_area_exact(nested, 7.0, 1.1) == doctest::Approx(7.0 * 50.0 * std::sin(1.1)));
  const LinkGeometry degenerate{{20.0, 50.0}, {1.1}};
  CHECK(union_area_exact(degenerate, 7.0, 1.1) == doctest::Approx(7.0 * 50.0 * std::sin(1.1)));
  CHECK(union_area_exact(std::span<const Point>{}, 3.0, 1.0) == 0.0);
}

TEST_CASE("exact union agrees with the sweep and with hit-or-miss sampling") {
  StreamRng rng(29, 0);
  for (int k = 0; k < 300; ++k) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const LinkGeometry g = random_links(rng, n);
    const double l = 0.5 + 80.0 * rng.uniform();
    const double th = kPi * rng.uniform();
    const double exact = union_area_exact(g, l, th);
    CHECK(union_area_sweep(g, l, th) == doctest::Approx(exact).epsilon(1e-9).scale(1.0));
  }
  for (int k = 0; k < 6; ++k) {
    const LinkGeometry g = random_links(rng, 3);
    const double l = 20.0 + 40.0 * rng.uniform();
    const double th = kPi * rng.uniform();
    const auto mc = union_area_mc(g, l, th, 400000, 100 + k);
    CHECK(std::fabs(mc.area - union_area_exact(g, l, th)) <= 3.5 * mc.stderr_);
  }
  const auto empty = union_area_mc(LinkGeometry{}, 1.0, 1.0, 100, 1);
  CHECK(empty.area == 0.0);
  CHECK(empty.stderr_ == 0.0);
}

TEST_CASE("hit-or-miss sampling agrees with known areas") {
  const LinkGeometry one{{40.0}, {}};
  const auto a = union_area_mc(one, 9.0, 0.8, 200000, 5);
  CHECK(std::fabs(a.area - 9.0 * 40.0 * std::sin(0.8)) <= 3.0 * a.stderr_);
  const LinkGeometry two{{30.0, 60.0}, {0.9}};
  const auto b = union_area_mc(two, 40.0, 2.0, 200000, 6);
  CHECK(std::fabs(b.area - pair_union_area_closed(30.0, 60.0, 0.9, 40.0, 2.0)) <= 3.0 * b.stderr_);
}

TEST_CASE("union area properties: bounds, rotation, scaling") {
  StreamRng rng(41, 0);
  for (int k = 0; k < 300; ++k) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const LinkGeometry g = random_links(rng, n);
    const double l = 0.5 + 60.0 * rng.uniform();
    const double th = kPi * rng.uniform();
    auto e = ends_of(g);
    const double u = union_area_exact(e, l, th);
    double sum = 0.0, mx = 0.0;
    for (const Point& p : e) {
      const double a = blocking_parallelogram(std::hypot(p.x, p.y), std::atan2(p.y, p.x), l, th).area();
      sum += a;
      mx = std::max(mx, a);
    }
    CHECK(u <= sum * (1.0 + 1e-12) + 1e-9);
    CHECK(u >= mx * (1.0 - 1e-12) - 1e-9);

    const double rot = 2.0 * kPi * rng.uniform();
    std::vector<Point> er;
    for (const Point& p : e)
      er.push_back({p.x * std::cos(rot) - p.y * std::sin(rot), p.x * std::sin(rot) + p.y * std::cos(rot)});
    double thr = std::fmod(th + rot, kPi);
    CHECK(union_area_exact(er, l, thr) == doctest::Approx(u).epsilon(1e-9));

    std::vector<Point> es;
    for (const Point& p : e) es.push_back({2.5 * p.x, 2.5 * p.y});
    CHECK(union_area_exact(es, 2.5 * l, th) == doctest::Approx(6.25 * u).epsilon(1e-9));
  }
}
