#include "blockrel/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "blockrel/rng.hpp"

namespace blockrel {

Point LinkGeometry::endpoint(std::size_t i) const {
  const double a = angle(i);
  return {r[i] * std::cos(a), r[i] * std::sin(a)};
}

void LinkGeometry::validate() const {
  if (r.empty()) {
    if (!phi.empty()) throw std::invalid_argument("LinkGeometry: phi given without links");
    return;
  }
  if (phi.size() + 1 != r.size())
    throw std::invalid_argument("LinkGeometry: phi must have one entry fewer than r");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] >= 0.0) || !std::isfinite(r[i]))
      throw std::invalid_argument("LinkGeometry: lengths must be finite and nonnegative");
    if (i > 0 && r[i] < r[i - 1]) throw std::invalid_argument("LinkGeometry: r must be ascending");
  }
  for (double a : phi) {
    if (!(a >= 0.0 && a < 2.0 * std::numbers::pi))
      throw std::invalid_argument("LinkGeometry: angles must lie in [0, 2pi)");
  }
}

namespace geometry {

namespace {

// Error-free transformations for the exact orientation fallback.
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bv = s - a;
  e = (a - (s - bv)) + (b - bv);
}

inline void two_product(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

// Adds b to a nonoverlapping expansion stored in increasing magnitude order.
void grow_expansion(std::vector<double>& e, double b) {
  double q = b;
  std::size_t out = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    double s, err;
    two_sum(q, e[i], s, err);
    q = s;
    if (err != 0.0) e[out++] = err;
  }
  e.resize(out);
  if (q != 0.0) e.push_back(q);
}

int orient_exact(Point a, Point b, Point c) {
  // (bx-ax)(cy-ay) - (by-ay)(cx-ax) expanded into six exact products
  const double f[6][2] = {{b.x, c.y}, {-b.x, a.y}, {-a.x, c.y},
                          {-b.y, c.x}, {b.y, a.x}, {a.y, c.x}};
  std::vector<double> e;
  e.reserve(16);
  for (const auto& t : f) {
    double p, err;
    two_product(t[0], t[1], p, err);
    grow_expansion(e, err);
    grow_expansion(e, p);
  }
  if (e.empty()) return 0;
  const double top = e.back();
  return top > 0.0 ? 1 : (top < 0.0 ? -1 : 0);
}

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double polygon_area(const std::vector<Point>& p) {
  if (p.size() < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point& u = p[i];
    const Point& v = p[(i + 1) % p.size()];
    s += u.x * v.y - u.y * v.x;
  }
  return 0.5 * s;
}

constexpr double kSnap = 1e-12;

// Sutherland-Hodgman clip of a convex polygon by a convex counter-clockwise one.
std::vector<Point> clip_convex(const std::vector<Point>& subject, const std::vector<Point>& clip) {
  std::vector<Point> out = subject;
  std::vector<Point> in;
  for (std::size_t e = 0; e < clip.size() && !out.empty(); ++e) {
    const Point& a = clip[e];
    const Point& b = clip[(e + 1) % clip.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (len == 0.0) continue;
    in.swap(out);
    out.clear();
    auto dist = [&](const Point& p) {
      const double d = cross(a, b, p) / len;
      return std::fabs(d) <= kSnap ? 0.0 : d;
    };
    for (std::size_t i = 0; i < in.size(); ++i) {
      const Point& p = in[i];
      const Point& q = in[(i + 1) % in.size()];
      const double dp = dist(p);
      const double dq = dist(q);
      if (dp >= 0.0) out.push_back(p);
      if ((dp > 0.0 && dq < 0.0) || (dp < 0.0 && dq > 0.0)) {
        const double t = dp / (dp - dq);
        out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
    }
  }
  return out;
}

std::vector<BlockingRegion> regions_for(std::span<const Point> ends, double l, double theta) {
  std::vector<BlockingRegion> regs;
  regs.reserve(ends.size());
  for (const Point& p : ends) {
    const double r = std::hypot(p.x, p.y);
    BlockingRegion g = blocking_parallelogram(r, std::atan2(p.y, p.x), l, theta);
    if (g.area() > 0.0) regs.push_back(g);
  }
  return regs;
}

double inclusion_exclusion(const std::vector<std::vector<Point>>& polys, std::size_t last,
                           const std::vector<Point>& current, int sign) {
  double total = sign * polygon_area(current);
  for (std::size_t j = last + 1; j < polys.size(); ++j) {
    std::vector<Point> next = clip_convex(current, polys[j]);
    if (polygon_area(next) <= 0.0) continue;
    total += inclusion_exclusion(polys, j, next, -sign);
  }
  return total;
}

std::vector<Point> link_ends(const LinkGeometry& links) {
  std::vector<Point> ends(links.size());
  for (std::size_t i = 0; i < links.size(); ++i) ends[i] = links.endpoint(i);
  return ends;
}

}  // namespace

int orient2d(Point a, Point b, Point c) {
  const double left = (b.x - a.x) * (c.y - a.y);
  const double right = (b.y - a.y) * (c.x - a.x);
  const double det = left - right;
  const double bound = 3.3306690738754716e-16 * (std::fabs(left) + std::fabs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return orient_exact(a, b, c);
}

namespace {

bool within_box(const Segment& s, Point p) {
  return std::min(s.a.x, s.b.x) <= p.x && p.x <= std::max(s.a.x, s.b.x) &&
         std::min(s.a.y, s.b.y) <= p.y && p.y <= std::max(s.a.y, s.b.y);
}

}  // namespace

bool segments_intersect(const Segment& s1, const Segment& s2) {
  const int d1 = orient2d(s2.a, s2.b, s1.a);
  const int d2 = orient2d(s2.a, s2.b, s1.b);
  const int d3 = orient2d(s1.a, s1.b, s2.a);
  const int d4 = orient2d(s1.a, s1.b, s2.b);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && within_box(s2, s1.a)) return true;
  if (d2 == 0 && within_box(s2, s1.b)) return true;
  if (d3 == 0 && within_box(s1, s2.a)) return true;
  if (d4 == 0 && within_box(s1, s2.b)) return true;
  return false;
}

double BlockingRegion::area() const {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Point& u = vertices[i];
    const Point& v = vertices[(i + 1) % 4];
    s += u.x * v.y - u.y * v.x;
  }
  return 0.5 * s;
}

bool BlockingRegion::contains(Point p) const {
  for (std::size_t i = 0; i < 4; ++i) {
    if (cross(vertices[i], vertices[(i + 1) % 4], p) < 0.0) return false;
  }
  return true;
}

BlockingRegion blocking_parallelogram(double r, double phi, double l, double theta) {
  const Point e{r * std::cos(phi), r * std::sin(phi)};
  const Point h{0.5 * l * std::cos(theta), 0.5 * l * std::sin(theta)};
  BlockingRegion g{{Point{-h.x, -h.y}, Point{e.x - h.x, e.y - h.y}, Point{e.x + h.x, e.y + h.y},
                    Point{h.x, h.y}}};
  if (g.area() < 0.0) std::swap(g.vertices[1], g.vertices[3]);
  return g;
}

double pair_union_area_closed(double r1, double r2, double Phi, double l, double theta) {
  if (!(Phi > 0.0 && Phi < std::numbers::pi))
    throw std::invalid_argument("pair_union_area_closed: Phi must lie in (0, pi)");
  if (!(theta > 0.0 && theta < std::numbers::pi))
    throw std::invalid_argument("pair_union_area_closed: theta must lie in (0, pi)");
  const double s_t = std::sin(theta);
  const double s_tp = std::sin(theta - Phi);
  const double s_p = std::sin(Phi);
  const double a1 = l * r1 * std::fabs(s_tp);
  const double a2 = l * r2 * s_t;
  if (theta <= Phi || l == 0.0) return a1 + a2;
  const double tri = l * l * s_t * s_tp / (2.0 * s_p);
  const double m = std::min({1.0, r1 * s_p / (l * s_t), r2 * s_p / (l * s_tp)});
  const double overlap = tri * (1.0 - (1.0 - m) * (1.0 - m));
  return a1 + a2 - overlap;
}

double union_area_exact(std::span<const Point> ends, double l, double theta) {
  const std::vector<BlockingRegion> regs = regions_for(ends, l, theta);
  std::vector<std::vector<Point>> polys;
  polys.reserve(regs.size());
  for (const auto& g : regs) polys.emplace_back(g.vertices.begin(), g.vertices.end());
  double total = 0.0;
  for (std::size_t i = 0; i < polys.size(); ++i) total += inclusion_exclusion(polys, i, polys[i], 1);
  return std::max(total, 0.0);
}

double union_area_exact(const LinkGeometry& links, double l, double theta) {
  const std::vector<Point> ends = link_ends(links);
  return union_area_exact(ends, l, theta);
}

double union_area_sweep(std::span<const Point> ends, double l, double theta) {
  return swept_union_area(ends, theta, FixedLengthKernel{l});
}

double union_area_sweep(const LinkGeometry& links, double l, double theta) {
  const std::vector<Point> ends = link_ends(links);
  return union_area_sweep(ends, l, theta);
}

AreaEstimate union_area_mc(const LinkGeometry& links, double l, double theta, std::uint64_t samples,
                           std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("union_area_mc: samples must be positive");
  const std::vector<Point> ends = link_ends(links);
  const std::vector<BlockingRegion> regs = regions_for(ends, l, theta);
  if (regs.empty()) return {};
  double x0 = regs[0].vertices[0].x, x1 = x0, y0 = regs[0].vertices[0].y, y1 = y0;
  for (const auto& g : regs) {
    for (const Point& p : g.vertices) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
  }
  StreamRng rng(seed, 0, 0);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Point p{x0 + (x1 - x0) * rng.uniform(), y0 + (y1 - y0) * rng.uniform()};
    for (const auto& g : regs) {
      if (g.contains(p)) {
        ++hits;
        break;
      }
    }
  }
  const double box = (x1 - x0) * (y1 - y0);
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / n;
  return {box * p, box * std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace geometry
}  // namespace blockrel
