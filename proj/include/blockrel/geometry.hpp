#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "blockrel/types.hpp"

namespace blockrel::geometry {

// Sign of the orientation determinant of (a, b, c): positive for a
// counter-clockwise turn. Exact for all finite double inputs.
int orient2d(Point a, Point b, Point c);

// Closed-segment intersection. Touching (including a shared endpoint or a
// collinear overlap of length zero) counts as intersecting.
bool segments_intersect(const Segment& s1, const Segment& s2);

struct BlockingRegion {
  std::array<Point, 4> vertices;  // counter-clockwise
  double area() const;
  bool contains(Point p) const;
};

// Centres of blockages of length l and orientation theta that cross the link
// from the origin to r (cos phi, sin phi).
BlockingRegion blocking_parallelogram(double r, double phi, double l, double theta);

// Union area of the two blocking parallelograms for links (r1 at angle Phi,
// r2 at angle 0), blockage length l and orientation theta in (0, pi).
double pair_union_area_closed(double r1, double r2, double Phi, double l, double theta);

// Area of the union of the blocking parallelograms of all links by convex
// clipping and inclusion-exclusion.
double union_area_exact(std::span<const Point> ends, double l, double theta);
double union_area_exact(const LinkGeometry& links, double l, double theta);

// Same union area from a sweep along the blockage direction (see
// swept_union_area); fixed length l.
double union_area_sweep(std::span<const Point> ends, double l, double theta);
double union_area_sweep(const LinkGeometry& links, double l, double theta);

struct AreaEstimate {
  double area = 0.0;
  double stderr_ = 0.0;
};

// Hit-or-miss estimate over the bounding box of all parallelogram vertices.
AreaEstimate union_area_mc(const LinkGeometry& links, double l, double theta, std::uint64_t samples,
                           std::uint64_t seed);

// Sweep formulation of the union area. Slicing the plane with lines parallel
// to the blockage direction u, link i contributes at offset t (0 <= t <= h_i,
// on its own side of the line through the origin along u) an interval of
// length l centred at t*kappa_i. Links on opposite sides never meet, and on
// one side the union length at offset t is
//     l + sum over kappa-adjacent active pairs of min(l, t * dkappa).
// Integrating over t needs only
//     kernel.mean()             E[l]
//     kernel.overlap_integral(c) = int_0^c E[min(l, s)] ds
// so the kernel may average over a length law. Returns E_l[area] for theta.
template <class Kernel>
double swept_union_area(std::span<const Point> ends, double theta, const Kernel& kernel);

// Fixed-length kernel for swept_union_area.
struct FixedLengthKernel {
  double l;
  double mean() const { return l; }
  double overlap_integral(double c) const {
    if (c <= l) return 0.5 * c * c;
    return 0.5 * l * l + l * (c - l);
  }
};

namespace detail {

struct SweepItem {
  double kappa;
  double h;
};

template <class Kernel>
double swept_side(std::vector<SweepItem>& items, const Kernel& kernel) {
  if (items.empty()) return 0.0;
  double hmax = 0.0;
  for (const auto& it : items) hmax = std::max(hmax, it.h);
  double total = kernel.mean() * hmax;
  if (items.size() == 1) return total;
  std::sort(items.begin(), items.end(),
            [](const SweepItem& a, const SweepItem& b) { return a.kappa < b.kappa; });
  // Band structure: between consecutive distinct heights the active set is
  // fixed; adjacency among active items changes only when one drops out.
  std::vector<double> levels;
  levels.reserve(items.size() + 1);
  levels.push_back(0.0);
  for (const auto& it : items) levels.push_back(it.h);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (std::size_t b = 0; b + 1 < levels.size(); ++b) {
    const double lo = levels[b];
    const double hi = levels[b + 1];
    const double* prev = nullptr;
    for (const auto& it : items) {
      if (it.h < hi) continue;  // inactive within (lo, hi)
      if (prev != nullptr) {
        const double dk = it.kappa - *prev;
        if (dk > 0.0) {
          total += (kernel.overlap_integral(dk * hi) - kernel.overlap_integral(dk * lo)) / dk;
        }
      }
      prev = &it.kappa;
    }
  }
  return total;
}

}  // namespace detail

template <class Kernel>
double swept_union_area(std::span<const Point> ends, double theta, const Kernel& kernel) {
  const double ux = std::cos(theta);
  const double uy = std::sin(theta);
  std::vector<detail::SweepItem> left, right;
  left.reserve(ends.size());
  right.reserve(ends.size());
  for (const Point& p : ends) {
    const double along = p.x * ux + p.y * uy;
    const double across = ux * p.y - uy * p.x;
    if (across == 0.0) continue;  // parallel to the blockage: zero area
    const double h = std::fabs(across);
    (across > 0.0 ? left : right).push_back({along / h, h});
  }
  return detail::swept_side(left, kernel) + detail::swept_side(right, kernel);
}

}  // namespace blockrel::geometry
