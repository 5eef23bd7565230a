#include "blockrel/mean_area.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include "blockrel/geometry.hpp"

namespace blockrel {

namespace {

struct SpecKernel {
  const LengthDistribution* dist;
  double m;
  double mean() const { return m; }
  double overlap_integral(double c) const { return dist->overlap_integral(c); }
};

// Orientation breakpoints: a link parallel to the blockage changes sides there.
std::vector<double> orientation_breaks(std::span<const Point> ends) {
  std::vector<double> b{0.0, std::numbers::pi};
  for (const Point& p : ends) {
    double a = std::atan2(p.y, p.x);
    a = std::fmod(a, std::numbers::pi);
    if (a < 0.0) a += std::numbers::pi;
    if (a > 1e-12 && a < std::numbers::pi - 1e-12) b.push_back(a);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

QuadResult by_sweep(std::span<const Point> ends, const BlockageSpec& spec, const QuadratureConfig& q) {
  const SpecKernel kernel{&spec.length, spec.length.mean()};
  if (kernel.m == 0.0 || ends.empty()) return {};
  if (const auto* e = std::get_if<EmpiricalOrientation>(&spec.orientation.variant())) {
    double s = 0.0;
    for (const auto& a : e->atoms) s += a.weight * geometry::swept_union_area(ends, a.value, kernel);
    return {s, 0.0, true, e->atoms.size()};
  }
  const std::vector<double> br = orientation_breaks(ends);
  QuadResult r = integrate([&](double th) { return geometry::swept_union_area(ends, th, kernel); },
                           std::span<const double>(br), q);
  r.value /= std::numbers::pi;
  r.error /= std::numbers::pi;
  return r;
}

QuadResult by_clipping(std::span<const Point> ends, const BlockageSpec& spec, const QuadratureConfig& q) {
  if (ends.empty()) return {};
  const std::vector<double> br = orientation_breaks(ends);
  QuadratureConfig inner = q;
  inner.abs_tol = q.abs_tol * 0.1;
  inner.rel_tol = q.rel_tol * 0.1;
  bool ok = true;
  auto at_theta = [&](double th) -> double {
    const LengthDistribution& ld = spec.length;
    return std::visit(
        [&](const auto& d) -> double {
          using D = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<D, UniformLength>) {
            if (d.l_max <= 0.0) return 0.0;
            QuadResult r = integrate([&](double l) { return geometry::union_area_exact(ends, l, th); }, 0.0,
                                     d.l_max, inner);
            ok = ok && r.converged;
            return r.value / d.l_max;
          } else if constexpr (std::is_same_v<D, FixedLength>) {
            return geometry::union_area_exact(ends, d.l, th);
          } else {
            double s = 0.0;
            for (const auto& a : d.atoms) s += a.weight * geometry::union_area_exact(ends, a.value, th);
            return s;
          }
        },
        ld.variant());
  };
  if (const auto* e = std::get_if<EmpiricalOrientation>(&spec.orientation.variant())) {
    double s = 0.0;
    for (const auto& a : e->atoms) s += a.weight * at_theta(a.value);
    return {s, 0.0, ok, 0};
  }
  QuadResult r = integrate(at_theta, std::span<const double>(br), q);
  r.value /= std::numbers::pi;
  r.error /= std::numbers::pi;
  r.converged = r.converged && ok;
  return r;
}

std::vector<Point> ends_of(const LinkGeometry& links) {
  std::vector<Point> e(links.size());
  for (std::size_t i = 0; i < links.size(); ++i) e[i] = links.endpoint(i);
  return e;
}

}  // namespace

QuadResult mean_union_area(std::span<const Point> ends, const BlockageSpec& spec, const QuadratureConfig& q,
                           AreaRoute route) {
  return route == AreaRoute::Sweep ? by_sweep(ends, spec, q) : by_clipping(ends, spec, q);
}

QuadResult mean_union_area(const LinkGeometry& links, const BlockageSpec& spec, const QuadratureConfig& q,
                           AreaRoute route) {
  links.validate();
  const std::vector<Point> e = ends_of(links);
  return mean_union_area(std::span<const Point>(e), spec, q, route);
}

VecQuadResult mean_union_areas(std::span<const Point> ends, std::span<const std::uint32_t> masks,
                               const BlockageSpec& spec, const QuadratureConfig& q) {
  const SpecKernel kernel{&spec.length, spec.length.mean()};
  const std::size_t m = masks.size();
  std::vector<std::vector<Point>> subsets(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < ends.size(); ++i) {
      if (masks[k] & (1u << i)) subsets[k].push_back(ends[i]);
    }
  }
  auto eval = [&](double th, std::span<double> out) {
    for (std::size_t k = 0; k < m; ++k) out[k] = geometry::swept_union_area(subsets[k], th, kernel);
  };
  if (const auto* e = std::get_if<EmpiricalOrientation>(&spec.orientation.variant())) {
    VecQuadResult r;
    r.value.assign(m, 0.0);
    r.error.assign(m, 0.0);
    std::vector<double> tmp(m);
    for (const auto& a : e->atoms) {
      eval(a.value, tmp);
      for (std::size_t k = 0; k < m; ++k) r.value[k] += a.weight * tmp[k];
    }
    return r;
  }
  const std::vector<double> br = orientation_breaks(ends);
  VecQuadResult r = integrate_vec(eval, std::span<const double>(br), m, q);
  for (std::size_t k = 0; k < m; ++k) {
    r.value[k] /= std::numbers::pi;
    r.error[k] /= std::numbers::pi;
  }
  return r;
}

}  // namespace blockrel
