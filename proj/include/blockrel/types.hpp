#pragma once

#include <cstddef>
#include <vector>

namespace blockrel {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Segment {
  Point a;
  Point b;
};

// Links from a user at the origin to its n serving base stations. r is
// ascending; phi[i] is the angle of link i relative to link n (whose own
// angle is 0 and is not stored).
struct LinkGeometry {
  std::vector<double> r;
  std::vector<double> phi;

  std::size_t size() const { return r.size(); }
  double angle(std::size_t i) const { return i + 1 < r.size() ? phi[i] : 0.0; }
  Point endpoint(std::size_t i) const;
  void validate() const;
};

}  // namespace blockrel
