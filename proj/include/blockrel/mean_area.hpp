#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blockrel/model.hpp"
#include "blockrel/quadrature.hpp"
#include "blockrel/types.hpp"

namespace blockrel {

enum class AreaRoute {
  Sweep,     // exact length average, 1D orientation quadrature
  Clipping,  // polygon clipping inside a 2D (length, orientation) quadrature
};

// Mean blocking-region union area of the links ending at `ends`, averaged over
// the blockage length and orientation laws.
QuadResult mean_union_area(std::span<const Point> ends, const BlockageSpec& spec,
                           const QuadratureConfig& q, AreaRoute route = AreaRoute::Sweep);
QuadResult mean_union_area(const LinkGeometry& links, const BlockageSpec& spec,
                           const QuadratureConfig& q, AreaRoute route = AreaRoute::Sweep);

// Mean union areas of several link subsets in one orientation pass. Bit i of
// masks[k] selects ends[i] for output k.
VecQuadResult mean_union_areas(std::span<const Point> ends, std::span<const std::uint32_t> masks,
                               const BlockageSpec& spec, const QuadratureConfig& q);

}  // namespace blockrel
