#pragma once

#include <cstdint>
#include <vector>

#include "blockrel/model.hpp"
#include "blockrel/types.hpp"

namespace blockrel::montecarlo::detail {

struct StationDraw {
  std::vector<Point> stations;  // relative to the user, in selection order
  std::vector<bool> self_blocked;
};

// Draws the base-station PPP around the user ring by ring until the selection
// is decided: the n nearest stations, or with omega > 0 the nearest station
// and the nearest one more than omega away from it in angle. Every station
// inside the rings drawn so far is known, so the selection is exact.
StationDraw select_stations(const NetworkSpec& net, double tail, std::uint64_t seed, std::uint64_t trial);

}  // namespace blockrel::montecarlo::detail
