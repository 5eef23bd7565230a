#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blockrel/model.hpp"
#include "blockrel/rng.hpp"
#include "blockrel/types.hpp"

namespace blockrel::montecarlo {

struct SimWindow {
  enum class Shape { Disk, Rectangle };
  Shape shape = Shape::Disk;
  double extent = 0.0;    // disk radius, or rectangle half-width
  double extent_y = 0.0;  // rectangle half-height (0 means square)
  double blockage_margin = 0.0;
  Point center{};

  double half_height() const { return extent_y > 0.0 ? extent_y : extent; }
  double area() const;
  SimWindow dilated(double d) const;
  void validate() const;
};

std::vector<Point> sample_ppp(double density, const SimWindow& window, StreamRng& rng);

// Blockage segments whose centres form a PPP of density mu over the window
// dilated by its blockage_margin.
std::vector<Segment> sample_blockage_lines(const BlockageSpec& spec, const SimWindow& window, StreamRng& rng);

struct TrialOutcome {
  int n_los = 0;
  std::vector<bool> self_blocked_mask;
  LinkGeometry link_geometry;
  std::vector<Point> stations;  // selected base stations, nearest first
};

struct SimOptions {
  unsigned workers = 1;
  // Extra dilation beyond half the longest blockage around the farthest
  // selected station. Blockages there cannot touch a link; a positive value
  // only exercises the edge-effect check.
  double extra_margin = 0.0;
  // Tail probability that fixes the first base-station window radius.
  double window_tail = 1e-6;
};

// Radius with P(n-th nearest station farther away) = tail.
double window_radius(double lambda, int n, double tail);

TrialOutcome simulate_trial(const NetworkSpec& net, const BlockageSpec& spec, std::uint64_t seed,
                            std::uint64_t trial, const SimOptions& opt = {});

ReliabilityEstimate estimate_reliability(const NetworkSpec& net, const BlockageSpec& spec, std::uint64_t trials,
                                         std::uint64_t seed, const SimOptions& opt = {});

struct ProbabilityEstimate {
  double p = 0.0;
  double stderr_ = 0.0;
};

// Fraction of trials in which every listed link is unblocked.
ProbabilityEstimate estimate_joint_los(const LinkGeometry& links, const BlockageSpec& spec, std::uint64_t trials,
                                       std::uint64_t seed, const SimOptions& opt = {});

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  bool contains(const Rect& o) const { return x0 <= o.x0 && o.x1 <= x1 && y0 <= o.y0 && o.y1 <= y1; }
};

// One segment per line as "x1,y1,x2,y2" in metres; blank lines and text after
// '#' are ignored. Errors name the offending line.
std::vector<Segment> parse_segments(std::istream& in);
std::vector<Segment> load_segments(const std::string& path);

ReliabilityEstimate scenario_reliability(const std::vector<Segment>& segments, const NetworkSpec& net,
                                         const Rect& user_region, std::uint64_t trials, std::uint64_t seed,
                                         const SimOptions& opt = {}, std::optional<Rect> map_bounds = {});

ReliabilityEstimate scenario_reliability(const std::string& segments_file, const NetworkSpec& net,
                                         const Rect& user_region, std::uint64_t trials, std::uint64_t seed,
                                         const SimOptions& opt = {}, std::optional<Rect> map_bounds = {});

}  // namespace blockrel::montecarlo
