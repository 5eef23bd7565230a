#include <limits>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "blockrel/geometry.hpp"
#include "blockrel/montecarlo.hpp"
#include "blockrel/parallel.hpp"
#include "station_select.hpp"

namespace blockrel::montecarlo {

namespace {

constexpr std::uint64_t kUserStream = 200;
constexpr std::uint64_t kTrialBlock = 4096;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_line(std::size_t line, const std::string& why) {
  throw std::runtime_error("segments file line " + std::to_string(line) + ": " + why);
}

// Uniform grid over the segment bounding box; each segment is listed in every
// cell its bounding box touches.
class SegmentGrid {
 public:
  explicit SegmentGrid(const std::vector<Segment>& segs) : segs_(segs) {
    if (segs.empty()) return;
    x0_ = y0_ = std::numeric_limits<double>::infinity();
    double x1 = -x0_, y1 = -y0_;
    for (const Segment& s : segs) {
      x0_ = std::min({x0_, s.a.x, s.b.x});
      y0_ = std::min({y0_, s.a.y, s.b.y});
      x1 = std::max({x1, s.a.x, s.b.x});
      y1 = std::max({y1, s.a.y, s.b.y});
    }
    const double w = std::max(x1 - x0_, 1.0), h = std::max(y1 - y0_, 1.0);
    cell_ = std::max(1.0, std::sqrt(w * h / static_cast<double>(segs.size())));
    nx_ = std::min<std::size_t>(4096, static_cast<std::size_t>(w / cell_) + 1);
    ny_ = std::min<std::size_t>(4096, static_cast<std::size_t>(h / cell_) + 1);
    cells_.resize(nx_ * ny_);
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto [ix0, iy0] = cell_of(std::min(segs[i].a.x, segs[i].b.x), std::min(segs[i].a.y, segs[i].b.y));
      const auto [ix1, iy1] = cell_of(std::max(segs[i].a.x, segs[i].b.x), std::max(segs[i].a.y, segs[i].b.y));
      for (std::size_t iy = iy0; iy <= iy1; ++iy)
        for (std::size_t ix = ix0; ix <= ix1; ++ix) cells_[iy * nx_ + ix].push_back(static_cast<std::uint32_t>(i));
    }
  }

  bool blocks(const Segment& link, std::vector<std::uint32_t>& scratch) const {
    if (segs_.empty()) return false;
    const auto [ix0, iy0] = cell_of(std::min(link.a.x, link.b.x), std::min(link.a.y, link.b.y));
    const auto [ix1, iy1] = cell_of(std::max(link.a.x, link.b.x), std::max(link.a.y, link.b.y));
    scratch.clear();
    for (std::size_t iy = iy0; iy <= iy1; ++iy)
      for (std::size_t ix = ix0; ix <= ix1; ++ix) {
        const auto& c = cells_[iy * nx_ + ix];
        scratch.insert(scratch.end(), c.begin(), c.end());
      }
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    for (std::uint32_t i : scratch) {
      if (geometry::segments_intersect(link, segs_[i])) return true;
    }
    return false;
  }

 private:
  std::pair<std::size_t, std::size_t> cell_of(double x, double y) const {
    auto clampi = [](double v, std::size_t n) {
      if (!(v > 0.0)) return std::size_t{0};
      return std::min(n - 1, static_cast<std::size_t>(v));
    };
    return {clampi((x - x0_) / cell_, nx_), clampi((y - y0_) / cell_, ny_)};
  }

  const std::vector<Segment>& segs_;
  double x0_ = 0.0, y0_ = 0.0, cell_ = 1.0;
  std::size_t nx_ = 1, ny_ = 1;
  std::vector<std::vector<std::uint32_t>> cells_;
};

}  // namespace

std::vector<Segment> parse_segments(std::istream& in) {
  std::vector<Segment> out;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = raw;
    if (auto h = s.find('#'); h != std::string_view::npos) s = s.substr(0, h);
    s = trim(s);
    if (s.empty()) continue;
    double v[4];
    std::size_t k = 0;
    while (true) {
      const auto comma = s.find(',');
      const std::string_view field = trim(s.substr(0, comma));
      if (k == 4) bad_line(line, "expected 4 comma-separated numbers, found more");
      if (field.empty()) bad_line(line, "empty field");
      const char* end = field.data() + field.size();
      auto [ptr, ec] = std::from_chars(field.data(), end, v[k]);
      if (ec != std::errc() || ptr != end || !std::isfinite(v[k]))
        bad_line(line, "cannot parse '" + std::string(field) + "' as a number");
      ++k;
      if (comma == std::string_view::npos) break;
      s = s.substr(comma + 1);
    }
    if (k != 4) bad_line(line, "expected 4 comma-separated numbers, found " + std::to_string(k));
    out.push_back({{v[0], v[1]}, {v[2], v[3]}});
  }
  return out;
}

std::vector<Segment> load_segments(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open segments file '" + path + "'");
  return parse_segments(f);
}

ReliabilityEstimate scenario_reliability(const std::vector<Segment>& segments, const NetworkSpec& net,
                                         const Rect& user_region, std::uint64_t trials, std::uint64_t seed,
                                         const SimOptions& opt, std::optional<Rect> map_bounds) {
  net.validate();
  if (trials == 0) throw std::invalid_argument("scenario_reliability: trials must be positive");
  if (net.omega > 0.0 && net.n != 2)
    throw std::invalid_argument("scenario_reliability: self-blocking is only modelled for n = 2");
  if (!(user_region.x0 <= user_region.x1 && user_region.y0 <= user_region.y1))
    throw std::invalid_argument("scenario_reliability: user region corners out of order");
  if (!map_bounds && !segments.empty()) {
    Rect b{segments[0].a.x, segments[0].a.y, segments[0].a.x, segments[0].a.y};
    for (const Segment& s : segments) {
      b.x0 = std::min({b.x0, s.a.x, s.b.x});
      b.y0 = std::min({b.y0, s.a.y, s.b.y});
      b.x1 = std::max({b.x1, s.a.x, s.b.x});
      b.y1 = std::max({b.y1, s.a.y, s.b.y});
    }
    map_bounds = b;
  }
  if (map_bounds && !map_bounds->contains(user_region))
    throw std::invalid_argument("scenario_reliability: user region lies outside the map bounds");

  const SegmentGrid grid(segments);
  const std::size_t blocks = static_cast<std::size_t>((trials + kTrialBlock - 1) / kTrialBlock);
  std::vector<std::uint64_t> hits(blocks, 0);
  for_each_block(blocks, opt.workers, [&](std::size_t b) {
    std::vector<std::uint32_t> scratch;
    const std::uint64_t first = b * kTrialBlock;
    const std::uint64_t last = std::min(trials, first + kTrialBlock);
    for (std::uint64_t t = first; t < last; ++t) {
      StreamRng urng(seed, t, kUserStream);
      const Point user{user_region.x0 + (user_region.x1 - user_region.x0) * urng.uniform(),
                       user_region.y0 + (user_region.y1 - user_region.y0) * urng.uniform()};
      const detail::StationDraw draw = detail::select_stations(net, opt.window_tail, seed, t);
      for (std::size_t i = 0; i < draw.stations.size(); ++i) {
        if (draw.self_blocked[i]) continue;
        const Segment link{user, {user.x + draw.stations[i].x, user.y + draw.stations[i].y}};
        if (!grid.blocks(link, scratch)) {
          ++hits[b];
          break;
        }
      }
    }
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  ReliabilityEstimate e;
  const double n = static_cast<double>(trials);
  e.value = static_cast<double>(total) / n;
  e.error = std::sqrt(e.value * (1.0 - e.value) / n);
  e.method = Method::MonteCarlo;
  e.samples = trials;
  return e;
}

ReliabilityEstimate scenario_reliability(const std::string& segments_file, const NetworkSpec& net,
                                         const Rect& user_region, std::uint64_t trials, std::uint64_t seed,
                                         const SimOptions& opt, std::optional<Rect> map_bounds) {
  return scenario_reliability(load_segments(segments_file), net, user_region, trials, seed, opt, map_bounds);
}

}  // namespace blockrel::montecarlo
