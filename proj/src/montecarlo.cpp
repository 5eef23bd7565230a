#include "blockrel/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "blockrel/geometry.hpp"
#include "blockrel/parallel.hpp"
#include "station_select.hpp"

namespace blockrel::montecarlo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kBlockCore = 100;
constexpr std::uint64_t kBlockExtra = 101;
constexpr std::uint64_t kTrialBlock = 4096;

std::uint64_t poisson(double mean, StreamRng& rng) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::uint64_t> d(mean);
  return d(rng);
}

Segment make_segment(Point c, double l, double theta) {
  const double hx = 0.5 * l * std::cos(theta), hy = 0.5 * l * std::sin(theta);
  return {{c.x - hx, c.y - hy}, {c.x + hx, c.y + hy}};
}

// Blockages with centres in the annulus inner <= |c| < outer around `at`.
void add_ring_blockages(const BlockageSpec& spec, Point at, double inner, double outer, StreamRng& rng,
                        std::vector<Segment>& out) {
  if (spec.mu <= 0.0 || outer <= inner) return;
  const std::uint64_t k = poisson(spec.mu * kPi * (outer * outer - inner * inner), rng);
  for (std::uint64_t i = 0; i < k; ++i) {
    const double rad = std::sqrt(inner * inner + rng.uniform() * (outer * outer - inner * inner));
    const double a = 2.0 * kPi * rng.uniform();
    const double l = spec.length.sample(rng);
    const double th = spec.orientation.sample(rng);
    out.push_back(make_segment({at.x + rad * std::cos(a), at.y + rad * std::sin(a)}, l, th));
  }
}

bool boxes_overlap(const Segment& s, const Segment& t) {
  return std::max(std::min(s.a.x, s.b.x), std::min(t.a.x, t.b.x)) <=
             std::min(std::max(s.a.x, s.b.x), std::max(t.a.x, t.b.x)) &&
         std::max(std::min(s.a.y, s.b.y), std::min(t.a.y, t.b.y)) <=
             std::min(std::max(s.a.y, s.b.y), std::max(t.a.y, t.b.y));
}

bool crosses_any(const Segment& link, const std::vector<Segment>& blockers) {
  for (const Segment& s : blockers) {
    if (boxes_overlap(link, s) && geometry::segments_intersect(link, s)) return true;
  }
  return false;
}

ReliabilityEstimate binomial(std::uint64_t hits, std::uint64_t trials) {
  ReliabilityEstimate e;
  const double n = static_cast<double>(trials);
  e.value = static_cast<double>(hits) / n;
  e.error = std::sqrt(e.value * (1.0 - e.value) / n);
  e.method = Method::MonteCarlo;
  e.samples = trials;
  return e;
}

template <class TrialFn>
std::uint64_t count_successes(std::uint64_t trials, unsigned workers, TrialFn&& fn) {
  const std::size_t blocks = static_cast<std::size_t>((trials + kTrialBlock - 1) / kTrialBlock);
  std::vector<std::uint64_t> hits(blocks, 0);
  for_each_block(blocks, workers, [&](std::size_t b) {
    const std::uint64_t first = b * kTrialBlock;
    const std::uint64_t last = std::min(trials, first + kTrialBlock);
    std::uint64_t h = 0;
    for (std::uint64_t t = first; t < last; ++t) h += fn(t) ? 1 : 0;
    hits[b] = h;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return total;
}

}  // namespace

double SimWindow::area() const {
  if (shape == Shape::Disk) return kPi * extent * extent;
  return 4.0 * extent * half_height();
}

SimWindow SimWindow::dilated(double d) const {
  SimWindow w = *this;
  w.extent += d;
  if (shape == Shape::Rectangle && extent_y > 0.0) w.extent_y += d;
  w.blockage_margin = 0.0;
  return w;
}

void SimWindow::validate() const {
  if (!(extent > 0.0)) throw std::invalid_argument("SimWindow: extent must be positive");
  if (!(extent_y >= 0.0)) throw std::invalid_argument("SimWindow: extent_y must be nonnegative");
  if (!(blockage_margin >= 0.0)) throw std::invalid_argument("SimWindow: blockage_margin must be nonnegative");
}

std::vector<Point> sample_ppp(double density, const SimWindow& window, StreamRng& rng) {
  if (!(density >= 0.0)) throw std::invalid_argument("sample_ppp: density must be nonnegative");
  window.validate();
  const std::uint64_t k = poisson(density * window.area(), rng);
  std::vector<Point> pts;
  pts.reserve(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    if (window.shape == SimWindow::Shape::Disk) {
      const double rad = window.extent * std::sqrt(rng.uniform());
      const double a = 2.0 * kPi * rng.uniform();
      pts.push_back({window.center.x + rad * std::cos(a), window.center.y + rad * std::sin(a)});
    } else {
      const double x = (2.0 * rng.uniform() - 1.0) * window.extent;
      const double y = (2.0 * rng.uniform() - 1.0) * window.half_height();
      pts.push_back({window.center.x + x, window.center.y + y});
    }
  }
  return pts;
}

std::vector<Segment> sample_blockage_lines(const BlockageSpec& spec, const SimWindow& window, StreamRng& rng) {
  spec.validate();
  const SimWindow w = window.dilated(window.blockage_margin);
  const std::vector<Point> centres = sample_ppp(spec.mu, w, rng);
  std::vector<Segment> segs;
  segs.reserve(centres.size());
  for (const Point& c : centres) {
    const double l = spec.length.sample(rng);
    const double th = spec.orientation.sample(rng);
    segs.push_back(make_segment(c, l, th));
  }
  return segs;
}

double window_radius(double lambda, int n, double tail) {
  if (!(lambda > 0.0)) throw std::invalid_argument("window_radius: lambda must be positive");
  if (!(tail > 0.0 && tail < 1.0)) throw std::invalid_argument("window_radius: tail must lie in (0, 1)");
  const double a = boost::math::gamma_q_inv(static_cast<double>(n), tail);
  return std::sqrt(a / (lambda * kPi));
}

TrialOutcome simulate_trial(const NetworkSpec& net, const BlockageSpec& spec, std::uint64_t seed,
                            std::uint64_t trial, const SimOptions& opt) {
  const detail::StationDraw draw = detail::select_stations(net, opt.window_tail, seed, trial);
  TrialOutcome out;
  out.stations = draw.stations;
  out.self_blocked_mask = draw.self_blocked;
  const std::size_t n = draw.stations.size();
  double rmax = 0.0;
  for (const Point& p : draw.stations) rmax = std::max(rmax, std::hypot(p.x, p.y));

  std::vector<Segment> blockers;
  const double core = rmax + 0.5 * spec.length.max();
  StreamRng core_rng(seed, trial, kBlockCore);
  add_ring_blockages(spec, {}, 0.0, core, core_rng, blockers);
  if (opt.extra_margin > 0.0) {
    StreamRng extra_rng(seed, trial, kBlockExtra);
    add_ring_blockages(spec, {}, core, core + opt.extra_margin, extra_rng, blockers);
  }

  // Links ordered by length, with angles relative to the longest.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::hypot(draw.stations[a].x, draw.stations[a].y) < std::hypot(draw.stations[b].x, draw.stations[b].y);
  });
  out.link_geometry.r.resize(n);
  out.link_geometry.phi.resize(n > 0 ? n - 1 : 0);
  const Point& far = draw.stations[order[n - 1]];
  const double ref = std::atan2(far.y, far.x);
  for (std::size_t k = 0; k < n; ++k) {
    const Point& p = draw.stations[order[k]];
    out.link_geometry.r[k] = std::hypot(p.x, p.y);
    if (k + 1 < n) {
      double a = std::atan2(p.y, p.x) - ref;
      a = std::fmod(a, 2.0 * kPi);
      if (a < 0.0) a += 2.0 * kPi;
      if (a >= 2.0 * kPi) a = 0.0;
      out.link_geometry.phi[k] = a;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (draw.self_blocked[i]) continue;
    if (!crosses_any(Segment{{0.0, 0.0}, draw.stations[i]}, blockers)) ++out.n_los;
  }
  return out;
}

ReliabilityEstimate estimate_reliability(const NetworkSpec& net, const BlockageSpec& spec, std::uint64_t trials,
                                         std::uint64_t seed, const SimOptions& opt) {
  net.validate();
  spec.validate();
  if (trials == 0) throw std::invalid_argument("estimate_reliability: trials must be positive");
  if (net.omega > 0.0 && net.n != 2)
    throw std::invalid_argument("estimate_reliability: self-blocking is only modelled for n = 2");
  const std::uint64_t hits = count_successes(
      trials, opt.workers, [&](std::uint64_t t) { return simulate_trial(net, spec, seed, t, opt).n_los > 0; });
  return binomial(hits, trials);
}

ProbabilityEstimate estimate_joint_los(const LinkGeometry& links, const BlockageSpec& spec, std::uint64_t trials,
                                       std::uint64_t seed, const SimOptions& opt) {
  links.validate();
  spec.validate();
  if (trials == 0) throw std::invalid_argument("estimate_joint_los: trials must be positive");
  std::vector<Segment> paths(links.size());
  double rmax = 0.0;
  for (std::size_t i = 0; i < links.size(); ++i) {
    paths[i] = {{0.0, 0.0}, links.endpoint(i)};
    rmax = std::max(rmax, links.r[i]);
  }
  const double core = rmax + 0.5 * spec.length.max();
  const std::uint64_t hits = count_successes(trials, opt.workers, [&](std::uint64_t t) {
    std::vector<Segment> blockers;
    StreamRng rng(seed, t, kBlockCore);
    add_ring_blockages(spec, {}, 0.0, core, rng, blockers);
    if (opt.extra_margin > 0.0) {
      StreamRng extra(seed, t, kBlockExtra);
      add_ring_blockages(spec, {}, core, core + opt.extra_margin, extra, blockers);
    }
    for (const Segment& p : paths) {
      if (crosses_any(p, blockers)) return false;
    }
    return true;
  });
  const ReliabilityEstimate e = binomial(hits, trials);
  return {e.value, e.error};
}

}  // namespace blockrel::montecarlo
