#include "station_select.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "blockrel/montecarlo.hpp"
#include "blockrel/rng.hpp"

namespace blockrel::montecarlo::detail {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kBodyStream = 99;
constexpr std::uint64_t kRingStream = 1;
constexpr int kMaxRings = 60;

struct Cand {
  double d2;
  double angle;
  Point p;
};

double angular_distance(double a, double b) { return std::fabs(std::remainder(a - b, 2.0 * kPi)); }

}  // namespace

StationDraw select_stations(const NetworkSpec& net, double tail, std::uint64_t seed, std::uint64_t trial) {
  const bool sb = net.omega > 0.0;
  const int need = net.n;
  double first = window_radius(net.lambda, need, tail);
  if (sb) first /= std::sqrt(1.0 - net.omega / kPi);

  std::vector<Cand> known;
  double inner = 0.0, outer = first;
  for (int ring = 0; ring < kMaxRings; ++ring) {
    StreamRng rng(seed, trial, kRingStream + static_cast<std::uint64_t>(ring));
    const double area = kPi * (outer * outer - inner * inner);
    std::poisson_distribution<std::uint64_t> pd(net.lambda * area);
    const std::uint64_t k = pd(rng);
    for (std::uint64_t i = 0; i < k; ++i) {
      const double d2 = inner * inner + rng.uniform() * (outer * outer - inner * inner);
      const double a = 2.0 * kPi * rng.uniform() - kPi;
      const double d = std::sqrt(d2);
      known.push_back({d2, a, {d * std::cos(a), d * std::sin(a)}});
    }
    std::sort(known.begin(), known.end(), [](const Cand& x, const Cand& y) { return x.d2 < y.d2; });

    StationDraw out;
    if (!sb && static_cast<int>(known.size()) >= need) {
      for (int i = 0; i < need; ++i) out.stations.push_back(known[i].p);
    } else if (sb && !known.empty()) {
      for (std::size_t j = 1; j < known.size(); ++j) {
        if (angular_distance(known[j].angle, known[0].angle) > net.omega) {
          out.stations = {known[0].p, known[j].p};
          break;
        }
      }
    }
    if (!out.stations.empty()) {
      out.self_blocked.assign(out.stations.size(), false);
      if (sb) {
        StreamRng body(seed, trial, kBodyStream);
        const double heading = 2.0 * kPi * body.uniform();
        for (std::size_t i = 0; i < out.stations.size(); ++i) {
          const double a = std::atan2(out.stations[i].y, out.stations[i].x);
          out.self_blocked[i] = angular_distance(a, heading) < net.omega;
        }
      }
      return out;
    }
    inner = outer;
    outer *= std::sqrt(2.0);
  }
  throw std::runtime_error("simulation window too small: no admissible base stations found");
}

}  // namespace blockrel::montecarlo::detail
