#pragma once

#include <cstdint>
#include <span>
#include <variant>

#include "blockrel/model.hpp"
#include "blockrel/quadrature.hpp"
#include "blockrel/types.hpp"

namespace blockrel::analytic_n {

// y^2 - 2 + 2 (y + 1) e^{-y}, accurate for small y.
double g_kernel(double y);

// J(i, y) = g_kernel(y)^i / (2^i i!).
double j_func(int i, double y);

ReliabilityEstimate reliability_n_ind(double g, int n, const QuadratureConfig& q = {});

// Inverse design for order n under independent blocking.
double required_density_n(double target, double beta, int n);

// Lower bound on the mean union area of the links in `subset` (ascending
// indices into links), with the largest index as reference.
double lb_mean_area_n(std::span<const int> subset, const LinkGeometry& links, double l_max);

struct LowerBoundMode {};
struct ExactMode {
  const BlockageSpec* spec;
  QuadratureConfig q;
};
using KMode = std::variant<LowerBoundMode, ExactMode>;

// Inclusion-exclusion probability that at least one link is LOS given the
// geometry. x holds beta-normalised lengths (ascending), phi the angles of
// links 1..n-1 relative to link n.
double k_func(std::span<const double> x, std::span<const double> phi, const KMode& mode);

struct QmcConfig {
  std::size_t replicates = 16;
  unsigned workers = 1;
};

ReliabilityEstimate reliability_n_lb(double g, int n, std::uint64_t samples = 1u << 20, std::uint64_t seed = 1,
                                     const QmcConfig& cfg = {});

ReliabilityEstimate reliability_n_dep(double lambda, const BlockageSpec& spec, int n,
                                      std::uint64_t samples = 1u << 20, std::uint64_t seed = 1,
                                      const QmcConfig& cfg = {});

// Maps a point of the unit cube (2n - 1 coordinates) to ordered normalised
// lengths and angles drawn from the n-nearest base-station law at gamma g.
void map_link_sample(std::span<const double> u, double g, int n, std::span<double> x, std::span<double> phi);

}  // namespace blockrel::analytic_n
