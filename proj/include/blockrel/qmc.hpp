#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace blockrel {

// Sobol points with a random digital shift per replicate.
class ShiftedSobol {
 public:
  ShiftedSobol(std::size_t dims, std::uint64_t seed, std::size_t replicate);

  std::size_t dims() const { return shifts_.size(); }

  // Points [first, first + count) as a row-major count x dims array in (0, 1).
  void generate(std::uint64_t first, std::size_t count, std::vector<double>& out) const;

 private:
  std::vector<std::uint64_t> shifts_;
};

struct QmcEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
};

// Randomised QMC mean of f over the unit cube: `replicates` independent
// shifts of the first samples/replicates Sobol points each. The standard
// error comes from the spread of the replicate means.
QmcEstimate qmc_mean(std::size_t dims, std::uint64_t samples, std::size_t replicates, std::uint64_t seed,
                     unsigned workers, const std::function<double(std::span<const double>)>& f);

}  // namespace blockrel
