#include "blockrel/qmc.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/random/sobol.hpp>

#include "blockrel/parallel.hpp"
#include "blockrel/quadrature.hpp"
#include "blockrel/rng.hpp"

namespace blockrel {

ShiftedSobol::ShiftedSobol(std::size_t dims, std::uint64_t seed, std::size_t replicate) {
  if (dims == 0) throw std::invalid_argument("ShiftedSobol: dims must be positive");
  StreamRng rng(seed, replicate, 0x50b01ULL);
  shifts_.resize(dims);
  for (auto& s : shifts_) s = rng();
}

void ShiftedSobol::generate(std::uint64_t first, std::size_t count, std::vector<double>& out) const {
  const std::size_t d = shifts_.size();
  boost::random::sobol eng(d);
  eng.seed(first);
  out.resize(count * d);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const std::uint64_t v = static_cast<std::uint64_t>(eng()) ^ shifts_[k];
      out[i * d + k] = (static_cast<double>(v >> 11) + 0.5) * 0x1.0p-53;
    }
  }
}

QmcEstimate qmc_mean(std::size_t dims, std::uint64_t samples, std::size_t replicates, std::uint64_t seed,
                     unsigned workers, const std::function<double(std::span<const double>)>& f) {
  if (replicates < 2) throw std::invalid_argument("qmc_mean: need at least two replicates");
  const std::uint64_t per = samples / replicates;
  if (per == 0) throw std::invalid_argument("qmc_mean: fewer samples than replicates");
  constexpr std::uint64_t kBlock = 1024;
  const std::uint64_t blocks_per = (per + kBlock - 1) / kBlock;
  const std::size_t blocks = static_cast<std::size_t>(blocks_per * replicates);
  std::vector<double> partial(blocks, 0.0);
  for_each_block(blocks, workers, [&](std::size_t b) {
    const std::size_t rep = b / blocks_per;
    const std::uint64_t first = (b % blocks_per) * kBlock;
    const std::size_t count = static_cast<std::size_t>(std::min(kBlock, per - first));
    ShiftedSobol seq(dims, seed, rep);
    std::vector<double> pts;
    seq.generate(first, count, pts);
    std::vector<double> vals(count);
    for (std::size_t i = 0; i < count; ++i) vals[i] = f(std::span<const double>(pts.data() + i * dims, dims));
    partial[b] = pairwise_sum(vals);
  });
  std::vector<double> means(replicates);
  for (std::size_t r = 0; r < replicates; ++r) {
    means[r] = pairwise_sum(std::span<const double>(partial.data() + r * blocks_per, blocks_per)) /
               static_cast<double>(per);
  }
  QmcEstimate e;
  e.mean = pairwise_sum(means) / static_cast<double>(replicates);
  double ss = 0.0;
  for (double m : means) ss += (m - e.mean) * (m - e.mean);
  e.stderr_ = std::sqrt(ss / static_cast<double>(replicates - 1) / static_cast<double>(replicates));
  e.samples = per * replicates;
  return e;
}

}  // namespace blockrel
