#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "blockrel/montecarlo.hpp"
#include "blockrel/quadrature.hpp"

namespace blockrel::experiment {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { Sweep, Invert, Verify, Scenario };
enum class Fixed { Lmax, Beta };

// One resolved parameter combination, in CLI units.
struct SweepPoint {
  double value = 0.0;  // value of the swept key
  double lambda_per_km2 = 0.0;
  double mu_per_km2 = 0.0;
  double lmax_m = 0.0;
  double omega_deg = 0.0;
};

struct ExperimentConfig {
  Mode mode = Mode::Sweep;
  Fixed fixed = Fixed::Lmax;
  std::string sweep_var;
  std::vector<SweepPoint> points;
  std::vector<int> n{2};
  std::vector<std::string> methods;
  std::vector<double> targets;
  std::optional<double> beta_per_km;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::uint64_t qmc_samples = 1u << 16;
  QuadratureConfig quadrature;
  std::string segments_path;
  std::optional<montecarlo::Rect> user_region;
  std::optional<montecarlo::Rect> map_bounds;
};

// Parses a JSON document. `base_dir` resolves a relative segments_path.
ExperimentConfig parse_config(std::string_view text, const std::string& base_dir = {});
ExperimentConfig load_config(const std::string& path);

inline constexpr std::string_view kCsvHeader =
    "sweep_var,value,lambda_per_km2,mu_per_km2,lmax_m,n,omega_deg,beta_per_km,gamma,method,p_r,err,samples";

struct RunSummary {
  std::size_t rows = 0;
  bool nonconverged = false;
  bool verify_failed = false;
  int exit_code() const { return verify_failed ? 3 : (nonconverged ? 2 : 0); }
};

// Writes the CSV (header included) to `csv`; verification verdicts and other
// human-readable notes go to `log`.
RunSummary run_experiment(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log);

// Built-in oracle suite: one PASS/FAIL line per check. Returns the number of
// failures.
int run_quick_verify(std::ostream& out);

}  // namespace blockrel::experiment
