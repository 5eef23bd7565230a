#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "blockrel/rng.hpp"
#include "blockrel/types.hpp"

namespace blockrel {

// Unit conversions between the km-based CLI units and SI.
constexpr double per_km2(double v) { return v * 1e-6; }
constexpr double per_km(double v) { return v * 1e-3; }
constexpr double to_per_km2(double v) { return v * 1e6; }
constexpr double to_per_km(double v) { return v * 1e3; }

struct WeightedValue {
  double value;
  double weight;
};

struct UniformLength {
  double l_max;
};
struct FixedLength {
  double l;
};
struct EmpiricalLength {
  std::vector<WeightedValue> atoms;
};

class LengthDistribution {
 public:
  using Variant = std::variant<UniformLength, FixedLength, EmpiricalLength>;

  LengthDistribution() : v_(FixedLength{0.0}) {}
  LengthDistribution(Variant v) : v_(std::move(v)) {}

  static LengthDistribution uniform(double l_max) { return {UniformLength{l_max}}; }
  static LengthDistribution fixed(double l) { return {FixedLength{l}}; }
  static LengthDistribution empirical(std::vector<WeightedValue> atoms) {
    return {EmpiricalLength{std::move(atoms)}};
  }

  const Variant& variant() const { return v_; }
  bool is_uniform() const { return std::holds_alternative<UniformLength>(v_); }

  double mean() const;
  double max() const;
  double cdf(double x) const;
  // int_0^c E[min(l, s)] ds, the quantity the sweep area integrates.
  double overlap_integral(double c) const;
  LengthDistribution scaled(double c) const;
  void validate() const;

  double sample(StreamRng& rng) const;

 private:
  Variant v_;
};

struct UniformOrientation {};
struct EmpiricalOrientation {
  std::vector<WeightedValue> atoms;  // angles in [0, pi)
};

class OrientationDistribution {
 public:
  using Variant = std::variant<UniformOrientation, EmpiricalOrientation>;

  OrientationDistribution() : v_(UniformOrientation{}) {}
  OrientationDistribution(Variant v) : v_(std::move(v)) {}

  static OrientationDistribution uniform() { return {UniformOrientation{}}; }
  static OrientationDistribution empirical(std::vector<WeightedValue> atoms) {
    return {EmpiricalOrientation{std::move(atoms)}};
  }

  const Variant& variant() const { return v_; }
  bool is_uniform() const { return std::holds_alternative<UniformOrientation>(v_); }
  void validate() const;
  double sample(StreamRng& rng) const;

 private:
  Variant v_;
};

struct BlockageSpec {
  double mu = 0.0;  // blockage centres per m^2
  LengthDistribution length;
  OrientationDistribution orientation;

  void validate() const;

  static BlockageSpec uniform(double mu, double l_max) {
    return {mu, LengthDistribution::uniform(l_max), OrientationDistribution::uniform()};
  }
};

struct NetworkSpec {
  double lambda = 0.0;  // base stations per m^2
  int n = 1;
  double omega = 0.0;  // self-blocking half-span, radians; 0 disables

  void validate() const;
};

enum class Method {
  AnalyticDep,
  AnalyticInd,
  Lb1,
  AsymLb,
  AsymLbLinear,
  NInd,
  NLb,
  MonteCarlo,
};

std::string_view method_tag(Method m);

struct ReliabilityEstimate {
  double value = 0.0;
  double error = 0.0;
  Method method = Method::AnalyticDep;
  std::uint64_t samples = 0;
  bool converged = true;
};

// Average LOS decay rate mu (2/pi) E[l], per metre.
double beta(const BlockageSpec& spec);

// beta / (2 sqrt(pi lambda)).
double gamma(double beta, double lambda);

// Joint density of the n nearest base-station distances (ascending).
double joint_link_density(const std::vector<double>& r, double lambda);

// Multiplies every length by c and divides mu by c, so beta is unchanged.
BlockageSpec scale_lengths(const BlockageSpec& spec, double c);

// mu giving the requested beta for a uniform(0, l_max) length law.
double mu_for_beta(double beta, double l_max);

}  // namespace blockrel
