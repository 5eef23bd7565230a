#include "blockrel/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blockrel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double fixed_overlap_integral(double l, double c) {
  if (c <= l) return 0.5 * c * c;
  return 0.5 * l * l + l * (c - l);
}

void check_weights(const std::vector<WeightedValue>& atoms, const char* what) {
  if (atoms.empty()) throw std::invalid_argument(std::string(what) + ": no atoms");
  double s = 0.0;
  for (const auto& a : atoms) {
    if (!(a.weight >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative weight");
    s += a.weight;
  }
  if (std::fabs(s - 1.0) > 1e-9) throw std::invalid_argument(std::string(what) + ": weights must sum to 1");
}

double pick_atom(const std::vector<WeightedValue>& atoms, double u) {
  double acc = 0.0;
  for (const auto& a : atoms) {
    acc += a.weight;
    if (u < acc) return a.value;
  }
  return atoms.back().value;
}

}  // namespace

double LengthDistribution::mean() const {
  return std::visit(overloaded{[](const UniformLength& u) { return 0.5 * u.l_max; },
                               [](const FixedLength& f) { return f.l; },
                               [](const EmpiricalLength& e) {
                                 double s = 0.0;
                                 for (const auto& a : e.atoms) s += a.weight * a.value;
                                 return s;
                               }},
                    v_);
}

double LengthDistribution::max() const {
  return std::visit(overloaded{[](const UniformLength& u) { return u.l_max; },
                               [](const FixedLength& f) { return f.l; },
                               [](const EmpiricalLength& e) {
                                 double m = 0.0;
                                 for (const auto& a : e.atoms) {
                                   if (a.weight > 0.0) m = std::max(m, a.value);
                                 }
                                 return m;
                               }},
                    v_);
}

double LengthDistribution::cdf(double x) const {
  return std::visit(overloaded{[x](const UniformLength& u) {
                                 if (x < 0.0) return 0.0;
                                 if (u.l_max <= 0.0 || x >= u.l_max) return 1.0;
                                 return x / u.l_max;
                               },
                               [x](const FixedLength& f) { return x >= f.l ? 1.0 : 0.0; },
                               [x](const EmpiricalLength& e) {
                                 double s = 0.0;
                                 for (const auto& a : e.atoms) {
                                   if (a.value <= x) s += a.weight;
                                 }
                                 return std::min(s, 1.0);
                               }},
                    v_);
}

double LengthDistribution::overlap_integral(double c) const {
  return std::visit(overloaded{[c](const UniformLength& u) {
                                 const double L = u.l_max;
                                 if (L <= 0.0) return 0.0;
                                 if (c <= L) return 0.5 * c * c - c * c * c / (6.0 * L);
                                 return L * L / 3.0 + 0.5 * L * (c - L);
                               },
                               [c](const FixedLength& f) { return fixed_overlap_integral(f.l, c); },
                               [c](const EmpiricalLength& e) {
                                 double s = 0.0;
                                 for (const auto& a : e.atoms) s += a.weight * fixed_overlap_integral(a.value, c);
                                 return s;
                               }},
                    v_);
}

LengthDistribution LengthDistribution::scaled(double c) const {
  return std::visit(overloaded{[c](const UniformLength& u) { return uniform(u.l_max * c); },
                               [c](const FixedLength& f) { return fixed(f.l * c); },
                               [c](const EmpiricalLength& e) {
                                 std::vector<WeightedValue> atoms = e.atoms;
                                 for (auto& a : atoms) a.value *= c;
                                 return empirical(std::move(atoms));
                               }},
                    v_);
}

void LengthDistribution::validate() const {
  std::visit(overloaded{[](const UniformLength& u) {
                          if (!(u.l_max >= 0.0) || !std::isfinite(u.l_max))
                            throw std::invalid_argument("length distribution: l_max must be finite and >= 0");
                        },
                        [](const FixedLength& f) {
                          if (!(f.l >= 0.0) || !std::isfinite(f.l))
                            throw std::invalid_argument("length distribution: length must be finite and >= 0");
                        },
                        [](const EmpiricalLength& e) {
                          check_weights(e.atoms, "length distribution");
                          for (const auto& a : e.atoms) {
                            if (!(a.value >= 0.0) || !std::isfinite(a.value))
                              throw std::invalid_argument("length distribution: lengths must be >= 0");
                          }
                        }},
             v_);
}

double LengthDistribution::sample(StreamRng& rng) const {
  return std::visit(overloaded{[&rng](const UniformLength& u) { return u.l_max * rng.uniform(); },
                               [](const FixedLength& f) { return f.l; },
                               [&rng](const EmpiricalLength& e) { return pick_atom(e.atoms, rng.uniform()); }},
                    v_);
}

void OrientationDistribution::validate() const {
  if (const auto* e = std::get_if<EmpiricalOrientation>(&v_)) {
    check_weights(e->atoms, "orientation distribution");
    for (const auto& a : e->atoms) {
      if (!(a.value >= 0.0 && a.value < std::numbers::pi))
        throw std::invalid_argument("orientation distribution: angles must lie in [0, pi)");
    }
  }
}

double OrientationDistribution::sample(StreamRng& rng) const {
  if (const auto* e = std::get_if<EmpiricalOrientation>(&v_)) return pick_atom(e->atoms, rng.uniform());
  return std::numbers::pi * rng.uniform();
}

void BlockageSpec::validate() const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("blockage spec: mu must be finite and >= 0");
  length.validate();
  orientation.validate();
}

void NetworkSpec::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("network spec: lambda must be positive");
  if (n < 1) throw std::invalid_argument("network spec: n must be at least 1");
  if (!(omega >= 0.0 && omega < std::numbers::pi))
    throw std::invalid_argument("network spec: omega must lie in [0, pi)");
}

std::string_view method_tag(Method m) {
  switch (m) {
    case Method::AnalyticDep: return "analytic-dep";
    case Method::AnalyticInd: return "analytic-ind";
    case Method::Lb1: return "lb1";
    case Method::AsymLb: return "asym-lb";
    case Method::AsymLbLinear: return "asym-lb-linear";
    case Method::NInd: return "n-ind";
    case Method::NLb: return "n-lb";
    case Method::MonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

double beta(const BlockageSpec& spec) { return spec.mu * (2.0 / std::numbers::pi) * spec.length.mean(); }

double gamma(double beta, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("gamma: lambda must be positive");
  return beta / (2.0 * std::sqrt(std::numbers::pi * lambda));
}

double joint_link_density(const std::vector<double>& r, double lambda) {
  if (r.empty()) return 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0)) return 0.0;
    if (i > 0 && r[i] < r[i - 1]) return 0.0;
    prod *= 2.0 * std::numbers::pi * lambda * r[i];
  }
  const double rn = r.back();
  return prod * std::exp(-lambda * std::numbers::pi * rn * rn);
}

BlockageSpec scale_lengths(const BlockageSpec& spec, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scale_lengths: factor must be positive");
  BlockageSpec out = spec;
  out.length = spec.length.scaled(c);
  out.mu = spec.mu / c;
  return out;
}

double mu_for_beta(double beta, double l_max) {
  if (!(l_max > 0.0)) throw std::invalid_argument("mu_for_beta: l_max must be positive");
  return std::numbers::pi * beta / l_max;
}

}  // namespace blockrel
