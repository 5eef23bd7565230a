#include "blockrel/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "blockrel/analytic2.hpp"
#include "blockrel/analytic_n.hpp"
#include "blockrel/montecarlo.hpp"
#include "blockrel/selfblock.hpp"
#include "json.hpp"

namespace blockrel::experiment {

namespace {

using nlohmann::json;

constexpr double kDeg = std::numbers::pi / 180.0;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

// Tracks which keys of the top-level object were consumed so leftovers can be
// reported by name.
class Reader {
 public:
  explicit Reader(const json& j) : j_(j) {}

  bool has(const std::string& k) const { return j_.contains(k) && !j_.at(k).is_null(); }

  const json* get(const std::string& k) {
    used_.insert(k);
    return has(k) ? &j_.at(k) : nullptr;
  }

  void reject_unknown() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
    }
  }

 private:
  const json& j_;
  std::set<std::string> used_;
};

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(key, "expected a finite number");
  return d;
}

std::vector<double> as_number_list(const json& v, const std::string& key, bool& is_list) {
  is_list = v.is_array();
  if (!is_list) return {as_number(v, key)};
  std::vector<double> out;
  for (const auto& e : v) out.push_back(as_number(e, key));
  return out;
}

std::uint64_t as_count(const json& v, const std::string& key, std::uint64_t min_value) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) fail(key, "expected an integer");
  if (v.is_number_integer() && v.get<std::int64_t>() < 0) fail(key, "must not be negative");
  const auto u = v.get<std::uint64_t>();
  if (u < min_value) fail(key, "must be at least " + std::to_string(min_value));
  return u;
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

montecarlo::Rect as_rect(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 4) fail(key, "expected [x0, y0, x1, y1]");
  montecarlo::Rect r{as_number(v[0], key), as_number(v[1], key), as_number(v[2], key), as_number(v[3], key)};
  if (!(r.x0 < r.x1 && r.y0 < r.y1)) fail(key, "needs x0 < x1 and y0 < y1");
  return r;
}

const std::set<std::string>& known_methods() {
  static const std::set<std::string> m{"ind",    "dep",    "lb1",    "asym_lb", "asym_lb_linear", "mc",
                                       "n_ind",  "n_lb",   "n_dep",  "sb_dep",  "sb_ind",         "sb_asym_lb"};
  return m;
}

// Empty string when the method can be evaluated at order n and angle omega.
std::string method_support(const std::string& m, int n, double omega_deg, Mode mode) {
  const bool sb = omega_deg > 0.0;
  if (mode == Mode::Invert) {
    if (m == "ind") return sb && n != 2 ? "self-blocking needs n = 2" : "";
    if (m == "asym_lb" || m == "asym_lb_linear" || m == "sb_ind" || m == "sb_asym_lb") {
      if (n != 2) return "needs n = 2";
      if (m.rfind("sb_", 0) == 0 && !sb) return "needs omega_deg > 0";
      if (m == "asym_lb_linear" && sb) return "has no self-blocking form";
      return "";
    }
    return "cannot be inverted";
  }
  if (mode == Mode::Scenario) return m == "mc" ? "" : "only mc is available in scenario mode";
  if (m.rfind("sb_", 0) == 0) {
    if (!sb) return "needs omega_deg > 0";
    return n == 2 ? "" : "needs n = 2";
  }
  if (sb) {
    if (n != 2) return "self-blocking needs n = 2";
    if (m == "ind" || m == "dep" || m == "asym_lb" || m == "mc") return "";
    return "has no self-blocking form";
  }
  if (m == "ind" || m == "dep" || m == "mc" || m.rfind("n_", 0) == 0) return "";
  return n == 2 ? "" : "needs n = 2";
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Row {
  std::string sweep_var;
  double value;
  double lambda_per_km2;
  double mu_per_km2;
  double lmax_m;
  int n;
  double omega_deg;
  double beta_per_km;
  double gamma;
  std::string method;
  double p;
  double err;
  std::uint64_t samples;
};

void write_row(std::ostream& os, const Row& r) {
  os << r.sweep_var << ',' << format_number(r.value) << ',' << format_number(r.lambda_per_km2) << ','
     << format_number(r.mu_per_km2) << ',' << format_number(r.lmax_m) << ',' << r.n << ','
     << format_number(r.omega_deg) << ',' << format_number(r.beta_per_km) << ',' << format_number(r.gamma) << ','
     << r.method << ',' << format_number(r.p) << ',' << format_number(r.err) << ',' << r.samples << '\n';
}

std::vector<SweepPoint> expand_points(Reader& rd, ExperimentConfig& cfg, Mode mode) {
  struct Axis {
    const char* key;
    std::vector<double> values;
    bool is_list = false;
  };
  Axis lambda{"lambda_per_km2", {}}, mu{"mu_per_km2", {}}, lmax{"lmax_m", {}}, omega{"omega_deg", {}};
  for (Axis* a : {&lambda, &mu, &lmax, &omega}) {
    if (const json* v = rd.get(a->key)) a->values = as_number_list(*v, a->key, a->is_list);
  }
  if (omega.values.empty()) omega.values = {0.0};

  const Axis* swept = nullptr;
  for (const Axis* a : {&mu, &lmax, &lambda, &omega}) {
    if (!a->is_list) continue;
    if (swept) fail(a->key, std::string("only one of ") + swept->key + " and " + a->key + " may be a list");
    swept = a;
  }

  if (swept && swept->values.empty() && mode != Mode::Invert) {
    for (const char* k : {"beta_per_km", "fixed", "lambda_scaling", "mu_ref_per_km2"}) rd.get(k);
    cfg.sweep_var = swept->key;
    return {};
  }

  std::optional<double> beta_cfg;
  if (const json* v = rd.get("beta_per_km")) {
    beta_cfg = as_number(*v, "beta_per_km");
    if (!(*beta_cfg > 0.0)) fail("beta_per_km", "must be positive");
  }
  std::string fixed = "lmax";
  if (const json* v = rd.get("fixed")) fixed = as_string(*v, "fixed");
  if (fixed != "lmax" && fixed != "beta") fail("fixed", "expected \"beta\" or \"lmax\"");
  cfg.fixed = fixed == "beta" ? Fixed::Beta : Fixed::Lmax;

  std::string scaling = "none";
  if (const json* v = rd.get("lambda_scaling")) scaling = as_string(*v, "lambda_scaling");
  if (scaling != "none" && scaling != "mu_squared") fail("lambda_scaling", "expected \"none\" or \"mu_squared\"");
  std::optional<double> mu_ref;
  if (const json* v = rd.get("mu_ref_per_km2")) {
    mu_ref = as_number(*v, "mu_ref_per_km2");
    if (!(*mu_ref > 0.0)) fail("mu_ref_per_km2", "must be positive");
  }

  if (mode == Mode::Scenario) {
    if (lambda.values.empty()) fail("lambda_per_km2", "required");
    if (swept && swept != &lambda && swept != &omega) fail(swept->key, "cannot be swept in scenario mode");
    cfg.sweep_var = swept ? swept->key : "n";
    std::vector<SweepPoint> pts;
    for (double l : lambda.values) {
      for (double w : omega.values) {
        SweepPoint p{0.0, l, std::nan(""), std::nan(""), w};
        p.value = swept == &omega ? w : (swept == &lambda ? l : 0.0);
        pts.push_back(p);
      }
    }
    return pts;
  }

  if (mode == Mode::Invert) {
    if (swept && swept != &omega) fail(swept->key, "cannot be swept in invert mode");
    if (beta_cfg) {
      cfg.beta_per_km = beta_cfg;
    } else {
      if (mu.values.empty() || lmax.values.empty()) fail("beta_per_km", "required unless mu_per_km2 and lmax_m are given");
      cfg.beta_per_km = mu.values[0] * lmax.values[0] * 1e-3 / std::numbers::pi;
    }
    cfg.sweep_var = "target";
    std::vector<SweepPoint> pts;
    for (double w : omega.values) {
      pts.push_back({0.0, std::nan(""), mu.values.empty() ? std::nan("") : mu.values[0],
                     lmax.values.empty() ? std::nan("") : lmax.values[0], w});
    }
    return pts;
  }

  if (lambda.values.empty()) fail("lambda_per_km2", "required");
  if (cfg.fixed == Fixed::Beta) {
    if (!beta_cfg) {
      if (mu.values.empty() || lmax.values.empty()) fail("beta_per_km", "required with fixed = beta unless mu_per_km2 and lmax_m are given");
      beta_cfg = mu.values[0] * lmax.values[0] * 1e-3 / std::numbers::pi;
    }
    if (mu.is_list && lmax.is_list) fail("lmax_m", "cannot be swept together with mu_per_km2");
  } else {
    if (lmax.values.empty()) fail("lmax_m", "required");
    if (mu.values.empty()) {
      if (!beta_cfg) fail("mu_per_km2", "required");
    } else if (beta_cfg) {
      fail("beta_per_km", "only allowed with fixed = beta or without mu_per_km2");
    }
  }
  cfg.beta_per_km = beta_cfg;
  cfg.sweep_var = swept ? swept->key : "mu_per_km2";

  const auto pick = [](const Axis& a, std::size_t i) { return a.values.size() == 1 ? a.values[0] : a.values[i]; };
  std::size_t count = swept ? swept->values.size() : 1;
  std::vector<SweepPoint> pts;
  for (std::size_t i = 0; i < count; ++i) {
    SweepPoint p;
    p.lambda_per_km2 = pick(lambda, i);
    p.omega_deg = pick(omega, i);
    // beta in km^-1 = mu (km^-2) * L (m) * 1e-3 / pi for uniform(0, L)
    if (cfg.fixed == Fixed::Beta && (swept == &lmax || mu.values.empty())) {
      if (lmax.values.empty()) fail("lmax_m", "required");
      p.lmax_m = pick(lmax, i);
      p.mu_per_km2 = *beta_cfg * std::numbers::pi / (p.lmax_m * 1e-3);
    } else if (cfg.fixed == Fixed::Beta) {
      p.mu_per_km2 = pick(mu, i);
      p.lmax_m = *beta_cfg * std::numbers::pi / (p.mu_per_km2 * 1e-3);
    } else {
      p.lmax_m = pick(lmax, i);
      p.mu_per_km2 = mu.values.empty() ? *beta_cfg * std::numbers::pi / (p.lmax_m * 1e-3) : pick(mu, i);
    }
    if (scaling == "mu_squared") {
      const double ref = mu_ref ? *mu_ref : (mu.values.empty() ? p.mu_per_km2 : mu.values[0]);
      p.lambda_per_km2 *= (p.mu_per_km2 / ref) * (p.mu_per_km2 / ref);
    }
    if (!(p.lambda_per_km2 > 0.0)) fail("lambda_per_km2", "must be positive");
    if (!(p.mu_per_km2 >= 0.0)) fail("mu_per_km2", "must not be negative");
    if (!(p.lmax_m > 0.0)) fail("lmax_m", "must be positive");
    if (!(p.omega_deg >= 0.0 && p.omega_deg < 180.0)) fail("omega_deg", "must lie in [0, 180)");
    p.value = swept == &mu ? p.mu_per_km2
              : swept == &lmax ? p.lmax_m
              : swept == &lambda ? p.lambda_per_km2
              : swept == &omega ? p.omega_deg
                                : p.mu_per_km2;
    pts.push_back(p);
  }
  return pts;
}

ExperimentConfig parse_json(const json& j, const std::string& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  Reader rd(j);
  ExperimentConfig cfg;

  const json* mode = rd.get("mode");
  if (!mode) fail("mode", "required");
  const std::string m = as_string(*mode, "mode");
  if (m == "sweep") cfg.mode = Mode::Sweep;
  else if (m == "invert") cfg.mode = Mode::Invert;
  else if (m == "verify") cfg.mode = Mode::Verify;
  else if (m == "scenario") cfg.mode = Mode::Scenario;
  else fail("mode", "expected sweep, invert, verify or scenario");

  cfg.points = expand_points(rd, cfg, cfg.mode);

  if (const json* v = rd.get("n")) {
    cfg.n.clear();
    const auto add = [&](const json& e) {
      const auto k = as_count(e, "n", 1);
      if (k > 16) fail("n", "must be at most 16");
      cfg.n.push_back(static_cast<int>(k));
    };
    if (v->is_array()) {
      for (const auto& e : *v) add(e);
    } else {
      add(*v);
    }
  }
  if (const json* v = rd.get("trials")) cfg.trials = as_count(*v, "trials", 1);
  if (const json* v = rd.get("seed")) cfg.seed = as_count(*v, "seed", 0);
  if (const json* v = rd.get("workers")) cfg.workers = static_cast<unsigned>(as_count(*v, "workers", 1));
  if (const json* v = rd.get("qmc_samples")) cfg.qmc_samples = as_count(*v, "qmc_samples", 16);
  cfg.quadrature = analytic2::triple_defaults();
  if (const json* v = rd.get("quadrature")) {
    if (!v->is_object()) fail("quadrature", "expected an object");
    for (auto it = v->begin(); it != v->end(); ++it) {
      const std::string key = "quadrature." + it.key();
      if (it.key() == "abs_tol") cfg.quadrature.abs_tol = as_number(it.value(), key);
      else if (it.key() == "rel_tol") cfg.quadrature.rel_tol = as_number(it.value(), key);
      else if (it.key() == "nodes") cfg.quadrature.nodes = static_cast<int>(as_count(it.value(), key, 15));
      else if (it.key() == "max_panels") cfg.quadrature.max_panels = as_count(it.value(), key, 1);
      else throw ConfigError("unknown config key '" + key + "'");
    }
    try {
      validate(cfg.quadrature);
    } catch (const std::exception& e) {
      fail("quadrature", e.what());
    }
  }

  if (const json* v = rd.get("targets")) {
    if (!v->is_array()) fail("targets", "expected a list");
    for (const auto& e : *v) {
      const double t = as_number(e, "targets");
      if (!(t > 0.0 && t < 1.0)) fail("targets", "values must lie in (0, 1)");
      cfg.targets.push_back(t);
    }
  } else if (cfg.mode == Mode::Invert) {
    fail("targets", "required in invert mode");
  }

  if (const json* v = rd.get("segments_path")) {
    cfg.segments_path = as_string(*v, "segments_path");
    if (!base_dir.empty() && std::filesystem::path(cfg.segments_path).is_relative()) {
      cfg.segments_path = (std::filesystem::path(base_dir) / cfg.segments_path).string();
    }
  }
  if (const json* v = rd.get("user_region")) cfg.user_region = as_rect(*v, "user_region");
  if (const json* v = rd.get("map_bounds")) cfg.map_bounds = as_rect(*v, "map_bounds");
  if (cfg.mode == Mode::Scenario) {
    if (cfg.segments_path.empty()) fail("segments_path", "required in scenario mode");
    if (!cfg.user_region) fail("user_region", "required in scenario mode");
  }

  if (const json* v = rd.get("methods")) {
    if (!v->is_array()) fail("methods", "expected a list");
    for (const auto& e : *v) {
      const std::string name = as_string(e, "methods");
      if (!known_methods().count(name)) fail("methods", "unknown method '" + name + "'");
      cfg.methods.push_back(name);
    }
  } else {
    switch (cfg.mode) {
      case Mode::Sweep: cfg.methods = {"ind", "dep"}; break;
      case Mode::Invert: cfg.methods = {"ind"}; break;
      case Mode::Verify: cfg.methods = {"dep", "mc"}; break;
      case Mode::Scenario: cfg.methods = {"mc"}; break;
    }
  }
  if (cfg.mode == Mode::Verify) {
    const bool has_mc = std::find(cfg.methods.begin(), cfg.methods.end(), "mc") != cfg.methods.end();
    if (!has_mc || cfg.methods.size() < 2) fail("methods", "verify mode needs mc and at least one analytic method");
  }
  for (const auto& name : cfg.methods) {
    for (int n : cfg.n) {
      for (const auto& p : cfg.points) {
        const std::string why = method_support(name, n, p.omega_deg, cfg.mode);
        if (!why.empty()) fail("methods", "'" + name + "' at n = " + std::to_string(n) + ": " + why);
      }
    }
  }

  rd.reject_unknown();
  return cfg;
}


ReliabilityEstimate evaluate(const std::string& m, const SweepPoint& p, int n, const ExperimentConfig& cfg) {
  const double lambda = per_km2(p.lambda_per_km2);
  const BlockageSpec spec = BlockageSpec::uniform(per_km2(p.mu_per_km2), p.lmax_m);
  const double b = beta(spec);
  const double g = gamma(b, lambda);
  const double omega = p.omega_deg * kDeg;
  const bool sb = omega > 0.0;
  const analytic_n::QmcConfig qmc{16, cfg.workers};
  const auto& q = cfg.quadrature;

  if (m == "mc") {
    montecarlo::SimOptions opt;
    opt.workers = cfg.workers;
    return montecarlo::estimate_reliability(NetworkSpec{lambda, n, omega}, spec, cfg.trials, cfg.seed, opt);
  }
  if (m == "sb_dep" || (sb && m == "dep")) return selfblock::reliability_sb_dep(lambda, spec, omega, q);
  if (m == "sb_ind" || (sb && m == "ind")) return selfblock::reliability_sb_ind(g, omega);
  if (m == "sb_asym_lb" || (sb && m == "asym_lb")) return selfblock::reliability_sb_asym_lb(g, omega);
  if (m == "n_ind" || ((m == "ind" || m == "dep") && n == 1)) return analytic_n::reliability_n_ind(g, n);
  if (m == "ind") return n == 2 ? analytic2::reliability_ind(g) : analytic_n::reliability_n_ind(g, n);
  if (m == "dep") {
    if (n == 2) return analytic2::reliability_dep(lambda, spec, q);
    return analytic_n::reliability_n_dep(lambda, spec, n, cfg.qmc_samples, cfg.seed, qmc);
  }
  if (m == "n_dep") {
    if (n == 1) return analytic_n::reliability_n_ind(g, 1);
    return analytic_n::reliability_n_dep(lambda, spec, n, cfg.qmc_samples, cfg.seed, qmc);
  }
  if (m == "n_lb") {
    if (n == 1) return analytic_n::reliability_n_ind(g, 1);
    return analytic_n::reliability_n_lb(g, n, cfg.qmc_samples, cfg.seed, qmc);
  }
  if (m == "lb1") return analytic2::reliability_lb1(lambda, b, p.lmax_m, q);
  if (m == "asym_lb") return analytic2::reliability_asym_lb(g);
  if (m == "asym_lb_linear") return analytic2::reliability_asym_lb_linear(g);
  throw std::logic_error("unhandled method " + m);
}

std::string row_method(const std::string& m, const ReliabilityEstimate& e) {
  return e.converged ? m : m + ":nonconverged";
}

void run_sweep(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log, RunSummary& sum) {
  for (const auto& p : cfg.points) {
    const double lambda = per_km2(p.lambda_per_km2);
    const BlockageSpec spec = BlockageSpec::uniform(per_km2(p.mu_per_km2), p.lmax_m);
    const double b = beta(spec);
    const double g = gamma(b, lambda);
    for (int n : cfg.n) {
      std::vector<std::pair<std::string, ReliabilityEstimate>> results;
      for (const auto& m : cfg.methods) {
        const ReliabilityEstimate e = evaluate(m, p, n, cfg);
        if (!e.converged) sum.nonconverged = true;
        write_row(csv, {cfg.sweep_var, p.value, p.lambda_per_km2, p.mu_per_km2, p.lmax_m, n, p.omega_deg,
                        to_per_km(b), g, row_method(m, e), e.value, e.error, e.samples});
        ++sum.rows;
        results.emplace_back(m, e);
      }
      if (cfg.mode != Mode::Verify) continue;
      const auto mc = std::find_if(results.begin(), results.end(), [](const auto& r) { return r.first == "mc"; });
      for (const auto& [name, e] : results) {
        if (name == "mc") continue;
        const double sigma = std::sqrt(mc->second.error * mc->second.error + e.error * e.error);
        const double z = sigma > 0.0 ? (e.value - mc->second.value) / sigma : 0.0;
        // Bounds only need to sit on the correct side of the simulation.
        bool ok = std::fabs(z) <= 3.0;
        if (name == "lb1" || name == "asym_lb" || name == "asym_lb_linear" || name == "n_lb" ||
            name == "sb_asym_lb") {
          ok = z <= 3.0;
        } else if (name == "ind" || name == "n_ind" || name == "sb_ind") {
          ok = z >= -3.0;
        }
        if (!ok) sum.verify_failed = true;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s %s vs mc at %s=%.6g n=%d: %.6f vs %.6f (z=%+.2f)\n",
                      ok ? "PASS" : "FAIL", name.c_str(), cfg.sweep_var.c_str(), p.value, n, e.value,
                      mc->second.value, z);
        log << buf;
      }
    }
  }
}

void run_invert(const ExperimentConfig& cfg, std::ostream& csv, RunSummary& sum) {
  const double b = per_km(*cfg.beta_per_km);
  for (const auto& p : cfg.points) {
    const double omega = p.omega_deg * kDeg;
    for (double t : cfg.targets) {
      for (int n : cfg.n) {
        for (const auto& m : cfg.methods) {
          std::function<double(double)> f;
          if ((m == "ind" && omega > 0.0) || m == "sb_ind") {
            f = [omega](double g) { return selfblock::reliability_sb_ind(g, omega).value; };
          } else if (m == "ind") {
            f = [n](double g) { return n == 2 ? analytic2::reliability_ind(g).value
                                              : analytic_n::reliability_n_ind(g, n).value; };
          } else if (m == "sb_asym_lb" || (m == "asym_lb" && omega > 0.0)) {
            f = [omega](double g) { return selfblock::reliability_sb_asym_lb(g, omega).value; };
          } else if (m == "asym_lb") {
            f = [](double g) { return analytic2::reliability_asym_lb(g).value; };
          } else {
            f = [](double g) { return analytic2::reliability_asym_lb_linear(g).value; };
          }
          const double g = analytic2::gamma_for_target(f, t);
          const double lambda = b * b / (4.0 * g * g * std::numbers::pi);
          const double achieved = f(g);
          write_row(csv, {cfg.sweep_var, t, to_per_km2(lambda), p.mu_per_km2, p.lmax_m, n, p.omega_deg,
                          *cfg.beta_per_km, g, m, achieved, std::fabs(achieved - t), 0});
          ++sum.rows;
        }
      }
    }
  }
}

void run_scenario(const ExperimentConfig& cfg, std::ostream& csv, RunSummary& sum) {
  if (cfg.points.empty()) return;
  const auto segments = montecarlo::load_segments(cfg.segments_path);
  montecarlo::SimOptions opt;
  opt.workers = cfg.workers;
  for (const auto& p : cfg.points) {
    for (int n : cfg.n) {
      const NetworkSpec net{per_km2(p.lambda_per_km2), n, p.omega_deg * kDeg};
      const auto e =
          montecarlo::scenario_reliability(segments, net, *cfg.user_region, cfg.trials, cfg.seed, opt, cfg.map_bounds);
      const double value = cfg.sweep_var == "n" ? static_cast<double>(n) : p.value;
      write_row(csv, {cfg.sweep_var, value, p.lambda_per_km2, std::nan(""), std::nan(""), n, p.omega_deg,
                      std::nan(""), std::nan(""), "mc", e.value, e.error, e.samples});
      ++sum.rows;
    }
  }
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_json(j, base_dir);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::filesystem::path(path).parent_path().string());
}

RunSummary run_experiment(const ExperimentConfig& cfg, std::ostream& csv, std::ostream& log) {
  RunSummary sum;
  csv << kCsvHeader << '\n';
  switch (cfg.mode) {
    case Mode::Sweep:
    case Mode::Verify: run_sweep(cfg, csv, log, sum); break;
    case Mode::Invert: run_invert(cfg, csv, sum); break;
    case Mode::Scenario: run_scenario(cfg, csv, sum); break;
  }
  return sum;
}

}  // namespace blockrel::experiment
