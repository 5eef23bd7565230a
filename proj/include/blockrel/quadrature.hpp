#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace blockrel {

struct QuadratureConfig {
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  int max_depth = 40;  // bisection levels below an initial interval
  int nodes = 21;      // Kronrod points per panel: 15, 21, 31, 41, 51 or 61
  std::size_t max_panels = 4000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  std::size_t evaluations = 0;
};

struct VecQuadResult {
  std::vector<double> value;
  std::vector<double> error;
  bool converged = true;
  std::size_t evaluations = 0;
};

// Symmetric Gauss-Kronrod rule on [-1, 1]. x holds the nonnegative Kronrod
// abscissae in ascending order starting at 0; wg is nonzero exactly on the
// entries that are also Gauss nodes.
struct GkRule {
  std::vector<double> x;
  std::vector<double> wk;
  std::vector<double> wg;
};

const GkRule& gk_rule(int nodes);

// Pairwise summation of a span, independent of how the values were produced.
double pairwise_sum(std::span<const double> v);

void validate(const QuadratureConfig& q);

namespace detail {

struct Panel {
  double a, b;
  int depth;
  std::size_t slot;  // index into value/error storage
  double weight;     // largest component error, drives refinement order
};

struct PanelOrder {
  bool operator()(const Panel& p, const Panel& q) const {
    if (p.weight != q.weight) return p.weight < q.weight;
    return p.a > q.a;
  }
};

inline double scaled_error(double kronrod, double gauss, double resasc, double resabs) {
  double err = std::fabs(kronrod - gauss);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double floor = 50.0 * 2.220446049250313e-16 * resabs;
  return std::max(err, floor);
}

// Applies the rule on [a,b] to an m-component integrand f(x, out).
template <class F>
void apply_rule(F& f, const GkRule& r, double a, double b, std::size_t m, double* val,
                double* err, std::vector<double>& scratch) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const std::size_t npts = r.x.size();
  // scratch layout: [centre | left points | right points], each m wide
  scratch.resize(m * (2 * npts - 1) + 4 * m);
  double* fc = scratch.data();
  f(c, std::span<double>(fc, m));
  for (std::size_t i = 1; i < npts; ++i) {
    f(c - h * r.x[i], std::span<double>(fc + m * (2 * i - 1), m));
    f(c + h * r.x[i], std::span<double>(fc + m * (2 * i), m));
  }
  double* kr = fc + m * (2 * npts - 1);
  double* ga = kr + m;
  double* ab = ga + m;
  double* as = ab + m;
  for (std::size_t k = 0; k < m; ++k) {
    double sk = r.wk[0] * fc[k];
    double sg = r.wg[0] * fc[k];
    double sa = r.wk[0] * std::fabs(fc[k]);
    for (std::size_t i = 1; i < npts; ++i) {
      const double l = fc[m * (2 * i - 1) + k];
      const double u = fc[m * (2 * i) + k];
      sk += r.wk[i] * (l + u);
      sg += r.wg[i] * (l + u);
      sa += r.wk[i] * (std::fabs(l) + std::fabs(u));
    }
    const double mean = 0.5 * sk;
    double asc = r.wk[0] * std::fabs(fc[k] - mean);
    for (std::size_t i = 1; i < npts; ++i) {
      asc += r.wk[i] * (std::fabs(fc[m * (2 * i - 1) + k] - mean) +
                        std::fabs(fc[m * (2 * i) + k] - mean));
    }
    kr[k] = sk * h;
    ga[k] = sg * h;
    ab[k] = sa * std::fabs(h);
    as[k] = asc * std::fabs(h);
  }
  for (std::size_t k = 0; k < m; ++k) {
    val[k] = kr[k];
    err[k] = scaled_error(kr[k], ga[k], as[k], ab[k]);
  }
}

}  // namespace detail

// Global adaptive Gauss-Kronrod for an m-component integrand f(x, out) over
// the consecutive intervals of `breaks`. Each component must satisfy
// error <= max(abs_tol, rel_tol * |value|).
template <class F>
VecQuadResult integrate_vec(F&& f, std::span<const double> breaks, std::size_t m,
                            const QuadratureConfig& q) {
  validate(q);
  if (breaks.size() < 2) throw std::invalid_argument("integrate: need at least two breakpoints");
  const GkRule& rule = gk_rule(q.nodes);
  VecQuadResult res;
  res.value.assign(m, 0.0);
  res.error.assign(m, 0.0);
  if (m == 0) return res;

  std::vector<double> vals, errs, scratch;
  std::vector<detail::Panel> done;
  std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelOrder> heap;
  std::vector<double> total(m, 0.0), total_err(m, 0.0);

  auto evaluate = [&](double a, double b, int depth) {
    const std::size_t slot = vals.size() / m;
    vals.resize(vals.size() + m);
    errs.resize(errs.size() + m);
    detail::apply_rule(f, rule, a, b, m, vals.data() + slot * m, errs.data() + slot * m, scratch);
    res.evaluations += 2 * rule.x.size() - 1;
    double w = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      total[k] += vals[slot * m + k];
      total_err[k] += errs[slot * m + k];
      w = std::max(w, errs[slot * m + k]);
    }
    return detail::Panel{a, b, depth, slot, w};
  };
  auto satisfied = [&]() {
    for (std::size_t k = 0; k < m; ++k) {
      if (total_err[k] > std::max(q.abs_tol, q.rel_tol * std::fabs(total[k]))) return false;
    }
    return true;
  };

  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) {
      if (breaks[i] == breaks[i + 1]) continue;
      throw std::invalid_argument("integrate: breakpoints must be nondecreasing");
    }
    heap.push(evaluate(breaks[i], breaks[i + 1], 0));
  }

  bool converged = true;
  while (!heap.empty() && !satisfied()) {
    detail::Panel p = heap.top();
    const double mid = 0.5 * (p.a + p.b);
    if (done.size() + heap.size() >= q.max_panels) {
      converged = false;
      break;
    }
    if (p.depth >= q.max_depth || !(p.a < mid && mid < p.b)) {
      heap.pop();
      done.push_back(p);
      converged = false;
      continue;
    }
    heap.pop();
    for (std::size_t k = 0; k < m; ++k) {
      total[k] -= vals[p.slot * m + k];
      total_err[k] -= errs[p.slot * m + k];
    }
    heap.push(evaluate(p.a, mid, p.depth + 1));
    heap.push(evaluate(mid, p.b, p.depth + 1));
  }
  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  // Re-sum in positional order so the result does not carry the refinement history.
  std::sort(done.begin(), done.end(),
            [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
  std::vector<double> col(done.size()), ecol(done.size());
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < done.size(); ++i) {
      col[i] = vals[done[i].slot * m + k];
      ecol[i] = errs[done[i].slot * m + k];
    }
    res.value[k] = pairwise_sum(col);
    res.error[k] = pairwise_sum(ecol);
  }
  res.converged = converged &&
                  [&] {
                    for (std::size_t k = 0; k < m; ++k) {
                      if (res.error[k] > std::max(q.abs_tol, q.rel_tol * std::fabs(res.value[k])))
                        return false;
                    }
                    return true;
                  }();
  return res;
}

template <class F>
QuadResult integrate(F&& f, std::span<const double> breaks, const QuadratureConfig& q) {
  auto g = [&f](double x, std::span<double> out) { out[0] = f(x); };
  VecQuadResult v = integrate_vec(g, breaks, 1, q);
  return QuadResult{v.value[0], v.error[0], v.converged, v.evaluations};
}

template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureConfig& q) {
  if (a == b) return {};
  if (a > b) {
    QuadResult r = integrate(f, b, a, q);
    r.value = -r.value;
    return r;
  }
  const double br[2] = {a, b};
  return integrate(f, std::span<const double>(br, 2), q);
}

template <class F>
QuadResult integrate(F&& f, std::initializer_list<double> breaks, const QuadratureConfig& q) {
  return integrate(f, std::span<const double>(breaks.begin(), breaks.size()), q);
}

}  // namespace blockrel
