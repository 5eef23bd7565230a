#include "blockrel/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace blockrel {

namespace {

template <unsigned N>
GkRule make_rule() {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const auto& xk = gauss_kronrod<double, N>::abscissa();
  const auto& wk = gauss_kronrod<double, N>::weights();
  const auto& xg = gauss<double, (N - 1) / 2>::abscissa();
  const auto& wg = gauss<double, (N - 1) / 2>::weights();
  GkRule r;
  r.x.assign(xk.begin(), xk.end());
  r.wk.assign(wk.begin(), wk.end());
  r.wg.assign(r.x.size(), 0.0);
  // Gauss nodes interleave with the Kronrod extension points; match by value.
  for (std::size_t i = 0; i < xg.size(); ++i) {
    for (std::size_t j = 0; j < r.x.size(); ++j) {
      if (std::fabs(r.x[j] - xg[i]) < 1e-14) r.wg[j] = wg[i];
    }
  }
  return r;
}

}  // namespace

const GkRule& gk_rule(int nodes) {
  static const GkRule r15 = make_rule<15>();
  static const GkRule r21 = make_rule<21>();
  static const GkRule r31 = make_rule<31>();
  static const GkRule r41 = make_rule<41>();
  static const GkRule r51 = make_rule<51>();
  static const GkRule r61 = make_rule<61>();
  switch (nodes) {
    case 15: return r15;
    case 21: return r21;
    case 31: return r31;
    case 41: return r41;
    case 51: return r51;
    case 61: return r61;
    default: throw std::invalid_argument("quadrature: unsupported Kronrod rule size");
  }
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

void validate(const QuadratureConfig& q) {
  if (!(q.abs_tol > 0.0) || !(q.rel_tol > 0.0))
    throw std::invalid_argument("quadrature: tolerances must be positive");
  if (q.max_depth < 0) throw std::invalid_argument("quadrature: max_depth must be nonnegative");
  gk_rule(q.nodes);
}

}  // namespace blockrel
