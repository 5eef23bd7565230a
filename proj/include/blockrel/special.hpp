#pragma once

#include <vector>

namespace blockrel {

// Scaled complementary error function exp(x^2) erfc(x). Finite for every
// x >= -26; stays accurate for large positive x where erfc underflows.
double erfcx(double x);

// W(x) = (sqrt(pi)/2) erfcx(x).
double w_func(double x);

// j-th derivative of W at x >= 0, from W^(j)(x) = int_0^inf (-2t)^j e^{-t^2-2xt} dt.
double w_derivative(int j, double x);

// Taylor coefficients of W(s * g) in powers of g, up to and including g^order.
std::vector<double> w_series(double s, int order);

}  // namespace blockrel
