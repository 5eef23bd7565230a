#pragma once

#include <functional>

#include "blockrel/mean_area.hpp"
#include "blockrel/model.hpp"
#include "blockrel/quadrature.hpp"
#include "blockrel/special.hpp"

namespace blockrel::analytic2 {

using blockrel::w_func;

// Tolerances used for the nested (triple) integrals when the caller does not
// pass its own.
QuadratureConfig triple_defaults();

// Upper cut-off in normalised distance x = beta r where e^{-x^2/(4 g^2)} < 1e-16.
double x_cutoff(double g);

// Mean union area for link 1 of length r1 at angle Phi and link 2 of length r2
// at angle 0.
QuadResult mean_union_area(double r1, double r2, double Phi, const BlockageSpec& spec,
                           const QuadratureConfig& q = {});

struct JointLos {
  double joint = 1.0;      // exp(-mu N)
  double marginal1 = 1.0;  // exp(-beta r1)
  double marginal2 = 1.0;  // exp(-beta r2)
  double error = 0.0;
  bool converged = true;
};

JointLos joint_los_prob(double r1, double r2, double Phi, const BlockageSpec& spec,
                        const QuadratureConfig& q = {});

// E[e^{-beta R1}] + E[e^{-beta R2}] for the two nearest base stations.
double marginal_sum(double g);

ReliabilityEstimate reliability_dep(double lambda, const BlockageSpec& spec,
                                    const QuadratureConfig& q = triple_defaults());
ReliabilityEstimate reliability_ind(double g);

// Largest g with p(g) = target for a reliability p decreasing in g from 1.
double gamma_for_target(const std::function<double(double)>& p, double target);

double required_density(double target, double beta);

double f_lb1(double a, double Phi);
ReliabilityEstimate reliability_lb1(double lambda, double beta, double l_max,
                                    const QuadratureConfig& q = triple_defaults());
ReliabilityEstimate reliability_asym_lb(double g, const QuadratureConfig& q = {});
ReliabilityEstimate reliability_asym_lb_linear(double g);

// Clamps a value that strays outside [0,1] by no more than tol; anything
// further out is returned unchanged so callers can see it.
double clamp_probability(double v, double tol);

}  // namespace blockrel::analytic2
