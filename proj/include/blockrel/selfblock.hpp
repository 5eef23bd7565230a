#pragma once

#include "blockrel/analytic2.hpp"
#include "blockrel/model.hpp"
#include "blockrel/quadrature.hpp"

namespace blockrel::selfblock {

// How the probability that neither link is self-blocked depends on the angle
// phi between the links. The body blocks every direction within omega of a
// uniformly random heading.
enum class JointSurvival {
  ArcOverlap,     // exact for that body model: 1 - 2w/pi + overlap of the two blocked arcs / 2pi
  DisjointCones,  // constant max(0, 1 - 2w/pi), exact only when phi >= 2w
};

struct SelfBlockParams {
  double omega;
  double c;   // 1 - omega/pi
  double c2;  // 1 - 2 omega/pi, floored at 0

  static SelfBlockParams from_omega(double omega);
};

double joint_survival(double phi, double omega, JointSurvival model = JointSurvival::ArcOverlap);

// Average of joint_survival over phi in (omega, pi).
double mean_joint_survival(double omega, JointSurvival model = JointSurvival::ArcOverlap);

// Density of the distance to the nearest base station outside the cone of
// half-span omega around the nearest one (c = 1 - omega/pi).
double d2_density(double r2, double lambda, double c);

// c (E[e^{-beta R1}] + E[e^{-beta D2}]).
double closed_part(double g, double c);

ReliabilityEstimate reliability_sb_dep(double lambda, const BlockageSpec& spec, double omega,
                                       const QuadratureConfig& q = analytic2::triple_defaults(),
                                       JointSurvival model = JointSurvival::ArcOverlap);

ReliabilityEstimate reliability_sb_ind(double g, double omega,
                                       JointSurvival model = JointSurvival::ArcOverlap);

// Closed form of the independent case at omega = pi/2.
double sb_ind_half_closed(double g, JointSurvival model = JointSurvival::ArcOverlap);

ReliabilityEstimate reliability_sb_asym_lb(double g, double omega, const QuadratureConfig& q = {},
                                           JointSurvival model = JointSurvival::ArcOverlap);

}  // namespace blockrel::selfblock
