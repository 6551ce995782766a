#pragma once

#include <functional>
#include <vector>

#include "photonstat/generators.hpp"
#include "photonstat/types.hpp"

namespace photonstat {

/// A point mass of the radial distribution: weight at intensity I.
struct PointMass {
  double intensity = 0.0;
  double weight = 0.0;
};

struct QuadratureSpec {
  double rel_tol = 1e-11;    // successive-refinement convergence target
  double domain_cut = 1e-18; // integrand cutoff relative to its peak
  int min_panels_log2 = 6;
  int max_panels_log2 = 20;
};

/// Radial marginal P(I) of a state, as a discrete part (exact point
/// masses) plus an optional continuous density on [0, inf). For the
/// classical analytic families the evaluator is nonnegative everywhere.
struct RadialDistribution {
  std::vector<PointMass> atoms;
  std::function<double(double)> density;  // empty when purely discrete
  double domain_hint = 1.0;               // intensity scale of the density
  QuadratureSpec quadrature;
};

/// For a mixture of coherent states the phase average of each component is
/// a ring at I = |alpha_j|^2, so P(I) is exactly a sum of point masses.
RadialDistribution radial_of_coherent_mixture(const CoherentMixtureSpec& spec);

/// Thermal state: P(I) = exp(-I/mean)/mean. mean = 0 degenerates to a
/// point mass at I = 0 (the vacuum).
RadialDistribution radial_of_thermal(double mean);

/// Per-moment adaptive-quadrature convergence certificate.
struct MomentCertificate {
  int panels_log2 = 0;      // composite panels used at acceptance (2^k)
  double rel_change = 0.0;  // relative change at the accepted refinement
};

struct QuadratureMoments {
  std::vector<double> values;
  std::vector<MomentCertificate> certificates;
};

/// Moments of P(I) (weighted = false, the gamma_n route) or of
/// P(I) exp(-I) (weighted = true, the q_n route) through order max_order.
/// Point masses are summed exactly; the continuous part is integrated by
/// composite-Simpson refinement with doubling panel counts until the
/// relative change drops below rel_tol. Throws QuadratureNotConverged.
QuadratureMoments quadrature_moments(const RadialDistribution& radial, int max_order,
                                     bool weighted);

/// The two typed views of the same computation.
MomentSequence oracle_q_moments(const RadialDistribution& radial, int max_order);
FactorialMomentSequence oracle_gamma_moments(const RadialDistribution& radial, int max_order);

}  // namespace photonstat
