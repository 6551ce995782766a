#pragma once

#include <vector>

#include "photonstat/types.hpp"

namespace photonstat {

/// Incoherent mixture of coherent states: weights lambda_j (summing to 1)
/// and intensities |alpha_j|^2.
struct CoherentMixtureSpec {
  std::vector<double> weights;
  std::vector<double> intensities;
};

/// Superposition of |z0> and exp(i*theta)|-z0>; intensity is |z0|^2.
struct CatStateSpec {
  double intensity = 0.0;
  double theta = 0.0;
};

/// m-fold photon addition applied to the diagonal of a base state.
struct PhotonAddedSpec {
  PhotonDistribution base;
  int added = 0;
};

// Every generator output carries zero_tol = 0: analytic values are exact,
// so a stored zero is a true zero and a tiny tail entry is data. The
// relative default tolerance of PhotonDistribution is meant for measured
// input, where noise must not masquerade as zeros.

/// Poisson window p_n = exp(-mu) mu^n / n!, computed per term in the log
/// domain (plain n! overflows at n = 171).
PhotonDistribution coherent(double intensity, int nmax);

/// Geometric window p_n = mean^n / (1+mean)^(n+1).
PhotonDistribution thermal(double mean, int nmax);

/// Number state |m>: p_m = 1, everything else 0.
PhotonDistribution fock(int m, int nmax);

/// Convex combination of Poisson windows.
PhotonDistribution coherent_mixture(const CoherentMixtureSpec& spec, int nmax);

/// Two-coherent-state superposition window
///   p_n = C mu^n/n! (1 + (-1)^n cos theta),  C = exp(-mu)/(1 + cos(theta) exp(-2mu)),
/// normalized in closed form so the interference ratio law is exact.
/// Throws DegenerateCat for intensity 0 with theta = pi (the null vector);
/// intensity 0 otherwise degenerates to the vacuum.
PhotonDistribution cat_state(const CatStateSpec& spec, int nmax);

/// p_n = N (n!/(n-m)!) base_{n-m} for n >= m, 0 below, with N fixed by the
/// window sum of the base-induced weights. Output window ends at
/// base.nmax + m unless a shorter nmax is requested.
PhotonDistribution photon_added(const PhotonAddedSpec& spec);
PhotonDistribution photon_added(const PhotonAddedSpec& spec, int nmax);

/// Window length keeping truncated Poisson mass below ~1e-10:
/// nmax = mu_max + 10 sqrt(mu_max), floored at 16.
int suggested_nmax(double intensity);
int suggested_nmax(const CoherentMixtureSpec& spec);

/// The five-component demo mixture used by the `figure1` export:
/// weights (0.25, 0.25, 0.2, 0.18, 0.12), intensities (10, 30, 60, 90, 130).
CoherentMixtureSpec fig1_mixture();

}  // namespace photonstat
