#pragma once

#include "photonstat/types.hpp"

namespace photonstat {

/// q_n = n! p_n in the log domain. Entries at or below the distribution's
/// zero tolerance become exact zeros (sign 0).
MomentSequence p_to_q(const PhotonDistribution& dist);

/// Inverse map p_n = q_n / n!. Normalization is re-validated against the
/// given policy.
PhotonDistribution q_to_p(const MomentSequence& q, NormPolicy policy = NormPolicy::kTruncated,
                          std::optional<double> zero_tol = std::nullopt, double norm_tol = 1e-9);

/// x_n = q_n q_{n+2} / q_{n+1}^2 for n <= nmax-2. Throws WindowTooShort
/// when fewer than three entries are available. Entries touching an exact
/// zero are masked (the zeros test owns those configurations).
XnSequence q_to_x(const MomentSequence& q);

/// Factorial moments gamma_n = sum_k (k!)^-1 (n+k)! p_{n+k}, accumulated in
/// log-sum form with compensated summation in descending magnitude order.
///
/// An entry is accepted only when the last included term is below
/// tail_tol times the partial sum and the geometric tail extrapolation
/// stays below the same bound; finite_through records the last accepted
/// order. Throws DivergentTail(n) when the terms for requested order n are
/// still growing at the window edge.
FactorialMomentSequence p_to_gamma(const PhotonDistribution& dist, int max_order,
                                   double tail_tol = 1e-10);

}  // namespace photonstat
