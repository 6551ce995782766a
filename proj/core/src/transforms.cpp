#include "photonstat/transforms.hpp"

#include <cmath>

#include "numeric.hpp"

namespace photonstat {

using detail::kNegInf;

MomentSequence p_to_q(const PhotonDistribution& dist) {
  std::vector<LogWeight> logs(dist.size());
  for (int n = 0; n <= dist.nmax(); ++n) {
    if (!dist.is_zero(n)) {
      logs[n] = LogWeight{1, std::log(dist.at(n)) + std::lgamma(n + 1.0)};
    }
  }
  return MomentSequence::from_logs(std::move(logs));
}

PhotonDistribution q_to_p(const MomentSequence& q, NormPolicy policy,
                          std::optional<double> zero_tol, double norm_tol) {
  std::vector<double> p(q.size(), 0.0);
  for (int n = 0; n <= q.nmax(); ++n) {
    if (!q.is_zero(n)) p[n] = std::exp(q.log_at(n) - std::lgamma(n + 1.0));
  }
  return PhotonDistribution(std::move(p), policy, zero_tol, norm_tol);
}

XnSequence q_to_x(const MomentSequence& q) {
  if (q.size() < 3) throw WindowTooShort("x_n needs at least three q entries");
  const int len = static_cast<int>(q.size()) - 2;
  XnSequence x;
  x.values.assign(len, 0.0);
  x.defined.assign(len, false);
  for (int n = 0; n < len; ++n) {
    if (q.is_zero(n) || q.is_zero(n + 1) || q.is_zero(n + 2)) continue;
    x.values[n] = std::exp(q.log_at(n) + q.log_at(n + 2) - 2.0 * q.log_at(n + 1));
    x.defined[n] = true;
  }
  return x;
}

FactorialMomentSequence p_to_gamma(const PhotonDistribution& dist, int max_order,
                                   double tail_tol) {
  if (max_order < 0) throw InvalidArgument("max_order must be nonnegative");
  if (!(tail_tol > 0.0)) throw InvalidArgument("tail_tol must be positive");

  std::vector<double> values;
  std::vector<double> tail_bounds;
  int finite_through = -1;
  bool divergent = false;

  std::vector<double> log_terms;
  for (int n = 0; n <= max_order; ++n) {
    log_terms.clear();
    int last_k = -1;
    for (int k = 0; n + k <= dist.nmax(); ++k) {
      const double p = dist.at(n + k);
      if (dist.is_zero(n + k)) {
        log_terms.push_back(kNegInf);
        continue;
      }
      log_terms.push_back(std::lgamma(n + k + 1.0) - std::lgamma(k + 1.0) + std::log(p));
      last_k = k;
    }

    if (last_k < 0) {
      // No mass at or beyond n anywhere in the window: the tail sum is
      // exactly zero.
      values.push_back(0.0);
      tail_bounds.push_back(0.0);
      finite_through = n;
      continue;
    }

    const double log_sum = detail::log_sum_exp(log_terms);
    double rel_tail = 0.0;
    if (last_k == static_cast<int>(log_terms.size()) - 1) {
      // The last included term touches the window edge; certify the unseen
      // tail by geometric extrapolation of the final ratio.
      int prev_k = last_k - 1;
      while (prev_k >= 0 && log_terms[prev_k] == kNegInf) --prev_k;
      if (prev_k < 0) break;  // a single term at the edge certifies nothing
      const double ratio = std::exp(log_terms[last_k] - log_terms[prev_k]);
      if (ratio >= 1.0) {
        divergent = true;
        break;
      }
      rel_tail = std::exp(log_terms[last_k] - log_sum) * ratio / (1.0 - ratio);
      if (!(rel_tail <= tail_tol)) break;  // unconverged but not growing: stop here
    }

    values.push_back(std::exp(log_sum));
    tail_bounds.push_back(rel_tail * std::exp(log_sum));
    finite_through = n;
  }

  if (divergent) throw DivergentTail(finite_through + 1);

  return FactorialMomentSequence(std::move(values), std::move(tail_bounds), finite_through,
                                 false);
}

}  // namespace photonstat
