#include "photonstat/generators.hpp"

#include <algorithm>
#include <cmath>

#include "numeric.hpp"

namespace photonstat {

namespace {

using detail::kNegInf;

// Analytic windows carry exact values: a zero is a true zero (interference
// null, Fock gap), never measurement noise, so the zero tolerance is 0.
PhotonDistribution from_log_window(const std::vector<double>& logp, NormPolicy policy) {
  std::vector<double> p(logp.size());
  for (std::size_t n = 0; n < logp.size(); ++n) {
    p[n] = logp[n] == kNegInf ? 0.0 : std::exp(logp[n]);
  }
  return PhotonDistribution(std::move(p), policy, 0.0);
}

void check_nmax(int nmax) {
  if (nmax < 0) throw InvalidArgument("nmax must be nonnegative");
}

}  // namespace

PhotonDistribution coherent(double intensity, int nmax) {
  check_nmax(nmax);
  if (!(intensity >= 0.0)) throw InvalidArgument("coherent intensity must be nonnegative");
  std::vector<double> logp(nmax + 1);
  for (int n = 0; n <= nmax; ++n) logp[n] = detail::log_poisson(n, intensity);
  return from_log_window(logp, NormPolicy::kTruncated);
}

PhotonDistribution thermal(double mean, int nmax) {
  check_nmax(nmax);
  if (!(mean >= 0.0)) throw InvalidArgument("thermal mean must be nonnegative");
  std::vector<double> logp(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    logp[n] = mean == 0.0 ? (n == 0 ? 0.0 : kNegInf)
                          : n * std::log(mean) - (n + 1) * std::log1p(mean);
  }
  return from_log_window(logp, NormPolicy::kTruncated);
}

PhotonDistribution fock(int m, int nmax) {
  check_nmax(nmax);
  if (m < 0) throw InvalidArgument("fock index must be nonnegative");
  if (m > nmax) throw WindowTooShort("fock window must include index m");
  std::vector<double> p(nmax + 1, 0.0);
  p[m] = 1.0;
  return PhotonDistribution(std::move(p), NormPolicy::kExact, 0.0);
}

PhotonDistribution coherent_mixture(const CoherentMixtureSpec& spec, int nmax) {
  check_nmax(nmax);
  if (spec.weights.empty() || spec.weights.size() != spec.intensities.size())
    throw InvalidArgument("mixture needs matching nonempty weight/intensity lists");
  double wsum = 0.0;
  for (std::size_t j = 0; j < spec.weights.size(); ++j) {
    if (!(spec.weights[j] >= 0.0)) throw InvalidArgument("mixture weights must be nonnegative");
    if (!(spec.intensities[j] >= 0.0))
      throw InvalidArgument("mixture intensities must be nonnegative");
    wsum += spec.weights[j];
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw InvalidArgument("mixture weights must sum to 1 (got " + std::to_string(wsum) + ")");

  std::vector<double> logp(nmax + 1);
  std::vector<double> terms;
  for (int n = 0; n <= nmax; ++n) {
    terms.clear();
    for (std::size_t j = 0; j < spec.weights.size(); ++j) {
      if (spec.weights[j] == 0.0) continue;
      terms.push_back(std::log(spec.weights[j]) + detail::log_poisson(n, spec.intensities[j]));
    }
    logp[n] = detail::log_sum_exp(terms);
  }
  return from_log_window(logp, NormPolicy::kTruncated);
}

PhotonDistribution cat_state(const CatStateSpec& spec, int nmax) {
  check_nmax(nmax);
  if (!(spec.intensity >= 0.0)) throw InvalidArgument("cat intensity must be nonnegative");
  const double mu = spec.intensity;
  const double c = std::cos(spec.theta);
  const double norm = 1.0 + c * std::exp(-2.0 * mu);
  if (norm <= 0.0) throw DegenerateCat();

  std::vector<double> logp(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    const double interference = 1.0 + (n % 2 == 0 ? c : -c);
    if (interference <= 0.0 || detail::log_poisson(n, mu) == kNegInf) {
      logp[n] = kNegInf;
    } else {
      logp[n] = detail::log_poisson(n, mu) + std::log(interference) - std::log(norm);
    }
  }
  return from_log_window(logp, NormPolicy::kTruncated);
}

PhotonDistribution photon_added(const PhotonAddedSpec& spec) {
  return photon_added(spec, spec.base.nmax() + spec.added);
}

PhotonDistribution photon_added(const PhotonAddedSpec& spec, int nmax) {
  check_nmax(nmax);
  if (spec.added < 0) throw InvalidArgument("photon addition count must be nonnegative");
  const int m = spec.added;
  const int full_end = spec.base.nmax() + m;
  if (nmax > full_end)
    throw WindowTooShort("base window ends at " + std::to_string(spec.base.nmax()) +
                         "; cannot fill requested nmax " + std::to_string(nmax));

  // Induced weights w_n = (n!/(n-m)!) base_{n-m} over the full base range,
  // in the log domain.
  std::vector<double> logw(full_end + 1, kNegInf);
  for (int n = m; n <= full_end; ++n) {
    const double b = spec.base.at(n - m);
    if (b > spec.base.zero_tol()) {
      logw[n] = std::lgamma(n + 1.0) - std::lgamma(n - m + 1.0) + std::log(b);
    }
  }
  const double log_norm = detail::log_sum_exp(logw);
  if (log_norm == kNegInf) throw InvalidArgument("photon-added base carries no mass");

  // The normalization uses the window sum; certify that the unseen tail
  // beyond the base window is negligible by geometric extrapolation of the
  // last two nonzero weights.
  int last = full_end;
  while (last >= m && logw[last] == kNegInf) --last;
  if (last >= m + 1 && last == full_end) {
    int prev = last - 1;
    while (prev >= m && logw[prev] == kNegInf) --prev;
    if (prev >= m) {
      const double ratio = std::exp(logw[last] - logw[prev]);
      if (ratio >= 1.0)
        throw WindowTooShort("photon-added weights still growing at the base window edge");
      const double tail = std::exp(logw[last] - log_norm) * ratio / (1.0 - ratio);
      if (tail > 1e-9)
        throw WindowTooShort("photon-added renormalization tail error " +
                             std::to_string(tail) + " exceeds 1e-9");
    }
  }

  std::vector<double> logp(nmax + 1, kNegInf);
  for (int n = m; n <= nmax; ++n) {
    if (logw[n] != kNegInf) logp[n] = logw[n] - log_norm;
  }
  return from_log_window(logp, nmax == full_end ? NormPolicy::kExact : NormPolicy::kTruncated);
}

int suggested_nmax(double intensity) {
  if (!(intensity >= 0.0)) throw InvalidArgument("intensity must be nonnegative");
  const int n = static_cast<int>(std::ceil(intensity + 10.0 * std::sqrt(intensity)));
  return std::max(n, 16);
}

int suggested_nmax(const CoherentMixtureSpec& spec) {
  double mu_max = 0.0;
  for (double mu : spec.intensities) mu_max = std::max(mu_max, mu);
  return suggested_nmax(mu_max);
}

CoherentMixtureSpec fig1_mixture() {
  return CoherentMixtureSpec{{0.25, 0.25, 0.2, 0.18, 0.12}, {10.0, 30.0, 60.0, 90.0, 130.0}};
}

}  // namespace photonstat
