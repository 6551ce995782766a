#pragma once

// Internal numeric helpers shared by the core sources. Not installed.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace photonstat::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Neumaier-compensated sum in the order given.
inline double compensated_sum(std::span<const double> xs) {
  double s = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      comp += (s - t) + x;
    } else {
      comp += (x - t) + s;
    }
    s = t;
  }
  return s + comp;
}

/// Compensated sum in descending magnitude order.
inline double stable_sum(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end(),
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  return compensated_sum(xs);
}

/// log(sum exp(l)) over finite and -inf entries; -inf for an empty sum.
inline double log_sum_exp(std::span<const double> logs) {
  double m = kNegInf;
  for (double l : logs) m = std::max(m, l);
  if (m == kNegInf) return kNegInf;
  std::vector<double> terms;
  terms.reserve(logs.size());
  for (double l : logs) {
    if (l != kNegInf) terms.push_back(std::exp(l - m));
  }
  return m + std::log(stable_sum(std::move(terms)));
}

/// log of the Poisson pmf exp(-mu) mu^n / n!; handles mu = 0.
inline double log_poisson(int n, double mu) {
  if (mu == 0.0) return n == 0 ? 0.0 : kNegInf;
  return -mu + n * std::log(mu) - std::lgamma(n + 1.0);
}

}  // namespace photonstat::detail
