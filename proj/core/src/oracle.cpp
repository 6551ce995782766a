#include "photonstat/oracle.hpp"

#include <cmath>

#include "numeric.hpp"

namespace photonstat {

RadialDistribution radial_of_coherent_mixture(const CoherentMixtureSpec& spec) {
  if (spec.weights.empty() || spec.weights.size() != spec.intensities.size())
    throw InvalidArgument("mixture needs matching nonempty weight/intensity lists");
  double wsum = 0.0;
  for (double w : spec.weights) wsum += w;
  if (std::abs(wsum - 1.0) > 1e-12) throw InvalidArgument("mixture weights must sum to 1");

  RadialDistribution r;
  for (std::size_t j = 0; j < spec.weights.size(); ++j) {
    if (spec.weights[j] == 0.0) continue;
    r.atoms.push_back(PointMass{spec.intensities[j], spec.weights[j]});
  }
  return r;
}

RadialDistribution radial_of_thermal(double mean) {
  if (!(mean >= 0.0)) throw InvalidArgument("thermal mean must be nonnegative");
  RadialDistribution r;
  if (mean == 0.0) {
    r.atoms.push_back(PointMass{0.0, 1.0});  // vacuum limit
    return r;
  }
  r.density = [mean](double intensity) { return std::exp(-intensity / mean) / mean; };
  r.domain_hint = mean;
  return r;
}

namespace {

// Composite Simpson over [0, hi] with 2^k panels, compensated accumulation.
double simpson(const std::function<double(double)>& f, double hi, int k) {
  const std::size_t panels = std::size_t{1} << k;
  const double h = hi / static_cast<double>(panels);
  std::vector<double> terms;
  terms.reserve(2 * panels + 1);
  terms.push_back(f(0.0));
  terms.push_back(f(hi));
  for (std::size_t i = 1; i < panels; ++i) terms.push_back(2.0 * f(i * h));
  for (std::size_t i = 0; i < panels; ++i) terms.push_back(4.0 * f((i + 0.5) * h));
  return detail::compensated_sum(terms) * h / 6.0;
}

// Cut the domain where the integrand has decayed below cutoff * peak,
// extending outward by doubling.
double find_domain_end(const std::function<double(double)>& f, double hint, double cutoff,
                       int order) {
  double hi = std::max(hint * 4.0, 1.0);
  for (int round = 0; round < 70; ++round) {
    double peak = 0.0;
    const int probes = 256;
    for (int i = 1; i <= probes; ++i) peak = std::max(peak, f(hi * i / probes));
    if (peak == 0.0) return hi;
    if (f(hi) <= cutoff * peak) return hi;
    hi *= 2.0;
  }
  throw QuadratureNotConverged(order);
}

}  // namespace

QuadratureMoments quadrature_moments(const RadialDistribution& radial, int max_order,
                                     bool weighted) {
  if (max_order < 0) throw InvalidArgument("max_order must be nonnegative");
  QuadratureMoments out;
  out.values.resize(max_order + 1, 0.0);
  out.certificates.resize(max_order + 1);

  for (int n = 0; n <= max_order; ++n) {
    std::vector<double> terms;
    for (const PointMass& atom : radial.atoms) {
      const double damping = weighted ? std::exp(-atom.intensity) : 1.0;
      terms.push_back(atom.weight * std::pow(atom.intensity, n) * damping);
    }
    double value = detail::stable_sum(std::move(terms));
    MomentCertificate cert;  // exact for the discrete part

    if (radial.density) {
      auto integrand = [&](double intensity) {
        const double damping = weighted ? std::exp(-intensity) : 1.0;
        return radial.density(intensity) * damping * std::pow(intensity, n);
      };
      const QuadratureSpec& spec = radial.quadrature;
      const double hi = find_domain_end(integrand, radial.domain_hint * (n + 1),
                                        spec.domain_cut, n);

      double prev = simpson(integrand, hi, spec.min_panels_log2);
      bool converged = false;
      for (int k = spec.min_panels_log2 + 1; k <= spec.max_panels_log2; ++k) {
        const double cur = simpson(integrand, hi, k);
        const double change =
            std::abs(cur - prev) / std::max(std::abs(cur), std::numeric_limits<double>::min());
        prev = cur;
        if (change < spec.rel_tol) {
          cert.panels_log2 = k;
          cert.rel_change = change;
          converged = true;
          break;
        }
      }
      if (!converged) throw QuadratureNotConverged(n);
      value += prev;
    }

    out.values[n] = value;
    out.certificates[n] = cert;
  }
  return out;
}

MomentSequence oracle_q_moments(const RadialDistribution& radial, int max_order) {
  return MomentSequence::from_values(quadrature_moments(radial, max_order, true).values);
}

FactorialMomentSequence oracle_gamma_moments(const RadialDistribution& radial, int max_order) {
  return FactorialMomentSequence::from_values(
      quadrature_moments(radial, max_order, false).values);
}

}  // namespace photonstat
