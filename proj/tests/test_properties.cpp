#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "photonstat/criteria.hpp"
#include "photonstat/generators.hpp"
#include "photonstat/transforms.hpp"

using namespace photonstat;

namespace {

using WitnessKey = std::pair<std::string, std::vector<int>>;

// Witness keys of the gauge-covariant tests. Oscillation maxima positions
// move under the c^n tilt by construction (the tilt reshapes the sequence),
// but every local maximum implies a first-order violation, so verdicts and
// the remaining witness sets are exact gauge invariants.
std::set<WitnessKey> witness_keys(const WitnessReport& r) {
  std::set<WitnessKey> keys;
  for (const Witness& w : r.witnesses)
    if (w.test != "oscillation_q") keys.insert({w.test, w.indices});
  return keys;
}

// Random strictly positive q window as uniform logs.
MomentSequence random_q(std::mt19937& rng, int len, double log_span) {
  std::uniform_real_distribution<double> logs(-log_span, log_span);
  std::vector<LogWeight> entries(len);
  for (auto& e : entries) e = LogWeight{1, logs(rng)};
  return MomentSequence::from_logs(std::move(entries));
}

PhotonDistribution normalized_dist_from_q(const MomentSequence& q) {
  std::vector<double> p(q.size());
  double sum = 0.0;
  for (int n = 0; n <= q.nmax(); ++n) {
    p[n] = std::exp(q.log_at(n) - std::lgamma(n + 1.0));
    sum += p[n];
  }
  for (double& v : p) v /= sum;
  return PhotonDistribution(std::move(p), NormPolicy::kExact, 0.0);
}

}  // namespace

// Moment sequence of two point masses: classical by construction, so the
// battery must stay quiet on it in every gauge.
MomentSequence random_classical_q(std::mt19937& rng, int len) {
  std::uniform_real_distribution<double> mu(0.3, 4.0);
  std::uniform_real_distribution<double> weight(0.2, 0.8);
  const double w = weight(rng), mu1 = mu(rng), mu2 = mu(rng);
  std::vector<double> q(len);
  for (int n = 0; n < len; ++n)
    q[n] = w * std::pow(mu1, n) + (1.0 - w) * std::pow(mu2, n);
  return MomentSequence::from_values(q);
}

TEST_CASE("gauge invariance: verdicts and witness sets survive q -> a c^n q") {
  std::mt19937 rng(20260810);
  std::uniform_int_distribution<int> lengths(8, 16);
  std::uniform_real_distribution<double> log_a(-2.0, 2.0);
  std::uniform_real_distribution<double> log_c(-0.7, 0.7);

  int nonclassical_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto q = trial % 4 == 3 ? random_classical_q(rng, lengths(rng))
                            : random_q(rng, lengths(rng), 3.0);
    auto base = run_battery(normalized_dist_from_q(q));
    if (base.verdict == Verdict::kNonclassical) ++nonclassical_seen;
    // Whenever oscillation fires, the first-order conditions fire too, so
    // the verdict never hangs on the gauge-dependent maxima positions.
    bool osc = false, first = false;
    for (const Witness& w : base.witnesses) {
      osc |= w.test == "oscillation_q";
      first |= w.test == "first_order";
    }
    if (osc) REQUIRE(first);
    for (int rep = 0; rep < 3; ++rep) {
      auto scaled = q.rescaled(log_a(rng), log_c(rng));
      auto again = run_battery(normalized_dist_from_q(scaled));
      REQUIRE(again.verdict == base.verdict);
      REQUIRE(witness_keys(again) == witness_keys(base));
    }
  }
  CHECK(nonclassical_seen > 50);  // the ensemble genuinely exercises both verdicts
  CHECK(nonclassical_seen < 200);
}

TEST_CASE("x_n is invariant under the geometric gauge") {
  std::mt19937 rng(7);
  auto q = random_q(rng, 12, 2.0);
  auto x = q_to_x(q);
  auto x2 = q_to_x(q.rescaled(1.7, -0.4));
  for (int n = 0; n < static_cast<int>(x.size()); ++n) {
    REQUIRE(x.is_defined(n) == x2.is_defined(n));
    if (x.is_defined(n)) CHECK(x2.at(n) == doctest::Approx(x.at(n)).epsilon(1e-10));
  }
}

TEST_CASE("classical closure: random coherent mixtures never trip the battery") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> components(1, 5);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::uniform_real_distribution<double> intensity(0.0, 20.0);

  for (int trial = 0; trial < 1000; ++trial) {
    const int k = components(rng);
    CoherentMixtureSpec spec;
    double wsum = 0.0;
    for (int j = 0; j < k; ++j) {
      spec.weights.push_back(weight(rng));
      spec.intensities.push_back(intensity(rng));
      wsum += spec.weights.back();
    }
    for (double& w : spec.weights) w /= wsum;
    auto dist = coherent_mixture(spec, suggested_nmax(spec));
    auto report = run_battery(dist);
    CAPTURE(trial);
    REQUIRE(report.verdict == Verdict::kNoViolationFound);
  }
}

TEST_CASE("hierarchy soundness: local violations imply Hankel failures") {
  std::mt19937 rng(987654);
  std::uniform_int_distribution<int> lengths(9, 15);

  int found = 0;
  int attempts = 0;
  while (found < 150 && ++attempts < 4000) {
    auto q = random_q(rng, lengths(rng), 2.0);
    auto first = test_first_order(q);

    // Qualify the instance: a robust first-order violation that fits inside
    // a buildable Hankel pair (2N+1 <= nmax with N = ceil((n+2)/2)).
    const Witness* pick = nullptr;
    for (const Witness& w : first.witnesses) {
      const int n = w.indices.front();
      const int order = (n + 3) / 2;  // ceil((n+2)/2)
      if (w.margin < -1e-6 && 2 * order + 1 <= q.nmax()) {
        pick = &w;
        break;
      }
    }
    if (pick == nullptr) continue;
    ++found;

    const int n = pick->indices.front();
    const int order = (n + 3) / 2;
    auto direct = test_hankel_psd(build_hankel(q, order));
    REQUIRE(direct.verdict == Verdict::kNonclassical);

    // Monotonicity in N: every higher buildable order fails too.
    for (int higher = order + 1; 2 * higher + 1 <= q.nmax(); ++higher)
      REQUIRE(test_hankel_psd(build_hankel(q, higher)).verdict == Verdict::kNonclassical);
  }
  CHECK(found == 150);
}

TEST_CASE("second-order-only violations are caught by 3x3 blocks") {
  // All x >= 1 (no first-order violation), with a saturated-spiked-saturated
  // pattern that breaks the second-order condition.
  std::mt19937 rng(1313);
  std::uniform_real_distribution<double> spike(1.3, 2.0);
  std::uniform_real_distribution<double> eps(0.0, 1e-4);

  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> q = {1.0, 1.0};
    const std::vector<double> xs = {1.0 + eps(rng), spike(rng), 1.0 + eps(rng), 1.2, 1.2};
    for (double x : xs) {
      const std::size_t len = q.size();
      q.push_back(x * q[len - 1] * q[len - 1] / q[len - 2]);
    }
    auto seq = MomentSequence::from_values(q);
    REQUIRE(test_first_order(seq).verdict == Verdict::kNoViolationFound);
    auto second = test_second_order(q_to_x(seq));
    REQUIRE(second.verdict == Verdict::kNonclassical);

    const int n = second.witnesses.front().indices.front();
    const int order = (n + 5) / 2;  // ceil((n+4)/2): the 3x3 block fits
    REQUIRE(2 * order + 1 <= seq.nmax());
    REQUIRE(test_hankel_psd(build_hankel(seq, order)).verdict == Verdict::kNonclassical);
  }
}

TEST_CASE("zero propagation: zeros-test hits come with first-order hits") {
  auto check_adjacent = [](const PhotonDistribution& dist) {
    auto zeros = test_zeros(dist);
    REQUIRE(zeros.verdict == Verdict::kNonclassical);
    auto first = test_first_order(p_to_q(dist));
    REQUIRE(first.verdict == Verdict::kNonclassical);
    // Some first-order witness must touch a zero index.
    const auto& zero_indices = zeros.witnesses.front().indices;
    bool touches = false;
    for (const Witness& w : first.witnesses)
      for (int idx : w.indices)
        if (std::find(zero_indices.begin(), zero_indices.end(), idx) != zero_indices.end())
          touches = true;
    CHECK(touches);
  };
  check_adjacent(fock(2, 5));
  check_adjacent(photon_added({thermal(1.0, 40), 1}));
  check_adjacent(photon_added({coherent(3.0, 40), 2}));
}

TEST_CASE("scale covariance: scaling mixture intensities keeps verdicts clean") {
  CoherentMixtureSpec spec{{0.3, 0.7}, {2.0, 8.0}};
  auto gamma_of = [](const CoherentMixtureSpec& s) {
    auto dist = coherent_mixture(s, suggested_nmax(s) + 40);
    return p_to_gamma(dist, 6);
  };
  auto base = gamma_of(spec);

  for (double c : {1.5, 3.0}) {
    CoherentMixtureSpec scaled = spec;
    for (double& mu : scaled.intensities) mu *= c;
    auto grown = gamma_of(scaled);
    REQUIRE(grown.finite_through() >= 6);
    for (int n = 1; n <= 6; ++n) CHECK(grown.at(n) > base.at(n));  // monotone growth
    auto report = run_battery(coherent_mixture(scaled, suggested_nmax(scaled)));
    CHECK(report.verdict == Verdict::kNoViolationFound);
  }
}
