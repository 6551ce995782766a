#pragma once

#include <set>
#include <string>

#include "photonstat/types.hpp"

namespace photonstat {

enum class TestId {
  kZeros,
  kFirstOrder,
  kSecondOrder,
  kOscillationQ,
  kHankelQ,
  kHankelGamma,
  kLocalPoissonian,
};

std::string to_string(TestId id);

/// The battery's default members, in execution order: cheapest and most
/// localized witnesses first. The factorial-moment route and the
/// locally-Poissonian classifier are opt-in.
std::set<TestId> default_battery_tests();

struct TestConfig {
  /// Relative tolerance for every inequality and eigenvalue comparison.
  double psd_tol = 1e-9;
  /// Cap on the Hankel order N; < 0 selects floor((nmax-1)/2) capped at 50.
  int max_hankel_order = -1;
  /// |x_n - 1| at or below this counts as locally Poissonian.
  double saturation_tol = 1e-6;
  /// Tail acceptance threshold for factorial moments computed by the battery.
  double gamma_tail_tol = 1e-10;
  std::set<TestId> enabled_tests = default_battery_tests();

  bool enabled(TestId id) const { return enabled_tests.count(id) > 0; }
};

/// Effective Hankel cap for a window ending at nmax (needs 2N+1 <= nmax).
int hankel_order_cap(int nmax, const TestConfig& cfg);

/// First-order local conditions q_n q_{n+2} >= q_{n+1}^2. Witness margin is
/// lhs/rhs - 1. Throws WindowTooShort below three entries.
WitnessReport test_first_order(const MomentSequence& q, const TestConfig& cfg = {});

/// A state other than the vacuum whose window contains an exact zero next
/// to nonzero mass is nonclassical. The single witness lists every zero
/// index in the window.
WitnessReport test_zeros(const PhotonDistribution& dist);

/// Any strict interior local maximum of q_n (beyond tolerance) is a
/// violation: classical q windows cannot oscillate.
WitnessReport test_oscillation_q(const MomentSequence& q, const TestConfig& cfg = {});

/// Interior local maxima of p_n, for plotting and diagnosis only. p_n may
/// oscillate classically; this never contributes to a verdict.
std::vector<int> detect_oscillation_p(const PhotonDistribution& dist,
                                      const TestConfig& cfg = {});

/// Second-order local conditions
///   (x_n - 1)(x_{n+2} - 1) >= ((x_{n+1} - 1)/x_{n+1})^2
/// evaluated wherever three consecutive x's are defined.
WitnessReport test_second_order(const XnSequence& x, const TestConfig& cfg = {});

/// Mixed saturation: some x_n at 1 within saturation_tol while another
/// departs from it. Exact local saturation propagates to all n for a
/// classical state. Treats near-saturation as exact, so classical windows
/// that pass very close to 1 will trip it; opt-in for that reason.
WitnessReport test_local_poissonian(const XnSequence& x, const TestConfig& cfg = {});

/// Hankel pair at order N from the gauge-rescaled sequence (rescaling is
/// mandatory: raw q_n for long windows spans hundreds of orders of
/// magnitude, and the congruence is verdict-neutral). Requires
/// 2N+1 <= nmax.
HankelPair build_hankel(const MomentSequence& q, int order);
HankelPair build_hankel(const FactorialMomentSequence& gamma, int order);

/// Nonclassical iff either matrix has an eigenvalue below
/// -psd_tol * max(1, spectral bound). The witness indices give the raw
/// sequence range the failing matrix uses: {0, 2N} for the unshifted
/// matrix, {1, 2N+1} for the shifted one; lhs is the offending eigenvalue.
WitnessReport test_hankel_psd(const HankelPair& pair, const TestConfig& cfg = {});

/// Eigenvalues of a dense symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& m);

/// The whole battery in order: zeros, first-order, second-order,
/// oscillation(q), Hankel(q), then the opt-in members. Tests whose window
/// preconditions fail are recorded as skipped, never raised.
WitnessReport run_battery(const PhotonDistribution& dist, const TestConfig& cfg = {});

/// Battery variant for externally supplied factorial moments: the Hankel
/// positivity test on {gamma_n} only.
WitnessReport run_battery_gamma(const FactorialMomentSequence& gamma,
                                const TestConfig& cfg = {});

}  // namespace photonstat
