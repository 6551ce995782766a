#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "photonstat/errors.hpp"

namespace photonstat {

enum class NormPolicy {
  kExact,      // window sum must equal 1 within tolerance
  kTruncated,  // window sum must not exceed 1 (plus tolerance)
};

/// Finite window p_0..p_nmax of a photon-number distribution.
///
/// Construction validates and owns the truncation semantics: values within
/// -zero_tol of zero are clamped to 0, anything more negative is an error,
/// and the window sum is checked against the declared policy. Entries at or
/// below zero_tol are treated as exact zeros by every downstream test.
/// Immutable after construction.
class PhotonDistribution {
 public:
  /// zero_tol: absolute threshold; defaults to 1e-12 relative to max p_n.
  PhotonDistribution(std::vector<double> values, NormPolicy policy,
                     std::optional<double> zero_tol = std::nullopt,
                     double norm_tol = 1e-9);

  const std::vector<double>& values() const { return values_; }
  double at(int n) const { return values_.at(static_cast<std::size_t>(n)); }
  int nmax() const { return static_cast<int>(values_.size()) - 1; }
  std::size_t size() const { return values_.size(); }

  NormPolicy norm_policy() const { return policy_; }
  double zero_tol() const { return zero_tol_; }
  double norm_tol() const { return norm_tol_; }
  double sum() const { return sum_; }

  bool is_zero(int n) const { return at(n) <= zero_tol_; }

 private:
  std::vector<double> values_;
  NormPolicy policy_;
  double zero_tol_;
  double norm_tol_;
  double sum_;
};

/// Convenience factory mirroring the constructor.
PhotonDistribution make_distribution(std::vector<double> values, NormPolicy policy,
                                     std::optional<double> zero_tol = std::nullopt,
                                     double norm_tol = 1e-9);

/// One entry of a log-domain nonnegative sequence: sign * exp(log_mag)
/// with sign in {0, +1}. sign == 0 encodes an exact zero.
struct LogWeight {
  int sign = 0;
  double log_mag = -std::numeric_limits<double>::infinity();
};

/// The sequence q_n = n! * p_n, held in log-magnitude form so that
/// factorial growth (n! overflows double at n = 171) never overflows.
class MomentSequence {
 public:
  static MomentSequence from_values(std::span<const double> values);
  static MomentSequence from_logs(std::vector<LogWeight> logs);

  int nmax() const { return static_cast<int>(logs_.size()) - 1; }
  std::size_t size() const { return logs_.size(); }

  bool is_zero(int n) const { return logs_.at(static_cast<std::size_t>(n)).sign == 0; }
  /// Natural log of q_n; -inf when the entry is an exact zero.
  double log_at(int n) const { return logs_.at(static_cast<std::size_t>(n)).log_mag; }
  /// Linear-domain value; may overflow to +inf for long windows.
  double value_at(int n) const;

  const std::vector<LogWeight>& logs() const { return logs_; }

  /// Gauge transform q_n -> a * c^n * q_n expressed through logs.
  MomentSequence rescaled(double log_a, double log_c) const;

 private:
  explicit MomentSequence(std::vector<LogWeight> logs) : logs_(std::move(logs)) {}
  std::vector<LogWeight> logs_;
};

/// Normal-ordered (factorial) moments gamma_0..gamma_finite_through.
/// Entries past finite_through were requested but could not be certified
/// against truncation of the defining tail sum; accessing them throws.
class FactorialMomentSequence {
 public:
  /// Adopt externally supplied moments at face value (no tail accounting).
  static FactorialMomentSequence from_values(std::vector<double> values);

  FactorialMomentSequence(std::vector<double> values, std::vector<double> tail_bounds,
                          int finite_through, bool tail_divergent);

  double at(int n) const;
  double tail_bound(int n) const;
  int finite_through() const { return finite_through_; }
  bool tail_divergent() const { return tail_divergent_; }
  std::span<const double> values() const {
    return {values_.data(), static_cast<std::size_t>(finite_through_ + 1)};
  }

 private:
  std::vector<double> values_;
  std::vector<double> tail_bounds_;
  int finite_through_;
  bool tail_divergent_;
};

/// Dense symmetric matrix, row-major. Small orders only (N <= 50).
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim, 0.0) {}

  int dim() const { return dim_; }
  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * dim_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * dim_ + j]; }
  std::span<const double> data() const { return data_; }

 private:
  int dim_;
  std::vector<double> data_;
};

enum class SequenceKind { kQ, kGamma };

/// The two shifted Hankel matrices of a moment sequence at order N, built
/// from the gauge-rescaled sequence s'_n = s_n * c^n / a with the scale
/// recorded so the raw entries are recoverable as s'_{m+n} * a * c^-(m+n).
struct HankelPair {
  int order = 0;
  SequenceKind kind = SequenceKind::kQ;
  SymmetricMatrix unshifted;  // [i][j] = s'_{i+j}
  SymmetricMatrix shifted;    // [i][j] = s'_{i+j+1}
  double scale_a = 1.0;
  double scale_c = 1.0;
};

/// x_n = q_n q_{n+2} / q_{n+1}^2 with a definedness mask. An entry is
/// masked whenever any of the three q's involved is an exact zero; those
/// configurations are the zeros test's business, not a ratio's.
struct XnSequence {
  std::vector<double> values;
  std::vector<bool> defined;

  std::size_t size() const { return values.size(); }
  bool is_defined(int n) const { return defined.at(static_cast<std::size_t>(n)); }
  double at(int n) const { return values.at(static_cast<std::size_t>(n)); }
};

enum class Verdict { kNonclassical, kNoViolationFound };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// One concrete violated inequality. `margin` is dimensionless (relative):
/// negative beyond the active tolerance for every reported witness.
struct Witness {
  std::string test;
  std::vector<int> indices;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

/// Window of sequence indices a test actually examined; first > last
/// means the test was skipped (window too short or data unavailable).
struct TestWindow {
  std::string test;
  int first = 0;
  int last = -1;

  bool skipped() const { return first > last; }
};

/// Structured verdict: either a list of violated inequalities (a proof of
/// nonclassicality) or "no violation found in the examined window".
/// A finite window can never prove classicality, so there is no
/// CLASSICAL verdict.
struct WitnessReport {
  Verdict verdict = Verdict::kNoViolationFound;
  std::vector<Witness> witnesses;
  std::vector<TestWindow> tests_run;
  double tolerance_used = 0.0;
};

/// Union of several reports; witnesses sorted by (test, indices) so the
/// merge is order-independent.
WitnessReport merge_reports(const std::vector<WitnessReport>& parts, double tolerance);

}  // namespace photonstat
