#include "photonstat/types.hpp"

#include <algorithm>
#include <cmath>

#include "numeric.hpp"

namespace photonstat {

namespace {

double default_zero_tol(const std::vector<double>& values) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, v);
  return 1e-12 * peak;
}

}  // namespace

PhotonDistribution::PhotonDistribution(std::vector<double> values, NormPolicy policy,
                                       std::optional<double> zero_tol, double norm_tol)
    : values_(std::move(values)), policy_(policy), norm_tol_(norm_tol) {
  if (values_.empty()) throw InvalidArgument("distribution window must have length >= 1");
  for (std::size_t n = 0; n < values_.size(); ++n) {
    if (!std::isfinite(values_[n]))
      throw InvalidArgument("p[" + std::to_string(n) + "] is not finite");
  }
  zero_tol_ = zero_tol.value_or(default_zero_tol(values_));
  if (zero_tol_ < 0.0) throw InvalidArgument("zero_tol must be nonnegative");

  for (std::size_t n = 0; n < values_.size(); ++n) {
    if (values_[n] < 0.0) {
      if (values_[n] < -zero_tol_)
        throw NegativeProbability(static_cast<int>(n), values_[n]);
      values_[n] = 0.0;
    }
  }

  sum_ = detail::stable_sum(values_);
  switch (policy_) {
    case NormPolicy::kExact:
      if (std::abs(sum_ - 1.0) > norm_tol_) throw NormalizationViolation(sum_);
      break;
    case NormPolicy::kTruncated:
      if (sum_ > 1.0 + norm_tol_) throw NormalizationViolation(sum_);
      break;
  }
}

PhotonDistribution make_distribution(std::vector<double> values, NormPolicy policy,
                                     std::optional<double> zero_tol, double norm_tol) {
  return PhotonDistribution(std::move(values), policy, zero_tol, norm_tol);
}

MomentSequence MomentSequence::from_values(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("moment sequence must have length >= 1");
  std::vector<LogWeight> logs(values.size());
  for (std::size_t n = 0; n < values.size(); ++n) {
    const double v = values[n];
    if (!(v >= 0.0))
      throw InvalidArgument("q[" + std::to_string(n) + "] must be nonnegative, got " +
                            std::to_string(v));
    if (v > 0.0) logs[n] = LogWeight{1, std::log(v)};
  }
  return MomentSequence(std::move(logs));
}

MomentSequence MomentSequence::from_logs(std::vector<LogWeight> logs) {
  if (logs.empty()) throw InvalidArgument("moment sequence must have length >= 1");
  for (std::size_t n = 0; n < logs.size(); ++n) {
    if (logs[n].sign != 0 && logs[n].sign != 1)
      throw InvalidArgument("q[" + std::to_string(n) + "] sign must be 0 or +1");
  }
  return MomentSequence(std::move(logs));
}

double MomentSequence::value_at(int n) const {
  const LogWeight& w = logs_.at(static_cast<std::size_t>(n));
  return w.sign == 0 ? 0.0 : std::exp(w.log_mag);
}

MomentSequence MomentSequence::rescaled(double log_a, double log_c) const {
  std::vector<LogWeight> out(logs_);
  for (std::size_t n = 0; n < out.size(); ++n) {
    if (out[n].sign != 0) out[n].log_mag += log_a + static_cast<double>(n) * log_c;
  }
  return MomentSequence(std::move(out));
}

FactorialMomentSequence FactorialMomentSequence::from_values(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("factorial moment sequence must have length >= 1");
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (!(values[n] >= 0.0) || !std::isfinite(values[n]))
      throw InvalidArgument("gamma[" + std::to_string(n) + "] must be finite and nonnegative");
  }
  const int last = static_cast<int>(values.size()) - 1;
  return FactorialMomentSequence(std::move(values), std::vector<double>(last + 1, 0.0), last,
                                 false);
}

FactorialMomentSequence::FactorialMomentSequence(std::vector<double> values,
                                                 std::vector<double> tail_bounds,
                                                 int finite_through, bool tail_divergent)
    : values_(std::move(values)),
      tail_bounds_(std::move(tail_bounds)),
      finite_through_(finite_through),
      tail_divergent_(tail_divergent) {}

double FactorialMomentSequence::at(int n) const {
  if (n < 0 || n > finite_through_) throw DivergentTail(n);
  return values_[static_cast<std::size_t>(n)];
}

double FactorialMomentSequence::tail_bound(int n) const {
  if (n < 0 || n > finite_through_) throw DivergentTail(n);
  return tail_bounds_[static_cast<std::size_t>(n)];
}

std::string to_string(Verdict v) {
  return v == Verdict::kNonclassical ? "NONCLASSICAL" : "NO_VIOLATION_FOUND";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "NONCLASSICAL") return Verdict::kNonclassical;
  if (s == "NO_VIOLATION_FOUND") return Verdict::kNoViolationFound;
  throw ParseError("unknown verdict: " + s);
}

WitnessReport merge_reports(const std::vector<WitnessReport>& parts, double tolerance) {
  WitnessReport merged;
  merged.tolerance_used = tolerance;
  for (const WitnessReport& part : parts) {
    merged.witnesses.insert(merged.witnesses.end(), part.witnesses.begin(),
                            part.witnesses.end());
    merged.tests_run.insert(merged.tests_run.end(), part.tests_run.begin(),
                            part.tests_run.end());
  }
  std::sort(merged.witnesses.begin(), merged.witnesses.end(),
            [](const Witness& a, const Witness& b) {
              if (a.test != b.test) return a.test < b.test;
              return a.indices < b.indices;
            });
  merged.verdict =
      merged.witnesses.empty() ? Verdict::kNoViolationFound : Verdict::kNonclassical;
  return merged;
}

}  // namespace photonstat
