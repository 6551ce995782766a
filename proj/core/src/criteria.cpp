#include "photonstat/criteria.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "photonstat/transforms.hpp"
#include "numeric.hpp"

namespace photonstat {

using detail::kNegInf;

std::string to_string(TestId id) {
  switch (id) {
    case TestId::kZeros: return "zeros";
    case TestId::kFirstOrder: return "first_order";
    case TestId::kSecondOrder: return "second_order";
    case TestId::kOscillationQ: return "oscillation_q";
    case TestId::kHankelQ: return "hankel_q";
    case TestId::kHankelGamma: return "hankel_gamma";
    case TestId::kLocalPoissonian: return "local_poissonian";
  }
  return "unknown";
}

std::set<TestId> default_battery_tests() {
  return {TestId::kZeros, TestId::kFirstOrder, TestId::kSecondOrder, TestId::kOscillationQ,
          TestId::kHankelQ};
}

int hankel_order_cap(int nmax, const TestConfig& cfg) {
  if (nmax < 1) return -1;  // even N = 0 needs the shifted entry s_1
  int cap = std::min((nmax - 1) / 2, 50);
  if (cfg.max_hankel_order >= 0) cap = std::min(cap, cfg.max_hankel_order);
  return cap;
}

namespace {

WitnessReport single_test_report(TestId id, int first, int last, std::vector<Witness> witnesses,
                                 double tolerance) {
  WitnessReport r;
  r.tolerance_used = tolerance;
  r.tests_run.push_back(TestWindow{to_string(id), first, last});
  r.witnesses = std::move(witnesses);
  r.verdict = r.witnesses.empty() ? Verdict::kNoViolationFound : Verdict::kNonclassical;
  return r;
}

}  // namespace

WitnessReport test_first_order(const MomentSequence& q, const TestConfig& cfg) {
  if (q.size() < 3) throw WindowTooShort("first-order conditions need q_0..q_2");
  const int last_n = q.nmax() - 2;
  std::vector<Witness> witnesses;
  const double log_cut = std::log1p(-cfg.psd_tol);
  for (int n = 0; n <= last_n; ++n) {
    if (q.is_zero(n + 1)) continue;  // rhs = 0: the inequality holds trivially
    const double lrhs = 2.0 * q.log_at(n + 1);
    if (q.is_zero(n) || q.is_zero(n + 2)) {
      // lhs exactly 0 against a positive rhs: maximal violation.
      witnesses.push_back(Witness{to_string(TestId::kFirstOrder),
                                  {n, n + 1, n + 2},
                                  0.0,
                                  std::exp(lrhs),
                                  -1.0});
      continue;
    }
    const double llhs = q.log_at(n) + q.log_at(n + 2);
    if (llhs - lrhs < log_cut) {
      witnesses.push_back(Witness{to_string(TestId::kFirstOrder),
                                  {n, n + 1, n + 2},
                                  std::exp(llhs),
                                  std::exp(lrhs),
                                  std::expm1(llhs - lrhs)});
    }
  }
  return single_test_report(TestId::kFirstOrder, 0, last_n, std::move(witnesses), cfg.psd_tol);
}

WitnessReport test_zeros(const PhotonDistribution& dist) {
  std::vector<int> zero_indices;
  double zero_peak = 0.0;
  double mass_peak = 0.0;  // largest entry at n > 0
  for (int n = 0; n <= dist.nmax(); ++n) {
    if (dist.is_zero(n)) {
      zero_indices.push_back(n);
      zero_peak = std::max(zero_peak, dist.at(n));
    } else if (n > 0) {
      mass_peak = std::max(mass_peak, dist.at(n));
    }
  }
  std::vector<Witness> witnesses;
  // Vacuum exemption: zeros only matter when mass sits above n = 0.
  if (!zero_indices.empty() && mass_peak > 0.0) {
    witnesses.push_back(Witness{to_string(TestId::kZeros), zero_indices, zero_peak, mass_peak,
                                zero_peak / mass_peak - 1.0});
  }
  return single_test_report(TestId::kZeros, 0, dist.nmax(), std::move(witnesses), 0.0);
}

namespace {

// Strictly greater beyond the relative tolerance, in the log domain.
bool log_strictly_above(const MomentSequence& s, int hi, int lo, double tol) {
  if (s.is_zero(hi)) return false;
  if (s.is_zero(lo)) return true;
  return s.log_at(hi) > s.log_at(lo) + std::log1p(tol);
}

}  // namespace

WitnessReport test_oscillation_q(const MomentSequence& q, const TestConfig& cfg) {
  if (q.size() < 3) throw WindowTooShort("oscillation scan needs q_0..q_2");
  std::vector<Witness> witnesses;
  for (int n = 1; n <= q.nmax() - 1; ++n) {
    if (log_strictly_above(q, n, n - 1, cfg.psd_tol) &&
        log_strictly_above(q, n, n + 1, cfg.psd_tol)) {
      const double peak = q.value_at(n);
      const double neighbor = std::max(q.value_at(n - 1), q.value_at(n + 1));
      witnesses.push_back(Witness{to_string(TestId::kOscillationQ),
                                  {n - 1, n, n + 1},
                                  neighbor,
                                  peak,
                                  neighbor / peak - 1.0});
    }
  }
  return single_test_report(TestId::kOscillationQ, 1, q.nmax() - 1, std::move(witnesses),
                            cfg.psd_tol);
}

std::vector<int> detect_oscillation_p(const PhotonDistribution& dist, const TestConfig& cfg) {
  std::vector<int> maxima;
  auto above = [&](int hi, int lo) {
    if (dist.is_zero(hi)) return false;
    if (dist.is_zero(lo)) return true;
    return dist.at(hi) > dist.at(lo) * (1.0 + cfg.psd_tol);
  };
  for (int n = 1; n <= dist.nmax() - 1; ++n) {
    if (above(n, n - 1) && above(n, n + 1)) maxima.push_back(n);
  }
  return maxima;
}

WitnessReport test_second_order(const XnSequence& x, const TestConfig& cfg) {
  const int len = static_cast<int>(x.size());
  std::vector<Witness> witnesses;
  int covered = -1;
  for (int n = 0; n + 2 < len; ++n) {
    if (!x.is_defined(n) || !x.is_defined(n + 1) || !x.is_defined(n + 2)) continue;
    covered = n;
    const double lhs = (x.at(n) - 1.0) * (x.at(n + 2) - 1.0);
    const double ratio = (x.at(n + 1) - 1.0) / x.at(n + 1);
    const double rhs = ratio * ratio;
    const double scale = std::max({1.0, std::abs(lhs), rhs});
    const double margin = (lhs - rhs) / scale;
    if (margin < -cfg.psd_tol) {
      witnesses.push_back(
          Witness{to_string(TestId::kSecondOrder), {n, n + 1, n + 2}, lhs, rhs, margin});
    }
  }
  if (covered < 0)
    throw WindowTooShort("second-order conditions need three consecutive defined x entries");
  return single_test_report(TestId::kSecondOrder, 0, len - 3, std::move(witnesses), cfg.psd_tol);
}

WitnessReport test_local_poissonian(const XnSequence& x, const TestConfig& cfg) {
  const int len = static_cast<int>(x.size());
  // Mixed saturation: some x_n at 1 within saturation_tol while another
  // departs from it. Saturation at one n propagates to every n for a
  // classical state, so the mix is a contradiction. The classifier reads
  // |x_n - 1| <= saturation_tol as exact saturation; windows that merely
  // pass very close to 1 (mixtures with well-separated components do, in
  // their head and tail) will trip it, which is why the default battery
  // leaves this test out.
  int first_saturated = -1;
  int first_unsaturated = -1;
  for (int n = 0; n < len; ++n) {
    if (!x.is_defined(n)) continue;
    const double dev = std::abs(x.at(n) - 1.0);
    if (dev <= cfg.saturation_tol) {
      if (first_saturated < 0) first_saturated = n;
    } else {
      if (first_unsaturated < 0) first_unsaturated = n;
    }
  }
  std::vector<Witness> witnesses;
  if (first_saturated >= 0 && first_unsaturated >= 0) {
    const double sat_dev = std::abs(x.at(first_saturated) - 1.0);
    const double uns_dev = std::abs(x.at(first_unsaturated) - 1.0);
    witnesses.push_back(Witness{to_string(TestId::kLocalPoissonian),
                                {first_saturated, first_unsaturated},
                                sat_dev,
                                uns_dev,
                                sat_dev - uns_dev});
  }
  return single_test_report(TestId::kLocalPoissonian, 0, len - 1, std::move(witnesses),
                            cfg.saturation_tol);
}

namespace {

struct LogSequenceView {
  std::vector<LogWeight> logs;
  SequenceKind kind;
};

LogSequenceView log_view(const MomentSequence& q) { return {q.logs(), SequenceKind::kQ}; }

LogSequenceView log_view(const FactorialMomentSequence& gamma) {
  std::vector<LogWeight> logs(gamma.finite_through() + 1);
  for (int n = 0; n <= gamma.finite_through(); ++n) {
    const double v = gamma.at(n);
    if (v > 0.0) logs[n] = LogWeight{1, std::log(v)};
  }
  return {std::move(logs), SequenceKind::kGamma};
}

HankelPair build_hankel_from_logs(const LogSequenceView& view, int order) {
  const int need = 2 * order + 1;
  const int nmax = static_cast<int>(view.logs.size()) - 1;
  if (order < 0) throw InvalidArgument("Hankel order must be nonnegative");
  if (need > nmax)
    throw WindowTooShort("Hankel order " + std::to_string(order) + " needs entries through " +
                         std::to_string(need));

  // Gauge rescaling s'_n = s_n c^n / a with a = s_0 (falling back to the
  // prefix peak when s_0 = 0) and c chosen so the largest rescaled entry
  // over the consumed prefix is 1.
  const auto& logs = view.logs;
  double log_a = 0.0;
  double log_c = 0.0;
  if (logs[0].sign != 0) {
    log_a = logs[0].log_mag;
    bool have = false;
    double best = 0.0;
    for (int n = 1; n <= need; ++n) {
      if (logs[n].sign == 0) continue;
      const double cand = (log_a - logs[n].log_mag) / n;
      if (!have || cand < best) best = cand, have = true;
    }
    if (have) log_c = best;
  } else {
    double peak = kNegInf;
    for (int n = 0; n <= need; ++n) {
      if (logs[n].sign != 0) peak = std::max(peak, logs[n].log_mag);
    }
    log_a = peak == kNegInf ? 0.0 : peak;
  }

  auto scaled = [&](int n) {
    return logs[n].sign == 0 ? 0.0 : std::exp(logs[n].log_mag + n * log_c - log_a);
  };

  HankelPair pair{order, view.kind, SymmetricMatrix(order + 1), SymmetricMatrix(order + 1),
                  std::exp(log_a), std::exp(log_c)};
  for (int i = 0; i <= order; ++i) {
    for (int j = 0; j <= order; ++j) {
      pair.unshifted(i, j) = scaled(i + j);
      pair.shifted(i, j) = scaled(i + j + 1);
    }
  }
  return pair;
}

}  // namespace

HankelPair build_hankel(const MomentSequence& q, int order) {
  return build_hankel_from_logs(log_view(q), order);
}

HankelPair build_hankel(const FactorialMomentSequence& gamma, int order) {
  return build_hankel_from_logs(log_view(gamma), order);
}

std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& m) {
  Eigen::Map<const Eigen::MatrixXd> a(m.data().data(), m.dim(), m.dim());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error("symmetric eigenvalue computation failed");
  std::vector<double> eigs(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + m.dim());
  return eigs;
}

namespace {

double infinity_norm(const SymmetricMatrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    double row = 0.0;
    for (int j = 0; j < m.dim(); ++j) row += std::abs(m(i, j));
    best = std::max(best, row);
  }
  return best;
}

}  // namespace

WitnessReport test_hankel_psd(const HankelPair& pair, const TestConfig& cfg) {
  const TestId id = pair.kind == SequenceKind::kQ ? TestId::kHankelQ : TestId::kHankelGamma;
  std::vector<Witness> witnesses;

  auto check = [&](const SymmetricMatrix& m, int first_index) {
    const double bound = infinity_norm(m);
    const double threshold = cfg.psd_tol * std::max(1.0, bound);
    const double min_eig = symmetric_eigenvalues(m).front();
    if (min_eig < -threshold) {
      witnesses.push_back(Witness{to_string(id),
                                  {first_index, first_index + 2 * pair.order},
                                  min_eig,
                                  0.0,
                                  min_eig / std::max(1.0, bound)});
    }
  };
  check(pair.unshifted, 0);
  check(pair.shifted, 1);
  return single_test_report(id, 0, 2 * pair.order + 1, std::move(witnesses), cfg.psd_tol);
}

namespace {

// PSD at the cap implies PSD at every lower order (principal submatrices),
// so one eigensolve decides; on failure, scan up for the smallest violating
// order so the witness is as local as possible.
template <typename Seq>
WitnessReport hankel_scan(const Seq& seq, int cap, const TestConfig& cfg, TestId id) {
  WitnessReport top = test_hankel_psd(build_hankel(seq, cap), cfg);
  if (top.verdict == Verdict::kNoViolationFound) {
    top.tests_run = {TestWindow{to_string(id), 0, 2 * cap + 1}};
    return top;
  }
  for (int order = 0; order < cap; ++order) {
    WitnessReport r = test_hankel_psd(build_hankel(seq, order), cfg);
    if (r.verdict == Verdict::kNonclassical) {
      r.tests_run = {TestWindow{to_string(id), 0, 2 * cap + 1}};
      return r;
    }
  }
  top.tests_run = {TestWindow{to_string(id), 0, 2 * cap + 1}};
  return top;
}

TestWindow skipped(TestId id) { return TestWindow{to_string(id), 0, -1}; }

}  // namespace

WitnessReport run_battery(const PhotonDistribution& dist, const TestConfig& cfg) {
  std::vector<WitnessReport> parts;
  const MomentSequence q = p_to_q(dist);

  auto record_skip = [&parts](TestId id) {
    WitnessReport r;
    r.tests_run.push_back(skipped(id));
    parts.push_back(std::move(r));
  };

  if (cfg.enabled(TestId::kZeros)) parts.push_back(test_zeros(dist));

  if (cfg.enabled(TestId::kFirstOrder)) {
    if (q.size() >= 3) parts.push_back(test_first_order(q, cfg));
    else record_skip(TestId::kFirstOrder);
  }

  const bool need_x = cfg.enabled(TestId::kSecondOrder) || cfg.enabled(TestId::kLocalPoissonian);
  std::optional<XnSequence> x;
  if (need_x && q.size() >= 3) x = q_to_x(q);

  if (cfg.enabled(TestId::kSecondOrder)) {
    bool ran = false;
    if (x && x->size() >= 3) {
      try {
        parts.push_back(test_second_order(*x, cfg));
        ran = true;
      } catch (const WindowTooShort&) {
      }
    }
    if (!ran) record_skip(TestId::kSecondOrder);
  }

  if (cfg.enabled(TestId::kOscillationQ)) {
    if (q.size() >= 3) parts.push_back(test_oscillation_q(q, cfg));
    else record_skip(TestId::kOscillationQ);
  }

  if (cfg.enabled(TestId::kHankelQ)) {
    const int cap = hankel_order_cap(q.nmax(), cfg);
    if (cap >= 0) parts.push_back(hankel_scan(q, cap, cfg, TestId::kHankelQ));
    else record_skip(TestId::kHankelQ);
  }

  if (cfg.enabled(TestId::kHankelGamma)) {
    bool ran = false;
    const int want = std::min(dist.nmax(), 101);
    try {
      FactorialMomentSequence gamma = [&] {
        try {
          return p_to_gamma(dist, want, cfg.gamma_tail_tol);
        } catch (const DivergentTail& e) {
          if (e.order == 0) throw;
          return p_to_gamma(dist, e.order - 1, cfg.gamma_tail_tol);
        }
      }();
      const int cap = hankel_order_cap(gamma.finite_through(), cfg);
      if (cap >= 0) {
        parts.push_back(hankel_scan(gamma, cap, cfg, TestId::kHankelGamma));
        ran = true;
      }
    } catch (const DivergentTail&) {
    }
    if (!ran) record_skip(TestId::kHankelGamma);
  }

  if (cfg.enabled(TestId::kLocalPoissonian)) {
    if (x && x->size() >= 1) parts.push_back(test_local_poissonian(*x, cfg));
    else record_skip(TestId::kLocalPoissonian);
  }

  return merge_reports(parts, cfg.psd_tol);
}

WitnessReport run_battery_gamma(const FactorialMomentSequence& gamma, const TestConfig& cfg) {
  std::vector<WitnessReport> parts;
  const int cap = hankel_order_cap(gamma.finite_through(), cfg);
  if (cap >= 0) {
    parts.push_back(hankel_scan(gamma, cap, cfg, TestId::kHankelGamma));
  } else {
    WitnessReport r;
    r.tests_run.push_back(skipped(TestId::kHankelGamma));
    parts.push_back(std::move(r));
  }
  return merge_reports(parts, cfg.psd_tol);
}

}  // namespace photonstat
