#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "photonstat/types.hpp"

namespace photonstat {

enum class InputKind { kP, kQ, kGamma };

std::string to_string(InputKind k);
InputKind input_kind_from_string(const std::string& s);

/// Parsed contents of a distribution/moment file, format-agnostic.
struct InputData {
  InputKind kind = InputKind::kP;
  std::vector<double> values;
  std::optional<double> zero_tol;
  std::optional<NormPolicy> norm_policy;
};

/// JSON schema: {"kind": "p"|"q"|"gamma", "values": [numbers],
/// "zero_tol": optional number, "norm_policy": optional "exact"|"truncated"}.
InputData load_input_json(const std::filesystem::path& path);
InputData parse_input_json(const std::string& text);

/// CSV: two columns `n,value`, indices contiguous from 0; an optional
/// non-numeric header line is skipped. The kind comes from the caller.
InputData load_input_csv(const std::filesystem::path& path, InputKind kind);
InputData parse_input_csv(const std::string& text, InputKind kind);

std::string distribution_to_json(const PhotonDistribution& dist);
void write_distribution_json(const std::filesystem::path& path, const PhotonDistribution& dist);

/// Report schema:
/// {verdict, tolerance, tests: [{name, window, witnesses:
///   [{indices, lhs, rhs, margin}]}]}
/// where window is [first, last] or [] for a skipped test. For Hankel
/// witnesses the indices [first, last] give the moment range of the
/// failing matrix (first 0: unshifted, 1: shifted; order N = (last-first)/2).
nlohmann::ordered_json report_to_json(const WitnessReport& report);
WitnessReport report_from_json(const nlohmann::ordered_json& j);
std::string render_report_text(const WitnessReport& report);

/// The `figure1` export: columns n, p_n, q_n for the five-component demo
/// mixture on n in [0, 200] (a range chosen to cover all five modes), with
/// q gauge-rescaled for plotting and the scaling recorded in the header.
/// Deterministic: repeated calls are byte-identical.
std::string render_figure1_csv();

}  // namespace photonstat
