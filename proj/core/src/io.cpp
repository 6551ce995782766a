#include "photonstat/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "photonstat/generators.hpp"
#include "photonstat/transforms.hpp"

namespace photonstat {

using nlohmann::ordered_json;

std::string to_string(InputKind k) {
  switch (k) {
    case InputKind::kP: return "p";
    case InputKind::kQ: return "q";
    case InputKind::kGamma: return "gamma";
  }
  return "p";
}

InputKind input_kind_from_string(const std::string& s) {
  if (s == "p") return InputKind::kP;
  if (s == "q") return InputKind::kQ;
  if (s == "gamma") return InputKind::kGamma;
  throw ParseError("kind must be one of \"p\", \"q\", \"gamma\"; got \"" + s + "\"");
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

NormPolicy norm_policy_from_string(const std::string& s) {
  if (s == "exact") return NormPolicy::kExact;
  if (s == "truncated") return NormPolicy::kTruncated;
  throw ParseError("norm_policy must be \"exact\" or \"truncated\"; got \"" + s + "\"");
}

std::string norm_policy_to_string(NormPolicy p) {
  return p == NormPolicy::kExact ? "exact" : "truncated";
}

}  // namespace

InputData parse_input_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top-level JSON value must be an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw ParseError("missing or non-string field \"kind\"");
  if (!j.contains("values") || !j["values"].is_array())
    throw ParseError("missing or non-array field \"values\"");

  InputData data;
  data.kind = input_kind_from_string(j["kind"].get<std::string>());
  for (std::size_t i = 0; i < j["values"].size(); ++i) {
    const auto& v = j["values"][i];
    if (!v.is_number())
      throw ParseError("values[" + std::to_string(i) + "] is not a number");
    data.values.push_back(v.get<double>());
  }
  if (j.contains("zero_tol")) {
    if (!j["zero_tol"].is_number()) throw ParseError("field \"zero_tol\" is not a number");
    data.zero_tol = j["zero_tol"].get<double>();
  }
  if (j.contains("norm_policy")) {
    if (!j["norm_policy"].is_string()) throw ParseError("field \"norm_policy\" is not a string");
    data.norm_policy = norm_policy_from_string(j["norm_policy"].get<std::string>());
  }
  return data;
}

InputData load_input_json(const std::filesystem::path& path) {
  try {
    return parse_input_json(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

InputData parse_input_csv(const std::string& text, InputKind kind) {
  InputData data;
  data.kind = kind;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int expected = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) stripped += c;
    if (stripped.empty() || stripped[0] == '#') continue;

    const auto comma = stripped.find(',');
    if (comma == std::string::npos)
      throw ParseError("line " + std::to_string(lineno) + ": expected \"n,value\"");
    const std::string n_field = stripped.substr(0, comma);
    const std::string v_field = stripped.substr(comma + 1);

    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(n_field, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != n_field.size()) {
      if (expected == 0) continue;  // header line
      throw ParseError("line " + std::to_string(lineno) + ": bad index \"" + n_field + "\"");
    }
    if (n != expected)
      throw ParseError("line " + std::to_string(lineno) + ": expected index " +
                       std::to_string(expected) + ", got " + std::to_string(n));
    try {
      std::size_t vused = 0;
      const double v = std::stod(v_field, &vused);
      if (vused != v_field.size()) throw std::invalid_argument(v_field);
      data.values.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad value \"" + v_field + "\"");
    }
    ++expected;
  }
  if (data.values.empty()) throw ParseError("no data rows found");
  return data;
}

InputData load_input_csv(const std::filesystem::path& path, InputKind kind) {
  try {
    return parse_input_csv(read_file(path), kind);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string distribution_to_json(const PhotonDistribution& dist) {
  ordered_json j;
  j["kind"] = "p";
  j["values"] = dist.values();
  j["zero_tol"] = dist.zero_tol();
  j["norm_policy"] = norm_policy_to_string(dist.norm_policy());
  return j.dump(2) + "\n";
}

void write_distribution_json(const std::filesystem::path& path,
                             const PhotonDistribution& dist) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << distribution_to_json(dist);
}

ordered_json report_to_json(const WitnessReport& report) {
  ordered_json j;
  j["verdict"] = to_string(report.verdict);
  j["tolerance"] = report.tolerance_used;
  j["tests"] = ordered_json::array();
  for (const TestWindow& window : report.tests_run) {
    ordered_json t;
    t["name"] = window.test;
    t["window"] = window.skipped() ? ordered_json::array()
                                   : ordered_json::array({window.first, window.last});
    t["witnesses"] = ordered_json::array();
    for (const Witness& w : report.witnesses) {
      if (w.test != window.test) continue;
      ordered_json jw;
      jw["indices"] = w.indices;
      jw["lhs"] = w.lhs;
      jw["rhs"] = w.rhs;
      jw["margin"] = w.margin;
      t["witnesses"].push_back(std::move(jw));
    }
    j["tests"].push_back(std::move(t));
  }
  return j;
}

WitnessReport report_from_json(const ordered_json& j) {
  WitnessReport report;
  try {
    report.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    report.tolerance_used = j.at("tolerance").get<double>();
    for (const auto& t : j.at("tests")) {
      TestWindow window;
      window.test = t.at("name").get<std::string>();
      const auto& range = t.at("window");
      if (range.empty()) {
        window.first = 0;
        window.last = -1;
      } else {
        window.first = range.at(0).get<int>();
        window.last = range.at(1).get<int>();
      }
      report.tests_run.push_back(window);
      for (const auto& jw : t.at("witnesses")) {
        Witness w;
        w.test = window.test;
        w.indices = jw.at("indices").get<std::vector<int>>();
        w.lhs = jw.at("lhs").get<double>();
        w.rhs = jw.at("rhs").get<double>();
        w.margin = jw.at("margin").get<double>();
        report.witnesses.push_back(std::move(w));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
  return report;
}

std::string render_report_text(const WitnessReport& report) {
  std::ostringstream out;
  out << "verdict: " << to_string(report.verdict) << "\n";
  out << "tolerance: " << report.tolerance_used << "\n";
  for (const TestWindow& window : report.tests_run) {
    out << "  " << window.test;
    if (window.skipped()) {
      out << ": skipped (window too short or data unavailable)\n";
      continue;
    }
    out << " [" << window.first << ", " << window.last << "]";
    int hits = 0;
    for (const Witness& w : report.witnesses)
      if (w.test == window.test) ++hits;
    if (hits == 0) {
      out << ": no violation\n";
      continue;
    }
    out << ": " << hits << " violation" << (hits == 1 ? "" : "s") << "\n";
    for (const Witness& w : report.witnesses) {
      if (w.test != window.test) continue;
      out << "    indices (";
      for (std::size_t i = 0; i < w.indices.size(); ++i)
        out << (i ? ", " : "") << w.indices[i];
      out << ")  lhs=" << w.lhs << "  rhs=" << w.rhs << "  margin=" << w.margin << "\n";
    }
  }
  return out.str();
}

std::string render_figure1_csv() {
  const CoherentMixtureSpec spec = fig1_mixture();
  const int nmax = 200;
  const PhotonDistribution dist = coherent_mixture(spec, nmax);
  const MomentSequence q = p_to_q(dist);

  // Rescale q for plotting with the same gauge the Hankel tests use:
  // q'_n = q_n c^n / a, largest entry 1.
  const double log_a = q.log_at(0);
  double log_c = 0.0;
  bool have = false;
  for (int n = 1; n <= nmax; ++n) {
    if (q.is_zero(n)) continue;
    const double cand = (log_a - q.log_at(n)) / n;
    if (!have || cand < log_c) log_c = cand, have = true;
  }

  auto fmt = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };

  std::ostringstream out;
  out << "# five-coherent-state mixture, n = 0..200 (range covers all five modes)\n";
  out << "# weights    = 0.25, 0.25, 0.2, 0.18, 0.12\n";
  out << "# intensities = 10, 30, 60, 90, 130\n";
  out << "# q column rescaled for plotting: q'_n = q_n * c^n / a with a=" << fmt(std::exp(log_a))
      << ", c=" << fmt(std::exp(log_c)) << "\n";
  out << "n,p,q\n";
  for (int n = 0; n <= nmax; ++n) {
    const double scaled_q = q.is_zero(n) ? 0.0 : std::exp(q.log_at(n) + n * log_c - log_a);
    out << n << "," << fmt(dist.at(n)) << "," << fmt(scaled_q) << "\n";
  }
  return out.str();
}

}  // namespace photonstat
