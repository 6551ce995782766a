// photonstat: detect phase-insensitive nonclassicality of a quantum optical
// state from its photon-number distribution or moment sequences.
//
// Exit codes: 0 = no violation found, 2 = nonclassical, 1 = input/usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "photonstat/criteria.hpp"
#include "photonstat/generators.hpp"
#include "photonstat/io.hpp"
#include "photonstat/transforms.hpp"

namespace ps = photonstat;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitError = 1;
constexpr int kExitNonclassical = 2;

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

ps::TestConfig make_config(double tol, int max_order, const std::string& tests) {
  ps::TestConfig cfg;
  if (tol > 0.0) cfg.psd_tol = tol;
  cfg.max_hankel_order = max_order;
  if (!tests.empty()) {
    cfg.enabled_tests.clear();
    std::stringstream ss(tests);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name == "zeros") cfg.enabled_tests.insert(ps::TestId::kZeros);
      else if (name == "first_order") cfg.enabled_tests.insert(ps::TestId::kFirstOrder);
      else if (name == "second_order") cfg.enabled_tests.insert(ps::TestId::kSecondOrder);
      else if (name == "oscillation_q") cfg.enabled_tests.insert(ps::TestId::kOscillationQ);
      else if (name == "hankel_q") cfg.enabled_tests.insert(ps::TestId::kHankelQ);
      else if (name == "hankel_gamma") cfg.enabled_tests.insert(ps::TestId::kHankelGamma);
      else if (name == "local_poissonian") cfg.enabled_tests.insert(ps::TestId::kLocalPoissonian);
      else throw ps::ParseError("unknown test name \"" + name + "\"");
    }
  }
  return cfg;
}

int run_check(const std::string& input, const std::string& kind_flag, double tol, int max_order,
              const std::string& tests, const std::string& report_format) {
  const std::filesystem::path path(input);
  ps::InputData data;
  if (path.extension() == ".json") {
    data = ps::load_input_json(path);
    if (!kind_flag.empty() && ps::input_kind_from_string(kind_flag) != data.kind)
      throw ps::ParseError("--kind " + kind_flag + " conflicts with the file's kind \"" +
                           ps::to_string(data.kind) + "\"");
  } else {
    const ps::InputKind kind =
        kind_flag.empty() ? ps::InputKind::kP : ps::input_kind_from_string(kind_flag);
    data = ps::load_input_csv(path, kind);
  }

  const ps::TestConfig cfg = make_config(tol, max_order, tests);
  ps::WitnessReport report;
  switch (data.kind) {
    case ps::InputKind::kP: {
      ps::PhotonDistribution dist(data.values, data.norm_policy.value_or(ps::NormPolicy::kTruncated),
                                  data.zero_tol);
      report = ps::run_battery(dist, cfg);
      break;
    }
    case ps::InputKind::kQ: {
      // Validate through the p-domain (p_n = q_n/n!), then test the
      // q-sequence natively in the log domain.
      const ps::MomentSequence q = ps::MomentSequence::from_values(data.values);
      ps::PhotonDistribution dist =
          ps::q_to_p(q, data.norm_policy.value_or(ps::NormPolicy::kTruncated), data.zero_tol);
      report = ps::run_battery(dist, cfg);
      break;
    }
    case ps::InputKind::kGamma: {
      const auto gamma = ps::FactorialMomentSequence::from_values(data.values);
      report = ps::run_battery_gamma(gamma, cfg);
      break;
    }
  }

  if (report_format == "json") {
    std::cout << ps::report_to_json(report).dump(2) << "\n";
  } else {
    std::cout << ps::render_report_text(report);
  }
  return report.verdict == ps::Verdict::kNonclassical ? kExitNonclassical : kExitClean;
}

int run_gen(const std::string& state, double intensity, double mean, int m, double theta,
            const std::string& weights, const std::string& intensities, const std::string& preset,
            int nmax, const std::string& base_path, const std::string& out_path) {
  std::optional<ps::PhotonDistribution> dist;
  if (state == "coherent") {
    const int window = nmax >= 0 ? nmax : ps::suggested_nmax(intensity);
    dist = ps::coherent(intensity, window);
  } else if (state == "thermal") {
    const int window = nmax >= 0 ? nmax : ps::suggested_nmax(mean);
    dist = ps::thermal(mean, window);
  } else if (state == "fock") {
    const int window = nmax >= 0 ? nmax : std::max(2 * m, 8);
    dist = ps::fock(m, window);
  } else if (state == "mixture") {
    ps::CoherentMixtureSpec spec;
    if (preset == "fig1") {
      spec = ps::fig1_mixture();
    } else if (!preset.empty()) {
      throw ps::ParseError("unknown mixture preset \"" + preset + "\" (try: fig1)");
    } else {
      spec.weights = parse_list(weights);
      spec.intensities = parse_list(intensities);
    }
    const int window = nmax >= 0 ? nmax : ps::suggested_nmax(spec);
    dist = ps::coherent_mixture(spec, window);
  } else if (state == "cat") {
    const int window = nmax >= 0 ? nmax : ps::suggested_nmax(intensity);
    dist = ps::cat_state(ps::CatStateSpec{intensity, theta}, window);
  } else if (state == "photon-added") {
    if (base_path.empty()) throw ps::ParseError("--state photon-added requires --base FILE");
    const ps::InputData base = ps::load_input_json(base_path);
    if (base.kind != ps::InputKind::kP)
      throw ps::ParseError("photon-added base file must have kind \"p\"");
    ps::PhotonDistribution base_dist(
        base.values, base.norm_policy.value_or(ps::NormPolicy::kTruncated), base.zero_tol);
    ps::PhotonAddedSpec spec{std::move(base_dist), m};
    dist = nmax >= 0 ? ps::photon_added(spec, nmax) : ps::photon_added(spec);
  } else {
    throw ps::ParseError("unknown state \"" + state +
                         "\" (coherent|thermal|fock|mixture|cat|photon-added)");
  }

  if (out_path.empty() || out_path == "-") {
    std::cout << ps::distribution_to_json(*dist);
  } else {
    ps::write_distribution_json(out_path, *dist);
  }
  return kExitClean;
}

int run_figure1(const std::string& out_path) {
  const std::string csv = ps::render_figure1_csv();
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ps::Error("cannot write " + out_path);
    out << csv;
  }
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonclassicality witnesses from photon-number statistics"};
  app.require_subcommand(1);

  // check
  std::string check_input, check_kind, check_tests, check_report = "text";
  double check_tol = -1.0;
  int check_max_order = -1;
  CLI::App* check = app.add_subcommand("check", "Run the classicality test battery on a file");
  check->add_option("input", check_input, "Input file (.json, or CSV with --kind)")->required();
  check->add_option("--kind", check_kind, "Value kind for CSV input: p|q|gamma");
  check->add_option("--tol", check_tol, "Relative comparison/eigenvalue tolerance");
  check->add_option("--max-order", check_max_order, "Cap on the Hankel order N");
  check->add_option("--tests", check_tests, "Comma list of tests to run");
  check->add_option("--report", check_report, "Report format: text|json")
      ->check(CLI::IsMember({"text", "json"}));

  // gen
  std::string gen_state, gen_weights, gen_intensities, gen_preset, gen_base, gen_out;
  double gen_intensity = 0.0, gen_mean = 0.0, gen_theta = 0.0;
  int gen_m = 0, gen_nmax = -1;
  CLI::App* gen = app.add_subcommand("gen", "Generate a distribution window file");
  gen->add_option("--state", gen_state, "coherent|thermal|fock|mixture|cat|photon-added")
      ->required();
  gen->add_option("--intensity", gen_intensity, "|alpha|^2 for coherent/cat");
  gen->add_option("--mean", gen_mean, "Mean photon number for thermal");
  gen->add_option("--m", gen_m, "Fock index / photons to add");
  gen->add_option("--theta", gen_theta, "Cat relative phase in radians");
  gen->add_option("--weights", gen_weights, "Mixture weights, comma list");
  gen->add_option("--intensities", gen_intensities, "Mixture intensities, comma list");
  gen->add_option("--spec", gen_preset, "Named mixture preset (fig1)");
  gen->add_option("--nmax", gen_nmax, "Window end (default: suggested)");
  gen->add_option("--base", gen_base, "Base distribution file for photon-added");
  gen->add_option("-o,--out", gen_out, "Output path (default: stdout)");

  // figure1
  std::string fig_out;
  CLI::App* figure1 =
      app.add_subcommand("figure1", "Emit n, p_n, q_n for the five-coherent-state demo mixture");
  figure1->add_option("-o,--out", fig_out, "Output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return run_check(check_input, check_kind, check_tol, check_max_order, check_tests,
                       check_report);
    if (gen->parsed())
      return run_gen(gen_state, gen_intensity, gen_mean, gen_m, gen_theta, gen_weights,
                     gen_intensities, gen_preset, gen_nmax, gen_base, gen_out);
    if (figure1->parsed()) return run_figure1(fig_out);
  } catch (const ps::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
