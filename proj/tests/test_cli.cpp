#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "photonstat/criteria.hpp"
#include "photonstat/generators.hpp"
#include "photonstat/transforms.hpp"

using namespace photonstat;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PHOTONSTAT_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) result.output += buf.data();
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("photonstat_cli_test_" + name);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::string kSchiller = std::string(PHOTONSTAT_DATA_DIR) + "/schiller.json";

}  // namespace

TEST_CASE("check: bundled Schiller fixture is nonclassical (exit 2)") {
  auto r = run_cli("check " + kSchiller);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("NONCLASSICAL") != std::string::npos);
  CHECK(r.output.find("first_order") != std::string::npos);
}

TEST_CASE("check: generated thermal file is clean (exit 0)") {
  const auto path = temp_file("thermal.json");
  auto gen = run_cli("gen --state thermal --mean 2 --nmax 60 -o " + path.string());
  REQUIRE(gen.exit_code == 0);
  auto r = run_cli("check " + path.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("NO_VIOLATION_FOUND") != std::string::npos);
}

TEST_CASE("check: malformed input exits 1") {
  const auto path = temp_file("broken.json");
  std::ofstream(path) << "{ not json";
  auto r = run_cli("check " + path.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error") != std::string::npos);

  CHECK(run_cli("check /nonexistent/file.json").exit_code == 1);
  CHECK(run_cli("check").exit_code != 0);  // usage error
}

TEST_CASE("check: JSON report round-trips and matches the verdict") {
  auto r = run_cli("check --report json " + kSchiller);
  CHECK(r.exit_code == 2);
  auto j = nlohmann::ordered_json::parse(r.output);
  CHECK(j["verdict"] == "NONCLASSICAL");
  CHECK(j["tests"].is_array());
}

TEST_CASE("check: flags shape the battery") {
  auto zeros_only = run_cli("check --tests zeros " + kSchiller);
  CHECK(zeros_only.exit_code == 0);  // Schiller has no zeros

  auto capped = run_cli("check --max-order 0 " + kSchiller);
  CHECK(capped.exit_code == 2);  // first-order still fires

  auto bogus = run_cli("check --tests not_a_test " + kSchiller);
  CHECK(bogus.exit_code == 1);
}

TEST_CASE("check: CSV input with --kind") {
  const auto path = temp_file("schiller.csv");
  std::ofstream(path) << "n,value\n0,0.44\n1,0.07\n2,0.26\n3,0.30\n4,1.44\n5,3.60\n6,28.80\n";
  CHECK(run_cli("check --kind q " + path.string()).exit_code == 2);

  const auto ppath = temp_file("thermal.csv");
  std::ofstream out(ppath);
  out << std::setprecision(17);
  auto d = thermal(1.0, 30);
  for (int n = 0; n <= 30; ++n) out << n << "," << d.at(n) << "\n";
  out.close();
  CHECK(run_cli("check " + ppath.string()).exit_code == 0);  // kind defaults to p
}

TEST_CASE("check: gamma files route to the factorial battery") {
  const auto path = temp_file("gamma.json");
  std::ofstream(path) << R"({"kind": "gamma", "values": [1.0, 1.0, 2.0, 2.0]})";
  auto r = run_cli("check " + path.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("hankel_gamma") != std::string::npos);

  const auto clean = temp_file("gamma_clean.json");
  std::ofstream(clean) << R"({"kind": "gamma", "values": [1.0, 1.0, 2.0, 6.0, 24.0]})";
  CHECK(run_cli("check " + clean.string()).exit_code == 0);  // thermal(1) moments
}

TEST_CASE("gen: spec'd example invocations produce valid windows") {
  const auto coh = temp_file("coherent.json");
  REQUIRE(run_cli("gen --state coherent --intensity 10 --nmax 60 -o " + coh.string()).exit_code ==
          0);
  CHECK(run_cli("check " + coh.string()).exit_code == 0);

  const auto fig = temp_file("fig1.json");
  REQUIRE(run_cli("gen --state mixture --spec fig1 --nmax 200 -o " + fig.string()).exit_code == 0);
  CHECK(run_cli("check " + fig.string()).exit_code == 0);

  const auto cat = temp_file("cat.json");
  REQUIRE(run_cli("gen --state cat --intensity 4 --theta 1.0472 --nmax 40 -o " + cat.string())
              .exit_code == 0);
  CHECK(run_cli("check " + cat.string()).exit_code == 2);  // pi/3 cat is nonclassical

  const auto added = temp_file("added.json");
  REQUIRE(run_cli("gen --state photon-added --m 2 --base " + coh.string() + " -o " +
                  added.string())
              .exit_code == 0);
  CHECK(run_cli("check " + added.string()).exit_code == 2);

  CHECK(run_cli("gen --state wigner").exit_code == 1);
  CHECK(run_cli("gen --state mixture --spec nope").exit_code == 1);
}

TEST_CASE("check(gen(X)) verdicts match the in-library battery") {
  struct Case {
    std::string gen_args;
    PhotonDistribution dist;
  };
  const std::vector<Case> cases = {
      {"--state coherent --intensity 10 --nmax 60", coherent(10.0, 60)},
      {"--state thermal --mean 2 --nmax 60", thermal(2.0, 60)},
      {"--state fock --m 3 --nmax 8", fock(3, 8)},
      {"--state cat --intensity 4 --theta 1.0472 --nmax 40", cat_state({4.0, 1.0472}, 40)},
      {"--state mixture --spec fig1 --nmax 200", coherent_mixture(fig1_mixture(), 200)},
  };
  int i = 0;
  for (const Case& c : cases) {
    const auto path = temp_file("roundtrip_" + std::to_string(i++) + ".json");
    REQUIRE(run_cli("gen " + c.gen_args + " -o " + path.string()).exit_code == 0);
    const int expected =
        run_battery(c.dist).verdict == Verdict::kNonclassical ? 2 : 0;
    CHECK(run_cli("check " + path.string()).exit_code == expected);
  }

  // photon-added goes through a base file.
  const auto base_path = temp_file("roundtrip_base.json");
  REQUIRE(run_cli("gen --state coherent --intensity 10 --nmax 60 -o " + base_path.string())
              .exit_code == 0);
  const auto added_path = temp_file("roundtrip_added.json");
  REQUIRE(run_cli("gen --state photon-added --m 2 --base " + base_path.string() + " -o " +
                  added_path.string())
              .exit_code == 0);
  const int expected =
      run_battery(photon_added({coherent(10.0, 60), 2})).verdict == Verdict::kNonclassical ? 2
                                                                                           : 0;
  CHECK(run_cli("check " + added_path.string()).exit_code == expected);
}

TEST_CASE("check: --kind must agree with a JSON file's own kind") {
  auto r = run_cli("check --kind p " + kSchiller);
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("conflict") != std::string::npos);
  CHECK(run_cli("check --kind q " + kSchiller).exit_code == 2);
}

TEST_CASE("figure1: reruns are byte-identical") {
  const auto a = temp_file("fig1_a.csv");
  const auto b = temp_file("fig1_b.csv");
  REQUIRE(run_cli("figure1 -o " + a.string()).exit_code == 0);
  REQUIRE(run_cli("figure1 -o " + b.string()).exit_code == 0);
  const std::string ca = slurp(a);
  CHECK(ca == slurp(b));
  CHECK(ca.find("n,p,q") != std::string::npos);
  CHECK(ca.find("10, 30, 60, 90, 130") != std::string::npos);
}
