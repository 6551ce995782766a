#include <doctest.h>

#include <sstream>

#include "photonstat/criteria.hpp"
#include "photonstat/generators.hpp"
#include "photonstat/io.hpp"
#include "photonstat/transforms.hpp"

using namespace photonstat;

TEST_CASE("JSON input parsing") {
  SUBCASE("a q-kind file") {
    auto data = parse_input_json(R"({"kind": "q", "values": [0.44, 0.07, 0.26]})");
    CHECK(data.kind == InputKind::kQ);
    REQUIRE(data.values.size() == 3);
    CHECK(data.values[0] == 0.44);
    CHECK_FALSE(data.zero_tol.has_value());
  }
  SUBCASE("optional fields") {
    auto data = parse_input_json(
        R"({"kind": "p", "values": [1, 0], "zero_tol": 1e-10, "norm_policy": "exact"})");
    CHECK(data.zero_tol == 1e-10);
    CHECK(data.norm_policy == NormPolicy::kExact);
  }
  SUBCASE("diagnostics") {
    CHECK_THROWS_AS(parse_input_json("{"), ParseError);
    CHECK_THROWS_AS(parse_input_json(R"([1, 2])"), ParseError);
    CHECK_THROWS_AS(parse_input_json(R"({"values": [1]})"), ParseError);
    CHECK_THROWS_AS(parse_input_json(R"({"kind": "w", "values": [1]})"), ParseError);
    CHECK_THROWS_AS(parse_input_json(R"({"kind": "p", "values": ["x"]})"), ParseError);
    CHECK_THROWS_AS(parse_input_json(R"({"kind": "p", "values": [1], "norm_policy": "loose"})"),
                    ParseError);
  }
}

TEST_CASE("CSV input parsing") {
  SUBCASE("plain rows with a header") {
    auto data = parse_input_csv("n,value\n0,0.5\n1,0.25\n2,0.125\n", InputKind::kP);
    CHECK(data.kind == InputKind::kP);
    CHECK(data.values == std::vector<double>{0.5, 0.25, 0.125});
  }
  SUBCASE("comments, blank lines, CRLF") {
    auto data = parse_input_csv("# comment\r\n\r\n0, 1.0\r\n1, 0.0\r\n", InputKind::kQ);
    CHECK(data.values == std::vector<double>{1.0, 0.0});
  }
  SUBCASE("gaps and garbage carry line numbers") {
    try {
      parse_input_csv("0,1.0\n2,0.5\n", InputKind::kP);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_input_csv("0,abc\n", InputKind::kP), ParseError);
    CHECK_THROWS_AS(parse_input_csv("0 1\n", InputKind::kP), ParseError);
    CHECK_THROWS_AS(parse_input_csv("# nothing\n", InputKind::kP), ParseError);
  }
}

TEST_CASE("distribution serialization is value-faithful") {
  PhotonDistribution dist({0.1, 0.2, 0.300000000000001, 0.25}, NormPolicy::kTruncated);
  const std::string text = distribution_to_json(dist);
  auto data = parse_input_json(text);
  CHECK(data.kind == InputKind::kP);
  REQUIRE(data.values.size() == dist.size());
  for (int n = 0; n <= dist.nmax(); ++n) CHECK(data.values[n] == dist.at(n));  // bitwise
  CHECK(data.norm_policy == NormPolicy::kTruncated);
  CHECK(data.zero_tol == dist.zero_tol());
}

TEST_CASE("report JSON round-trips byte-identically") {
  auto q = MomentSequence::from_values(
      std::vector<double>{0.44, 0.07, 0.26, 0.30, 1.44, 3.60, 28.80});
  auto report = run_battery(q_to_p(q, NormPolicy::kTruncated));

  const std::string first = report_to_json(report).dump(2);
  auto parsed = report_from_json(nlohmann::ordered_json::parse(first));
  const std::string second = report_to_json(parsed).dump(2);
  CHECK(first == second);

  CHECK(parsed.verdict == report.verdict);
  CHECK(parsed.witnesses.size() == report.witnesses.size());
  CHECK(parsed.tests_run.size() == report.tests_run.size());

  SUBCASE("skipped windows survive the round trip") {
    auto tiny = run_battery(PhotonDistribution({1.0}, NormPolicy::kExact));
    const std::string a = report_to_json(tiny).dump(2);
    const std::string b =
        report_to_json(report_from_json(nlohmann::ordered_json::parse(a))).dump(2);
    CHECK(a == b);
  }
  SUBCASE("malformed reports are rejected") {
    CHECK_THROWS_AS(report_from_json(nlohmann::ordered_json::parse(R"({"verdict": "maybe"})")),
                    ParseError);
  }
}

TEST_CASE("text report names the verdict and the witnesses") {
  auto q = MomentSequence::from_values(
      std::vector<double>{0.44, 0.07, 0.26, 0.30, 1.44, 3.60, 28.80});
  const std::string text = render_report_text(run_battery(q_to_p(q, NormPolicy::kTruncated)));
  CHECK(text.find("NONCLASSICAL") != std::string::npos);
  CHECK(text.find("first_order") != std::string::npos);
  CHECK(text.find("0.0676") != std::string::npos);

  const std::string clean = render_report_text(run_battery(thermal(1.0, 20)));
  CHECK(clean.find("NO_VIOLATION_FOUND") != std::string::npos);
}

TEST_CASE("figure1 export") {
  const std::string csv = render_figure1_csv();
  CHECK(csv == render_figure1_csv());  // deterministic

  std::istringstream in(csv);
  std::string line;
  int header_lines = 0, data_lines = 0;
  bool saw_columns = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      ++header_lines;
      continue;
    }
    if (line == "n,p,q") {
      saw_columns = true;
      continue;
    }
    ++data_lines;
  }
  CHECK(saw_columns);
  CHECK(header_lines >= 3);
  CHECK(data_lines == 201);
  CHECK(csv.find("0.25, 0.25, 0.2, 0.18, 0.12") != std::string::npos);
  CHECK(csv.find("10, 30, 60, 90, 130") != std::string::npos);
}
