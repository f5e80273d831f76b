#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qlambert");
  std::ostringstream out;
  std::ostringstream err;
  const int code = qlambert::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::ordered_json parse_json(const std::string& text) {
  return nlohmann::ordered_json::parse(text);
}

// Parsing and re-rendering must reproduce the emitted document byte for byte.
void check_round_trip(const std::string& text) {
  const auto doc = parse_json(text);
  CHECK(doc.dump(2) + "\n" == text);
}

}  // namespace

TEST_CASE("eval examples") {
  const Run w = run({"eval", "wq", "--q", "2", "--z", "1"});
  CHECK(w.code == 0);
  CHECK(w.out.find("0.5") != std::string::npos);

  const Run e = run({"eval", "expq", "--q", "3", "--z", "1"});
  CHECK(e.code == 0);
  CHECK(e.out.rfind("0", 0) == 0);

  const Run bad = run({"eval", "wq", "--q", "1.5", "--z", "-9", "--branch", "upper"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("[-0.5, inf)") != std::string::npos);
}

TEST_CASE("eval json") {
  const Run r = run({"--format", "json", "eval", "wq", "--q", "1", "--z", "1"});
  REQUIRE(r.code == 0);
  check_round_trip(r.out);
  const auto doc = parse_json(r.out);
  CHECK(doc["value"].get<double>() == doctest::Approx(0.5671432904097838).epsilon(1e-15));
  CHECK(doc["residual"].get<double>() <= 1e-12);
  CHECK(doc["iterations"].get<int>() > 0);
  CHECK(doc["branch"] == "upper");
}

TEST_CASE("eval other subjects") {
  auto value = [](std::vector<std::string> args) {
    args.insert(args.begin(), {"--format", "json"});
    const Run r = run(args);
    REQUIRE(r.code == 0);
    return parse_json(r.out)["value"].get<double>();
  };
  CHECK(value({"eval", "lnq", "--q", "2", "--z", "2"}) == doctest::Approx(0.5));
  CHECK(value({"eval", "dlnq", "--q", "2", "--z", "2"}) == doctest::Approx(0.25));
  CHECK(value({"eval", "dwq", "--q", "0", "--z", "2"}) == doctest::Approx(1.0 / 3.0));
  CHECK(value({"eval", "wq", "--q", "0", "--z", "-0.1875", "--branch", "lower"}) ==
        doctest::Approx(-0.75));
  CHECK(run({"eval", "lnq", "--q", "2", "--z", "0"}).code == 1);
  CHECK(run({"eval", "wq", "--q", "2", "--z", "-0.5", "--branch", "lower"}).code == 1);
  CHECK(run({"eval", "wq", "--q", "1", "--z", "1", "--branch", "sideways"}).code == 2);
}

TEST_CASE("infinity is rendered as a string in json") {
  const Run r = run({"--format", "json", "eval", "expq", "--q", "2", "--z", "1"});
  REQUIRE(r.code == 0);
  check_round_trip(r.out);
  CHECK(parse_json(r.out)["value"] == "inf");
}

TEST_CASE("tol and max-iter reach metadata") {
  const Run r = run({"eval", "wq", "--q", "1", "--z", "1", "--tol", "1e-9", "--max-iter", "50",
                     "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = parse_json(r.out);
  CHECK(doc["metadata"]["tol"].get<double>() == 1e-9);
  CHECK(doc["metadata"]["max_iter"].get<int>() == 50);

  CHECK(run({"--max-iter", "0", "eval", "wq", "--q", "1", "--z", "1"}).code == 2);
  CHECK(run({"--tol", "-1", "eval", "wq", "--q", "1", "--z", "1"}).code == 2);
  // Too few iterations to converge is a numeric failure, not a usage error.
  CHECK(run({"--max-iter", "1", "eval", "wq", "--q", "1.3", "--z", "7"}).code == 1);
}

TEST_CASE("branch-point") {
  const Run one = run({"branch-point", "--q", "1"});
  CHECK(one.code == 0);
  CHECK(one.out.find("-0.3678794412") != std::string::npos);
  CHECK(one.out.find("-1") != std::string::npos);

  const Run two = run({"branch-point", "--q", "2"});
  CHECK(two.code == 0);
  CHECK(two.out.find("none") != std::string::npos);

  const Run zero = run({"--format", "json", "branch-point", "--q", "0"});
  REQUIRE(zero.code == 0);
  check_round_trip(zero.out);
  const auto doc = parse_json(zero.out);
  CHECK(doc["branch_point"]["z_b"].get<double>() == doctest::Approx(-0.25));
  CHECK(doc["branch_point"]["w_b"].get<double>() == doctest::Approx(-0.5));
}

TEST_CASE("classify examples") {
  const Run t1 = run({"--format", "json", "classify", "wq", "--q", "sqrt(2)", "--z", "1"});
  REQUIRE(t1.code == 0);
  check_round_trip(t1.out);
  auto doc = parse_json(t1.out);
  CHECK(doc["verdict"] == "Transcendental");
  CHECK(doc["rule"] == "Theorem1");
  CHECK(doc["justification"].is_array());

  const Run q2 = run({"--format", "json", "classify", "wq", "--q", "2", "--z", "1"});
  REQUIRE(q2.code == 0);
  doc = parse_json(q2.out);
  CHECK(doc["verdict"] == "Rational");
  CHECK(doc["exact_value"] == "1/2");

  const Run tower = run({"classify", "tower", "--r", "1/2"});
  CHECK(tower.code == 0);
  CHECK(tower.out.find("Transcendental") != std::string::npos);
  CHECK(tower.out.find("Theorem6") != std::string::npos);

  const Run lnq = run({"--format", "json", "classify", "lnq-deriv", "--q", "3", "--z0", "2"});
  REQUIRE(lnq.code == 0);
  CHECK(parse_json(lnq.out)["exact_value"] == "1/8");

  const Run unknown = run({"classify", "wq", "--q", "4/3", "--z", "2"});
  CHECK(unknown.code == 0);
  CHECK(unknown.out.find("Unknown") != std::string::npos);
}

TEST_CASE("classify errors") {
  CHECK(run({"classify", "wq", "--q", "sqrt(2", "--z", "1"}).code == 2);
  CHECK(run({"classify", "wq", "--q", "1/0", "--z", "1"}).code == 2);
  CHECK(run({"classify", "wq", "--q", "2", "--z", "-1"}).code == 1);
  CHECK(run({"classify", "lnq-deriv", "--q", "2", "--z0", "-3"}).code == 1);
  CHECK(run({"classify", "tower", "--r", "-1/2"}).code == 1);
  CHECK(run({"classify", "wq", "--q", "2"}).code == 2);

  const Run j = run({"--format", "json", "classify", "expq", "--q", "sqrt(2", "--z", "1"});
  CHECK(j.code == 2);
  check_round_trip(j.out);
  const auto doc = parse_json(j.out);
  CHECK(doc["exit_code"] == 2);
  CHECK(doc["error"]["message"].get<std::string>().find("sqrt(2") != std::string::npos);
}

TEST_CASE("table examples") {
  const Run q2 = run({"table", "wq", "--q", "2", "--z-from", "0", "--z-to", "4", "--steps", "5",
                      "--format", "csv"});
  REQUIRE(q2.code == 0);
  std::istringstream lines(q2.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "z,value,residual");
  const double expect[] = {0.0, 0.5, 2.0 / 3.0, 0.75, 0.8};
  for (double e : expect) {
    std::string row;
    REQUIRE(std::getline(lines, row));
    const auto c1 = row.find(',');
    const auto c2 = row.find(',', c1 + 1);
    CHECK(std::stod(row.substr(c1 + 1, c2 - c1 - 1)) == doctest::Approx(e).epsilon(1e-12));
  }

  const Run e = run({"table", "expq", "--q", "1", "--z-from", "0", "--z-to", "1", "--steps", "2"});
  REQUIRE(e.code == 0);
  CHECK(e.out.find("2.71828182845904") != std::string::npos);

  CHECK(run({"table", "wq", "--q", "1.5", "--z-from", "-100", "--z-to", "-99", "--steps", "2"})
            .code == 1);
  CHECK(run({"table", "wq", "--q", "2", "--z-from", "1", "--z-to", "0", "--steps", "5"}).code == 2);
  CHECK(run({"table", "wq", "--q", "2", "--z-from", "0", "--z-to", "1", "--steps", "1"}).code == 2);
}

TEST_CASE("table clips to the branch domain with a warning") {
  const Run r = run({"--format", "json", "table", "wq", "--q", "1", "--z-from", "-1", "--z-to",
                     "1", "--steps", "5"});
  REQUIRE(r.code == 0);
  check_round_trip(r.out);
  const auto doc = parse_json(r.out);
  CHECK(doc["rows"].size() == 3);
  CHECK(doc["skipped"] == 2);
  CHECK(r.err.find("2") != std::string::npos);
}

TEST_CASE("verify suites") {
  const Run eq5 = run({"verify", "--suite", "eq5"});
  CHECK(eq5.code == 0);
  CHECK(eq5.out.find("PASS") != std::string::npos);

  const Run scan = run({"--format", "json", "verify", "--suite", "scan"});
  REQUIRE(scan.code == 0);
  check_round_trip(scan.out);
  const auto doc = parse_json(scan.out);
  CHECK(doc["passed"] == true);
  CHECK(doc["failures"].empty());
  CHECK(doc["checks"].size() == 3);

  // With eps = 1e-3 some cubic comes within eps of Omega, so "no hit" fails.
  const Run weak = run({"verify", "--suite", "scan", "--eps", "1e-3"});
  CHECK(weak.code == 1);
  CHECK(weak.err.find("FAILED") != std::string::npos);

  CHECK(run({"verify", "--suite", "scan", "--degree-max", "9"}).code == 2);
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"eval", "wq", "--q", "abc", "--z", "1"}).code == 2);
  CHECK(run({"eval", "wq", "--z", "1"}).code == 2);
  CHECK(run({"--format", "xml", "eval", "wq", "--q", "1", "--z", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("exit codes stay within the contract") {
  const std::vector<std::vector<std::string>> cases{
      {"eval", "wq", "--q", "nan", "--z", "1"},
      {"eval", "wq", "--q", "1", "--z", "inf"},
      {"eval", "dwq", "--q", "1", "--z", "-0.36787944117144233"},
      {"classify", "expq", "--q", "2", "--z", "1"},
      {"classify", "expq", "--q", "pi", "--z", "1"},
      {"table", "expq", "--q", "0.5", "--z-from", "-5", "--z-to", "5", "--steps", "11"},
      {"branch-point", "--q", "x"},
  };
  for (const auto& c : cases) {
    const Run r = run(c);
    CAPTURE(c[0]);
    CHECK((r.code == 0 || r.code == 1 || r.code == 2));
  }
}
