#include <doctest.h>

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "hypersum/cli.hpp"
#include "hypersum/io.hpp"

using namespace hypersum;
using namespace hypersum::test;

namespace {

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("hypersum_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto file = path_ / name;
    std::ofstream(file) << text;
    return file.string();
  }

 private:
  std::filesystem::path path_;
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kOrGates = R"({"n": 2, "family": "thr", "gates": [
  {"weights": ["1", "1"], "threshold": "1"},
  {"weights": ["1", "-1"], "threshold": "0"}]})";

const char* kHalfGate = R"({"n": 1, "family": "thr", "coefficients": ["1/2"],
  "gates": [{"weights": ["1"], "threshold": "1"}]})";

const char* kInclusionExclusion = R"({"n": 2, "family": "thr", "coefficients": ["1", "1", "-1"], "gates": [
  {"weights": ["1", "0"], "threshold": "1"},
  {"weights": ["0", "1"], "threshold": "1"},
  {"weights": ["1", "1"], "threshold": "2"}]})";

const char* kBroken = R"({"n": 2, "family": "thr", "gates": [{"weights": ["1"], "threshold": "1"}]})";

const char* kSystem = R"({"n": 3, "family": "fp", "p": 2,
  "gates": [{"monomials": [{"vars": [1, 2], "coeff": 1}, {"vars": [3], "coeff": 1}]}],
  "targets": [0]})";

}  // namespace

TEST_CASE("parse_document reads every family") {
  const auto thr_doc = parse_document(nlohmann::json::parse(kInclusionExclusion));
  CHECK(thr_doc.combination.n == 2);
  CHECK(thr_doc.combination.coefficients == W({1L, 1L, -1L}));

  const auto relu_doc = parse_document(nlohmann::json::parse(
      R"({"n": 2, "family": "relu", "gates": [{"weights": ["1/2", -3], "bias": "1/4"}]})"));
  const auto& relu_gate = std::get<std::vector<ReluGate>>(relu_doc.combination.gates).front();
  CHECK(relu_gate.weights() == W({"1/2", "-3"}));
  CHECK(relu_gate.bias() == Rational(1, 4));
  CHECK(relu_doc.combination.coefficients == W({1L}));

  const auto fp_doc = parse_document(nlohmann::json::parse(kSystem));
  const auto& q = std::get<std::vector<FpPolynomial>>(fp_doc.combination.gates).front();
  CHECK(q.p() == 2);
  CHECK(q.degree() == 2);
  CHECK(fp_doc.targets == std::vector<std::uint32_t>{0});
}

TEST_CASE("parse_document diagnostics") {
  auto fails = [](const char* text) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_document(nlohmann::json::parse(text)), InputError);
  };
  fails(kBroken);
  fails(R"({"n": 0, "family": "thr", "gates": []})");
  fails(R"({"n": 2, "family": "maj", "gates": []})");
  fails(R"({"n": 1, "family": "thr", "gates": [{"weights": ["x"], "threshold": "1"}]})");
  fails(R"({"n": 1, "family": "thr", "gates": [{"weights": ["1"]}]})");
  fails(R"({"n": 1, "family": "thr", "coefficients": ["1", "2"], "gates": [{"weights": ["1"], "threshold": "0"}]})");
  fails(R"({"n": 1, "family": "fp", "p": 4, "gates": []})");
  fails(R"({"n": 1, "family": "fp", "gates": []})");
  fails(R"({"n": 2, "family": "fp", "p": 3, "gates": [{"monomials": [{"vars": [3], "coeff": 1}]}]})");
  fails(R"({"n": 2, "family": "fp", "p": 3, "gates": [{"monomials": [{"vars": [1, 1], "coeff": 1}]}]})");
  fails(R"({"n": 2, "family": "fp", "p": 3, "gates": [{"monomials": []}], "targets": [3]})");
  fails(R"({"n": 1, "family": "thr", "gates": [], "targets": []})");
  fails(R"([1, 2])");
}

TEST_CASE("to_json round-trips") {
  const auto doc = parse_document(nlohmann::json::parse(kInclusionExclusion));
  const auto again = parse_document(to_json(doc.combination));
  CHECK(again.combination.coefficients == doc.combination.coefficients);
  CHECK(eval_lincomb(again.combination, X({1, 1})) == 1);

  const auto fp_doc = parse_document(nlohmann::json::parse(kSystem));
  const auto fp_again = parse_document(to_json(fp_doc.combination, fp_doc.targets));
  CHECK(std::get<3>(fp_again.combination.gates) == std::get<3>(fp_doc.combination.gates));
}

TEST_CASE("cli sumprod, check-boolean and malformed input") {
  TempDir dir;
  const auto or_file = dir.write("or_gates.json", kOrGates);
  auto r = run({"sumprod", or_file});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");

  r = run({"check-boolean", dir.write("half_gate.json", kHalfGate)});
  CHECK(r.code == 0);
  CHECK(r.out == "non-boolean deviation=1/16\n");

  r = run({"sumprod", dir.write("broken.json", kBroken)});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("broken.json") != std::string::npos);
  CHECK(r.err.find("weights") != std::string::npos);

  CHECK(run({"sumprod", dir.write("bad.json", "{not json")}).code == 1);
  CHECK(run({"sumprod", "/nonexistent/file.json"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli count-sat and check-equal") {
  TempDir dir;
  const auto ie = dir.write("ie.json", kInclusionExclusion);
  const auto half = dir.write("half.json", kHalfGate);
  CHECK(run({"count-sat", ie}).out == "3\n");
  CHECK(run({"check-boolean", ie}).out == "boolean\n");
  CHECK(run({"check-equal", ie, ie}).out == "equal\n");
  CHECK(run({"check-equal", ie, dir.write("or.json", kOrGates)}).out == "different deviation=3\n");

  const auto refused = run({"count-sat", half});
  CHECK(refused.code == 1);
  CHECK(refused.out.empty());
  CHECK(run({"count-sat", "--unchecked", half}).code == 1);
}

TEST_CASE("cli fp subcommands") {
  TempDir dir;
  const auto system = dir.write("system.json", kSystem);
  CHECK(run({"count-roots", system}).out == "4\n");
  CHECK(run({"count-roots", system, "--m", "1"}).out == "4\n");
  CHECK(run({"count-system", system}).out == "4\n");
  CHECK(run({"sumprod", system}).out == "4\n");
  CHECK(run({"count-roots", dir.write("or.json", kOrGates)}).code == 1);
}

TEST_CASE("cli oracle prints the same result lines") {
  TempDir dir;
  const std::vector<std::string> files{dir.write("or.json", kOrGates), dir.write("half.json", kHalfGate),
                                       dir.write("ie.json", kInclusionExclusion)};
  for (const auto& file : files) {
    for (const char* command : {"sumprod", "check-boolean"}) {
      CHECK(run({command, file}).out == run({"oracle", command, file}).out);
    }
  }
  CHECK(run({"oracle", "count-sat", files[2]}).out == "3\n");
  CHECK(run({"oracle", "check-equal", files[0], files[2]}).out == run({"check-equal", files[0], files[2]}).out);
  const auto system = dir.write("system.json", kSystem);
  for (const char* command : {"count-roots", "count-system", "sumprod"}) {
    CHECK(run({"oracle", command, system}).out == run({command, system}).out);
  }

  const auto witness = run({"oracle", "check-boolean", files[1]});
  CHECK(witness.err.find("1") != std::string::npos);
  CHECK(run({"oracle", "check-equal", files[0]}).code == 1);
  CHECK(run({"oracle", "nonsense", files[0]}).code == 1);
}

TEST_CASE("cli caps map to exit code 2 and flags override the environment") {
  TempDir dir;
  const auto file = dir.write("or.json", kOrGates);
  CHECK(run({"oracle", "sumprod", file, "--cap-oracle-n", "1"}).code == 2);
  CHECK(run({"--cap-oracle-n", "1", "oracle", "sumprod", file}).code == 2);
  CHECK(run({"sumprod", file, "--cap-terms", "1"}).code == 2);

  ::setenv("HYPERSUM_CAP_ORACLE_N", "1", 1);
  CHECK(run({"oracle", "sumprod", file}).code == 2);
  CHECK(run({"oracle", "sumprod", file, "--cap-oracle-n", "5"}).code == 0);
  ::unsetenv("HYPERSUM_CAP_ORACLE_N");
}

TEST_CASE("cli bench emits deterministic CSV") {
  const std::vector<std::string> args{"bench", "--family", "thr", "--n", "4:6", "--k", "2", "--seed", "9", "--trials", "2"};
  const auto first = run(args);
  REQUIRE(first.code == 0);
  std::istringstream lines(first.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "family,n,k,trial,result,partials_enumerated,wall_ns");
  int rows = 0;
  std::vector<std::string> results;
  for (std::string line; std::getline(lines, line);) {
    ++rows;
    // drop the timing column before comparing runs
    results.push_back(line.substr(0, line.rfind(',')));
  }
  CHECK(rows == 6);

  const auto second = run(args);
  std::istringstream again(second.out);
  std::getline(again, header);
  for (const auto& expected : results) {
    std::string line;
    std::getline(again, line);
    CHECK(line.substr(0, line.rfind(',')) == expected);
  }

  auto oracle_args = args;
  oracle_args.push_back("--engine");
  oracle_args.push_back("oracle");
  const auto oracle = run(oracle_args);
  REQUIRE(oracle.code == 0);
  std::istringstream oracle_lines(oracle.out);
  std::getline(oracle_lines, header);
  for (const auto& expected : results) {
    std::string line;
    std::getline(oracle_lines, line);
    // same instances, same results; only the counters differ
    auto result_of = [](const std::string& row) {
      std::vector<std::string> cells;
      std::istringstream in(row);
      for (std::string cell; std::getline(in, cell, ',');) cells.push_back(cell);
      return cells.at(4);
    };
    CHECK(result_of(line) == result_of(expected));
  }

  CHECK(run({"bench", "--family", "thr", "--n", "6:4", "--k", "1", "--seed", "1", "--trials", "1"}).code == 1);
  CHECK(run({"bench", "--family", "xor", "--n", "4", "--k", "1", "--seed", "1", "--trials", "1"}).code == 1);
}
