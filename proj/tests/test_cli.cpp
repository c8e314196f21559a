#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "tailbound/cli.hpp"

using namespace tailbound;

namespace {

const std::string kData = TAILBOUND_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_distribution_text formats") {
  const auto b = cli::parse_distribution_text("value,prob\n0,0.5\n1,0.5");
  CHECK(b.size() == 2);
  CHECK(b.probs()[1] == 0.5);

  const auto s = cli::parse_distribution_text("1\n1\n2\n");
  REQUIRE(s.size() == 2);
  CHECK(s.probs()[0] == doctest::Approx(2.0 / 3.0));

  const auto commented = cli::parse_distribution_text("# header comment\n\nvalue,prob\r\n-1,0.25\n# mid\n3,0.75\n");
  CHECK(commented.min_value() == -1.0);

  CHECK_THROWS_AS(cli::parse_distribution_text("value,prob\n0,0.5\n1,0.6"), Error);
  try {
    cli::parse_distribution_text("value,prob\n0,0.5\n1;0.5\n");
    FAIL("expected MalformedRow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MalformedRow);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    cli::parse_distribution_text("1\n1,000\n");
    FAIL("expected MalformedRow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MalformedRow);
  }
}

TEST_CASE("parse_distribution_file errors") {
  try {
    cli::parse_distribution_file(kData + "/nope.csv");
    FAIL("expected FileNotFound");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::FileNotFound);
  }
  try {
    cli::parse_distribution_file(kData + "/bad_sum.csv");
    FAIL("expected ProbSumOutOfTolerance");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ProbSumOutOfTolerance);
  }
}

TEST_CASE("bound --json on the die") {
  const Result r = invoke({"bound", "--theorem", "chebyshev_gen", "--dist", kData + "/die.csv", "--ladder", "1,2", "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  CHECK(keys == std::vector<std::string>{"theorem", "ladder", "coefficients", "tails", "lhs", "rhs", "slack",
                                         "satisfied", "params"});
  CHECK(j["lhs"].get<double>() == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
  CHECK(j["rhs"].get<double>() == doctest::Approx(35.0 / 12.0).epsilon(1e-12));
  CHECK(j["satisfied"].get<bool>());

  double resum = 0.0;
  for (std::size_t k = 0; k < j["tails"].size(); ++k) {
    resum += j["coefficients"][k].get<double>() * j["tails"][k].get<double>();
  }
  CHECK(std::abs(resum - j["lhs"].get<double>()) <= 1e-12);
}

TEST_CASE("bound human table and other theorems") {
  const Result table = invoke({"bound", "--theorem", "general_chebyshev", "--dist", kData + "/die.csv", "--ladder", "2,5"});
  CHECK(table.code == 0);
  CHECK(table.out.find("c_k*P_k") != std::string::npos);
  CHECK(table.out.find("satisfied = yes") != std::string::npos);

  CHECK(invoke({"bound", "--theorem", "markov_staircase", "--dist", kData + "/die.csv", "--ladder", "2,5", "--phi", "power:2"}).code == 0);
  CHECK(invoke({"bound", "--theorem", "eisenberg", "--dist", kData + "/die.csv", "--ladder", "2,5", "--weights", "1,2"}).code == 0);
  CHECK(invoke({"bound", "--theorem", "reverse_markov_gen", "--dist", kData + "/die.csv", "--ladder", "2,4", "--m", "6"}).code == 0);
  CHECK(invoke({"bound", "--theorem", "cantelli_gen", "--dist", kData + "/samples.txt", "--ladder", "0.2"}).code == 0);

  const Result h = invoke({"bound", "--theorem", "hoeffding_gen", "--ladder", "0.5,1", "--ranges", "0:1,0:1",
                           "--dists", "bern:0.5," + kData + "/bernoulli.csv", "--json"});
  REQUIRE(h.code == 0);
  const auto j = nlohmann::json::parse(h.out);
  CHECK(j["lhs"].get<double>() == doctest::Approx(0.41218031767503205).epsilon(1e-14));
  CHECK(j["params"]["s0"].get<double>() == 1.0);
}

TEST_CASE("solve") {
  const Result r = invoke({"solve", "--coeffs", "2,3", "--budget", "1", "--known", "2=0.1", "--unknown", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "P_1 <= 0.35\n");

  const Result j = invoke({"solve", "--coeffs", "1,8", "--budget", "1", "--known", "1=0.25", "--unknown", "2", "--json"});
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["bound"].get<double>() == 0.09375);

  const Result w = invoke({"solve", "--coeffs", "1,1,1", "--budget", "1", "--known", "1=0.1,3=0.2", "--unknown", "2"});
  CHECK(w.code == 0);
  CHECK(w.err.find("warning") != std::string::npos);
}

TEST_CASE("verify and moments") {
  const Result v = invoke({"verify", "--theorem", "abel_identity", "--trials", "50", "--seed", "3", "--json"});
  CHECK(v.code == 0);
  const auto j = nlohmann::json::parse(v.out);
  CHECK(j[0]["violations"].get<int>() == 0);
  CHECK(j[0]["trials_run"].get<int>() == 50);

  const Result m = invoke({"moments", "--dist", kData + "/die.csv", "--json"});
  CHECK(m.code == 0);
  const auto mj = nlohmann::json::parse(m.out);
  CHECK(mj["mean"].get<double>() == doctest::Approx(3.5));
  CHECK(mj["variance"].get<double>() == doctest::Approx(35.0 / 12.0));
}

TEST_CASE("exit code 2 on every input error path") {
  const std::vector<std::vector<std::string>> bad = {
      {},
      {"frobnicate"},
      {"bound", "--theorem", "chebyshev_gen", "--dist", kData + "/die.csv"},
      {"bound", "--theorem", "chebyshev_gen", "--dist", kData + "/die.csv", "--ladder", "2,1"},
      {"bound", "--theorem", "chebyshev_gen", "--dist", kData + "/die.csv", "--ladder", "1,x"},
      {"bound", "--theorem", "nope", "--dist", kData + "/die.csv", "--ladder", "1"},
      {"bound", "--theorem", "chebyshev_gen", "--dist", kData + "/missing.csv", "--ladder", "1"},
      {"bound", "--theorem", "chebyshev_gen", "--dist", kData + "/malformed.csv", "--ladder", "1"},
      {"bound", "--theorem", "chebyshev_gen", "--dist", kData + "/bad_sum.csv", "--ladder", "1"},
      {"bound", "--theorem", "general_chebyshev", "--dist", kData + "/die.csv", "--ladder", "1", "--phi", "shifted-square:-1"},
      {"bound", "--theorem", "reverse_markov_gen", "--dist", kData + "/die.csv", "--ladder", "1"},
      {"bound", "--theorem", "reverse_markov_gen", "--dist", kData + "/die.csv", "--ladder", "1", "--m", "5"},
      {"bound", "--theorem", "eisenberg", "--dist", kData + "/die.csv", "--ladder", "1", "--weights", "-1"},
      {"bound", "--theorem", "hoeffding_gen", "--ladder", "1", "--ranges", "0:1", "--dists", "bern:2"},
      {"bound", "--theorem", "hoeffding_gen", "--ladder", "1", "--ranges", "0:1,0:1", "--dists", "bern:0.5"},
      {"solve", "--coeffs", "2,3", "--budget", "1", "--unknown", "1"},
      {"solve", "--coeffs", "0,3", "--budget", "1", "--known", "2=0.1", "--unknown", "1"},
      {"solve", "--coeffs", "2,3", "--budget", "1", "--known", "2:0.1", "--unknown", "1"},
      {"verify", "--theorem", "bernstein", "--trials", "10"},
      {"verify", "--trials", "0"},
      {"moments"},
  };
  for (const auto& args : bad) {
    const Result r = invoke(args);
    std::string joined;
    for (const auto& a : args) joined += a + " ";
    INFO(joined);
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
}
