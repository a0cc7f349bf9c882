#include <doctest.h>

#include "runner.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

using sharpineq::cli::run_cli;
using json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> keys(const json& j) {
  std::vector<std::string> k;
  for (auto it = j.begin(); it != j.end(); ++it) k.push_back(it.key());
  return k;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  if (!line.empty() && line.back() == ',') f.emplace_back();
  return f;
}

} // namespace

TEST_SUITE("cli") {
  TEST_CASE("constants report") {
    const Outcome o = call({"constants", "--n", "3", "--p", "2"});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    double sob = 0.0, ball = 0.0;
    for (const auto& r : j["rows"]) {
      if (r["inequality"] == "sobolev-rn") sob = r["constant"].get<double>();
      if (r["inequality"] == "ball-sobolev-radial") ball = r["constant"].get<double>();
    }
    CHECK(sob == doctest::Approx(2.3405).epsilon(1e-4));
    CHECK(ball == doctest::Approx(sob).epsilon(1e-15));
    CHECK(j["summary"]["fail"] == 0);
  }

  TEST_CASE("attain report") {
    const Outcome o = call({"attain", "--n", "3", "--p", "2", "--radii", "0.5,1,2"});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    int extremal = 0;
    for (const auto& r : j["rows"]) {
      CHECK(r["pass"] == true);
      if (r["inequality"] == "ball-sobolev-radial") {
        ++extremal;
        CHECK(std::abs(r["quotient"].get<double>() / r["constant"].get<double>() - 1.0) < 1e-6);
      }
    }
    CHECK(extremal == 3);
  }

  TEST_CASE("invariance report") {
    const Outcome o = call({"invariance", "--ineq", "ball-ckn", "--n", "3", "--p", "2", "--theta", "2.5",
                            "--sigma", "4", "--lambdas", "0.25,0.5,2,4"});
    REQUIRE(o.code == 0);
    const json j = json::parse(o.out);
    CHECK(j["rows"].size() == 5);
    for (const auto& r : j["rows"]) CHECK(r["pass"] == true);
  }

  TEST_CASE("exit codes") {
    CHECK(call({"attain", "--bogus"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"nope"}).code == 2);
    const Outcome bad = call({"attain", "--n", "3", "--p", "3.5"});
    CHECK(bad.code == 2);
    CHECK_FALSE(bad.err.empty());
    CHECK(call({"--help"}).code == 0);
    CHECK(call({"attain", "--tol", "1e-300"}).code == 1);
    CHECK(call({"invariance", "--ineq", "sobolev-rn"}).code == 2);
  }

  TEST_CASE("deterministic output") {
    for (const std::string sub : {"jacobian", "hardy", "optimize"}) {
      json a = json::parse(call({sub, "--seed", "5"}).out);
      json b = json::parse(call({sub, "--seed", "5"}).out);
      a.erase("wall_time_s");
      b.erase("wall_time_s");
      CHECK(a.dump() == b.dump());
    }
  }

  TEST_CASE("CSV and JSON agree") {
    const json j = json::parse(call({"hardy"}).out);
    std::istringstream csv(call({"hardy", "--format", "csv"}).out);
    std::string line;
    std::getline(csv, line);
    const std::vector<std::string> header = split(line);
    std::size_t i = 0;
    while (std::getline(csv, line)) {
      REQUIRE(i < j["rows"].size());
      const json& row = j["rows"][i++];
      const std::vector<std::string> cells = split(line);
      REQUIRE(cells.size() == header.size());
      for (std::size_t c = 0; c < header.size(); ++c) {
        const json& v = row[header[c]];
        if (v.is_number_float() && header[c] != "n") {
          const double x = std::stod(cells[c]);
          CHECK(std::abs(x - v.get<double>()) <= 1e-15 * std::max(1.0, std::abs(x)));
        } else if (v.is_null()) {
          CHECK(cells[c].empty());
        } else if (v.is_boolean()) {
          CHECK(cells[c] == (v.get<bool>() ? "true" : "false"));
        }
      }
    }
    CHECK(i == j["rows"].size());
  }

  TEST_CASE("report layout matches the golden schema") {
    std::ifstream in(std::string(SHARPINEQ_GOLDEN_DIR) + "/report_schema.json");
    REQUIRE(in.good());
    const json golden = json::parse(in);
    const json j = json::parse(call({"chain"}).out);
    CHECK(keys(j) == golden["top"].get<std::vector<std::string>>());
    CHECK(keys(j["experiment"]) == golden["experiment"].get<std::vector<std::string>>());
    CHECK(keys(j["summary"]) == golden["summary"].get<std::vector<std::string>>());
    REQUIRE(!j["rows"].empty());
    for (const auto& r : j["rows"]) CHECK(keys(r) == golden["row"].get<std::vector<std::string>>());
    CHECK(j["schema_version"] == "1.0");
    const std::string csv = call({"chain", "--format", "csv"}).out;
    CHECK(csv.substr(0, csv.find('\n')) == golden["csv_header"].get<std::string>());
  }

  TEST_CASE("writes to --out") {
    const std::string path = "cli_test_out.csv";
    const Outcome o = call({"constants", "--format", "csv", "--out", path});
    CHECK(o.code == 0);
    CHECK(o.out.empty());
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first.rfind("inequality,", 0) == 0);
    std::remove(path.c_str());
  }
}
