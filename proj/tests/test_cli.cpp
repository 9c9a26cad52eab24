#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "equivoc/commands.hpp"
#include "equivoc/io.hpp"

using namespace equivoc;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
      if (header[k] == name) return k;
    FAIL("missing column " << name);
    return 0;
  }
  double num(std::size_t row, const std::string& name) const { return std::stod(rows[row][col(name)]); }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

Csv parse_csv(const std::string& text) {
  Csv c;
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  c.header = split(line);
  while (std::getline(is, line))
    if (!line.empty()) c.rows.push_back(split(line));
  return c;
}

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "equivoc_test_cli";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

const char* kSourceBscPair = R"({"alphabets":[2,2,2],"probs":[0.315,0.135,0.035,0.015,0.015,0.035,0.135,0.315]})";

std::string region_config(const std::string& values) {
  return std::string(R"({"model":"generic_discrete","source":)") + kSourceBscPair +
         R"(,"caps":[2,2,2],"sweep":{"variable":"D","values":)" + values +
         R"(,"fixed":{"R_A":0.3,"R_C":0.3}},"search":{"multistart":8}})";
}

std::string trivial_simulation(int trials) {
  return std::string(R"({"source":)") + kSourceBscPair +
         R"(,"system":{"u_given_v":[[1]],"v_given_a":[[1],[1]],"w_given_c":[[1],[1]],"reconstruction":[[0]]},)" +
         R"("code":{"n":8},"trials":)" + std::to_string(trials) + R"(,"seed":3})";
}

std::string without_timestamp(const std::string& json_text) {
  auto j = Json::parse(json_text);
  j.erase("timestamp");
  return j.dump();
}

}  // namespace

// ---- binary -----------------------------------------------------------------------

TEST_CASE("binary frontier: optimal never below Wyner-Ziv") {
  const auto r = run({"binary", "--p", "0.1", "--eps", "h2p", "--d-min", "1e-4", "--d-max", "0.2"});
  REQUIRE(r.code == kExitOk);
  const auto csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"D", "Delta_opt", "Delta_wz", "alpha", "beta", "feasible"});
  REQUIRE(csv.rows.size() >= 20);
  for (std::size_t k = 0; k < csv.rows.size(); ++k) {
    CHECK(csv.num(k, "Delta_opt") >= csv.num(k, "Delta_wz") - 1e-6);
    if (k > 0) CHECK(csv.num(k, "Delta_opt") >= csv.num(k - 1, "Delta_opt") - 1e-6);
  }
}

TEST_CASE("binary frontier under a rate cap") {
  const auto r = run({"binary", "--p", "0.1", "--eps", "h2p", "--rate-cap", "0.375", "--d", "0.015"});
  REQUIRE(r.code == kExitOk);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.num(0, "D") == doctest::Approx(0.015));
  CHECK(std::abs(csv.num(0, "Delta_opt") - 0.133) <= kTable3Tol);
  CHECK(csv.num(0, "feasible") == 1.0);
}

TEST_CASE("binary rows below the rate-capped distortion are kept as infeasible") {
  const auto r = run({"binary", "--p", "0.1", "--eps", "h2p", "--rate-cap", "0.375", "--d", "0.01,0.05"});
  REQUIRE(r.code == kExitOk);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 2);
  for (const auto& row : csv.rows) CHECK(row.size() == csv.header.size());
  CHECK(csv.num(0, "feasible") == 0.0);
  CHECK(csv.num(1, "feasible") == 1.0);
}

TEST_CASE("binary frontier with a noiseless eavesdropper is zero") {
  const auto r = run({"binary", "--p", "0", "--eps", "0.5", "--d-points", "12"});
  REQUIRE(r.code == kExitOk);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 12);
  for (std::size_t k = 0; k < csv.rows.size(); ++k) {
    CHECK(std::abs(csv.num(k, "Delta_opt")) < 1e-6);
    CHECK(std::abs(csv.num(k, "Delta_wz")) < 1e-6);
  }
}

TEST_CASE("binary JSON carries full precision and matches the CSV") {
  const auto csv = parse_csv(run({"binary", "--d", "0.05,0.1"}).out);
  const auto r = run({"--format", "json", "binary", "--d", "0.05,0.1"});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  REQUIRE(j.at("rows").size() == 2);
  for (std::size_t k = 0; k < 2; ++k)
    CHECK(j["rows"][k]["Delta_opt"].get<double>() == doctest::Approx(csv.num(k, "Delta_opt")).epsilon(1e-5));
}

// ---- gaussian ------------------------------------------------------------------------

TEST_CASE("gaussian without eavesdropper side information sums to the entropy power term") {
  const auto r = run({"gaussian", "--rho-c", "0.8", "--rho-e", "0", "--rc", "0.25,0.5,1,2", "--d", "0.1,0.2,0.4"});
  REQUIRE(r.code == kExitOk);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 12);
  const double target = 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e);
  for (std::size_t k = 0; k < csv.rows.size(); ++k) {
    CHECK(std::abs(csv.num(k, "R_A_min") + csv.num(k, "Delta_max") - target) < 1e-5);
    CHECK(csv.num(k, "exact_region") == 1.0);
  }
}

TEST_CASE("gaussian single point") {
  const auto csv = parse_csv(run({"gaussian", "--rho-c", "0.8", "--rho-e", "0.6", "--rc", "1", "--d", "0.2"}).out);
  REQUIRE(csv.rows.size() == 1);
  CHECK(std::abs(csv.num(0, "R_A_min") - 0.5 * std::log2(2.6)) < 1e-6);
  CHECK(csv.num(0, "exact_region") == 0.0);
}

TEST_CASE("gaussian surface is monotone in the helper rate") {
  const auto r = run({"gaussian", "--rho-c", "0.8", "--rho-e", "0.6", "--rc-min", "0", "--rc-max", "3",
                      "--rc-points", "31", "--d", "0.1"});
  REQUIRE(r.code == kExitOk);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 31);
  for (std::size_t k = 1; k < csv.rows.size(); ++k) {
    CHECK(csv.num(k, "R_A_min") <= csv.num(k - 1, "R_A_min") + 1e-9);
    CHECK(csv.num(k, "Delta_max") >= csv.num(k - 1, "Delta_max") - 1e-9);
  }
}

// ---- region, lossless ------------------------------------------------------------------

TEST_CASE("region frontier and its JSON round trip") {
  const auto path = write_file("region.json", region_config("[0.2,0.3]"));
  const auto csv_run = run({"region", "--config", path});
  REQUIRE(csv_run.code == kExitOk);
  const auto csv = parse_csv(csv_run.out);
  REQUIRE(csv.rows.size() == 2);
  CHECK(csv.num(1, "Delta") >= csv.num(0, "Delta") - 1e-9);

  const auto json_run = run({"--format", "json", "region", "--config", path});
  REQUIRE(json_run.code == kExitOk);
  const auto j = Json::parse(json_run.out);
  const auto spec = frontier_spec_from_json(j.at("spec"));
  CHECK(to_json(spec) == j.at("spec"));
  const auto again = run({"--format", "json", "region", "--config", write_file("region_rt.json", j.at("spec").dump())});
  REQUIRE(again.code == kExitOk);
  CHECK(Json::parse(again.out).at("points") == j.at("points"));
}

TEST_CASE("brute-force region search agrees with the default search from below") {
  const auto path = write_file("region_bf.json", region_config("[0.3]"));
  const auto bf = parse_csv(run({"region", "--config", path, "--brute-force", "--step", "0.1"}).out);
  const auto ca = parse_csv(run({"region", "--config", path}).out);
  REQUIRE(bf.rows.size() == 1);
  CHECK(bf.num(0, "Delta") <= ca.num(0, "Delta") + 5e-3);
}

TEST_CASE("lossless frontier") {
  const std::string cfg = std::string(R"({"model":"lossless","source":)") + kSourceBscPair +
                          R"(,"sweep":{"variable":"R_C","values":[0.5,1.0]},"search":{"multistart":8}})";
  const auto r = run({"lossless", "--config", write_file("lossless.json", cfg)});
  REQUIRE(r.code == kExitOk);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 2);
  CHECK(csv.num(1, "Delta") >= csv.num(0, "Delta") - 1e-9);
}

// ---- simulate ------------------------------------------------------------------------

TEST_CASE("trivial simulation reports zero rates and full equivocation") {
  const auto r = run({"simulate", "--config", write_file("sim.json", trivial_simulation(100))});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j.at("alice_rate").get<double>() == 0.0);
  CHECK(j.at("charlie_rate").get<double>() == 0.0);
  CHECK(j.at("decode_error_rate").get<double>() == 0.0);
  CHECK(std::abs(j.at("exact_equivocation").get<double>() - j.at("h_a_given_e").get<double>()) < 1e-12);
  CHECK(j.contains("timestamp"));
}

TEST_CASE("simulation output is reproducible across runs and worker counts") {
  const auto path = write_file("sim_det.json", trivial_simulation(500));
  const auto a = run({"simulate", "--config", path});
  const auto b = run({"simulate", "--config", path, "--threads", "3"});
  REQUIRE(a.code == kExitOk);
  REQUIRE(b.code == kExitOk);
  CHECK(without_timestamp(a.out) == without_timestamp(b.out));
  const auto c = run({"simulate", "--config", path, "--seed", "4"});
  CHECK(Json::parse(c.out).at("seed").get<int>() == 4);
}

TEST_CASE("simulation trace and trial override") {
  const auto trace = (scratch_dir() / "trace.csv").string();
  const auto r = run({"simulate", "--config", write_file("sim_tr.json", trivial_simulation(10)), "--trials", "7",
                      "--trace", trace});
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out).at("trials").get<long>() == 7);
  std::ifstream is(trace);
  std::string line;
  int lines = 0;
  while (std::getline(is, line)) ++lines;
  CHECK(lines == 8);
}

// ---- exit codes --------------------------------------------------------------------------

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitValidation);
  CHECK(run({"binary", "--p", "2"}).code == kExitValidation);
  CHECK(run({"binary", "--bogus"}).code == kExitValidation);
  CHECK(run({"gaussian", "--rho-c", "1.5"}).code == kExitValidation);
  CHECK(run({"region", "--config", write_file("bad.json", "{not json")}).code == kExitValidation);
  CHECK(run({"simulate", "--config", write_file("bad_sim.json", R"({"source":{"alphabets":[2,2,2],"probs":[1]}})")})
            .code == kExitValidation);

  const auto infeasible = run({"region", "--config", write_file("infeasible.json", region_config("[0.01]"))});
  CHECK(infeasible.code == kExitInfeasible);

  const auto budget =
      run({"region", "--config", write_file("budget.json", region_config("[0.3]")), "--brute-force", "--budget", "10"});
  CHECK(budget.code == kExitBudget);
  CHECK(budget.err.find("budget") != std::string::npos);

  auto sim = Json::parse(trivial_simulation(10));
  sim["code"]["max_codeword_symbols"] = 10;
  CHECK(run({"simulate", "--config", write_file("sim_budget.json", sim.dump())}).code == kExitBudget);
}

TEST_CASE("unknown config fields are validation errors") {
  auto region = Json::parse(region_config("[0.3]"));
  region["fixed"] = region["sweep"]["fixed"];
  CHECK(run({"region", "--config", write_file("misplaced.json", region.dump())}).code == kExitValidation);
  region = Json::parse(region_config("[0.3]"));
  region["search"]["multistarts"] = 4;
  CHECK(run({"region", "--config", write_file("typo.json", region.dump())}).code == kExitValidation);
  auto sim = Json::parse(trivial_simulation(10));
  sim["code"]["rc"] = 0.1;
  CHECK(run({"simulate", "--config", write_file("sim_typo.json", sim.dump())}).code == kExitValidation);
}

TEST_CASE("equivocation above its enumeration budget is omitted") {
  auto sim = Json::parse(trivial_simulation(10));
  sim["code"]["equivocation_budget"] = 16;
  const auto r = run({"simulate", "--config", write_file("sim_eq_budget.json", sim.dump())});
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out).at("exact_equivocation").is_null());
}

TEST_CASE("reproduction report flags cells outside tolerance") {
  ReproReport rep;
  rep.cells.push_back({"inside", 1.0, 1.001, 0.002});
  CHECK(rep.ok());
  rep.cells.push_back({"outside", 1.0, 1.01, 0.002});
  rep.checks.emplace_back("structure", true);
  CHECK_FALSE(rep.ok());
  CHECK(rep.failures() == std::vector<std::string>{"outside"});
  std::ostringstream os;
  rep.print(os);
  CHECK(os.str().find("outside") != std::string::npos);
}

TEST_CASE("reproduce commands pass") {
  const auto t3 = run({"reproduce", "table3"});
  CHECK(t3.code == kExitOk);
  CHECK(t3.out.find("0.133") != std::string::npos);
  CHECK(run({"reproduce-table3"}).code == kExitOk);
  CHECK(run({"reproduce", "fig10"}).code == kExitOk);
  CHECK(run({"reproduce", "table9"}).code == kExitValidation);
}
