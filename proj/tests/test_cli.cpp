#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <sstream>
#include <vector>

#include "pspin/cli.hpp"

using namespace pspin;
using namespace pspin::cli;

namespace {

int run_cli(std::initializer_list<const char*> args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::vector<const char*> argv{"pspin"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli({"classify", "--p", "3"}) == 1);           // missing beta
  CHECK(run_cli({"classify", "--p", "3", "--beta", "0"}) == 1);
  CHECK(run_cli({"classify", "--p", "2", "--beta", "1"}) == 1);
  CHECK(run_cli({"sweep", "--p", "3", "--beta-min", "1", "--beta-max", "0.5", "--steps",
                 "3"}) == 1);
  CHECK(run_cli({"locate", "--p", "3", "--format", "yaml"}) == 1);
  CHECK(run_cli({"nonsense"}) == 1);
}

TEST_CASE("locate exit codes and JSON shape") {
  std::string out, err;
  CHECK(run_cli({"locate", "--p", "2"}, &out, &err) == 2);
  CHECK(err.find("no RS/1RSB transition") != std::string::npos);

  CHECK(run_cli({"locate", "--p", "3", "--format", "json"}, &out, &err) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j.at("p") == 3);
  CHECK(j.at("beta1").get<double>() > 1.05);
  CHECK(j.at("beta1").get<double>() < 1.1);
  CHECK(j.at("q1").get<double>() > 0.0);
  CHECK(std::abs(j.at("residual_C").get<double>()) <= 1e-8);
  CHECK(std::abs(j.at("residual_D").get<double>()) <= 1e-8);
  CHECK(j.at("bracket_width").get<double>() <= 1e-8);
}

TEST_CASE("classify emits a parsable phase point") {
  std::string out;
  CHECK(run_cli({"classify", "--p", "3", "--beta", "1.0", "--grid", "201", "--format",
                 "json"}, &out) == 0);
  PhasePoint pt = phase_point_from_json(nlohmann::json::parse(out));
  CHECK(pt.p == 3);
  CHECK(pt.phase == Phase::RS);
  CHECK_FALSE(pt.m.has_value());
  CHECK_FALSE(pt.q.has_value());
}

TEST_CASE("phase point JSON round-trips byte-for-byte") {
  PhasePoint pt{3, 1.1175, Phase::OneRSB, 0.9532517, 0.82701234, -3.2e-13, 1.3172};
  std::string emitted = to_json(pt).dump(2);
  std::string reparsed = to_json(phase_point_from_json(nlohmann::json::parse(emitted))).dump(2);
  CHECK(emitted == reparsed);

  PhasePoint rs{4, 0.5, Phase::RS, std::nullopt, std::nullopt, 0.0, 0.81814718055994529};
  CHECK(to_json(phase_point_from_json(to_json(rs))).dump() == to_json(rs).dump());
}

TEST_CASE("csv formatting: 17 significant digits, dot decimal, stable header") {
  CHECK(csv_header() == std::string("p,beta,phase,m,q,max_f_violation,parisi_value"));
  PhasePoint pt{3, 1.0 / 3.0, Phase::RS, std::nullopt, std::nullopt, 0.0, 0.75};
  CHECK(to_csv_row(pt) == "3,0.33333333333333331,RS,,,0,0.75");
  PhasePoint one{3, 1.12, Phase::OneRSB, 0.25, 0.5, -1e-12, 1.25};
  CHECK(to_csv_row(one) == "3,1.1200000000000001,OneRSB,0.25,0.5,-9.9999999999999998e-13,1.25");
}

TEST_CASE("sweep is deterministic and flips RS to OneRSB once") {
  SweepParams params{3, 1.05, 1.12, 4, 200, 201, true, "csv"};
  std::ostringstream first, second;
  run_sweep(params, first);
  run_sweep(params, second);
  CHECK(first.str() == second.str());

  std::istringstream lines(first.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == csv_header());
  int flips = 0;
  std::string prev_phase;
  while (std::getline(lines, line)) {
    auto b = line.find(',');
    auto c = line.find(',', b + 1);
    auto d = line.find(',', c + 1);
    std::string phase = line.substr(c + 1, d - c - 1);
    if (!prev_phase.empty() && phase != prev_phase) ++flips;
    prev_phase = phase;
  }
  CHECK(flips == 1);
}

TEST_CASE("sweep below the transition emits annealed RS rows") {
  SweepParams params{3, 0.4, 0.8, 3, 200, 201, true, "json"};
  std::ostringstream out;
  run_sweep(params, out);
  auto rows = nlohmann::json::parse(out.str());
  REQUIRE(rows.is_array());
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    PhasePoint pt = phase_point_from_json(row);
    CHECK(pt.phase == Phase::RS);
    double annealed = std::log(2.0) + 0.5 * pt.beta * pt.beta;
    CHECK(std::abs(pt.parisi_value - annealed) <= 1e-9);
    CHECK(pt.parisi_value <= annealed + 1e-9);
  }
}

TEST_CASE("verify-lemmas passes with a trimmed model grid") {
  std::string out;
  CHECK(run_cli({"--quad-order", "150", "verify-lemmas", "--p", "3"}, &out) == 0);
  CHECK(out.find("[FAIL]") == std::string::npos);
  CHECK(out.find("quintic-root-count") != std::string::npos);
}
