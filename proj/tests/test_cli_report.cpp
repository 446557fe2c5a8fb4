#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "basic_hodge/cli_report.hpp"

#include <sstream>

using namespace basic_hodge;
using namespace basic_hodge::report;
using nlohmann::json;

TEST_CASE("run config serializes and round-trips") {
  RunConfig c;
  c.subcommand = "lemma21";
  c.structure = "perturbed";
  c.seed = 7;
  c.amplitude = 0.25;
  c.modes = 3;
  c.grid = 10;
  c.tol_zero = 1e-9;
  c.count = 4;
  c.deterministic = true;
  c.json_path = "out.json";
  const json j = c;
  RunConfig back = j.get<RunConfig>();
  CHECK(json(back) == j);
  CHECK(back.seed == 7);
  CHECK(back.grid == 10);
  CHECK(j.at("count") == 4);
}

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(validate(c));
  c.grid = 5;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c.grid = 2;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c.grid = 6;
  CHECK_NOTHROW(validate(c));
  c.structure = "sphere";
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c.structure = "perturbed";
  c.modes = 3;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c.modes = 2;
  c.tol_zero = 0.0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(Verdict::Pass) == 0);
  CHECK(exit_code(Verdict::Observation) == 0);
  CHECK(exit_code(Verdict::Fail) == 1);
  CHECK(exit_code(Verdict::Inconclusive) == 2);
}

TEST_CASE("pointwise suite report") {
  RunConfig c;
  c.subcommand = "pointwise";
  const Outcome ok = cmd_pointwise(c);
  CHECK(ok.exit_code == ExitCode::Pass);
  const auto& ids = ok.report.at("identities");
  CHECK(ids.size() >= 10);
  const json expected = {{"identity", "Λ_Φ^+ = ℝω ⊕ Λ_g^-"}, {"pass", true}};
  bool found = false;
  for (const auto& id : ids)
    if (id.at("identity") == expected.at("identity")) found = id.at("pass") == true;
  CHECK(found);

  const Outcome bad = cmd_pointwise(c, pointwise::tampered_star_operators());
  CHECK(bad.exit_code == ExitCode::Fail);
  CHECK(bad.message.find("*̄ω = ω") != std::string::npos);
}

TEST_CASE("lemma21 with no inputs is vacuous") {
  RunConfig c;
  c.subcommand = "lemma21";
  c.count = 0;
  const Outcome out = cmd_lemma21(c);
  CHECK(out.exit_code == ExitCode::Pass);
  CHECK(out.report.at("rows").empty());
}

TEST_CASE("lemma21 on a few flat inputs") {
  RunConfig c;
  c.subcommand = "lemma21";
  c.count = 2;
  const Outcome out = cmd_lemma21(c);
  CHECK(out.exit_code == ExitCode::Pass);
  CHECK(out.report.at("rows").size() == 2);
  for (const auto& check : out.report.at("checks")) CHECK(check.at("residual").get<double>() <= 1e-8);
}

TEST_CASE("flat compute report follows the schema") {
  RunConfig c;
  c.complex = true;
  c.deterministic = true;
  Outcome out = cmd_compute(c);
  finish(out, c);
  const json& j = out.report;
  CHECK(out.exit_code == ExitCode::Pass);
  for (const char* key : {"schema_version", "config", "betti_basic", "h_phi_plus", "h_phi_minus", "h11", "h20", "h02",
                          "nijenhuis_max", "checks", "solver_stats"})
    CHECK_MESSAGE(j.contains(key), key);
  CHECK_FALSE(j.contains("timestamp"));
  CHECK(j.at("betti_basic") == json::array({1, 4, 6}));
  CHECK(j.at("h_phi_plus").at("value") == 4);
  CHECK(j.at("h_phi_minus").at("value") == 2);
  CHECK(j.at("h11").at("value") == 4);
  CHECK(j.at("h20").at("value") == 1);
  CHECK(j.at("h02").at("value") == 1);
  for (const char* key : {"h_phi_plus", "h_phi_minus", "h11", "h20", "h02"})
    CHECK(j.at(key).at("certificate").get<double>() >= 100.0);
  for (const auto& check : j.at("checks")) {
    for (const char* key : {"name", "paper_anchor", "residual", "certificate", "verdict"}) CHECK(check.contains(key));
    CHECK(check.at("verdict") != "fail");
  }
  CHECK(j.at("solver_stats").at("worst_cg_residual").get<double>() <= 1.0);

  Outcome again = cmd_compute(c);
  finish(again, c);
  CHECK(again.report.dump() == j.dump());
}
