#pragma once

// Batch front door: run configuration, subcommands and JSON reports.

#include "basic_hodge/cohomology_decomp.hpp"
#include "basic_hodge/pointwise_algebra.hpp"
#include "basic_hodge/transverse_geometry.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace basic_hodge::report {

inline constexpr const char* schema_version = "1.0";

enum ExitCode : int { Pass = 0, Fail = 1, Inconclusive = 2, SolverError = 3 };

struct RunConfig {
  std::string subcommand = "compute";
  std::string structure = "flat";  // flat | perturbed
  std::uint64_t seed = 1;
  double amplitude = 0.3;
  int modes = 2;
  int grid = 8;
  double tol_zero = 1e-8;
  double tol_solve = 1e-10;
  bool complex = false;
  int threads = 1;
  bool deterministic = false;
  int count = 20;
  std::string json_path;
  std::string spectra_path;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// Throws std::invalid_argument on an invalid configuration.
void validate(const RunConfig& c);

StructureField build_structure(const RunConfig& c);
SolverConfig solver_config(const RunConfig& c);

struct Outcome {
  int exit_code = ExitCode::Pass;
  nlohmann::json report;
  std::string message;
};

/// Exact identity suite over the given fiber operators.
Outcome cmd_pointwise(const RunConfig& c, const pointwise::OperatorSet& ops = pointwise::canonical_operators());
Outcome cmd_compute(const RunConfig& c);
Outcome cmd_lemma21(const RunConfig& c);

int exit_code(Verdict overall);
nlohmann::json to_json(const DecompositionReport& r);
nlohmann::json to_json(const SolverStats& s);

/// "set,index,eigenvalue" rows.
void write_spectra(std::ostream& os, const DecompositionReport& r);

/// Adds a timestamp unless deterministic; writes to c.json_path when set.
void finish(Outcome& out, const RunConfig& c);

}  // namespace basic_hodge::report
