#include "basic_hodge/cli_report.hpp"
#include "basic_hodge/errors.hpp"

#include "CLI11.hpp"

#include <Eigen/Core>

#include <iostream>

using namespace basic_hodge;
using report::ExitCode;
using report::Outcome;
using report::RunConfig;

namespace {

void add_common(CLI::App* app, RunConfig& c) {
  app->add_option("--structure", c.structure, "flat or perturbed")->check(CLI::IsMember({"flat", "perturbed"}));
  app->add_option("--grid", c.grid, "grid points per axis (even, >= 4)")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            const int n = std::stoi(s);
            return n >= 4 && n % 2 == 0 ? std::string{} : "grid must be even and at least 4";
          },
          "EVEN>=4"));
  app->add_option("--seed", c.seed, "perturbation seed");
  app->add_option("--amplitude", c.amplitude, "perturbation RMS amplitude")->check(CLI::NonNegativeNumber);
  app->add_option("--modes", c.modes, "perturbation Fourier cutoff")->check(CLI::PositiveNumber);
  app->add_option("--tol-zero", c.tol_zero, "kernel eigenvalue threshold")->check(CLI::PositiveNumber);
  app->add_option("--tol-solve", c.tol_solve, "relative linear-solve tolerance")->check(CLI::PositiveNumber);
  app->add_flag("--complex", c.complex, "compute the bidegree subgroups");
  app->add_option("--threads", c.threads, "thread count")->check(CLI::PositiveNumber);
  app->add_flag("--deterministic", c.deterministic, "omit the timestamp");
  app->add_option("--json", c.json_path, "write the JSON report here");
  app->add_option("--spectra", c.spectra_path, "write eigenvalue spectra (CSV) here");
}

int emit(Outcome out, const RunConfig& c) {
  report::finish(out, c);
  (out.exit_code == ExitCode::Pass ? std::cout : std::cerr) << out.message << '\n';
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Basic cohomology of regular K-contact models: Φ-decomposition and bidegree checks"};
  app.require_subcommand(1);
  RunConfig c;
  bool tamper = false;

  auto* pointwise_cmd = app.add_subcommand("pointwise", "exact fiber identity suite");
  add_common(pointwise_cmd, c);
  pointwise_cmd->add_flag("--tamper-star", tamper)->group("");
  auto* compute = app.add_subcommand("compute", "certified dimensions and verification checks");
  add_common(compute, c);
  auto* lemma21 = app.add_subcommand("lemma21", "refined Hodge decomposition of random self-dual forms");
  add_common(lemma21, c);
  lemma21->add_option("--count", c.count, "number of random inputs")->check(CLI::NonNegativeNumber);
  auto* dump = app.add_subcommand("dump-structure", "print J, g and the adapted coframe per node");
  add_common(dump, c);

  CLI11_PARSE(app, argc, argv);
  c.subcommand = app.get_subcommands().front()->get_name();
  Eigen::setNbThreads(c.threads);

  try {
    report::validate(c);
    if (*pointwise_cmd)
      return emit(report::cmd_pointwise(c, tamper ? pointwise::tampered_star_operators() : pointwise::canonical_operators()), c);
    if (*compute) return emit(report::cmd_compute(c), c);
    if (*lemma21) return emit(report::cmd_lemma21(c), c);
    const StructureField s = report::build_structure(c);
    write_structure(std::cout, s);
    if (!c.json_path.empty()) {
      const StructureResiduals r = structure_residuals(s);
      Outcome out;
      out.report = {{"schema_version", report::schema_version},
                    {"config", c},
                    {"structure", s.provenance.describe()},
                    {"nijenhuis_max", nijenhuis_norm(s).maxCoeff()},
                    {"residuals",
                     {{"complex_structure", r.complex_structure},
                      {"compatibility", r.compatibility},
                      {"metric", r.metric},
                      {"determinant", r.determinant},
                      {"min_eigenvalue", r.min_eigenvalue},
                      {"coframe", r.coframe}}}};
      report::finish(out, c);
    }
    return ExitCode::Pass;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return static_cast<int>(CLI::ExitCodes::ValidationError);
  } catch (const NoConvergence& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return ExitCode::SolverError;
  } catch (const InvalidStructure& e) {
    std::cerr << "invalid structure: " << e.what() << '\n';
    return ExitCode::SolverError;
  }
}
