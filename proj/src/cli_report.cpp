#include "basic_hodge/cli_report.hpp"

#include "basic_hodge/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace basic_hodge::report {

using nlohmann::json;

void to_json(json& j, const RunConfig& c) {
  j = json{{"subcommand", c.subcommand},
           {"structure", c.structure},
           {"grid", c.grid},
           {"tol_zero", c.tol_zero},
           {"tol_solve", c.tol_solve},
           {"complex", c.complex},
           {"threads", c.threads},
           {"deterministic", c.deterministic}};
  if (c.structure == "perturbed") {
    j["seed"] = c.seed;
    j["amplitude"] = c.amplitude;
    j["modes"] = c.modes;
  }
  if (c.subcommand == "lemma21") j["count"] = c.count;
  j["json_path"] = c.json_path;
  j["spectra_path"] = c.spectra_path;
}

void from_json(const json& j, RunConfig& c) {
  c = RunConfig{};
  c.subcommand = j.value("subcommand", c.subcommand);
  c.structure = j.value("structure", c.structure);
  c.grid = j.value("grid", c.grid);
  c.tol_zero = j.value("tol_zero", c.tol_zero);
  c.tol_solve = j.value("tol_solve", c.tol_solve);
  c.complex = j.value("complex", c.complex);
  c.threads = j.value("threads", c.threads);
  c.deterministic = j.value("deterministic", c.deterministic);
  c.seed = j.value("seed", c.seed);
  c.amplitude = j.value("amplitude", c.amplitude);
  c.modes = j.value("modes", c.modes);
  c.count = j.value("count", c.count);
  c.json_path = j.value("json_path", c.json_path);
  c.spectra_path = j.value("spectra_path", c.spectra_path);
}

void validate(const RunConfig& c) {
  if (c.grid < 4 || c.grid % 2 != 0) throw std::invalid_argument("grid must be even and at least 4");
  if (c.structure != "flat" && c.structure != "perturbed")
    throw std::invalid_argument("structure must be flat or perturbed");
  if (!(c.tol_zero > 0.0) || !(c.tol_solve > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (!(c.amplitude >= 0.0)) throw std::invalid_argument("amplitude must be non-negative");
  if (c.modes < 1 || 2 * c.modes >= c.grid) throw std::invalid_argument("modes must lie in [1, grid/2)");
  if (c.threads < 1) throw std::invalid_argument("threads must be positive");
  if (c.count < 0) throw std::invalid_argument("count must be non-negative");
}

StructureField build_structure(const RunConfig& c) {
  validate(c);
  if (c.structure == "flat") return make_flat_structure(c.grid);
  return make_perturbed_structure(c.grid, c.seed, c.amplitude, c.modes);
}

SolverConfig solver_config(const RunConfig& c) {
  SolverConfig s;
  s.tol_zero = c.tol_zero;
  s.tol_solve = c.tol_solve;
  return s;
}

int exit_code(Verdict overall) {
  switch (overall) {
    case Verdict::Fail: return ExitCode::Fail;
    case Verdict::Inconclusive: return ExitCode::Inconclusive;
    default: return ExitCode::Pass;
  }
}

json to_json(const SolverStats& s) {
  return json{{"eigensolves", s.eigensolves},
              {"eigen_iterations", s.eigen_iterations},
              {"operator_applications", s.operator_applications},
              {"cg_solves", s.cg_solves},
              {"cg_iterations", s.cg_iterations},
              {"worst_cg_residual", s.worst_cg_residual}};
}

namespace {

json dimension(int value, double certificate) { return json{{"value", value}, {"certificate", certificate}}; }

const Check* find_check(const DecompositionReport& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

double certificate_of(const DecompositionReport& r, const std::string& prefix) {
  const Check* c = find_check(r, prefix);
  return c && c->certificate ? *c->certificate : 0.0;
}

Outcome solver_error(const std::exception& e) {
  Outcome out;
  out.exit_code = ExitCode::SolverError;
  out.message = e.what();
  out.report["error"] = e.what();
  return out;
}

}  // namespace

json to_json(const DecompositionReport& r) {
  json j;
  j["structure"] = r.structure;
  j["grid"] = r.grid;
  j["betti_basic"] = json::array({r.betti[0], r.betti[1], r.betti[2]});
  j["betti_certificates"] = json::array({r.betti_certificate[0], r.betti_certificate[1], r.betti_certificate[2]});
  j["h_phi_plus"] = dimension(r.h_phi_plus, certificate_of(r, "h_Φ^+ gap certificate"));
  j["h_phi_minus"] = dimension(r.h_phi_minus, certificate_of(r, "h_Φ^- gap certificate"));
  j["h_phi_minus_direct"] = dimension(r.h_phi_minus_direct, certificate_of(r, "Z_Φ^- gap certificate"));
  const auto bidegree = [&](const std::optional<int>& v, const std::string& name) {
    return v ? dimension(*v, certificate_of(r, name + " gap certificate")) : json(nullptr);
  };
  j["h11"] = bidegree(r.h11, "h^(1,1)");
  j["h20"] = bidegree(r.h20, "h^(2,0)");
  j["h02"] = bidegree(r.h02, "h^(0,2)");
  j["nijenhuis_max"] = r.nijenhuis_max;
  j["integrable"] = r.integrable;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"paper_anchor", c.anchor},
                      {"residual", c.residual},
                      {"certificate", c.certificate ? json(*c.certificate) : json(nullptr)},
                      {"verdict", to_string(c.verdict)}});
  j["checks"] = checks;
  j["verdict"] = to_string(r.overall());
  j["solver_stats"] = to_json(r.stats);
  return j;
}

void write_spectra(std::ostream& os, const DecompositionReport& r) {
  os << "set,index,eigenvalue\n";
  const auto precision = os.precision(17);
  for (const auto& [name, values] : r.spectra)
    for (Eigen::Index i = 0; i < values.size(); ++i) os << name << ',' << i << ',' << values(i) << '\n';
  os.precision(precision);
}

Outcome cmd_pointwise(const RunConfig& c, const pointwise::OperatorSet& ops) {
  Outcome out;
  json identities = json::array();
  std::vector<std::string> failed;
  for (const auto& suite : {pointwise::verify_operator_identities(ops), pointwise::verify_span_identities(ops),
                            pointwise::bidegree_bases(ops)}) {
    for (const auto& id : suite) {
      identities.push_back({{"identity", id.name}, {"paper_anchor", id.anchor}, {"pass", id.pass}, {"detail", id.detail}});
      if (!id.pass) failed.push_back(id.name);
    }
  }
  out.report["schema_version"] = schema_version;
  out.report["config"] = c;
  out.report["identities"] = identities;
  out.report["passed"] = identities.size() - failed.size();
  out.report["total"] = identities.size();
  if (!failed.empty()) {
    out.exit_code = ExitCode::Fail;
    std::ostringstream os;
    os << "failed identities:";
    for (const auto& f : failed) os << ' ' << f << ';';
    out.message = os.str();
  } else {
    out.message = std::to_string(identities.size()) + " identities pass";
  }
  return out;
}

Outcome cmd_compute(const RunConfig& c) {
  const StructureField s = build_structure(c);
  DecomposeOptions opt;
  opt.solver = solver_config(c);
  opt.complex = c.complex;
  DecompositionReport r;
  try {
    r = decompose(s, opt);
  } catch (const NoConvergence& e) {
    Outcome out = solver_error(e);
    out.report["schema_version"] = schema_version;
    out.report["config"] = c;
    return out;
  }
  Outcome out;
  out.report = to_json(r);
  out.report["schema_version"] = schema_version;
  out.report["config"] = c;
  out.exit_code = exit_code(r.overall());
  std::ostringstream os;
  os << r.structure << ": b_B = (" << r.betti[0] << ", " << r.betti[1] << ", " << r.betti[2]
     << "), h_phi+ = " << r.h_phi_plus << ", h_phi- = " << r.h_phi_minus;
  if (r.h11) os << ", h11 = " << *r.h11 << ", h20 = " << *r.h20 << ", h02 = " << *r.h02;
  os << ", verdict " << to_string(r.overall());
  for (const auto& check : r.checks)
    if (check.verdict == Verdict::Fail || check.verdict == Verdict::Inconclusive)
      os << "\n  " << to_string(check.verdict) << ": " << check.name << " (residual " << check.residual << ")";
  out.message = os.str();
  if (!c.spectra_path.empty()) {
    std::ofstream f(c.spectra_path);
    if (!f) throw std::runtime_error("cannot write " + c.spectra_path);
    write_spectra(f, r);
  }
  return out;
}

Outcome cmd_lemma21(const RunConfig& c) {
  const StructureField s = build_structure(c);
  const FormMetric m(s);
  const SolverConfig cfg = solver_config(c);
  const bool flat = c.structure == "flat" || c.amplitude == 0.0;
  const double tol = flat ? 1e-8 : 1e-7;
  SolverStats stats;
  Outcome out;
  json rows = json::array();
  std::array<double, 4> worst{};
  try {
    for (int i = 0; i < c.count; ++i) {
      const RealForm a = random_selfdual_form(m, c.seed * 1000 + static_cast<std::uint64_t>(i), c.modes);
      const SelfDualReport r = refined_selfdual_decompose(a, m, cfg, &stats);
      json row = {{"input", i}, {"precondition", r.precondition}};
      json res = json::array();
      for (std::size_t k = 0; k < 4; ++k) {
        res.push_back(r.residuals[k]);
        worst[k] = std::max(worst[k], r.residuals[k]);
      }
      row["residuals"] = res;
      rows.push_back(row);
    }
  } catch (const NoConvergence& e) {
    out = solver_error(e);
    out.report["schema_version"] = schema_version;
    out.report["config"] = c;
    return out;
  }
  static const std::array<const char*, 4> anchors = {"(d_Bθ)_g^+ = (δ_BΨ)_g^+", "(d_Bθ)_g^- = −(δ_BΨ)_g^-",
                                                     "α = 2(d_Bθ)_g^+ + α_h", "d_B(α + 2(d_Bθ)_g^-) = 0"};
  json checks = json::array();
  bool pass = true;
  for (std::size_t k = 0; k < 4; ++k) {
    const bool ok = worst[k] <= tol;
    pass = pass && ok;
    checks.push_back({{"name", anchors[k]},
                      {"paper_anchor", "then (d_Bθ)_g^+ = (δ_BΨ)_g^+"},
                      {"residual", worst[k]},
                      {"certificate", nullptr},
                      {"verdict", to_string(ok ? Verdict::Pass : Verdict::Fail)}});
  }
  out.report["schema_version"] = schema_version;
  out.report["config"] = c;
  out.report["tolerance"] = tol;
  out.report["rows"] = rows;
  out.report["checks"] = checks;
  out.report["solver_stats"] = to_json(stats);
  out.exit_code = pass ? ExitCode::Pass : ExitCode::Fail;
  std::ostringstream os;
  os << c.count << " self-dual inputs, max residuals";
  for (double w : worst) os << ' ' << w;
  os << " (tolerance " << tol << ")";
  out.message = os.str();
  return out;
}

void finish(Outcome& out, const RunConfig& c) {
  if (!c.deterministic) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::ostringstream os;
    os << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    out.report["timestamp"] = os.str();
  }
  if (c.json_path.empty()) return;
  std::ofstream f(c.json_path);
  if (!f) throw std::runtime_error("cannot write " + c.json_path);
  f << out.report.dump(2) << '\n';
}

}  // namespace basic_hodge::report
