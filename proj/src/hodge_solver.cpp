#include "basic_hodge/hodge_solver.hpp"

#include <Eigen/Eigenvalues>

#include <functional>
#include <memory>
#include <sstream>

namespace basic_hodge {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using pointwise::Projector;

using FormMap = std::function<RealForm(const RealForm&)>;

BlockOperator block_operator(const FormMetric& m, int p, FormMap f) {
  return [&m, p, f = std::move(f)](const MatrixXd& x, MatrixXd& y) {
    y.resize(x.rows(), x.cols());
    for (Index j = 0; j < x.cols(); ++j) y.col(j) = flatten(f(unflatten(m, p, x.col(j))));
  };
}

void record(SolverStats* stats, const CgResult& r) {
  if (!stats) return;
  ++stats->cg_solves;
  stats->cg_iterations += r.iterations;
  stats->worst_cg_residual = std::max(stats->worst_cg_residual, r.relative_residual);
}

/// Solves the semidefinite system op(x) = b from x = 0 and throws on failure.
RealForm solve_semidefinite(const FormMetric& m, int p, const FormMap& op, const RealForm& b, double floor,
                            const SolverConfig& cfg, SolverStats* stats, const char* what) {
  using Op = std::function<void(const VectorXd&, VectorXd&)>;
  Op a = [&](const VectorXd& x, VectorXd& y) { y = flatten(op(unflatten(m, p, x))); };
  Op t = [&](const VectorXd& x, VectorXd& y) { y = flatten(symbol_preconditioner(unflatten(m, p, x))); };
  VectorXd rhs = flatten(b);
  VectorXd x = VectorXd::Zero(rhs.size());
  const CgResult r = pcg(a, t, rhs, x, cfg.tol_solve, cfg.max_cg_iterations, floor * cfg.tol_solve);
  record(stats, r);
  if (!r.converged) {
    std::ostringstream os;
    os << what << ": conjugate gradients stopped at relative residual " << r.relative_residual << " after "
       << r.iterations << " iterations";
    throw NoConvergence(os.str());
  }
  return unflatten(m, p, x);
}

/// Per-node M^{-1/2}.
MatrixField<double> mass_inverse_sqrt(const FormMetric& m, int p) {
  const auto& mass = m.mass(p);
  MatrixField<double> out(m.structure().nodes(), mass.rows, mass.cols);
  for (Index node = 0; node < m.structure().nodes(); ++node) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(mass.at(node));
    out.set(node, es.operatorInverseSqrt());
  }
  return out;
}

}  // namespace

VectorXd flatten(const RealForm& a) { return a.flat(); }

RealForm unflatten(const FormMetric& m, int degree, const Eigen::Ref<const VectorXd>& v) {
  RealForm out(m.grid_ptr(), degree);
  if (v.size() != out.size()) throw std::invalid_argument("vector length does not match form size");
  out.flat() = v;
  return out;
}

Eigen::VectorXcd flatten(const FormField<cd>& a) { return a.flat(); }

FormField<cd> unflatten(const FormMetric& m, int degree, const Eigen::Ref<const Eigen::VectorXcd>& v) {
  FormField<cd> out(m.grid_ptr(), degree);
  if (v.size() != out.size()) throw std::invalid_argument("vector length does not match form size");
  out.flat() = v;
  return out;
}

MatrixXd HarmonicBasis::matrix() const {
  if (forms.empty()) return {};
  MatrixXd out(forms.front().size(), dimension());
  for (int j = 0; j < dimension(); ++j) out.col(j) = forms[static_cast<std::size_t>(j)].flat();
  return out;
}

HarmonicBasis harmonic_basis(int p, const FormMetric& m, const SolverConfig& cfg, SolverStats* stats,
                             Restriction restriction) {
  if (p < 0 || p > 4) throw std::invalid_argument("form degree must lie in [0, 4]");
  if (restriction != Restriction::None && p != 2) throw std::invalid_argument("self-dual restriction needs p = 2");
  const Index n = m.structure().nodes() * binomial4(p);

  FormMap penalized = [&m](const RealForm& a) {
    RealForm y = laplacian_weak(a, m);
    y.coeffs += checkerboard_penalty(a).coeffs;
    return y;
  };
  FormMap proj;
  if (restriction != Restriction::None) {
    const Projector which = restriction == Restriction::SelfDual ? Projector::GPlus : Projector::GMinus;
    proj = [&m, which](const RealForm& a) { return project_field(a, m, which); };
    // the compressed operator Pᵀ L P, with Pᵀ = M P M⁻¹
    penalized = [&m, inner = penalized, proj](const RealForm& a) {
      return apply_mass(proj(apply_mass_inverse(inner(proj(a)), m)), m);
    };
  }
  const BlockOperator a = block_operator(m, p, penalized);
  const BlockOperator b = block_operator(m, p, [&m](const RealForm& x) { return apply_mass(x, m); });
  const BlockOperator b_inv = block_operator(m, p, [&m](const RealForm& x) { return apply_mass_inverse(x, m); });
  const auto scale = std::make_shared<MatrixField<double>>(mass_inverse_sqrt(m, p));
  const double h4 = m.grid().cell_volume();
  const BlockOperator t = block_operator(m, p, [scale, h4](const RealForm& x) {
    RealForm y(x.grid, x.degree, scale->apply(x.coeffs));
    y = symbol_preconditioner(y);
    y.coeffs = scale->apply(y.coeffs) * h4;
    return y;
  });
  const BlockOperator project = proj ? block_operator(m, p, proj) : BlockOperator{};

  LobpcgOptions opt;
  opt.block = binomial4(p) + 4;
  opt.kernel_threshold = cfg.tol_zero;
  opt.tol_kernel = std::min(1e-10, 1e-2 * cfg.tol_zero);
  opt.tol_relative = 1e-2;
  opt.max_iterations = cfg.max_eigen_iterations;
  opt.seed = cfg.seed;
  for (;;) {
    opt.want = opt.block - 3;
    const LobpcgResult r = lobpcg(a, b, b_inv, t, n, opt, project);
    if (stats) {
      ++stats->eigensolves;
      stats->eigen_iterations += r.iterations;
      stats->operator_applications += r.applications;
    }
    if (!r.converged) {
      std::ostringstream os;
      os << "harmonic " << p << "-forms: eigensolver did not converge in " << r.iterations << " iterations";
      throw NoConvergence(os.str());
    }
    const VectorXd values = r.values.head(opt.want);
    const GapCertificate cert = certify_kernel(values, cfg.tol_zero, false);
    if (cert.count >= opt.want && opt.block < n) {
      opt.block += 4;
      continue;
    }
    HarmonicBasis out;
    out.degree = p;
    out.restriction = restriction;
    out.eigenvalues = values;
    out.certificate = cert.certificate;
    out.ambiguous = cert.certificate < cfg.gap_min;
    out.tol_zero = cfg.tol_zero;
    out.tol_solve = cfg.tol_solve;
    out.iterations = r.iterations;
    for (int j = 0; j < cert.count; ++j) out.forms.push_back(unflatten(m, p, r.vectors.col(j)));
    if (out.ambiguous) {
      std::ostringstream os;
      os << "harmonic " << p << "-forms: gap certificate " << cert.certificate << " below " << cfg.gap_min;
      throw AmbiguousNullspace(os.str(), cert.certificate);
    }
    return out;
  }
}

void require_certified(const HarmonicBasis& b) {
  if (b.ambiguous) throw AmbiguousNullspace("harmonic basis is not certified", b.certificate);
}

RealForm harmonic_projection(const RealForm& a, const HarmonicBasis& b, const FormMetric& m) {
  require_certified(b);
  RealForm out(a.grid, a.degree);
  for (const auto& h : b.forms) out.coeffs += l2_inner(h, a, m) * h.coeffs;
  return out;
}

HodgeParts hodge_decompose(const RealForm& a, const FormMetric& m, const SolverConfig& cfg, SolverStats* stats) {
  const int p = a.degree;
  const double norm = l2_norm(a, m);
  HodgeParts out;
  out.exact = RealForm(a.grid, p);
  out.coexact = RealForm(a.grid, p);
  if (p > 0) {
    FormMap op = [&m](const RealForm& x) { return d_transpose(apply_mass(d(x), m)); };
    out.theta = solve_semidefinite(m, p - 1, op, d_transpose(apply_mass(a, m)), norm, cfg, stats, "exact part");
    out.exact = d(out.theta);
  }
  if (p < 4) {
    FormMap op = [&m](const RealForm& x) { return apply_mass(d(codifferential(x, m)), m); };
    out.psi = solve_semidefinite(m, p + 1, op, apply_mass(d(a), m), norm, cfg, stats, "coexact part");
    out.coexact = codifferential(out.psi, m);
  }
  out.harmonic = a - out.exact - out.coexact;
  if (norm > 0.0) {
    const double n2 = norm * norm;
    out.orthogonality = std::max({std::abs(l2_inner(out.harmonic, out.exact, m)),
                                  std::abs(l2_inner(out.harmonic, out.coexact, m)),
                                  std::abs(l2_inner(out.exact, out.coexact, m))}) /
                        n2;
    out.harmonic_residual = l2_norm(laplacian_apply(out.harmonic, m), m) / norm;
  }
  return out;
}

SelfDualReport refined_selfdual_decompose(const RealForm& a, const FormMetric& m, const SolverConfig& cfg,
                                          SolverStats* stats) {
  if (a.degree != 2) throw std::invalid_argument("refined decomposition acts on 2-forms");
  const double norm = l2_norm(a, m);
  SelfDualReport out;
  if (norm == 0.0) return out;
  out.precondition = l2_norm(a - star_coord(a, m), m) / norm;
  if (!(out.precondition <= 1e-10)) {
    std::ostringstream os;
    os << "input is not self-dual (residual " << out.precondition << ")";
    throw std::invalid_argument(os.str());
  }
  out.parts = hodge_decompose(a, m, cfg, stats);
  const RealForm dt_plus = project_field(out.parts.exact, m, Projector::GPlus);
  const RealForm dt_minus = project_field(out.parts.exact, m, Projector::GMinus);
  const RealForm dp_plus = project_field(out.parts.coexact, m, Projector::GPlus);
  const RealForm dp_minus = project_field(out.parts.coexact, m, Projector::GMinus);
  out.residuals[0] = l2_norm(dt_plus - dp_plus, m) / norm;
  out.residuals[1] = l2_norm(dt_minus + dp_minus, m) / norm;
  out.residuals[2] = l2_norm(a - 2.0 * dt_plus - out.parts.harmonic, m) / norm;
  out.residuals[3] = l2_norm(d(a + 2.0 * dt_minus), m) / norm;
  return out;
}

RealForm random_selfdual_form(const FormMetric& m, std::uint64_t seed, int max_mode) {
  return project_field(random_form(m.grid_ptr(), 2, seed, max_mode), m, Projector::GPlus);
}

void write_spectrum(std::ostream& os, const VectorXd& values) {
  os << "index,eigenvalue\n";
  const auto precision = os.precision(17);
  for (Index i = 0; i < values.size(); ++i) os << i << ',' << values(i) << '\n';
  os.precision(precision);
}

}  // namespace basic_hodge
