#include "basic_hodge/cohomology_decomp.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace basic_hodge {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using pointwise::Projector;

using UV = Eigen::MatrixXd;

UV as_uv(const FormMetric& m, const Eigen::Ref<const VectorXd>& v) {
  return Eigen::Map<const UV>(v.data(), m.structure().nodes(), 2);
}

VectorXd flat_uv(const UV& uv) { return Eigen::Map<const VectorXd>(uv.data(), uv.size()); }

/// (u, v) coordinates of the Φ-anti-invariant part (the frame is g-orthonormal and det g = 1).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> anti_coordinates(const FormField<Scalar>& a, const FormMetric& m) {
  return embed_anti_invariant_transpose(apply_mass(a, m), m) / m.grid().cell_volume();
}

/// Applies the projector complementary to `which` on complex 2-forms.
FormField<cd> complementary(const FormField<cd>& a, const FormMetric& m, Subgroup which) {
  auto bidegree = [&](std::initializer_list<std::pair<int, int>> parts) {
    FormField<cd> out(a.grid, 2);
    for (const auto& [p, q] : parts) out.coeffs += m.bidegree_projector(p, q).apply(a.coeffs);
    return out;
  };
  switch (which) {
    case Subgroup::PhiPlus: return project_field(a, m, Projector::PhiMinus);
    case Subgroup::PhiMinus: return project_field(a, m, Projector::PhiPlus);
    case Subgroup::Type11: return bidegree({{2, 0}, {0, 2}});
    case Subgroup::Type20: return bidegree({{1, 1}, {0, 2}});
    case Subgroup::Type02: return bidegree({{1, 1}, {2, 0}});
    case Subgroup::Type20And02: return bidegree({{1, 1}});
  }
  throw std::invalid_argument("unknown subgroup");
}

MatrixXcd orthonormal_columns(const MatrixXcd& a) {
  if (a.cols() == 0) return a;
  Eigen::JacobiSVD<MatrixXcd> svd(a, Eigen::ComputeThinU);
  Index rank = 0;
  const double top = svd.singularValues()(0);
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > 1e-12 * top) ++rank;
  return svd.matrixU().leftCols(rank);
}

Check make_check(std::string name, std::string anchor, double residual, std::optional<double> cert, Verdict v) {
  return {std::move(name), std::move(anchor), residual, cert, v};
}

Verdict verdict(bool pass) { return pass ? Verdict::Pass : Verdict::Fail; }

double min_angle(const MatrixXcd& a, const MatrixXcd& b) {
  const VectorXd angles = principal_angles(a, b);
  return angles.size() == 0 ? 90.0 : angles(0);
}

}  // namespace

std::string to_string(Subgroup which) {
  switch (which) {
    case Subgroup::PhiPlus: return "phi+";
    case Subgroup::PhiMinus: return "phi-";
    case Subgroup::Type11: return "(1,1)";
    case Subgroup::Type20: return "(2,0)";
    case Subgroup::Type02: return "(0,2)";
    case Subgroup::Type20And02: return "(2,0)+(0,2)";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::Observation: return "observation";
  }
  return "?";
}

ClosedAntiInvariantBasis anti_invariant_closed_basis(const FormMetric& m, const SolverConfig& cfg, SolverStats* stats) {
  const Index nodes = m.structure().nodes();
  const double h4 = m.grid().cell_volume();
  auto column_map = [&m](std::function<UV(const UV&)> f) -> BlockOperator {
    return [&m, f = std::move(f)](const MatrixXd& x, MatrixXd& y) {
      y.resize(x.rows(), x.cols());
      for (Index j = 0; j < x.cols(); ++j) y.col(j) = flat_uv(f(as_uv(m, x.col(j))));
    };
  };
  const BlockOperator a = column_map([&m](const UV& uv) {
    const RealForm alpha = embed_anti_invariant(uv, m);
    RealForm y = d_transpose(apply_mass(d(alpha), m));
    y.coeffs += checkerboard_penalty(alpha).coeffs;
    return UV(embed_anti_invariant_transpose(y, m));
  });
  const BlockOperator b = column_map([h4](const UV& uv) { return UV(h4 * uv); });
  const BlockOperator b_inv = column_map([h4](const UV& uv) { return UV(uv / h4); });
  const BlockOperator t = column_map([&m, h4](const UV& uv) {
    UV out(uv.rows(), 2);
    for (Index c = 0; c < 2; ++c) m.grid().apply_inverse_symbol(uv.col(c).data(), out.col(c).data(), 1.0);
    return UV(out / h4);
  });

  LobpcgOptions opt;
  opt.block = 6;
  opt.kernel_threshold = cfg.tol_zero;
  opt.tol_kernel = std::min(1e-12, 1e-4 * cfg.tol_zero);
  opt.tol_relative = 1e-2;
  opt.max_iterations = cfg.max_eigen_iterations;
  opt.seed = cfg.seed;
  for (;;) {
    opt.want = opt.block - 3;
    const LobpcgResult r = lobpcg(a, b, b_inv, t, 2 * nodes, opt);
    if (stats) {
      ++stats->eigensolves;
      stats->eigen_iterations += r.iterations;
      stats->operator_applications += r.applications;
    }
    if (!r.converged) throw NoConvergence("closed anti-invariant forms: eigensolver did not converge");
    const VectorXd values = r.values.head(opt.want);
    const GapCertificate cert = certify_kernel(values, cfg.tol_zero, false);
    if (cert.count >= opt.want) {
      opt.block += 4;
      continue;
    }
    ClosedAntiInvariantBasis out;
    out.dimension = cert.count;
    out.eigenvalues = values;
    out.certificate = cert.certificate;
    out.ambiguous = cert.certificate < cfg.gap_min;
    for (int j = 0; j < cert.count; ++j) out.forms.push_back(embed_anti_invariant(as_uv(m, r.vectors.col(j)), m));
    if (out.ambiguous) {
      std::ostringstream os;
      os << "closed anti-invariant forms: gap certificate " << cert.certificate << " below " << cfg.gap_min;
      throw AmbiguousNullspace(os.str(), cert.certificate);
    }
    return out;
  }
}

std::vector<AntiInvariantResiduals> lemma22_checks(const ClosedAntiInvariantBasis& basis, const FormMetric& m) {
  if (basis.ambiguous) throw AmbiguousNullspace("closed anti-invariant basis is not certified", basis.certificate);
  const RealForm omega = omega_field(m.grid_ptr());
  const double omega_norm = l2_norm(omega, m);
  const auto omega_pointwise = apply_mass(omega, m);
  std::vector<AntiInvariantResiduals> out;
  for (const auto& alpha : basis.forms) {
    const double n = l2_norm(alpha, m);
    AntiInvariantResiduals r;
    r.self_duality = l2_norm(alpha - star_coord(alpha, m), m) / n;
    r.coclosed = l2_norm(codifferential(alpha, m), m) / n;
    r.omega = std::abs(l2_inner(alpha, omega, m)) / (n * omega_norm);
    r.closed = l2_norm(d(alpha), m) / n;
    const double h4 = m.grid().cell_volume();
    const auto ma = apply_mass(alpha, m);
    const VectorXd pair = (alpha.coeffs.array() * omega_pointwise.coeffs.array()).rowwise().sum() / h4;
    const VectorXd size = ((alpha.coeffs.array() * ma.coeffs.array()).rowwise().sum() / h4).sqrt();
    const VectorXd omega_size = ((omega.coeffs.array() * omega_pointwise.coeffs.array()).rowwise().sum() / h4).sqrt();
    r.pointwise_omega = pair.cwiseAbs().maxCoeff() / (size.maxCoeff() * omega_size.maxCoeff());
    out.push_back(r);
  }
  return out;
}

double anti_invariant_embedding_residual(const RealForm& a, const FormMetric& m) {
  const RealForm embedded = embed_anti_invariant(anti_coordinates(a, m), m);
  return l2_norm(a - embedded, m);
}

Representability invariant_representability(const FormField<cd>& h, const FormMetric& m, Subgroup which,
                                            const SolverConfig& cfg, SolverStats* stats) {
  if (h.degree != 2) throw std::invalid_argument("representability acts on 2-forms");
  const double norm = l2_norm(h, m);
  Representability out;
  out.corrected = h;
  if (norm == 0.0) return out;
  using Op = std::function<void(const VectorXcd&, VectorXcd&)>;
  Op a = [&](const VectorXcd& x, VectorXcd& y) {
    y = flatten(d_transpose(apply_mass(complementary(d(unflatten(m, 1, x)), m, which), m)));
  };
  Op t = [&](const VectorXcd& x, VectorXcd& y) { y = flatten(symbol_preconditioner(unflatten(m, 1, x))); };
  const VectorXcd rhs = -flatten(d_transpose(apply_mass(complementary(h, m, which), m)));
  VectorXcd gamma = VectorXcd::Zero(rhs.size());
  const CgResult r = pcg(a, t, rhs, gamma, cfg.tol_solve, cfg.max_cg_iterations, norm * cfg.tol_solve);
  if (stats) {
    ++stats->cg_solves;
    stats->cg_iterations += r.iterations;
    stats->worst_cg_residual = std::max(stats->worst_cg_residual, r.relative_residual);
  }
  if (!r.converged) {
    std::ostringstream os;
    os << "representability (" << to_string(which) << "): conjugate gradients stopped at relative residual "
       << r.relative_residual << " after " << r.iterations << " iterations";
    throw NoConvergence(os.str());
  }
  out.corrected = h + d(unflatten(m, 1, gamma));
  out.residual = l2_norm(complementary(out.corrected, m, which), m) / norm;
  return out;
}

Representability invariant_representability(const RealForm& h, const FormMetric& m, Subgroup which,
                                            const SolverConfig& cfg, SolverStats* stats) {
  return invariant_representability(complexify(h), m, which, cfg, stats);
}

SubgroupDimension subgroup_dimension(const HarmonicBasis& basis, const FormMetric& m, Subgroup which,
                                     const SolverConfig& cfg, SolverStats* stats) {
  require_certified(basis);
  const int k = basis.dimension();
  std::vector<FormField<cd>> parts;
  for (const auto& h : basis.forms) {
    const Representability r = invariant_representability(h, m, which, cfg, stats);
    parts.push_back(complementary(r.corrected, m, which));
  }
  MatrixXcd q(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      q(i, j) = l2_inner(parts[static_cast<std::size_t>(i)], parts[static_cast<std::size_t>(j)], m);
      q(j, i) = std::conj(q(i, j));
    }
  SubgroupDimension out;
  out.which = which;
  if (k == 0) return out;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(q);
  out.eigenvalues = es.eigenvalues();
  const GapCertificate cert = certify_kernel(out.eigenvalues, cfg.tol_zero, true);
  out.dimension = cert.count;
  out.certificate = cert.certificate;
  out.ambiguous = cert.certificate < cfg.gap_min;
  out.kernel = es.eigenvectors().leftCols(cert.count);
  return out;
}

VectorXd principal_angles(const MatrixXcd& a, const MatrixXcd& b) {
  if (a.cols() == 0 || b.cols() == 0) return {};
  if (a.cols() < b.cols()) return principal_angles(b, a);
  // cosines from AᴴB, sines from (I − AAᴴ)B; small angles from the sines
  const MatrixXcd c = a.adjoint() * b;
  const VectorXd cosines = Eigen::JacobiSVD<MatrixXcd>(c).singularValues();
  const VectorXd sines = Eigen::JacobiSVD<MatrixXcd>(b - a * c).singularValues();
  const Index k = b.cols();
  VectorXd out(k);
  for (Index i = 0; i < k; ++i) {
    const double cs = std::clamp(cosines(i), 0.0, 1.0);
    const double sn = std::clamp(sines(k - 1 - i), 0.0, 1.0);
    out(i) = (cs * cs >= 0.5 ? std::asin(sn) : std::acos(cs)) * 180.0 / std::numbers::pi;
  }
  std::sort(out.data(), out.data() + out.size());
  return out;
}

double subspace_distance(const MatrixXcd& a, const MatrixXcd& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  const VectorXd angles = principal_angles(a, b);
  return std::sin(angles(angles.size() - 1) * std::numbers::pi / 180.0);
}

Verdict DecompositionReport::overall() const {
  bool inconclusive = false;
  for (const auto& c : checks) {
    if (c.verdict == Verdict::Fail) return Verdict::Fail;
    if (c.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::Inconclusive : Verdict::Pass;
}

void verify_pure_full(DecompositionReport& report, const HarmonicBasis& basis, const SubgroupDimension& plus,
                      const SubgroupDimension& minus, const ClosedAntiInvariantBasis& direct, const FormMetric& m) {
  const std::string anchor = "H_B²(F_ξ) = H_Φ^+ ⊕ H_Φ^-";
  const int b2 = basis.dimension();
  for (const auto* s : {&plus, &minus})
    report.checks.push_back(make_check("h_Φ^" + std::string(s == &plus ? "+" : "-") + " gap certificate",
                                       "H_Φ^±(F_ξ) = {[α] ∈ H_B²(F_ξ) | α ∈ Ω_Φ^±(F_ξ)}", s->eigenvalues.size() ? s->eigenvalues(0) : 0.0,
                                       s->certificate, s->ambiguous ? Verdict::Inconclusive : Verdict::Pass));
  report.checks.push_back(make_check("fullness h_Φ^+ + h_Φ^- = b_B^2", anchor, std::abs(plus.dimension + minus.dimension - b2),
                                     std::nullopt, verdict(plus.dimension + minus.dimension == b2)));
  const double angle = min_angle(plus.kernel, minus.kernel);
  report.checks.push_back(make_check("pureness H_Φ^+ ∩ H_Φ^- = 0 (min principal angle, degrees)", anchor, angle, std::nullopt,
                                     verdict(angle >= 10.0)));
  report.checks.push_back(make_check("h_Φ^- direct kernel = representability rank", "Z_Φ^- → H_Φ^- is bijective",
                                     std::abs(direct.dimension - minus.dimension), direct.certificate,
                                     verdict(direct.dimension == minus.dimension)));
  // harmonic coordinates of the closed anti-invariant forms
  MatrixXcd coords(b2, direct.dimension);
  double outside = 0.0;
  for (int j = 0; j < direct.dimension; ++j) {
    const RealForm& alpha = direct.forms[static_cast<std::size_t>(j)];
    RealForm rest = alpha;
    for (int i = 0; i < b2; ++i) {
      const double c = l2_inner(basis.forms[static_cast<std::size_t>(i)], alpha, m);
      coords(i, j) = c;
      rest.coeffs -= c * basis.forms[static_cast<std::size_t>(i)].coeffs;
    }
    outside = std::max(outside, l2_norm(rest, m) / l2_norm(alpha, m));
  }
  const double dist = std::max(subspace_distance(orthonormal_columns(coords), minus.kernel), outside);
  report.checks.push_back(make_check("closed anti-invariant forms span the H_Φ^- kernel", "H_Φ^- = Z_Φ^- = H_g^{+,ω⊥}", dist,
                                     std::nullopt, verdict(dist <= 1e-7)));
}

void verify_complex(DecompositionReport& report, const HarmonicBasis& basis, const SubgroupDimension& plus,
                    const SubgroupDimension& minus, const SubgroupDimension& t11, const SubgroupDimension& t20,
                    const SubgroupDimension& t02, const SubgroupDimension& t20_02) {
  const int b2 = basis.dimension();
  for (const auto* s : {&t11, &t20, &t02, &t20_02})
    report.checks.push_back(make_check("h^" + to_string(s->which) + " gap certificate",
                                       "represented by a complex closed form of type (p,q)",
                                       s->eigenvalues.size() ? s->eigenvalues(0) : 0.0, s->certificate,
                                       s->ambiguous ? Verdict::Inconclusive : Verdict::Pass));
  const double conj_dist = subspace_distance(t20.kernel.conjugate(), t02.kernel);
  report.checks.push_back(make_check("conjugation symmetry h^{2,0} = h^{0,2}", "H_Φ^{p,q} = conj(H_Φ^{q,p})",
                                     std::max<double>(std::abs(t20.dimension - t02.dimension), conj_dist), std::nullopt,
                                     verdict(t20.dimension == t02.dimension && conj_dist <= 1e-7)));
  const double dist11 = t11.dimension == plus.dimension
                            ? subspace_distance(t11.kernel, orthonormal_columns(plus.kernel))
                            : 1.0;
  report.checks.push_back(make_check("h^{1,1} = h_Φ^+", "H_Φ^{1,1} = H_Φ^+ ⊗_ℝ ℂ", dist11, std::nullopt,
                                     verdict(t11.dimension == plus.dimension && dist11 <= 1e-7)));
  const double angles = std::min({min_angle(t11.kernel, t20.kernel), min_angle(t11.kernel, t02.kernel),
                                  min_angle(t20.kernel, t02.kernel)});
  report.checks.push_back(make_check("complex pureness (min pairwise principal angle, degrees)", "Φ is always complex C^∞ pure",
                                     angles, std::nullopt, verdict(angles >= 10.0)));
  const Verdict gated_pass = report.integrable ? Verdict::Pass : Verdict::Observation;
  const Verdict gated_fail = report.integrable ? Verdict::Fail : Verdict::Observation;
  const bool eq38 = t20.dimension + t02.dimension == minus.dimension && t20_02.dimension == minus.dimension;
  report.checks.push_back(make_check("h^{2,0} + h^{0,2} = h_Φ^-", "(H_Φ^{2,0} + H_Φ^{0,2}) = H_Φ^- ⊗_ℝ ℂ",
                                     std::abs(t20.dimension + t02.dimension - minus.dimension), std::nullopt,
                                     eq38 ? gated_pass : gated_fail));
  const int sum = t11.dimension + t20.dimension + t02.dimension;
  report.checks.push_back(make_check("complex fullness h^{1,1} + h^{2,0} + h^{0,2} = b_B^2",
                                     "H²(F_ξ; ℂ) = H_Φ^{1,1} ⊕ H_Φ^{2,0} ⊕ H_Φ^{0,2}", std::abs(sum - b2), std::nullopt,
                                     sum == b2 ? gated_pass : gated_fail));
}

TypeCheck anti_invariant_type_check(const RealForm& alpha, const FormMetric& m) {
  const UV uv = anti_coordinates(alpha, m);
  const cd i(0.0, 1.0);
  Eigen::MatrixXcd theta_uv(uv.rows(), 2);
  theta_uv.col(0) = uv.col(0).cast<cd>() - i * uv.col(1).cast<cd>();
  theta_uv.col(1) = uv.col(1).cast<cd>() + i * uv.col(0).cast<cd>();
  const ComplexFormField theta(embed_anti_invariant(theta_uv, m), Bidegree::P20);
  const double n = l2_norm(theta, m);
  TypeCheck out;
  if (n == 0.0) return out;
  out.bidegree = l2_norm(theta - bidegree_project(theta, m, 2, 0), m) / n;
  const DelDelbar conj_parts = del_delbar(conjugate(theta), m);
  const DelDelbar parts = del_delbar(theta, m);
  out.del_conjugate = l2_norm(conj_parts.del, m) / n;
  FormField<cd> twice_d = complexify(d(alpha));
  twice_d.coeffs *= 2.0;
  out.identity = l2_norm(twice_d - conj_parts.del - parts.delbar, m) / n;
  return out;
}

DecompositionReport decompose(const StructureField& s, const DecomposeOptions& opt) {
  DecompositionReport report;
  report.structure = s.provenance.describe();
  report.grid = s.n();
  report.nijenhuis_max = nijenhuis_norm(s).maxCoeff();
  report.integrable = report.nijenhuis_max <= integrability_threshold;
  const bool flat = s.provenance.kind == Provenance::Kind::Flat || s.provenance.amplitude == 0.0;
  const double residual_tol = flat ? 1e-10 : 1e-7;
  const FormMetric m(s);
  const SolverConfig& cfg = opt.solver;
  SolverStats& stats = report.stats;

  const DualPathResidual dual = dual_path_residual(m, 100, cfg.seed);
  report.checks.push_back(make_check("frame star = coordinate star", "*̄α = *(η ∧ α)", dual.star, std::nullopt,
                                     verdict(dual.star <= 1e-10)));
  report.checks.push_back(make_check("frame Φ = coordinate Φ", "Λ_Φ^+ = ℝω ⊕ Λ_g^-", dual.phi, std::nullopt,
                                     verdict(dual.phi <= 1e-10)));
  {
    double dd = 0.0, adj = 0.0;
    for (int p = 0; p <= 2; ++p) {
      const RealForm a = random_form(m.grid_ptr(), p, cfg.seed + 100 + static_cast<std::uint64_t>(p), 2);
      const RealForm b = random_form(m.grid_ptr(), p + 1, cfg.seed + 200 + static_cast<std::uint64_t>(p), 2);
      dd = std::max(dd, l2_norm(d(d(a)), m) / l2_norm(a, m));
      const double lhs = l2_inner(d(a), b, m);
      const double rhs = l2_inner(a, codifferential(b, m), m);
      adj = std::max(adj, std::abs(lhs - rhs) / (l2_norm(d(a), m) * l2_norm(b, m)));
    }
    report.checks.push_back(make_check("d∘d = 0", "Δ_B = d_Bδ_B + δ_Bd_B", dd, std::nullopt, verdict(dd <= 1e-10)));
    report.checks.push_back(make_check("⟨dα, β⟩ = ⟨α, δβ⟩", "δ_B = −*̄d_B*̄", adj, std::nullopt, verdict(adj <= 1e-10)));
  }

  try {
    std::array<HarmonicBasis, 3> bases;
    for (int p = 0; p <= 2; ++p) {
      const auto c = static_cast<std::size_t>(p);
      bases[c] = harmonic_basis(p, m, cfg, &stats);
      report.betti[c] = bases[c].dimension();
      report.betti_certificate[c] = bases[c].certificate;
      report.spectra.emplace_back("harmonic_" + std::to_string(p), bases[c].eigenvalues);
      report.checks.push_back(make_check("b_B^" + std::to_string(p) + " gap certificate",
                                         "H^p(F_ξ) is the space of basic harmonic p-forms defined as the kernel of Δ_B",
                                         bases[c].dimension() ? bases[c].eigenvalues(bases[c].dimension() - 1) : 0.0,
                                         bases[c].certificate, Verdict::Pass));
    }
    const HarmonicBasis& h2 = bases[2];

    const ClosedAntiInvariantBasis direct = anti_invariant_closed_basis(m, cfg, &stats);
    report.h_phi_minus_direct = direct.dimension;
    report.spectra.emplace_back("closed_anti_invariant", direct.eigenvalues);
    report.checks.push_back(make_check("Z_Φ^- gap certificate", "Z_Φ^- → H_Φ^- is bijective",
                                       direct.eigenvalues.size() ? direct.eigenvalues(0) : 0.0, direct.certificate, Verdict::Pass));
    AntiInvariantResiduals worst;
    for (const auto& r : lemma22_checks(direct, m)) {
      worst.self_duality = std::max(worst.self_duality, r.self_duality);
      worst.coclosed = std::max(worst.coclosed, r.coclosed);
      worst.omega = std::max(worst.omega, r.omega);
      worst.pointwise_omega = std::max(worst.pointwise_omega, r.pointwise_omega);
    }
    report.checks.push_back(make_check("Z_Φ^- self-dual", "Since α is self dual, i.e., *̄α = α", worst.self_duality, std::nullopt,
                                       verdict(worst.self_duality <= residual_tol)));
    report.checks.push_back(make_check("Z_Φ^- coclosed", "δ_Bα = *̄d_B*̄α = *̄d_Bα = 0", worst.coclosed, std::nullopt,
                                       verdict(worst.coclosed <= residual_tol)));
    report.checks.push_back(make_check("Z_Φ^- L²-orthogonal to ω", "H_Φ^- = Z_Φ^- = H_g^{+,ω⊥}", worst.omega, std::nullopt,
                                       verdict(worst.omega <= residual_tol)));
    report.checks.push_back(make_check("Z_Φ^- pointwise orthogonal to ω (diagnostic)", "H_Φ^- = Z_Φ^- = H_g^{+,ω⊥}",
                                       worst.pointwise_omega, std::nullopt, Verdict::Observation));

    const SubgroupDimension plus = subgroup_dimension(h2, m, Subgroup::PhiPlus, cfg, &stats);
    const SubgroupDimension minus = subgroup_dimension(h2, m, Subgroup::PhiMinus, cfg, &stats);
    report.h_phi_plus = plus.dimension;
    report.h_phi_minus = minus.dimension;
    report.spectra.emplace_back("phi_plus", plus.eigenvalues);
    report.spectra.emplace_back("phi_minus", minus.eigenvalues);
    verify_pure_full(report, h2, plus, minus, direct, m);

    if (opt.complex) {
      const SubgroupDimension t11 = subgroup_dimension(h2, m, Subgroup::Type11, cfg, &stats);
      const SubgroupDimension t20 = subgroup_dimension(h2, m, Subgroup::Type20, cfg, &stats);
      const SubgroupDimension t02 = subgroup_dimension(h2, m, Subgroup::Type02, cfg, &stats);
      const SubgroupDimension t20_02 = subgroup_dimension(h2, m, Subgroup::Type20And02, cfg, &stats);
      report.h11 = t11.dimension;
      report.h20 = t20.dimension;
      report.h02 = t02.dimension;
      for (const auto* t : {&t11, &t20, &t02, &t20_02}) report.spectra.emplace_back(to_string(t->which), t->eigenvalues);
      verify_complex(report, h2, plus, minus, t11, t20, t02, t20_02);
      TypeCheck worst_type;
      for (const auto& alpha : direct.forms) {
        const TypeCheck tc = anti_invariant_type_check(alpha, m);
        worst_type.bidegree = std::max(worst_type.bidegree, tc.bidegree);
        worst_type.del_conjugate = std::max(worst_type.del_conjugate, tc.del_conjugate);
        worst_type.identity = std::max(worst_type.identity, tc.identity);
      }
      report.checks.push_back(make_check("Θ = α + i·rot α is of type (2,0)", "(H_Φ^{2,0} + H_Φ^{0,2}) = H_Φ^- ⊗_ℝ ℂ",
                                         worst_type.bidegree, std::nullopt, verdict(worst_type.bidegree <= residual_tol)));
      const bool ok = worst_type.del_conjugate <= 1e-7 && worst_type.identity <= 1e-7;
      report.checks.push_back(make_check("closed α gives ∂Θ̄ = 0 and 2dα = ∂Θ̄ + ∂̄Θ", "d_Bα = 0 ⇔ ∂_B Θ̄ = 0",
                                         std::max(worst_type.del_conjugate, worst_type.identity), std::nullopt,
                                         report.integrable ? verdict(ok) : Verdict::Observation));
    }
  } catch (const AmbiguousNullspace& e) {
    report.checks.push_back(make_check(std::string("certificate: ") + e.what(), "H^p(F_ξ) = ker Δ_B", 0.0, e.certificate,
                                       Verdict::Inconclusive));
  }
  return report;
}

}  // namespace basic_hodge
