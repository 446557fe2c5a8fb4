#pragma once

// Basic Laplacian, certified harmonic bases, Hodge decomposition and the
// refined decomposition of self-dual 2-forms.

#include "basic_hodge/discrete_forms.hpp"
#include "basic_hodge/errors.hpp"
#include "basic_hodge/solvers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstdint>
#include <ostream>
#include <vector>

namespace basic_hodge {

struct SolverConfig {
  double tol_zero = 1e-8;
  /// Relative tolerance of the conjugate-gradient solves.
  double tol_solve = 1e-10;
  double gap_min = 100.0;
  int max_eigen_iterations = 3000;
  int max_cg_iterations = 20000;
  std::uint64_t seed = 1;
};

struct SolverStats {
  int eigensolves = 0;
  int eigen_iterations = 0;
  long operator_applications = 0;
  int cg_solves = 0;
  long cg_iterations = 0;
  double worst_cg_residual = 0.0;
};

/// Flattened form (column-major coefficient block) and back.
Eigen::VectorXd flatten(const RealForm& a);
RealForm unflatten(const FormMetric& m, int degree, const Eigen::Ref<const Eigen::VectorXd>& v);
Eigen::VectorXcd flatten(const FormField<cd>& a);
FormField<cd> unflatten(const FormMetric& m, int degree, const Eigen::Ref<const Eigen::VectorXcd>& v);

/// Δ a = dδa + δda.
template <typename Scalar>
FormField<Scalar> laplacian_apply(const FormField<Scalar>& a, const FormMetric& m) {
  FormField<Scalar> out(a.grid, a.degree);
  if (a.degree < 4) out.coeffs += codifferential(d(a), m).coeffs;
  if (a.degree > 0) out.coeffs += d(codifferential(a, m)).coeffs;
  return out;
}

/// M Δ a, the symmetric (weak) form of the Laplacian.
template <typename Scalar>
FormField<Scalar> laplacian_weak(const FormField<Scalar>& a, const FormMetric& m) {
  FormField<Scalar> out(a.grid, a.degree);
  if (a.degree < 4) out.coeffs += d_transpose(apply_mass(d(a), m)).coeffs;
  if (a.degree > 0) out.coeffs += apply_mass(d(codifferential(a, m)), m).coeffs;
  return out;
}

/// Componentwise (|k|² + shift)⁻¹ / h⁴, the Fourier-symbol preconditioner.
template <typename Scalar>
FormField<Scalar> symbol_preconditioner(const FormField<Scalar>& a, double shift = 1.0) {
  FormField<Scalar> out(a.grid, a.degree);
  for (Eigen::Index c = 0; c < a.coeffs.cols(); ++c)
    a.grid->apply_inverse_symbol(a.coeffs.col(c).data(), out.coeffs.col(c).data(), shift);
  out.coeffs /= a.grid->cell_volume();
  return out;
}

enum class Restriction { None, SelfDual, AntiSelfDual };

struct HarmonicBasis {
  int degree = 0;
  Restriction restriction = Restriction::None;
  /// L²-orthonormal harmonic forms.
  std::vector<RealForm> forms;
  /// Lowest computed eigenvalues, ascending; the first forms.size() are the kernel.
  Eigen::VectorXd eigenvalues;
  double certificate = 0.0;
  bool ambiguous = false;
  double tol_zero = 0.0;
  double tol_solve = 0.0;
  int iterations = 0;

  int dimension() const { return static_cast<int>(forms.size()); }
  /// Columns are the flattened forms.
  Eigen::MatrixXd matrix() const;
};

/// Kernel of Δ on smooth (checkerboard-free) p-forms with a gap certificate.
/// Throws AmbiguousNullspace when the certificate is below gap_min.
HarmonicBasis harmonic_basis(int p, const FormMetric& m, const SolverConfig& cfg, SolverStats* stats = nullptr,
                             Restriction restriction = Restriction::None);

/// Throws AmbiguousNullspace unless the basis is certified.
void require_certified(const HarmonicBasis& b);

/// L² projection onto span(b.forms).
RealForm harmonic_projection(const RealForm& a, const HarmonicBasis& b, const FormMetric& m);

struct HodgeParts {
  RealForm harmonic;
  RealForm exact;
  RealForm coexact;
  RealForm theta;  // exact = dθ
  RealForm psi;    // coexact = δΨ
  /// Largest pairwise |⟨x, y⟩| / ‖a‖² among the three parts.
  double orthogonality = 0.0;
  /// ‖Δ harmonic‖ / ‖a‖.
  double harmonic_residual = 0.0;
};

/// a = a_h + dθ + δΨ with dθ, δΨ from least-squares conjugate-gradient solves
/// and a_h the remainder.
HodgeParts hodge_decompose(const RealForm& a, const FormMetric& m, const SolverConfig& cfg, SolverStats* stats = nullptr);

struct SelfDualReport {
  double precondition = 0.0;  // ‖a − star a‖ / ‖a‖
  /// ‖(dθ)⁺ − (δΨ)⁺‖, ‖(dθ)⁻ + (δΨ)⁻‖, ‖a − 2(dθ)⁺ − a_h‖, ‖d(a + 2(dθ)⁻)‖, relative to ‖a‖.
  std::array<double, 4> residuals{};
  HodgeParts parts;
  double max_residual() const { return *std::max_element(residuals.begin(), residuals.end()); }
};

/// Throws std::invalid_argument unless a is self-dual to 1e−10.
SelfDualReport refined_selfdual_decompose(const RealForm& a, const FormMetric& m, const SolverConfig& cfg,
                                          SolverStats* stats = nullptr);

/// Self-dual part of a random band-limited 2-form.
RealForm random_selfdual_form(const FormMetric& m, std::uint64_t seed, int max_mode);

/// "index,eigenvalue" lines.
void write_spectrum(std::ostream& os, const Eigen::VectorXd& values);

}  // namespace basic_hodge
