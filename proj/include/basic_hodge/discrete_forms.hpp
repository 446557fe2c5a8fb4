#pragma once

// Discrete basic-form calculus on the periodic grid: spectral d, the metric
// inner product and its pointwise ingredients, codifferential, star, the
// g±/Φ± projectors, bidegree splitting and the ∫α∧β∧η pairing.

#include "basic_hodge/form_field.hpp"
#include "basic_hodge/pointwise_algebra.hpp"
#include "basic_hodge/transverse_geometry.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>

namespace basic_hodge {

using cd = std::complex<double>;

/// Per-node rows×cols matrices, stored as nodes × (rows·cols) with entry (r, c)
/// in column r + rows·c so that application vectorizes over nodes.
template <typename S>
struct MatrixField {
  int rows = 0;
  int cols = 0;
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> data;

  MatrixField() = default;
  MatrixField(Eigen::Index nodes, int r, int c) : rows(r), cols(c), data(nodes, r * c) {}

  template <typename Derived>
  void set(Eigen::Index node, const Eigen::MatrixBase<Derived>& m) {
    for (int c = 0; c < cols; ++c)
      for (int r = 0; r < rows; ++r) data(node, r + rows * c) = m(r, c);
  }
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> at(Eigen::Index node) const {
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> m(rows, cols);
    for (int c = 0; c < cols; ++c)
      for (int r = 0; r < rows; ++r) m(r, c) = data(node, r + rows * c);
    return m;
  }

  /// y(node) = M(node) x(node) for a nodes × cols block.
  template <typename X>
  auto apply(const Eigen::Matrix<X, Eigen::Dynamic, Eigen::Dynamic>& x) const {
    using R = typename Eigen::ScalarBinaryOpTraits<S, X>::ReturnType;
    Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic> y = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>::Zero(x.rows(), rows);
    for (int c = 0; c < cols; ++c)
      for (int r = 0; r < rows; ++r) y.col(r).array() += data.col(r + rows * c).array() * x.col(c).array();
    return y;
  }
};

/// Pointwise operator caches for one structure.
class FormMetric {
 public:
  explicit FormMetric(StructureField s);

  const StructureField& structure() const { return s_; }
  const PeriodicGrid& grid() const { return *s_.grid; }
  const std::shared_ptr<const PeriodicGrid>& grid_ptr() const { return s_.grid; }

  /// h⁴ √det g · (Gram matrix of g on Λ^p).
  const MatrixField<double>& mass(int p) const { return mass_.at(check(p)); }
  const MatrixField<double>& mass_inverse(int p) const { return mass_inv_.at(check(p)); }
  /// Hodge star Λ^p → Λ^{4−p}, orientation dx1∧dy1∧dx2∧dy2.
  const MatrixField<double>& star(int p) const { return star_.at(check(p)); }
  /// Pullback α ↦ α(J·, …, J·).
  const MatrixField<double>& phi(int p) const { return phi_.at(check(p)); }
  /// Frame-to-coordinate change on 2-forms: coordinate = F · (E-coefficients).
  const MatrixField<double>& frame_to_coordinate() const { return frame_; }
  /// Coordinate 2-forms of (e3 − e4)/√2 and (e5 + e6)/√2: the anti-invariant frame.
  const MatrixField<double>& anti_invariant_frame() const { return anti_; }
  /// Projector onto bidegree (p, q) on complex (p+q)-forms.
  const MatrixField<cd>& bidegree_projector(int p, int q) const;

 private:
  static std::size_t check(int p);

  StructureField s_;
  std::array<MatrixField<double>, 5> mass_, mass_inv_, star_, phi_;
  MatrixField<double> frame_, anti_;
  mutable std::array<std::once_flag, 5> bidegree_once_;
  mutable std::array<std::array<MatrixField<cd>, 5>, 5> bidegree_;
};

// ---- exterior derivative ----

template <typename Scalar>
FormField<Scalar> d(const FormField<Scalar>& a) {
  FormField<Scalar> out(a.grid, a.degree + 1);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> tmp(a.coeffs.rows());
  for (const auto& t : derivative_terms(a.degree)) {
    a.grid->differentiate(a.coeffs.col(t.in).data(), tmp.data(), t.axis);
    if (t.sign > 0)
      out.coeffs.col(t.out) += tmp;
    else
      out.coeffs.col(t.out) -= tmp;
  }
  return out;
}

/// Euclidean transpose of d: Λ^{p+1} → Λ^p.
template <typename Scalar>
FormField<Scalar> d_transpose(const FormField<Scalar>& b) {
  if (b.degree < 1) throw std::invalid_argument("transpose of d requires degree ≥ 1");
  FormField<Scalar> out(b.grid, b.degree - 1);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> tmp(b.coeffs.rows());
  for (const auto& t : derivative_terms(b.degree - 1)) {
    b.grid->differentiate(b.coeffs.col(t.out).data(), tmp.data(), t.axis);
    // D is antisymmetric
    if (t.sign > 0)
      out.coeffs.col(t.in) -= tmp;
    else
      out.coeffs.col(t.in) += tmp;
  }
  return out;
}

// ---- metric ----

template <typename Scalar>
FormField<Scalar> apply_mass(const FormField<Scalar>& a, const FormMetric& m) {
  return {a.grid, a.degree, m.mass(a.degree).apply(a.coeffs)};
}

template <typename Scalar>
FormField<Scalar> apply_mass_inverse(const FormField<Scalar>& a, const FormMetric& m) {
  return {a.grid, a.degree, m.mass_inverse(a.degree).apply(a.coeffs)};
}

/// Σ_nodes ⟨a, b⟩_g √det g h⁴, antilinear in a for complex forms.
template <typename Scalar>
Scalar l2_inner(const FormField<Scalar>& a, const FormField<Scalar>& b, const FormMetric& m) {
  require_same_shape(a, b);
  const auto mb = m.mass(a.degree).apply(b.coeffs);
  Scalar sum(0);
  for (Eigen::Index c = 0; c < mb.cols(); ++c) sum += a.coeffs.col(c).dot(mb.col(c));
  return sum;
}

template <typename Scalar>
double l2_norm(const FormField<Scalar>& a, const FormMetric& m) {
  return std::sqrt(std::max(0.0, std::real(l2_inner(a, a, m))));
}

/// Adjoint of d in the metric inner product: M⁻¹ dᵀ M.
template <typename Scalar>
FormField<Scalar> codifferential(const FormField<Scalar>& a, const FormMetric& m) {
  if (a.degree < 1) throw std::invalid_argument("codifferential requires degree ≥ 1");
  return apply_mass_inverse(d_transpose(apply_mass(a, m)), m);
}

template <typename Scalar>
FormField<Scalar> star_coord(const FormField<Scalar>& a, const FormMetric& m) {
  return {a.grid, 4 - a.degree, m.star(a.degree).apply(a.coeffs)};
}

template <typename Scalar>
FormField<Scalar> phi_pullback(const FormField<Scalar>& a, const FormMetric& m) {
  return {a.grid, a.degree, m.phi(a.degree).apply(a.coeffs)};
}

/// ½(id ± star) or ½(id ± Φ) on 2-forms.
template <typename Scalar>
FormField<Scalar> project_field(const FormField<Scalar>& a, const FormMetric& m, pointwise::Projector which) {
  if (a.degree != 2) throw std::invalid_argument("projectors act on 2-forms");
  using pointwise::Projector;
  const bool star = which == Projector::GPlus || which == Projector::GMinus;
  const bool plus = which == Projector::GPlus || which == Projector::PhiPlus;
  FormField<Scalar> image = star ? star_coord(a, m) : phi_pullback(a, m);
  FormField<Scalar> out = a;
  if (plus)
    out.coeffs += image.coeffs;
  else
    out.coeffs -= image.coeffs;
  out.coeffs *= Scalar(0.5);
  return out;
}

/// ∫ a ∧ b over the torus (unit fiber), by the trapezoidal rule.
template <typename Scalar>
Scalar pair_eta(const FormField<Scalar>& a, const FormField<Scalar>& b) {
  if (a.degree + b.degree != 4) throw std::invalid_argument("pair_eta needs complementary degrees");
  if (a.grid->n() != b.grid->n()) throw std::invalid_argument("grid mismatch");
  const Eigen::MatrixXd w = wedge_pairing(a.degree);
  Scalar sum(0);
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index k = 0; k < w.cols(); ++k)
      if (w(i, k) != 0.0) sum += w(i, k) * (a.coeffs.col(i).array() * b.coeffs.col(k).array()).sum();
  return sum * a.grid->cell_volume();
}

// ---- checkerboard sector ----

/// h⁴ N Nᵀ a, where the columns of N are the unit vectors σ ⊗ dx^I / √nodes over
/// the 15 checkerboard patterns σ. Vanishes on exact forms' pairings; its kernel
/// among harmonic forms is the physical (smooth) cohomology.
template <typename Scalar>
FormField<Scalar> checkerboard_penalty(const FormField<Scalar>& a) {
  FormField<Scalar> out(a.grid, a.degree);
  const double scale = a.grid->cell_volume() / static_cast<double>(a.grid->nodes());
  for (const auto& s : a.grid->checkerboards())
    for (Eigen::Index c = 0; c < a.coeffs.cols(); ++c) {
      const Scalar coef = (s.array() * a.coeffs.col(c).array()).sum() * scale;
      out.coeffs.col(c) += s.template cast<Scalar>() * coef;
    }
  return out;
}

/// Largest |⟨σ ⊗ dx^I, a⟩| / (√nodes ‖a‖_2) over checkerboard patterns.
template <typename Scalar>
double checkerboard_content(const FormField<Scalar>& a) {
  const double norm = a.coeffs.norm();
  if (norm == 0.0) return 0.0;
  double worst = 0.0;
  for (const auto& s : a.grid->checkerboards())
    for (Eigen::Index c = 0; c < a.coeffs.cols(); ++c) worst = std::max(worst, std::abs((s.array() * a.coeffs.col(c).array()).sum()));
  return worst / (std::sqrt(static_cast<double>(a.grid->nodes())) * norm);
}

// ---- complex bidegree ----

inline std::pair<int, int> bidegree_pair(Bidegree b) {
  switch (b) {
    case Bidegree::P20: return {2, 0};
    case Bidegree::P11: return {1, 1};
    case Bidegree::P02: return {0, 2};
    case Bidegree::None: break;
  }
  throw std::invalid_argument("form carries no bidegree");
}

ComplexFormField bidegree_project(const FormField<cd>& a, const FormMetric& m, int p, int q);

/// (p,q)-part of a complex 2-form.
ComplexFormField bidegree_project_field(const ComplexFormField& a, const FormMetric& m, Bidegree which);

struct DelDelbar {
  ComplexFormField del;
  ComplexFormField delbar;
  FormField<cd> remainder;  // d a − ∂a − ∂̄a, zero for integrable J
};

DelDelbar del_delbar(const ComplexFormField& a, const FormMetric& m);

// ---- named fields ----

/// ω0 = dx1∧dy1 + dx2∧dy2.
RealForm omega_field(const std::shared_ptr<const PeriodicGrid>& grid);
RealForm constant_form(const std::shared_ptr<const PeriodicGrid>& grid, int p, const Eigen::VectorXd& coeffs);

/// Embeds two scalar fields (u, v) as u·(e3 − e4)/√2 + v·(e5 + e6)/√2.
template <typename Scalar>
FormField<Scalar> embed_anti_invariant(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& uv, const FormMetric& m) {
  return {m.grid_ptr(), 2, m.anti_invariant_frame().apply(uv)};
}

/// Transpose of embed_anti_invariant (Euclidean).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> embed_anti_invariant_transpose(const FormField<Scalar>& a,
                                                                                     const FormMetric& m) {
  const auto& f = m.anti_invariant_frame();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(a.coeffs.rows(), 2);
  for (int c = 0; c < 2; ++c)
    for (int r = 0; r < 6; ++r) out.col(c).array() += f.data.col(r + 6 * c).array() * a.coeffs.col(r).array();
  return out;
}

/// Random band-limited form: Fourier modes |k|_∞ ≤ max_mode, Gaussian coefficients.
RealForm random_form(const std::shared_ptr<const PeriodicGrid>& grid, int p, std::uint64_t seed, int max_mode);

/// Max over sampled nodes of the difference between the frame-based star/Φ
/// (exact matrices conjugated by the adapted coframe) and the coordinate ones.
struct DualPathResidual {
  double star = 0.0;
  double phi = 0.0;
};
DualPathResidual dual_path_residual(const FormMetric& m, int samples, std::uint64_t seed);

}  // namespace basic_hodge
