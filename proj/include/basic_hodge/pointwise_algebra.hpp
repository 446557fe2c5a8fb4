#pragma once

// Exact fiberwise algebra on Λ²D* of the rank-4 contact distribution.
//
// Frame basis E = (e1..e6) = (θ1∧Φθ1, θ2∧Φθ2, θ1∧θ2, Φθ1∧Φθ2, θ1∧Φθ2, Φθ1∧θ2),
// with the coframe pullback convention θi∘Φ = −Φθi, Φθi∘Φ = θi and transverse
// volume θ1∧Φθ1∧θ2∧Φθ2. All operator entries lie in {−1, −½, 0, ½, 1}.

#include "basic_hodge/rational.hpp"

#include <Eigen/Core>

#include <array>
#include <string>
#include <vector>

namespace basic_hodge::pointwise {

/// A fiber of Λ²D* in the basis E.
struct FrameForm2 {
  Vec6Q coeffs = Vec6Q::Constant(Rational(0));

  static FrameForm2 basis(int i);  // e_{i+1}, i ∈ [0, 6)
  static FrameForm2 omega();       // e1 + e2
  static FrameForm2 from(std::initializer_list<int> c);

  friend FrameForm2 operator+(const FrameForm2& a, const FrameForm2& b) { return {a.coeffs + b.coeffs}; }
  friend FrameForm2 operator-(const FrameForm2& a, const FrameForm2& b) { return {a.coeffs - b.coeffs}; }
  friend FrameForm2 operator*(Rational s, const FrameForm2& a) { return {a.coeffs * s}; }
  friend bool operator==(const FrameForm2& a, const FrameForm2& b) { return a.coeffs == b.coeffs; }
};

enum class Projector { GPlus, GMinus, PhiPlus, PhiMinus };

const char* to_string(Projector which);

/// Star and Φ matrices acting on E-coefficients. Swappable for negative-path tests.
struct OperatorSet {
  Mat6Q star;
  Mat6Q phi;
};

const OperatorSet& canonical_operators();

/// Copy of the canonical operators with the ω block of the star sign-flipped.
OperatorSet tampered_star_operators();

FrameForm2 star2(const FrameForm2& a, const OperatorSet& ops = canonical_operators());
FrameForm2 phi_act2(const FrameForm2& a, const OperatorSet& ops = canonical_operators());
Mat6Q projector_matrix(Projector which, const OperatorSet& ops = canonical_operators());
FrameForm2 project(const FrameForm2& a, Projector which, const OperatorSet& ops = canonical_operators());

/// c with a∧b = c·θ1∧Φθ1∧θ2∧Φθ2.
Rational wedge_top(const FrameForm2& a, const FrameForm2& b);

/// ⟨a, b⟩ = wedge_top(a, star2 b).
Rational inner(const FrameForm2& a, const FrameForm2& b);

/// Columns spanning the image of a projector (exact, reduced to a basis).
MatXQ eigenspace_basis(Projector which, const OperatorSet& ops = canonical_operators());

int span_dimension(const MatXQ& columns);
int intersection_dimension(const MatXQ& a, const MatXQ& b);
bool same_span(const MatXQ& a, const MatXQ& b);

struct IdentityCheck {
  std::string name;    // the identity as a formula
  std::string anchor;  // formula string it instantiates
  bool pass = false;
  std::string detail;
};

/// ★ω = ω, Φω = ω, involutions, commutation.
std::vector<IdentityCheck> verify_operator_identities(const OperatorSet& ops = canonical_operators());

/// The four span lists and the four subspace relations between Λ_Φ^± and Λ_g^±.
std::vector<IdentityCheck> verify_span_identities(const OperatorSet& ops = canonical_operators());

// ---- complexified bidegree algebra ----

/// Complex fiber of Λ²D*⊗ℂ in the basis
/// (ω¹∧ω², ω¹∧ω̄¹, ω²∧ω̄², ω¹∧ω̄², ω̄¹∧ω², ω̄¹∧ω̄²), ω^i = θ^i + √−1 Φθ^i.
struct ComplexFrameForm2 {
  Vec6G coeffs = Vec6G::Constant(GaussianRational(0));

  static ComplexFrameForm2 basis(int i);
};

ComplexFrameForm2 conjugate(const ComplexFrameForm2& a);

/// Expansion in the real frame basis E (complex coefficients).
Vec6G expand(const ComplexFrameForm2& a);

/// 1-forms ω¹, ω², ω̄¹, ω̄² in the coframe basis (θ1, Φθ1, θ2, Φθ2).
std::array<Vec4G, 4> complex_coframe();

/// Wedge of two coframe-basis 1-forms, returned in E.
Vec6G wedge_frame(const Vec4G& a, const Vec4G& b);

/// Real span lists of (Λ^{1,1})_ℝ and (Λ^{2,0} ⊕ Λ^{0,2})_ℝ expanded in E.
MatXQ real_span_11();
MatXQ real_span_20_02();

std::vector<IdentityCheck> bidegree_bases(const OperatorSet& ops = canonical_operators());

// ---- double-precision views used by the field modules ----

Eigen::Matrix<double, 6, 6> to_double(const Mat6Q& m);

/// lex_to_frame[k]: E-index of the k-th lexicographic coframe pair
/// ((0,1), (0,2), (0,3), (1,2), (1,3), (2,3)) over (θ1, Φθ1, θ2, Φθ2).
const std::array<int, 6>& lex_to_frame();

/// Permutation matrix P with E-coefficients = P · lexicographic coefficients.
Eigen::Matrix<double, 6, 6> lex_to_frame_matrix();

}  // namespace basic_hodge::pointwise
