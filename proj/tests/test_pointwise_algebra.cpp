#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "basic_hodge/exterior.hpp"
#include "basic_hodge/pointwise_algebra.hpp"

using namespace basic_hodge;
using namespace basic_hodge::pointwise;

namespace {

Mat6Q lex_to_e(const Eigen::MatrixXd& lex) {
  const auto& perm = lex_to_frame();
  Mat6Q out = Mat6Q::Constant(Rational(0));
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) out(perm[r], perm[c]) = Rational(static_cast<std::int64_t>(lex(r, c)));
  return out;
}

// Star from vol_D = θ1∧Φθ1∧θ2∧Φθ2 on an orthonormal coframe: e_I ∧ ★e_I = vol_D.
Mat6Q brute_force_star() { return lex_to_e(wedge_pairing(2).transpose()); }

// Pullback by Φ with θ_i∘Φ = −Φθ_i, Φθ_i∘Φ = θ_i.
Mat6Q brute_force_phi() {
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r(1, 0) = -1;
  r(0, 1) = 1;
  r(3, 2) = -1;
  r(2, 3) = 1;
  return lex_to_e(compound(r, 2));
}

}  // namespace

TEST_CASE("star2 examples") {
  CHECK(star2(FrameForm2::omega()) == FrameForm2::omega());
  CHECK(star2(FrameForm2::basis(2)) == FrameForm2::from({0, 0, 0, -1, 0, 0}));
  CHECK(star2(FrameForm2{}) == FrameForm2{});
  CHECK(canonical_operators().star == brute_force_star());
}

TEST_CASE("phi_act2 examples") {
  CHECK(phi_act2(FrameForm2::omega()) == FrameForm2::omega());
  CHECK(phi_act2(FrameForm2::basis(2)) == FrameForm2::basis(3));
  const FrameForm2 a = FrameForm2::basis(4) - FrameForm2::basis(5);
  CHECK(phi_act2(a) == a);
  CHECK(canonical_operators().phi == brute_force_phi());
}

TEST_CASE("project examples") {
  const Rational half(1, 2);
  CHECK(project(FrameForm2::basis(2), Projector::GPlus) == half * (FrameForm2::basis(2) - FrameForm2::basis(3)));
  CHECK(project(FrameForm2::omega(), Projector::PhiPlus) == FrameForm2::omega());
  const FrameForm2 a = FrameForm2::basis(0) - FrameForm2::basis(1);
  CHECK(project(a, Projector::GMinus) == a);
}

TEST_CASE("wedge_top examples") {
  CHECK(wedge_top(FrameForm2::omega(), FrameForm2::omega()) == Rational(2));
  CHECK(wedge_top(FrameForm2::basis(2), FrameForm2::basis(2)) == Rational(0));
  CHECK(wedge_top(FrameForm2::basis(4), FrameForm2::basis(5)) == Rational(1));
}

TEST_CASE("wedge_top agrees with the lexicographic wedge") {
  const auto& perm = lex_to_frame();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(6), b = Eigen::VectorXd::Zero(6);
      a(i) = 1;
      b(j) = 1;
      const double top = wedge(a, 2, b, 2)(0);
      CHECK(wedge_top(FrameForm2::basis(perm[i]), FrameForm2::basis(perm[j])) ==
            Rational(static_cast<std::int64_t>(top)));
    }
}

TEST_CASE("operator invariants") {
  const auto& ops = canonical_operators();
  const Mat6Q id = Mat6Q::Identity();
  CHECK(ops.star * ops.star == id);
  CHECK(ops.phi * ops.phi == id);
  CHECK(ops.star * ops.phi == ops.phi * ops.star);
  for (auto [p, m] : {std::pair{Projector::GPlus, Projector::GMinus}, std::pair{Projector::PhiPlus, Projector::PhiMinus}}) {
    const Mat6Q pp = projector_matrix(p);
    const Mat6Q pm = projector_matrix(m);
    CHECK(pp * pp == pp);
    CHECK(pm * pm == pm);
    CHECK(pp + pm == id);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        CHECK(inner(project(FrameForm2::basis(i), p), project(FrameForm2::basis(j), m)) == Rational(0));
  }
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK(inner(FrameForm2::basis(i), FrameForm2::basis(j)) == Rational(i == j ? 1 : 0));
  // Λ_Φ^- ⊆ Λ_g^+
  const Mat6Q phi_minus = projector_matrix(Projector::PhiMinus);
  CHECK(projector_matrix(Projector::GPlus) * phi_minus == phi_minus);
  const FrameForm2 a = FrameForm2::from({3, -1, 2, 5, -4, 7});
  CHECK(wedge_top(a, star2(a)) == Rational(9 + 1 + 4 + 25 + 16 + 49));
}

TEST_CASE("span identities") {
  const auto checks = verify_span_identities();
  CHECK(checks.size() == 8);
  for (const auto& c : checks) {
    INFO(c.name);
    CHECK(c.pass);
  }
  CHECK(intersection_dimension(eigenspace_basis(Projector::PhiMinus), eigenspace_basis(Projector::GMinus)) == 0);
  CHECK(span_dimension(eigenspace_basis(Projector::PhiPlus)) == 4);
  for (const auto& c : verify_operator_identities()) {
    INFO(c.name);
    CHECK(c.pass);
  }
}

TEST_CASE("tampered star is caught") {
  const auto ops = tampered_star_operators();
  bool named = false;
  for (const auto& c : verify_operator_identities(ops))
    if (c.name == "*̄ω = ω") named = !c.pass;
  CHECK(named);
}

TEST_CASE("bidegree bases") {
  const GaussianRational i = kI;
  ComplexFrameForm2 a;
  a.coeffs(1) = i;
  Vec6G e = expand(a);
  CHECK(e(0) == GaussianRational(2));
  for (int r = 1; r < 6; ++r) CHECK(e(r) == GaussianRational(0));

  ComplexFrameForm2 b;
  b.coeffs(0) = GaussianRational(1);
  b.coeffs(5) = GaussianRational(1);
  e = expand(b);
  const Vec6G want = (Vec6G() << 0, 0, 2, -2, 0, 0).finished();
  CHECK(e == want);

  for (const auto& c : bidegree_bases()) {
    INFO(c.name);
    CHECK(c.pass);
  }
  for (int k = 0; k < 6; ++k) {
    const auto c = ComplexFrameForm2::basis(k);
    CHECK(conjugate(conjugate(c)).coeffs == c.coeffs);
  }
}
