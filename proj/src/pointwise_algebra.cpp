#include "basic_hodge/pointwise_algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace basic_hodge::pointwise {

namespace {

const Rational kZero(0);
const Rational kOne(1);
const Rational kHalf(1, 2);

MatXQ columns(std::initializer_list<std::initializer_list<int>> cols) {
  MatXQ m(6, static_cast<Eigen::Index>(cols.size()));
  Eigen::Index c = 0;
  for (const auto& col : cols) {
    Eigen::Index r = 0;
    for (int v : col) m(r++, c) = Rational(v);
    ++c;
  }
  return m;
}

MatXQ single(const FrameForm2& a) { return MatXQ(a.coeffs); }

bool contains(const MatXQ& space, const FrameForm2& a) {
  return span_dimension(hstack(space, single(a))) == span_dimension(space);
}

IdentityCheck make_check(std::string name, bool pass, std::string detail = {}) {
  IdentityCheck c;
  c.anchor = name;
  c.name = std::move(name);
  c.pass = pass;
  c.detail = std::move(detail);
  return c;
}

std::string dims_detail(const char* what, int got, int want) {
  std::ostringstream os;
  os << what << ": got " << got << ", expected " << want;
  return os.str();
}

}  // namespace

FrameForm2 FrameForm2::basis(int i) {
  if (i < 0 || i >= 6) throw std::out_of_range("frame basis index must lie in [0, 6)");
  FrameForm2 f;
  f.coeffs(i) = kOne;
  return f;
}

FrameForm2 FrameForm2::omega() { return basis(0) + basis(1); }

FrameForm2 FrameForm2::from(std::initializer_list<int> c) {
  if (c.size() != 6) throw std::invalid_argument("FrameForm2 needs six coefficients");
  FrameForm2 f;
  Eigen::Index i = 0;
  for (int v : c) f.coeffs(i++) = Rational(v);
  return f;
}

const char* to_string(Projector which) {
  switch (which) {
    case Projector::GPlus: return "g+";
    case Projector::GMinus: return "g-";
    case Projector::PhiPlus: return "phi+";
    case Projector::PhiMinus: return "phi-";
  }
  return "?";
}

const OperatorSet& canonical_operators() {
  static const OperatorSet ops = [] {
    OperatorSet o;
    o.star = Mat6Q::Constant(kZero);
    o.phi = Mat6Q::Constant(kZero);
    // star: e1↔e2, e3↦−e4, e4↦−e3, e5↔e6 (column j is the image of e_j)
    o.star(1, 0) = kOne;
    o.star(0, 1) = kOne;
    o.star(3, 2) = -kOne;
    o.star(2, 3) = -kOne;
    o.star(5, 4) = kOne;
    o.star(4, 5) = kOne;
    // Φ: e1, e2 fixed, e3↔e4, e5↦−e6, e6↦−e5
    o.phi(0, 0) = kOne;
    o.phi(1, 1) = kOne;
    o.phi(3, 2) = kOne;
    o.phi(2, 3) = kOne;
    o.phi(5, 4) = -kOne;
    o.phi(4, 5) = -kOne;
    return o;
  }();
  return ops;
}

OperatorSet tampered_star_operators() {
  OperatorSet o = canonical_operators();
  o.star(1, 0) = -kOne;
  o.star(0, 1) = -kOne;
  return o;
}

FrameForm2 star2(const FrameForm2& a, const OperatorSet& ops) { return {ops.star * a.coeffs}; }

FrameForm2 phi_act2(const FrameForm2& a, const OperatorSet& ops) { return {ops.phi * a.coeffs}; }

Mat6Q projector_matrix(Projector which, const OperatorSet& ops) {
  const Mat6Q id = Mat6Q::Identity();
  switch (which) {
    case Projector::GPlus: return (id + ops.star) * kHalf;
    case Projector::GMinus: return (id - ops.star) * kHalf;
    case Projector::PhiPlus: return (id + ops.phi) * kHalf;
    case Projector::PhiMinus: return (id - ops.phi) * kHalf;
  }
  throw std::invalid_argument("unknown projector");
}

FrameForm2 project(const FrameForm2& a, Projector which, const OperatorSet& ops) {
  return {projector_matrix(which, ops) * a.coeffs};
}

Rational wedge_top(const FrameForm2& a, const FrameForm2& b) {
  const auto& x = a.coeffs;
  const auto& y = b.coeffs;
  return x(0) * y(1) + x(1) * y(0) - (x(2) * y(3) + x(3) * y(2)) + x(4) * y(5) + x(5) * y(4);
}

Rational inner(const FrameForm2& a, const FrameForm2& b) { return wedge_top(a, star2(b)); }

int span_dimension(const MatXQ& cols) { return cols.cols() == 0 ? 0 : exact_rank(cols); }

int intersection_dimension(const MatXQ& a, const MatXQ& b) {
  return span_dimension(a) + span_dimension(b) - span_dimension(hstack(a, b));
}

bool same_span(const MatXQ& a, const MatXQ& b) {
  const int ra = span_dimension(a);
  return ra == span_dimension(b) && ra == span_dimension(hstack(a, b));
}

MatXQ eigenspace_basis(Projector which, const OperatorSet& ops) {
  const Mat6Q p = projector_matrix(which, ops);
  MatXQ basis(6, 0);
  for (Eigen::Index c = 0; c < 6; ++c) {
    MatXQ trial = hstack(basis, MatXQ(p.col(c)));
    if (span_dimension(trial) > basis.cols()) basis = trial;
  }
  return basis;
}

std::vector<IdentityCheck> verify_operator_identities(const OperatorSet& ops) {
  const FrameForm2 w = FrameForm2::omega();
  const Mat6Q id = Mat6Q::Identity();
  std::vector<IdentityCheck> out;
  out.push_back(make_check("*̄ω = ω", star2(w, ops) == w));
  out.push_back(make_check("Φω = ω", phi_act2(w, ops) == w));
  out.push_back(make_check("*̄∘*̄ = id on Λ²D*", ops.star * ops.star == id));
  out.push_back(make_check("Φ∘Φ = id on Λ²D*", ops.phi * ops.phi == id));
  out.push_back(make_check("*̄Φ = Φ*̄", ops.star * ops.phi == ops.phi * ops.star));
  return out;
}

std::vector<IdentityCheck> verify_span_identities(const OperatorSet& ops) {
  const MatXQ phi_plus = eigenspace_basis(Projector::PhiPlus, ops);
  const MatXQ phi_minus = eigenspace_basis(Projector::PhiMinus, ops);
  const MatXQ g_plus = eigenspace_basis(Projector::GPlus, ops);
  const MatXQ g_minus = eigenspace_basis(Projector::GMinus, ops);
  const MatXQ omega_line = single(FrameForm2::omega());

  // Generators in E coordinates. The first Λ_g^+ generator is ω (sign-corrected).
  const MatXQ list_phi_plus = columns({{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 1, -1}});
  const MatXQ list_phi_minus = columns({{0, 0, 1, -1, 0, 0}, {0, 0, 0, 0, 1, 1}});
  const MatXQ list_g_plus = columns({{1, 1, 0, 0, 0, 0}, {0, 0, 1, -1, 0, 0}, {0, 0, 0, 0, 1, 1}});
  const MatXQ list_g_minus = columns({{1, -1, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 1, -1}});

  auto span_check = [](const char* name, const MatXQ& eig, const MatXQ& list) {
    return make_check(name, same_span(eig, list),
                      dims_detail("eigenspace dimension", span_dimension(eig), span_dimension(list)));
  };
  auto direct_sum_check = [](const char* name, const MatXQ& whole, const MatXQ& a, const MatXQ& b) {
    const MatXQ sum = hstack(a, b);
    const bool direct = span_dimension(a) + span_dimension(b) == span_dimension(sum);
    return make_check(name, direct && same_span(whole, sum),
                      direct ? std::string{} : std::string{"summands intersect"});
  };

  std::vector<IdentityCheck> out;
  out.push_back(span_check("Λ_Φ^+ = span{θ1∧Φθ1, θ2∧Φθ2, θ1∧θ2 + Φθ1∧Φθ2, θ1∧Φθ2 − Φθ1∧θ2}", phi_plus, list_phi_plus));
  out.push_back(span_check("Λ_Φ^- = span{θ1∧θ2 − Φθ1∧Φθ2, θ1∧Φθ2 + Φθ1∧θ2}", phi_minus, list_phi_minus));
  out.push_back(span_check("Λ_g^+ = span{θ1∧Φθ1 + θ2∧Φθ2, θ1∧θ2 − Φθ1∧Φθ2, θ1∧Φθ2 + Φθ1∧θ2}", g_plus, list_g_plus));
  out.push_back(span_check("Λ_g^- = span{θ1∧Φθ1 − θ2∧Φθ2, θ1∧θ2 + Φθ1∧Φθ2, θ1∧Φθ2 − Φθ1∧θ2}", g_minus, list_g_minus));
  out.push_back(direct_sum_check("Λ_Φ^+ = ℝω ⊕ Λ_g^-", phi_plus, omega_line, g_minus));
  out.push_back(direct_sum_check("Λ_g^+ = ℝω ⊕ Λ_Φ^-", g_plus, omega_line, phi_minus));
  {
    const int dim = intersection_dimension(phi_plus, g_plus);
    const FrameForm2 w = FrameForm2::omega();
    out.push_back(make_check("Λ_Φ^+ ∩ Λ_g^+ = ℝω", dim == 1 && contains(phi_plus, w) && contains(g_plus, w),
                             dims_detail("intersection dimension", dim, 1)));
  }
  {
    const int dim = intersection_dimension(phi_minus, g_minus);
    out.push_back(make_check("Λ_Φ^- ∩ Λ_g^- = 0", dim == 0, dims_detail("intersection dimension", dim, 0)));
  }
  return out;
}

// ---- complex part ----

ComplexFrameForm2 ComplexFrameForm2::basis(int i) {
  if (i < 0 || i >= 6) throw std::out_of_range("complex basis index must lie in [0, 6)");
  ComplexFrameForm2 f;
  f.coeffs(i) = GaussianRational(1);
  return f;
}

ComplexFrameForm2 conjugate(const ComplexFrameForm2& a) {
  // conj(ω¹∧ω²) = ω̄¹∧ω̄², conj(ω^i∧ω̄^i) = −ω^i∧ω̄^i, conj(ω¹∧ω̄²) = ω̄¹∧ω²
  const auto& c = a.coeffs;
  ComplexFrameForm2 out;
  out.coeffs(0) = conj(c(5));
  out.coeffs(5) = conj(c(0));
  out.coeffs(1) = -conj(c(1));
  out.coeffs(2) = -conj(c(2));
  out.coeffs(3) = conj(c(4));
  out.coeffs(4) = conj(c(3));
  return out;
}

std::array<Vec4G, 4> complex_coframe() {
  const GaussianRational one(1);
  const GaussianRational zero(0);
  const GaussianRational i = kI;
  const GaussianRational mi = -kI;
  Vec4G w1, w2, w1b, w2b;
  w1 << one, i, zero, zero;
  w2 << zero, zero, one, i;
  w1b << one, mi, zero, zero;
  w2b << zero, zero, one, mi;
  return {w1, w2, w1b, w2b};
}

Vec6G wedge_frame(const Vec4G& a, const Vec4G& b) {
  static constexpr std::array<std::array<int, 2>, 6> pairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  Vec6G out = Vec6G::Constant(GaussianRational(0));
  const auto& perm = lex_to_frame();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const int j = pairs[k][0];
    const int l = pairs[k][1];
    out(perm[k]) = a(j) * b(l) - a(l) * b(j);
  }
  return out;
}

Vec6G expand(const ComplexFrameForm2& a) {
  const auto w = complex_coframe();
  const std::array<Vec6G, 6> basis{wedge_frame(w[0], w[1]), wedge_frame(w[0], w[2]), wedge_frame(w[1], w[3]),
                                   wedge_frame(w[0], w[3]), wedge_frame(w[2], w[1]), wedge_frame(w[2], w[3])};
  Vec6G out = Vec6G::Constant(GaussianRational(0));
  for (int k = 0; k < 6; ++k)
    for (int r = 0; r < 6; ++r) out(r) += a.coeffs(k) * basis[static_cast<std::size_t>(k)](r);
  return out;
}

namespace {

/// Real part of an expansion; throws if the imaginary part is nonzero.
Vec6Q real_or_throw(const Vec6G& v) {
  Vec6Q out;
  for (int r = 0; r < 6; ++r) {
    if (v(r).im != Rational(0)) throw std::logic_error("expected a real 2-form");
    out(r) = v(r).re;
  }
  return out;
}

bool is_real(const Vec6G& v) {
  for (int r = 0; r < 6; ++r)
    if (v(r).im != Rational(0)) return false;
  return true;
}

ComplexFrameForm2 combo(std::initializer_list<std::pair<int, GaussianRational>> terms) {
  ComplexFrameForm2 f;
  for (const auto& [k, c] : terms) f.coeffs(k) += c;
  return f;
}

std::vector<Vec6G> list_11() {
  const GaussianRational one(1);
  const GaussianRational i = kI;
  return {expand(combo({{1, i}})), expand(combo({{2, i}})), expand(combo({{3, one}, {4, one}})),
          expand(combo({{3, i}, {4, -i}}))};
}

std::vector<Vec6G> list_20_02() {
  const GaussianRational one(1);
  const GaussianRational i = kI;
  return {expand(combo({{0, one}, {5, one}})), expand(combo({{0, i}, {5, -i}}))};
}

MatXQ stack_real(const std::vector<Vec6G>& vs) {
  MatXQ m(6, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = real_or_throw(vs[k]);
  return m;
}

/// ℝ-rank of a set of complex 6-vectors viewed in ℝ¹².
int realified_rank(const std::vector<Vec6G>& vs) {
  MatXQ m(12, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k)
    for (int r = 0; r < 6; ++r) {
      m(r, static_cast<Eigen::Index>(k)) = vs[k](r).re;
      m(r + 6, static_cast<Eigen::Index>(k)) = vs[k](r).im;
    }
  return span_dimension(m);
}

}  // namespace

MatXQ real_span_11() { return stack_real(list_11()); }

MatXQ real_span_20_02() { return stack_real(list_20_02()); }

std::vector<IdentityCheck> bidegree_bases(const OperatorSet& ops) {
  std::vector<IdentityCheck> out;

  bool lists_real = true;
  for (const auto& v : list_11()) lists_real = lists_real && is_real(v);
  for (const auto& v : list_20_02()) lists_real = lists_real && is_real(v);
  out.push_back(make_check("(Λ_Φ^{1,1})_ℝ and (Λ_Φ^{2,0} ⊕ Λ_Φ^{0,2})_ℝ generators are real", lists_real));
  if (!lists_real) return out;

  out.push_back(make_check("Λ_Φ^+ = (Λ_Φ^{1,1})_ℝ", same_span(eigenspace_basis(Projector::PhiPlus, ops), real_span_11())));
  out.push_back(
      make_check("Λ_Φ^- = (Λ_Φ^{2,0} ⊕ Λ_Φ^{0,2})_ℝ", same_span(eigenspace_basis(Projector::PhiMinus, ops), real_span_20_02())));

  // Λ²⊗ℂ = Λ^{2,0} ⊕ Λ^{1,1} ⊕ Λ^{0,2}: the six expansions and their i-multiples span ℝ¹².
  {
    std::vector<Vec6G> all;
    for (int k = 0; k < 6; ++k) {
      const Vec6G v = expand(ComplexFrameForm2::basis(k));
      all.push_back(v);
      Vec6G iv;
      for (int r = 0; r < 6; ++r) iv(r) = kI * v(r);
      all.push_back(iv);
    }
    out.push_back(make_check("Λ²_{D,ℂ} = Λ_Φ^{2,0} ⊕ Λ_Φ^{1,1} ⊕ Λ_Φ^{0,2}", realified_rank(all) == 12));
  }

  bool conj_consistent = true;
  bool involutive = true;
  for (int k = 0; k < 6; ++k) {
    const ComplexFrameForm2 b = ComplexFrameForm2::basis(k);
    const Vec6G lhs = expand(conjugate(b));
    const Vec6G e = expand(b);
    for (int r = 0; r < 6; ++r) conj_consistent = conj_consistent && lhs(r) == conj(e(r));
    involutive = involutive && conjugate(conjugate(b)).coeffs == b.coeffs;
  }
  out.push_back(make_check("conj(Λ_Φ^{p,q}) = Λ_Φ^{q,p} on the complex frame basis", conj_consistent));
  out.push_back(make_check("conj∘conj = id", involutive));
  {
    const ComplexFrameForm2 c = conjugate(ComplexFrameForm2::basis(0));
    out.push_back(make_check("conj(ω¹∧ω²) = ω̄¹∧ω̄²", c.coeffs == ComplexFrameForm2::basis(5).coeffs));
  }
  return out;
}

Eigen::Matrix<double, 6, 6> to_double(const Mat6Q& m) {
  Eigen::Matrix<double, 6, 6> out;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) out(r, c) = boost::rational_cast<double>(m(r, c));
  return out;
}

const std::array<int, 6>& lex_to_frame() {
  // (θ1∧Φθ1, θ1∧θ2, θ1∧Φθ2, Φθ1∧θ2, Φθ1∧Φθ2, θ2∧Φθ2) → (e1, e3, e5, e6, e4, e2)
  static constexpr std::array<int, 6> perm{0, 2, 4, 5, 3, 1};
  return perm;
}

Eigen::Matrix<double, 6, 6> lex_to_frame_matrix() {
  Eigen::Matrix<double, 6, 6> p = Eigen::Matrix<double, 6, 6>::Zero();
  const auto& perm = lex_to_frame();
  for (int k = 0; k < 6; ++k) p(perm[static_cast<std::size_t>(k)], k) = 1.0;
  return p;
}

}  // namespace basic_hodge::pointwise
