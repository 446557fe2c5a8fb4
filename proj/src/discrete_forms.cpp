#include "basic_hodge/discrete_forms.hpp"

#include "basic_hodge/random.hpp"

#include <cmath>

namespace basic_hodge {

namespace {

Eigen::Matrix4cd complex_coframe_rows() {
  const cd i(0.0, 1.0);
  Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
  t(0, 0) = 1.0;
  t(0, 1) = i;
  t(1, 2) = 1.0;
  t(1, 3) = i;
  t(2, 0) = 1.0;
  t(2, 1) = -i;
  t(3, 2) = 1.0;
  t(3, 3) = -i;
  return t;
}

}  // namespace

std::size_t FormMetric::check(int p) {
  if (p < 0 || p > 4) throw std::invalid_argument("form degree must lie in [0, 4]");
  return static_cast<std::size_t>(p);
}

FormMetric::FormMetric(StructureField s) : s_(std::move(s)) {
  const Eigen::Index nodes = s_.nodes();
  const double h4 = s_.grid->cell_volume();
  std::array<Eigen::MatrixXd, 5> w;
  for (int p = 0; p <= 4; ++p) {
    const auto c = static_cast<std::size_t>(p);
    const int dim = binomial4(p);
    mass_[c] = MatrixField<double>(nodes, dim, dim);
    mass_inv_[c] = MatrixField<double>(nodes, dim, dim);
    star_[c] = MatrixField<double>(nodes, binomial4(4 - p), dim);
    phi_[c] = MatrixField<double>(nodes, dim, dim);
    w[c] = wedge_pairing(p);
  }
  frame_ = MatrixField<double>(nodes, 6, 6);
  anti_ = MatrixField<double>(nodes, 6, 2);
  const Eigen::Matrix<double, 6, 6> lex_from_e = pointwise::lex_to_frame_matrix().transpose();
  Eigen::Matrix<double, 6, 2> anti_e = Eigen::Matrix<double, 6, 2>::Zero();
  anti_e(2, 0) = M_SQRT1_2;
  anti_e(3, 0) = -M_SQRT1_2;
  anti_e(4, 1) = M_SQRT1_2;
  anti_e(5, 1) = M_SQRT1_2;

  for (Eigen::Index node = 0; node < nodes; ++node) {
    const auto k = static_cast<std::size_t>(node);
    const Eigen::Matrix4d& g = s_.g[k];
    const Eigen::Matrix4d ginv = g.inverse();
    const double vol = std::sqrt(g.determinant());
    for (int p = 0; p <= 4; ++p) {
      const auto c = static_cast<std::size_t>(p);
      const Eigen::MatrixXd gram = compound(ginv, p);
      mass_[c].set(node, h4 * vol * gram);
      mass_inv_[c].set(node, compound(g, p) / (h4 * vol));
      star_[c].set(node, vol * w[c].transpose() * gram);
      phi_[c].set(node, compound(s_.J[k], p).transpose());
    }
    const Eigen::MatrixXd f = compound(s_.coframe[k], 2).transpose() * lex_from_e;
    frame_.set(node, f);
    anti_.set(node, f * anti_e);
  }
}

const MatrixField<cd>& FormMetric::bidegree_projector(int p, int q) const {
  if (p < 0 || q < 0 || p + q > 4) throw std::invalid_argument("invalid bidegree");
  const int k = p + q;
  const auto kc = static_cast<std::size_t>(k);
  std::call_once(bidegree_once_[kc], [this, k, kc] {
    const Eigen::Index nodes = s_.nodes();
    const int dim = binomial4(k);
    const auto& sets = subsets(k);
    const Eigen::Matrix4cd t = complex_coframe_rows();
    for (int pp = 0; pp <= k; ++pp) bidegree_[kc][static_cast<std::size_t>(pp)] = MatrixField<cd>(nodes, dim, dim);
    for (Eigen::Index node = 0; node < nodes; ++node) {
      const Eigen::Matrix4cd b = t * s_.coframe[static_cast<std::size_t>(node)].cast<cd>();
      const Eigen::MatrixXcd bk = compound(b, k);
      const Eigen::MatrixXcd to_coord = bk.transpose();
      const Eigen::MatrixXcd to_basis = to_coord.inverse();
      for (int pp = 0; pp <= k; ++pp) {
        Eigen::VectorXcd mask = Eigen::VectorXcd::Zero(dim);
        for (int i = 0; i < dim; ++i)
          if (__builtin_popcount(sets[static_cast<std::size_t>(i)] & 0b0011u) == pp) mask(i) = 1.0;
        bidegree_[kc][static_cast<std::size_t>(pp)].set(node, to_coord * mask.asDiagonal() * to_basis);
      }
    }
  });
  return bidegree_[kc][static_cast<std::size_t>(p)];
}

ComplexFormField bidegree_project(const FormField<cd>& a, const FormMetric& m, int p, int q) {
  if (p + q != a.degree) throw std::invalid_argument("bidegree does not match form degree");
  FormField<cd> out(a.grid, a.degree, m.bidegree_projector(p, q).apply(a.coeffs));
  Bidegree tag = Bidegree::None;
  if (a.degree == 2) tag = p == 2 ? Bidegree::P20 : (p == 1 ? Bidegree::P11 : Bidegree::P02);
  return {std::move(out), tag};
}

ComplexFormField bidegree_project_field(const ComplexFormField& a, const FormMetric& m, Bidegree which) {
  if (a.degree != 2) throw std::invalid_argument("bidegree_project_field acts on 2-forms");
  const auto [p, q] = bidegree_pair(which);
  return bidegree_project(a, m, p, q);
}

DelDelbar del_delbar(const ComplexFormField& a, const FormMetric& m) {
  const auto [p, q] = bidegree_pair(a.bidegree);
  const FormField<cd> da = d<cd>(a);
  DelDelbar out;
  out.del = bidegree_project(da, m, p + 1, q);
  out.delbar = bidegree_project(da, m, p, q + 1);
  out.remainder = da;
  out.remainder.coeffs -= out.del.coeffs + out.delbar.coeffs;
  return out;
}

RealForm omega_field(const std::shared_ptr<const PeriodicGrid>& grid) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(6);
  c(0) = 1.0;  // dx1∧dy1
  c(5) = 1.0;  // dx2∧dy2
  return constant_form(grid, 2, c);
}

RealForm constant_form(const std::shared_ptr<const PeriodicGrid>& grid, int p, const Eigen::VectorXd& coeffs) {
  RealForm out(grid, p);
  if (coeffs.size() != binomial4(p)) throw std::invalid_argument("constant form needs C(4,p) coefficients");
  for (Eigen::Index c = 0; c < coeffs.size(); ++c) out.coeffs.col(c).setConstant(coeffs(c));
  return out;
}

RealForm random_form(const std::shared_ptr<const PeriodicGrid>& grid, int p, std::uint64_t seed, int max_mode) {
  const int n = grid->n();
  if (max_mode < 0 || 2 * max_mode >= n) throw std::invalid_argument("random form modes must satisfy 0 ≤ m < N/2");
  NormalSource normal(seed);
  RealForm out(grid, p);
  std::vector<double> cos_table(static_cast<std::size_t>(n)), sin_table(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    cos_table[static_cast<std::size_t>(i)] = std::cos(grid->coordinate(i));
    sin_table[static_cast<std::size_t>(i)] = std::sin(grid->coordinate(i));
  }
  const int m = max_mode;
  std::vector<std::array<int, 4>> modes;
  for (int a = -m; a <= m; ++a)
    for (int b = -m; b <= m; ++b)
      for (int c = -m; c <= m; ++c)
        for (int e = -m; e <= m; ++e) {
          const std::array<int, 4> k{a, b, c, e};
          int lead = 0;
          for (int v : k)
            if (v != 0) {
              lead = v;
              break;
            }
          if (lead >= 0) modes.push_back(k);
        }
  std::vector<int> phase(static_cast<std::size_t>(grid->nodes()));
  for (const auto& k : modes) {
    for (Eigen::Index node = 0; node < grid->nodes(); ++node) {
      const auto idx = grid->multi_index(node);
      int ph = k[0] * idx[0] + k[1] * idx[1] + k[2] * idx[2] + k[3] * idx[3];
      phase[static_cast<std::size_t>(node)] = ((ph % n) + n) % n;
    }
    const bool zero = k == std::array<int, 4>{0, 0, 0, 0};
    for (Eigen::Index c = 0; c < out.coeffs.cols(); ++c) {
      const double ac = normal();
      const double as = zero ? 0.0 : normal();
      for (Eigen::Index node = 0; node < grid->nodes(); ++node) {
        const auto ph = static_cast<std::size_t>(phase[static_cast<std::size_t>(node)]);
        out.coeffs(node, c) += ac * cos_table[ph] + as * sin_table[ph];
      }
    }
  }
  return out;
}

DualPathResidual dual_path_residual(const FormMetric& m, int samples, std::uint64_t seed) {
  const auto& ops = pointwise::canonical_operators();
  const Eigen::Matrix<double, 6, 6> star_e = pointwise::to_double(ops.star);
  const Eigen::Matrix<double, 6, 6> phi_e = pointwise::to_double(ops.phi);
  NormalSource rng(seed);
  DualPathResidual out;
  for (int s = 0; s < samples; ++s) {
    const Eigen::Index node = static_cast<Eigen::Index>(rng.raw() % static_cast<std::uint64_t>(m.structure().nodes()));
    const Eigen::MatrixXd f = m.frame_to_coordinate().at(node);
    const Eigen::MatrixXd finv = f.inverse();
    out.star = std::max(out.star, (m.star(2).at(node) - f * star_e * finv).cwiseAbs().maxCoeff());
    out.phi = std::max(out.phi, (m.phi(2).at(node) - f * phi_e * finv).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace basic_hodge
