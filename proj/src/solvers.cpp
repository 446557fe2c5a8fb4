#include "basic_hodge/solvers.hpp"

#include "basic_hodge/random.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace basic_hodge {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Removes from y its B-components along the B-orthonormal block x (twice, for stability).
void b_orthogonalize(const MatrixXd& x, const MatrixXd& bx, MatrixXd& y, MatrixXd& by) {
  if (x.cols() == 0 || y.cols() == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const MatrixXd c = bx.transpose() * y;
    y.noalias() -= x * c;
    by.noalias() -= bx * c;
  }
}

/// B-orthonormalizes y in place, dropping numerically dependent directions.
void b_orthonormalize(MatrixXd& y, MatrixXd& by) {
  if (y.cols() == 0) return;
  VectorXd scale(y.cols());
  for (Index j = 0; j < y.cols(); ++j) {
    const double n2 = y.col(j).dot(by.col(j));
    scale(j) = n2 > 0.0 ? 1.0 / std::sqrt(n2) : 0.0;
  }
  y = y * scale.asDiagonal();
  by = by * scale.asDiagonal();
  MatrixXd g = y.transpose() * by;
  g = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
  std::vector<Index> keep;
  for (Index j = 0; j < es.eigenvalues().size(); ++j)
    if (es.eigenvalues()(j) > 1e-10) keep.push_back(j);
  MatrixXd k(y.cols(), static_cast<Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    k.col(static_cast<Index>(j)) = es.eigenvectors().col(keep[j]) / std::sqrt(es.eigenvalues()(keep[j]));
  y = y * k;
  by = by * k;
}

MatrixXd hcat(std::initializer_list<const MatrixXd*> blocks, Index rows) {
  Index cols = 0;
  for (const auto* b : blocks) cols += b->cols();
  MatrixXd out(rows, cols);
  Index at = 0;
  for (const auto* b : blocks) {
    if (b->cols() == 0) continue;
    out.middleCols(at, b->cols()) = *b;
    at += b->cols();
  }
  return out;
}

}  // namespace

LobpcgResult lobpcg(const BlockOperator& a, const BlockOperator& b, const BlockOperator& b_inverse,
                    const BlockOperator& preconditioner, Index n, const LobpcgOptions& options,
                    const BlockOperator& project) {
  const Index m = std::min<Index>(options.block, n);
  LobpcgResult out;

  NormalSource normal(options.seed);
  MatrixXd x(n, m);
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < n; ++i) x(i, j) = normal();
  if (project) {
    MatrixXd px;
    project(x, px);
    x = px;
  }
  MatrixXd bx, ax;
  b(x, bx);
  b_orthonormalize(x, bx);
  a(x, ax);
  out.applications += static_cast<int>(x.cols());

  MatrixXd p(n, 0), ap(n, 0), bp(n, 0);
  VectorXd lambda;
  {
    MatrixXd g = x.transpose() * ax;
    g = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
    lambda = es.eigenvalues();
    x = x * es.eigenvectors();
    ax = ax * es.eigenvectors();
    bx = bx * es.eigenvectors();
  }

  VectorXd res(x.cols());
  for (int it = 0; it <= options.max_iterations; ++it) {
    out.iterations = it;
    const MatrixXd r = ax - bx * lambda.asDiagonal();
    MatrixXd br;
    b_inverse(r, br);
    std::vector<Index> active;
    bool done = true;
    for (Index j = 0; j < x.cols(); ++j) {
      res(j) = std::sqrt(std::max(0.0, r.col(j).dot(br.col(j))));
      const bool kernel = lambda(j) < options.kernel_threshold;
      const double tol = kernel ? options.tol_kernel : options.tol_relative * std::abs(lambda(j));
      const bool ok = res(j) <= tol;
      if (!ok) active.push_back(j);
      if (!ok && j < options.want) done = false;
    }
    if (done) {
      out.converged = true;
      break;
    }
    if (it == options.max_iterations) break;

    MatrixXd ra(n, static_cast<Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) ra.col(static_cast<Index>(k)) = r.col(active[k]);
    MatrixXd w, bw, aw;
    preconditioner(ra, w);
    if (project) {
      MatrixXd pw;
      project(w, pw);
      w = pw;
    }
    b(w, bw);
    b_orthogonalize(x, bx, w, bw);
    b_orthonormalize(w, bw);
    b_orthogonalize(x, bx, p, bp);
    b_orthogonalize(w, bw, p, bp);
    b_orthonormalize(p, bp);
    a(w, aw);
    a(p, ap);
    out.applications += static_cast<int>(w.cols() + p.cols());

    const MatrixXd s = hcat({&x, &w, &p}, n);
    const MatrixXd as = hcat({&ax, &aw, &ap}, n);
    const MatrixXd bs = hcat({&bx, &bw, &bp}, n);
    MatrixXd ga = s.transpose() * as;
    MatrixXd gb = s.transpose() * bs;
    ga = 0.5 * (ga + ga.transpose());
    gb = 0.5 * (gb + gb.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(ga, gb);
    if (es.info() != Eigen::Success) break;
    const MatrixXd c = es.eigenvectors().leftCols(m);
    lambda = es.eigenvalues().head(m);

    const Index nx = x.cols();
    const Index nrest = s.cols() - nx;
    const MatrixXd c_rest = c.bottomRows(nrest);
    p = s.rightCols(nrest) * c_rest;
    ap = as.rightCols(nrest) * c_rest;
    bp = bs.rightCols(nrest) * c_rest;
    x = s * c;
    ax = as * c;
    bx = bs * c;
  }
  out.values = lambda;
  out.vectors = x;
  out.residuals = res;
  return out;
}

GapCertificate certify_kernel(const Eigen::VectorXd& values, double tol, bool complete) {
  const double eps = std::numeric_limits<double>::epsilon();
  GapCertificate out;
  while (out.count < values.size() && values(out.count) < tol) ++out.count;
  if (out.count == 0) {
    out.certificate = values.size() > 0 ? values(0) / tol : std::numeric_limits<double>::infinity();
  } else if (out.count == values.size()) {
    out.certificate = complete ? tol / std::max(std::abs(values(out.count - 1)), eps) : 0.0;
  } else {
    out.certificate = values(out.count) / std::max(std::abs(values(out.count - 1)), eps);
  }
  return out;
}

}  // namespace basic_hodge
