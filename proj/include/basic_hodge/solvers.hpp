#pragma once

// Matrix-free symmetric solvers: block LOBPCG for the low end of A x = λ B x and
// preconditioned conjugate gradients for consistent semidefinite systems.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>

namespace basic_hodge {

/// y = Op(x), column by column.
using BlockOperator = std::function<void(const Eigen::MatrixXd& x, Eigen::MatrixXd& y)>;

struct LobpcgOptions {
  int block = 8;
  /// Leading Ritz pairs that must converge; the remaining columns are guards.
  int want = 5;
  int max_iterations = 1000;
  /// Ritz values below this are treated as kernel and converge to tol_kernel.
  double kernel_threshold = 1e-8;
  double tol_kernel = 1e-10;
  double tol_relative = 1e-6;
  std::uint64_t seed = 1;
};

struct LobpcgResult {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // B-orthonormal
  Eigen::VectorXd residuals;
  int iterations = 0;
  int applications = 0;
  bool converged = false;
};

/// Lowest eigenpairs of A x = λ B x with A symmetric semidefinite and B symmetric
/// positive definite. Residuals are measured in the dual norm √(rᵀB⁻¹r).
/// `project`, if set, is applied to the initial block and to every search
/// direction, restricting the iteration to an A- and B-invariant subspace.
LobpcgResult lobpcg(const BlockOperator& a, const BlockOperator& b, const BlockOperator& b_inverse,
                    const BlockOperator& preconditioner, Eigen::Index n, const LobpcgOptions& options,
                    const BlockOperator& project = nullptr);

/// Ratio certifying that exactly `count` eigenvalues lie below tol.
struct GapCertificate {
  int count = 0;
  double certificate = 0.0;
};

/// values ascending. `complete` marks the whole spectrum (all eigenvalues known).
GapCertificate certify_kernel(const Eigen::VectorXd& values, double tol, bool complete);

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Solves A x = b by PCG from the given x, stopping at √(rᴴTr) ≤ max(rtol·√(bᴴTb), atol).
/// The reported residual is √(rᴴTr) / max(√(bᴴTb), atol/rtol).
template <typename Vec>
CgResult pcg(const std::function<void(const Vec&, Vec&)>& a, const std::function<void(const Vec&, Vec&)>& t,
             const Vec& b, Vec& x, double rtol, int max_iterations, double atol = 0.0) {
  using Scalar = typename Vec::Scalar;
  CgResult out;
  Vec r(b.size()), z(b.size()), p(b.size()), q(b.size());
  a(x, q);
  r = b - q;
  t(b, z);
  const double bnorm = std::sqrt(std::abs(b.dot(z)));
  if (bnorm == 0.0) {
    x.setZero();
    out.converged = true;
    return out;
  }
  const double stop = std::max(rtol * bnorm, atol);
  const double scale = rtol > 0.0 ? stop / rtol : bnorm;
  t(r, z);
  p = z;
  Scalar rz = r.dot(z);
  for (int it = 0; it < max_iterations; ++it) {
    out.relative_residual = std::sqrt(std::abs(rz)) / scale;
    if (std::sqrt(std::abs(rz)) <= stop) {
      out.converged = true;
      out.iterations = it;
      return out;
    }
    a(p, q);
    const Scalar pq = p.dot(q);
    if (std::abs(pq) == 0.0) break;
    const Scalar alpha = rz / pq;
    x += alpha * p;
    r -= alpha * q;
    t(r, z);
    const Scalar rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
    out.iterations = it + 1;
  }
  out.relative_residual = std::sqrt(std::abs(rz)) / scale;
  out.converged = std::sqrt(std::abs(rz)) <= stop;
  return out;
}

}  // namespace basic_hodge
