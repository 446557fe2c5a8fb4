#pragma once

// Periodic N⁴ grid on the torus [0, 2π)⁴. Node (i0, i1, i2, i3) is stored at
// i0 + N·i1 + N²·i2 + N³·i3, axis a carrying coordinate x_a = 2π·i_a/N.

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace basic_hodge {

class PeriodicGrid {
 public:
  explicit PeriodicGrid(int n);

  int n() const { return n_; }
  Eigen::Index nodes() const { return nodes_; }
  double spacing() const { return h_; }
  double cell_volume() const { return h_ * h_ * h_ * h_; }
  double coordinate(int i) const { return h_ * i; }
  std::array<int, 4> multi_index(Eigen::Index node) const;
  Eigen::Index node(const std::array<int, 4>& idx) const;

  /// Spectral differentiation matrix of the trigonometric interpolant (Nyquist mode killed).
  const Eigen::MatrixXd& derivative_matrix() const { return d_; }
  /// Orthonormal real Fourier basis (rows) and |k|² of each row, Nyquist row assigned 0.
  const Eigen::MatrixXd& fourier_matrix() const { return f_; }
  const Eigen::VectorXd& fourier_symbol() const { return k2_; }

  /// out = ∂_axis in, for a scalar grid function stored contiguously.
  template <typename Scalar>
  void differentiate(const Scalar* in, Scalar* out, int axis) const {
    apply_axis(d_, in, out, axis);
  }

  /// out = (A ⊗ along axis) in, for an N×N real matrix A.
  template <typename Scalar>
  void apply_axis(const Eigen::MatrixXd& a, const Scalar* in, Scalar* out, int axis) const;

  /// Applies (|k|² + shift)⁻¹ to a scalar grid function in the real Fourier basis.
  template <typename Scalar>
  void apply_inverse_symbol(const Scalar* in, Scalar* out, double shift) const;

  /// Sign patterns (−1)^{Σ_{a∈S} i_a} for the 15 nonempty axis sets S.
  const std::vector<Eigen::VectorXd>& checkerboards() const { return checker_; }

 private:
  int n_;
  Eigen::Index nodes_;
  double h_;
  Eigen::MatrixXd d_;
  Eigen::MatrixXd f_;
  Eigen::VectorXd k2_;
  Eigen::VectorXd symbol4_;
  std::vector<Eigen::VectorXd> checker_;
};

template <typename Scalar>
void PeriodicGrid::apply_axis(const Eigen::MatrixXd& a, const Scalar* in, Scalar* out, int axis) const {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = n_;
  if (axis == 0) {
    Eigen::Map<const Mat> x(in, n, nodes_ / n);
    Eigen::Map<Mat> y(out, n, nodes_ / n);
    y.noalias() = a * x;
    return;
  }
  Eigen::Index inner = 1;
  for (int k = 0; k < axis; ++k) inner *= n;
  const Eigen::Index slab = inner * n;
  const Eigen::Index slabs = nodes_ / slab;
  const Eigen::MatrixXd at = a.transpose();
  for (Eigen::Index s = 0; s < slabs; ++s) {
    Eigen::Map<const Mat> x(in + s * slab, inner, n);
    Eigen::Map<Mat> y(out + s * slab, inner, n);
    y.noalias() = x * at;
  }
}

template <typename Scalar>
void PeriodicGrid::apply_inverse_symbol(const Scalar* in, Scalar* out, double shift) const {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vec a(nodes_), b(nodes_);
  apply_axis(f_, in, a.data(), 0);
  apply_axis(f_, a.data(), b.data(), 1);
  apply_axis(f_, b.data(), a.data(), 2);
  apply_axis(f_, a.data(), b.data(), 3);
  for (Eigen::Index i = 0; i < nodes_; ++i) b(i) /= (symbol4_(i) + shift);
  const Eigen::MatrixXd ft = f_.transpose();
  apply_axis(ft, b.data(), a.data(), 0);
  apply_axis(ft, a.data(), b.data(), 1);
  apply_axis(ft, b.data(), a.data(), 2);
  apply_axis(ft, a.data(), out, 3);
}

}  // namespace basic_hodge
