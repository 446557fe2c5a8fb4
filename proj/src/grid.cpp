#include "basic_hodge/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace basic_hodge {

PeriodicGrid::PeriodicGrid(int n) : n_(n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("grid size must be even and at least 4");
  nodes_ = static_cast<Eigen::Index>(n) * n * n * n;
  h_ = 2.0 * std::numbers::pi / n;

  d_ = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l) {
      if (j == l) continue;
      const int m = j - l;
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      d_(j, l) = 0.5 * sign / std::tan(m * h_ / 2.0);
    }

  // rows: 1/√N, then (√(2/N) cos kx, √(2/N) sin kx) for k < N/2, then Nyquist (−1)^j/√N
  f_.resize(n, n);
  k2_.resize(n);
  const double c0 = 1.0 / std::sqrt(static_cast<double>(n));
  const double c1 = std::sqrt(2.0 / n);
  int row = 0;
  f_.row(row).setConstant(c0);
  k2_(row++) = 0.0;
  for (int k = 1; k < n / 2; ++k) {
    for (int j = 0; j < n; ++j) {
      f_(row, j) = c1 * std::cos(k * j * h_);
      f_(row + 1, j) = c1 * std::sin(k * j * h_);
    }
    k2_(row++) = k * k;
    k2_(row++) = k * k;
  }
  for (int j = 0; j < n; ++j) f_(row, j) = (j % 2 == 0) ? c0 : -c0;
  k2_(row) = 0.0;

  symbol4_.resize(nodes_);
  for (Eigen::Index i = 0; i < nodes_; ++i) {
    const auto m = multi_index(i);
    symbol4_(i) = k2_(m[0]) + k2_(m[1]) + k2_(m[2]) + k2_(m[3]);
  }

  for (unsigned set = 1; set < 16; ++set) {
    Eigen::VectorXd s(nodes_);
    for (Eigen::Index i = 0; i < nodes_; ++i) {
      const auto m = multi_index(i);
      int parity = 0;
      for (int a = 0; a < 4; ++a)
        if (set & (1u << a)) parity += m[static_cast<std::size_t>(a)];
      s(i) = (parity % 2 == 0) ? 1.0 : -1.0;
    }
    checker_.push_back(std::move(s));
  }
}

std::array<int, 4> PeriodicGrid::multi_index(Eigen::Index node) const {
  std::array<int, 4> out{};
  for (auto& v : out) {
    v = static_cast<int>(node % n_);
    node /= n_;
  }
  return out;
}

Eigen::Index PeriodicGrid::node(const std::array<int, 4>& idx) const {
  Eigen::Index out = 0;
  for (int a = 3; a >= 0; --a) out = out * n_ + ((idx[static_cast<std::size_t>(a)] % n_) + n_) % n_;
  return out;
}

}  // namespace basic_hodge
