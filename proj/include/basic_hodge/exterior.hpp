#pragma once

// Combinatorics of the exterior algebra of a 4-dimensional real vector space.
//
// A p-form basis element dx^I is indexed by a strictly increasing subset I of
// {0,1,2,3}; subsets of equal size are ordered lexicographically, so that the
// 2-form basis reads (01, 02, 03, 12, 13, 23). Coordinate axes follow the
// order (x1, y1, x2, y2) throughout the library.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace basic_hodge {

inline constexpr int kDim = 4;

constexpr int binomial4(int p) {
  constexpr std::array<int, 5> table{1, 4, 6, 4, 1};
  return (p < 0 || p > 4) ? 0 : table[static_cast<std::size_t>(p)];
}

/// Subsets of {0,1,2,3} of size p, lexicographic, as bitmasks.
inline const std::vector<unsigned>& subsets(int p) {
  static const std::array<std::vector<unsigned>, 5> table = [] {
    std::array<std::vector<unsigned>, 5> t;
    // lexicographic order on sorted index tuples
    t[0] = {0u};
    t[1] = {0b0001u, 0b0010u, 0b0100u, 0b1000u};
    t[2] = {0b0011u, 0b0101u, 0b1001u, 0b0110u, 0b1010u, 0b1100u};
    t[3] = {0b0111u, 0b1011u, 0b1101u, 0b1110u};
    t[4] = {0b1111u};
    return t;
  }();
  if (p < 0 || p > 4) throw std::out_of_range("form degree must lie in [0, 4]");
  return table[static_cast<std::size_t>(p)];
}

inline std::vector<int> subset_indices(unsigned mask) {
  std::vector<int> out;
  for (int i = 0; i < kDim; ++i)
    if (mask & (1u << i)) out.push_back(i);
  return out;
}

/// Position of a bitmask within subsets(popcount(mask)).
inline int subset_position(unsigned mask) {
  const int p = __builtin_popcount(mask);
  const auto& s = subsets(p);
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k] == mask) return static_cast<int>(k);
  throw std::logic_error("subset_position: not a subset of {0,1,2,3}");
}

/// Sign of dx^I ∧ dx^J relative to dx^{I∪J}; zero when I and J overlap.
inline int wedge_sign(unsigned left, unsigned right) {
  if (left & right) return 0;
  // count inversions: pairs (i in left, j in right) with i > j
  int inversions = 0;
  for (int i = 0; i < kDim; ++i) {
    if (!(left & (1u << i))) continue;
    for (int j = 0; j < i; ++j)
      if (right & (1u << j)) ++inversions;
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

/// Matrix of p×p minors: entry (I, J) = det A[I, J]. Works for any scalar
/// type with +, -, * (used with doubles, complex doubles and exact rationals).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
compound(const Eigen::MatrixBase<Derived>& a, int p) {
  using Scalar = typename Derived::Scalar;
  const auto& rows = subsets(p);
  const int c = binomial4(p);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(c, c);
  for (int r = 0; r < c; ++r) {
    const auto ri = subset_indices(rows[static_cast<std::size_t>(r)]);
    for (int s = 0; s < c; ++s) {
      const auto si = subset_indices(rows[static_cast<std::size_t>(s)]);
      // Leibniz expansion; p ≤ 4 so at most 24 terms.
      std::array<int, 4> perm{0, 1, 2, 3};
      Scalar det = Scalar(0);
      if (p == 0) {
        det = Scalar(1);
      } else {
        do {
          Scalar term = Scalar(1);
          for (int k = 0; k < p; ++k) term = term * a(ri[static_cast<std::size_t>(k)], si[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])]);
          int inv = 0;
          for (int x = 0; x < p; ++x)
            for (int y = x + 1; y < p; ++y)
              if (perm[static_cast<std::size_t>(x)] > perm[static_cast<std::size_t>(y)]) ++inv;
          det = (inv % 2 == 0) ? det + term : det - term;
        } while (std::next_permutation(perm.begin(), perm.begin() + p));
      }
      out(r, s) = det;
    }
  }
  return out;
}

/// Top-degree pairing between Λ^p and Λ^{4-p}: W(I, K) is the coefficient of
/// dx^{0123} in dx^I ∧ dx^K. A signed permutation matrix.
inline Eigen::MatrixXd wedge_pairing(int p) {
  const auto& left = subsets(p);
  const auto& right = subsets(kDim - p);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(binomial4(p), binomial4(kDim - p));
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t k = 0; k < right.size(); ++k)
      if ((left[i] | right[k]) == 0b1111u && !(left[i] & right[k]))
        w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = wedge_sign(left[i], right[k]);
  return w;
}

/// One term of the exterior derivative: d(f dx^in) contains sign·∂_axis f dx^out.
struct DerivativeTerm {
  int out;
  int in;
  int axis;
  int sign;
};

/// All terms of d: Λ^p → Λ^{p+1} in the coordinate basis.
inline const std::vector<DerivativeTerm>& derivative_terms(int p) {
  static const std::array<std::vector<DerivativeTerm>, 4> table = [] {
    std::array<std::vector<DerivativeTerm>, 4> t;
    for (int q = 0; q < 4; ++q) {
      const auto& ins = subsets(q);
      for (std::size_t i = 0; i < ins.size(); ++i) {
        for (int axis = 0; axis < kDim; ++axis) {
          const unsigned bit = 1u << axis;
          if (ins[i] & bit) continue;
          t[static_cast<std::size_t>(q)].push_back(
              {subset_position(ins[i] | bit), static_cast<int>(i), axis, wedge_sign(bit, ins[i])});
        }
      }
    }
    return t;
  }();
  if (p < 0 || p > 3) throw std::invalid_argument("exterior derivative requires degree p ≤ 3");
  return table[static_cast<std::size_t>(p)];
}

/// Wedge product of coefficient vectors of degrees p and q (coordinate basis).
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, 1>
wedge(const Eigen::MatrixBase<DerivedA>& a, int p, const Eigen::MatrixBase<DerivedB>& b, int q) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Constant(binomial4(p + q), Scalar(0));
  if (p + q > kDim) return out;
  const auto& left = subsets(p);
  const auto& right = subsets(q);
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t k = 0; k < right.size(); ++k) {
      const int s = wedge_sign(left[i], right[k]);
      if (s == 0) continue;
      const int pos = subset_position(left[i] | right[k]);
      const Scalar term = a(static_cast<Eigen::Index>(i)) * b(static_cast<Eigen::Index>(k));
      out(pos) = (s > 0) ? out(pos) + term : out(pos) - term;
    }
  return out;
}

}  // namespace basic_hodge
