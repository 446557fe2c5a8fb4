#pragma once

// Exact scalars for the fiberwise algebra: rationals and Gaussian rationals,
// registered with Eigen so that fixed-size matrices over them multiply.

#include <Eigen/Core>
#include <boost/rational.hpp>

#include <cstdint>
#include <ostream>
#include <string>

namespace basic_hodge {

using Rational = boost::rational<std::int64_t>;

/// a + b·i with a, b rational.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(int r) : re(r) {}  // NOLINT(google-explicit-constructor): Eigen builds Scalar(0), Scalar(1)
  GaussianRational(Rational r) : re(r) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i) : re(r), im(i) {}

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    const Rational n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    return os << '(' << z.re << ',' << z.im << ')';
  }
};

inline GaussianRational conj(const GaussianRational& z) { return {z.re, -z.im}; }
inline const GaussianRational kI{Rational(0), Rational(1)};

inline std::string to_string(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace basic_hodge

namespace Eigen {

template <>
struct NumTraits<basic_hodge::Rational> : GenericNumTraits<basic_hodge::Rational> {
  using Real = basic_hodge::Rational;
  using NonInteger = basic_hodge::Rational;
  using Literal = basic_hodge::Rational;
  using Nested = basic_hodge::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 4
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

template <>
struct NumTraits<basic_hodge::GaussianRational> : GenericNumTraits<basic_hodge::GaussianRational> {
  using Real = basic_hodge::Rational;
  using NonInteger = basic_hodge::GaussianRational;
  using Literal = basic_hodge::GaussianRational;
  using Nested = basic_hodge::GaussianRational;
  enum {
    IsComplex = 0,  // arithmetic only; conjugation is explicit
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 16
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen

namespace basic_hodge {

using Vec6Q = Eigen::Matrix<Rational, 6, 1>;
using Mat6Q = Eigen::Matrix<Rational, 6, 6>;
using MatXQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vec4G = Eigen::Matrix<GaussianRational, 4, 1>;
using Vec6G = Eigen::Matrix<GaussianRational, 6, 1>;

/// Rank by exact Gaussian elimination.
inline int exact_rank(MatXQ m) {
  int rank = 0;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = rank; r < rows; ++r)
      if (m(r, c) != Rational(0)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    m.row(rank).swap(m.row(pivot));
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == rank || m(r, c) == Rational(0)) continue;
      const Rational f = m(r, c) / m(rank, c);
      for (Eigen::Index k = c; k < cols; ++k) m(r, k) -= f * m(rank, k);
    }
    ++rank;
  }
  return rank;
}

/// Column-concatenate two exact matrices with equal row counts.
inline MatXQ hstack(const MatXQ& a, const MatXQ& b) {
  MatXQ out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace basic_hodge
