#pragma once

// p-form fields on the periodic grid. Coefficients are a nodes × C(4,p) matrix:
// column I holds the grid function multiplying dx^I (lexicographic order over
// dx1 < dy1 < dx2 < dy2), so every component is contiguous.

#include "basic_hodge/exterior.hpp"
#include "basic_hodge/grid.hpp"

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <stdexcept>

namespace basic_hodge {

template <typename Scalar_>
struct FormField {
  using Scalar = Scalar_;
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  int degree = 0;
  std::shared_ptr<const PeriodicGrid> grid;
  Coeffs coeffs;

  FormField() = default;
  FormField(std::shared_ptr<const PeriodicGrid> g, int p)
      : degree(p), grid(std::move(g)), coeffs(Coeffs::Zero(grid->nodes(), binomial4(p))) {
    if (p < 0 || p > 4) throw std::invalid_argument("form degree must lie in [0, 4]");
  }
  FormField(std::shared_ptr<const PeriodicGrid> g, int p, Coeffs c) : degree(p), grid(std::move(g)), coeffs(std::move(c)) {
    if (coeffs.rows() != grid->nodes() || coeffs.cols() != binomial4(p))
      throw std::invalid_argument("coefficient block does not match grid and degree");
  }

  Eigen::Index size() const { return coeffs.size(); }
  Eigen::Map<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> flat() { return {coeffs.data(), coeffs.size()}; }
  Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> flat() const { return {coeffs.data(), coeffs.size()}; }

  FormField& operator+=(const FormField& o) { coeffs += o.coeffs; return *this; }
  FormField& operator-=(const FormField& o) { coeffs -= o.coeffs; return *this; }
  friend FormField operator+(FormField a, const FormField& b) { return a += b; }
  friend FormField operator-(FormField a, const FormField& b) { return a -= b; }
  friend FormField operator*(Scalar s, FormField a) { a.coeffs *= s; return a; }
};

using RealForm = FormField<double>;

enum class Bidegree { None, P20, P11, P02 };

/// Complex form with an optional bidegree tag.
struct ComplexFormField : FormField<std::complex<double>> {
  Bidegree bidegree = Bidegree::None;

  ComplexFormField() = default;
  ComplexFormField(FormField<std::complex<double>> f, Bidegree b = Bidegree::None)
      : FormField<std::complex<double>>(std::move(f)), bidegree(b) {}
};

inline Bidegree conjugate(Bidegree b) {
  switch (b) {
    case Bidegree::P20: return Bidegree::P02;
    case Bidegree::P02: return Bidegree::P20;
    default: return b;
  }
}

inline ComplexFormField conjugate(const ComplexFormField& a) {
  ComplexFormField out = a;
  out.coeffs = a.coeffs.conjugate();
  out.bidegree = conjugate(a.bidegree);
  return out;
}

inline ComplexFormField complexify(const RealForm& a, Bidegree b = Bidegree::None) {
  FormField<std::complex<double>> f(a.grid, a.degree, a.coeffs.cast<std::complex<double>>());
  return {std::move(f), b};
}

template <typename Scalar>
void require_same_shape(const FormField<Scalar>& a, const FormField<Scalar>& b) {
  if (a.degree != b.degree) throw std::invalid_argument("form degree mismatch");
  if (a.grid->n() != b.grid->n()) throw std::invalid_argument("grid mismatch");
}

}  // namespace basic_hodge
