#pragma once

// Transverse geometry of a regular K-contact model: the circle bundle over the
// flat symplectic torus (T⁴, ω0), ω0 = dx1∧dy1 + dx2∧dy2, whose basic forms are
// the forms on the base. The transverse structure is an ω0-compatible J with
// g = ω0(·, J·); the contact distribution D is identified with the base tangent
// space and Φ|_D with J.

#include "basic_hodge/grid.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace basic_hodge {

struct Provenance {
  enum class Kind { Flat, Perturbed } kind = Kind::Flat;
  std::uint64_t seed = 0;
  double amplitude = 0.0;
  int mode_cutoff = 0;

  std::string describe() const;
};

struct StructureField {
  std::shared_ptr<const PeriodicGrid> grid;
  Eigen::Matrix4d omega0;
  std::vector<Eigen::Matrix4d> J;
  std::vector<Eigen::Matrix4d> g;
  /// Rows (θ1, Φθ1, θ2, Φθ2) in coordinate components.
  std::vector<Eigen::Matrix4d> coframe;
  Provenance provenance;

  int n() const { return grid->n(); }
  Eigen::Index nodes() const { return grid->nodes(); }
};

/// Standard symplectic matrix: ω0(X, Y) = Xᵀ Ω Y.
Eigen::Matrix4d standard_symplectic();
/// J0 = −Ω, the standard complex structure with g = I.
Eigen::Matrix4d standard_complex_structure();

StructureField make_flat_structure(int n);

/// J = exp(A) J0 exp(−A) with A(x) = Ω S(x), S a random symmetric Fourier series with
/// modes |k|_∞ ≤ mode_cutoff, scaled so that the RMS of ‖A‖_F over the torus equals amplitude.
StructureField make_perturbed_structure(int n, std::uint64_t seed, double amplitude, int mode_cutoff);

/// Recomputes the coframe from (J, g) by the fixed Gram–Schmidt recipe.
StructureField adapted_coframe(StructureField s);

struct StructureResiduals {
  double complex_structure = 0.0;  // max ‖J² + I‖
  double compatibility = 0.0;      // max ‖JᵀΩJ − Ω‖
  double metric = 0.0;             // max ‖g − ΩJ‖ + ‖g − gᵀ‖
  double determinant = 0.0;        // max |det g − 1|
  double min_eigenvalue = 0.0;     // min eigenvalue of g
  double coframe = 0.0;            // max g-orthonormality and Φ-adaptation residual of the coframe
};

StructureResiduals structure_residuals(const StructureField& s);

/// Per-node Frobenius norm of the Nijenhuis tensor on coordinate fields.
Eigen::VectorXd nijenhuis_norm(const StructureField& s);

/// Text dump: header line, then one line per node with the 16 entries of J, g and
/// the coframe, each row-major.
void write_structure(std::ostream& os, const StructureField& s);

}  // namespace basic_hodge
