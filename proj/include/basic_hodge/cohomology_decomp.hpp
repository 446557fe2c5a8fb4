#pragma once

// Φ-invariant / anti-invariant and bidegree subgroups of the basic second
// cohomology, with residual and eigenvalue-gap certificates.

#include "basic_hodge/hodge_solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace basic_hodge {

enum class Subgroup { PhiPlus, PhiMinus, Type11, Type20, Type02, Type20And02 };

std::string to_string(Subgroup which);

struct ClosedAntiInvariantBasis {
  int dimension = 0;
  std::vector<RealForm> forms;  // L²-orthonormal
  Eigen::VectorXd eigenvalues;
  double certificate = 0.0;
  bool ambiguous = false;
};

/// Closed Φ-anti-invariant 2-forms u·(e3 − e4)/√2 + v·(e5 + e6)/√2 with smooth
/// coefficients: the kernel of (u, v) ↦ d(embed(u, v)).
ClosedAntiInvariantBasis anti_invariant_closed_basis(const FormMetric& m, const SolverConfig& cfg,
                                                     SolverStats* stats = nullptr);

struct AntiInvariantResiduals {
  double self_duality = 0.0;  // ‖α − star α‖ / ‖α‖
  double coclosed = 0.0;      // ‖δα‖ / ‖α‖
  double omega = 0.0;         // |⟨α, ω0⟩| / (‖α‖‖ω0‖)
  double pointwise_omega = 0.0;  // max_node |⟨α, ω0⟩_g| / max_node |α|_g, diagnostic
  double closed = 0.0;        // ‖dα‖ / ‖α‖
  double max() const { return std::max({self_duality, coclosed, omega}); }
};

std::vector<AntiInvariantResiduals> lemma22_checks(const ClosedAntiInvariantBasis& basis, const FormMetric& m);

/// ‖a − embed(u, v)‖ with (u, v) the g-orthogonal anti-invariant coordinates of a.
double anti_invariant_embedding_residual(const RealForm& a, const FormMetric& m);

/// min_γ ‖P(h + dγ)‖ / ‖h‖ with P the projector complementary to the requested type.
struct Representability {
  double residual = 0.0;
  FormField<cd> corrected;  // h + dγ
};
Representability invariant_representability(const FormField<cd>& h, const FormMetric& m, Subgroup which,
                                            const SolverConfig& cfg, SolverStats* stats = nullptr);
Representability invariant_representability(const RealForm& h, const FormMetric& m, Subgroup which,
                                            const SolverConfig& cfg, SolverStats* stats = nullptr);

struct SubgroupDimension {
  Subgroup which = Subgroup::PhiPlus;
  int dimension = 0;
  double certificate = 0.0;
  bool ambiguous = false;
  /// Eigenvalues of the Gram form Q on the harmonic space, ascending.
  Eigen::VectorXd eigenvalues;
  /// Kernel of Q in harmonic-basis coordinates (orthonormal columns).
  Eigen::MatrixXcd kernel;
};

/// dim ker Q, Q_ij = ⟨R(h_i), R(h_j)⟩ with R the minimal complementary part.
SubgroupDimension subgroup_dimension(const HarmonicBasis& basis, const FormMetric& m, Subgroup which,
                                     const SolverConfig& cfg, SolverStats* stats = nullptr);

/// Principal angles (degrees, ascending) between column spans of orthonormal bases.
Eigen::VectorXd principal_angles(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
/// Largest principal-angle sine; 1 when the dimensions differ.
double subspace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

enum class Verdict { Pass, Fail, Inconclusive, Observation };

std::string to_string(Verdict v);

struct Check {
  std::string name;
  std::string anchor;
  double residual = 0.0;
  std::optional<double> certificate;
  Verdict verdict = Verdict::Pass;
};

struct DecompositionReport {
  std::string structure;
  int grid = 0;
  std::array<int, 3> betti{};
  std::array<double, 3> betti_certificate{};
  int h_phi_plus = 0;
  int h_phi_minus = 0;
  int h_phi_minus_direct = 0;
  std::optional<int> h11, h20, h02;
  double nijenhuis_max = 0.0;
  bool integrable = false;
  std::vector<Check> checks;
  SolverStats stats;
  /// Named eigenvalue lists behind each dimension claim, ascending.
  std::vector<std::pair<std::string, Eigen::VectorXd>> spectra;

  /// Pass unless some check failed (Fail) or is ambiguous (Inconclusive).
  Verdict overall() const;
};

/// Integrability threshold on max |N_J|.
inline constexpr double integrability_threshold = 1e-8;

struct DecomposeOptions {
  SolverConfig solver;
  bool complex = true;
};

/// Full pipeline: Betti numbers, Φ± and bidegree subgroups, every verification check.
DecompositionReport decompose(const StructureField& s, const DecomposeOptions& opt);

/// Pieces used by decompose, exposed for testing.
void verify_pure_full(DecompositionReport& report, const HarmonicBasis& basis, const SubgroupDimension& plus,
                      const SubgroupDimension& minus, const ClosedAntiInvariantBasis& direct, const FormMetric& m);
void verify_complex(DecompositionReport& report, const HarmonicBasis& basis, const SubgroupDimension& plus,
                    const SubgroupDimension& minus, const SubgroupDimension& t11, const SubgroupDimension& t20,
                    const SubgroupDimension& t02, const SubgroupDimension& t20_02);

/// For anti-invariant α = embed(u, v), Θ = embed(u − iv, v + iu) = α + i·rot(α), rot(u, v) = (−v, u).
/// Residuals relative to ‖Θ‖: distance of Θ from type (2,0), ‖∂Θ̄‖, and ‖2dα − ∂Θ̄ − ∂̄Θ‖.
struct TypeCheck {
  double bidegree = 0.0;
  double del_conjugate = 0.0;
  double identity = 0.0;
};
TypeCheck anti_invariant_type_check(const RealForm& alpha, const FormMetric& m);

}  // namespace basic_hodge
