#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "basic_hodge/hodge_solver.hpp"

#include <cmath>
#include <map>
#include <sstream>

using namespace basic_hodge;
using pointwise::Projector;

namespace {

const FormMetric& flat8() {
  static const FormMetric m(make_flat_structure(8));
  return m;
}

const FormMetric& perturbed8() {
  static const FormMetric m(make_perturbed_structure(8, 1, 0.3, 2));
  return m;
}

const HarmonicBasis& basis2(const FormMetric& m) {
  static std::map<const FormMetric*, HarmonicBasis> cache;
  auto it = cache.find(&m);
  if (it == cache.end()) it = cache.emplace(&m, harmonic_basis(2, m, SolverConfig{})).first;
  return it->second;
}

}  // namespace

TEST_CASE("laplacian examples") {
  const auto& m = flat8();
  const auto grid = m.grid_ptr();
  Eigen::VectorXd c(6);
  c << 1, 2, 3, 4, 5, 6;
  CHECK(laplacian_apply(constant_form(grid, 2, c), m).coeffs.cwiseAbs().maxCoeff() < 1e-12);

  FormField<cd> wave(grid, 2);
  for (Eigen::Index node = 0; node < grid->nodes(); ++node)
    wave.coeffs(node, 5) = std::exp(cd(0.0, grid->coordinate(grid->multi_index(node)[0])));
  const auto lw = laplacian_apply(wave, m);
  CHECK((lw.coeffs - wave.coeffs).cwiseAbs().maxCoeff() < 1e-12);

  for (const auto* mp : {&flat8(), &perturbed8()}) {
    for (int p = 0; p <= 4; ++p) {
      const RealForm a = random_form(grid, p, 10 + static_cast<std::uint64_t>(p), 3);
      const RealForm b = random_form(grid, p, 20 + static_cast<std::uint64_t>(p), 3);
      const double lhs = l2_inner(laplacian_apply(a, *mp), b, *mp);
      const double rhs = l2_inner(a, laplacian_apply(b, *mp), *mp);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(lhs));
      CHECK(l2_inner(laplacian_apply(a, *mp), a, *mp) >= 0.0);
    }
  }
}

TEST_CASE("laplacian commutes with star on 2-forms") {
  for (const auto* mp : {&flat8(), &perturbed8()}) {
    const RealForm a = random_form(mp->grid_ptr(), 2, 5, 3);
    const RealForm lhs = laplacian_apply(star_coord(a, *mp), *mp);
    const RealForm rhs = star_coord(laplacian_apply(a, *mp), *mp);
    CHECK(l2_norm(lhs - rhs, *mp) <= 1e-9 * l2_norm(a, *mp));
  }
}

TEST_CASE("flat harmonic dimensions") {
  const auto& m = flat8();
  const SolverConfig cfg;
  const std::array<int, 3> expected{1, 4, 6};
  for (int p = 0; p <= 2; ++p) {
    const HarmonicBasis b = p == 2 ? basis2(m) : harmonic_basis(p, m, cfg);
    CHECK(b.dimension() == expected[static_cast<std::size_t>(p)]);
    CHECK(b.certificate >= 100.0);
    CHECK(b.eigenvalues(b.dimension()) == doctest::Approx(1.0).epsilon(1e-6));
    for (int i = 0; i < b.dimension(); ++i) {
      const auto& hi = b.forms[static_cast<std::size_t>(i)];
      CHECK(l2_norm(laplacian_apply(hi, m), m) <= cfg.tol_zero);
      for (int j = 0; j < b.dimension(); ++j)
        CHECK(std::abs(l2_inner(hi, b.forms[static_cast<std::size_t>(j)], m) - (i == j ? 1.0 : 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("perturbed harmonic 2-forms and star invariance") {
  const auto& m = perturbed8();
  const HarmonicBasis& b = basis2(m);
  CHECK(b.dimension() == 6);
  CHECK(b.certificate >= 100.0);
  for (const auto& h : b.forms) {
    CHECK(l2_norm(laplacian_apply(h, m), m) <= 1e-8);
    for (Projector which : {Projector::GPlus, Projector::GMinus})
      CHECK(l2_norm(laplacian_apply(project_field(h, m, which), m), m) <= 1e-8);
  }
}

TEST_CASE("certificate is stable under tolerance changes") {
  const auto& m = perturbed8();
  for (double f : {0.1, 10.0}) {
    SolverConfig cfg;
    cfg.tol_zero *= f;
    CHECK(harmonic_basis(2, m, cfg).dimension() == 6);
  }
}

TEST_CASE("restricted harmonic spaces add up on the flat structure") {
  const auto& m = flat8();
  const SolverConfig cfg;
  const auto plus = harmonic_basis(2, m, cfg, nullptr, Restriction::SelfDual);
  const auto minus = harmonic_basis(2, m, cfg, nullptr, Restriction::AntiSelfDual);
  CHECK(plus.dimension() == 3);
  CHECK(minus.dimension() == 3);
  CHECK(plus.dimension() + minus.dimension() == basis2(m).dimension());
  for (const auto& h : plus.forms) CHECK(l2_norm(h - star_coord(h, m), m) < 1e-10);
  for (const auto& h : minus.forms) CHECK(l2_norm(h + star_coord(h, m), m) < 1e-10);
}

TEST_CASE("hodge decomposition examples") {
  const SolverConfig cfg;
  for (const auto* mp : {&flat8(), &perturbed8()}) {
    const auto& m = *mp;
    const HarmonicBasis& b = basis2(m);
    const RealForm& h = b.forms[2];
    auto parts = hodge_decompose(h, m, cfg);
    CHECK(l2_norm(parts.harmonic - h, m) < 1e-9);
    CHECK(l2_norm(parts.exact, m) < 1e-9);
    CHECK(l2_norm(parts.coexact, m) < 1e-9);

    const RealForm exact = d(random_form(m.grid_ptr(), 1, 3, 2));
    parts = hodge_decompose(exact, m, cfg);
    const double n = l2_norm(exact, m);
    CHECK(l2_norm(parts.exact - exact, m) <= 1e-8 * n);
    CHECK(l2_norm(parts.harmonic, m) <= 1e-8 * n);
    CHECK(l2_norm(parts.coexact, m) <= 1e-8 * n);

    const RealForm a = random_form(m.grid_ptr(), 2, 4, 2);
    parts = hodge_decompose(a, m, cfg);
    CHECK(parts.orthogonality <= 1e-8);
    CHECK(parts.harmonic_residual <= 1e-8);
    CHECK(l2_norm(harmonic_projection(parts.harmonic, b, m) - harmonic_projection(a, b, m), m) <= 1e-8 * l2_norm(a, m));
    if (mp == &flat8()) CHECK(l2_norm(parts.harmonic - harmonic_projection(a, b, m), m) <= 1e-8 * l2_norm(a, m));
    CHECK(l2_norm(d(parts.coexact), m) > 0.0);
    CHECK(l2_norm(codifferential(parts.exact, m), m) > 0.0);
    CHECK(l2_norm(d(parts.exact), m) <= 1e-9 * l2_norm(a, m));
  }
}

TEST_CASE("refined self-dual decomposition") {
  const SolverConfig cfg;
  const auto& flat = flat8();
  const auto omega = omega_field(flat.grid_ptr());
  const auto r0 = refined_selfdual_decompose(omega, flat, cfg);
  CHECK(r0.max_residual() <= 1e-12);

  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto r = refined_selfdual_decompose(random_selfdual_form(flat, seed, 2), flat, cfg);
    CHECK(r.max_residual() <= 1e-8);
  }
  const auto& pert = perturbed8();
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto r = refined_selfdual_decompose(random_selfdual_form(pert, seed, 2), pert, cfg);
    CHECK(r.max_residual() <= 1e-7);
  }
  CHECK_THROWS_AS(refined_selfdual_decompose(random_form(flat.grid_ptr(), 2, 1, 2), flat, cfg), std::invalid_argument);
}

TEST_CASE("spectrum dump") {
  Eigen::VectorXd v(2);
  v << 0.0, 1.5;
  std::ostringstream os;
  write_spectrum(os, v);
  CHECK(os.str() == "index,eigenvalue\n0,0\n1,1.5\n");
}
