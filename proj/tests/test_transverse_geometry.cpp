#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "basic_hodge/errors.hpp"
#include "basic_hodge/transverse_geometry.hpp"

#include <sstream>

using namespace basic_hodge;

TEST_CASE("flat structure") {
  const StructureField s = make_flat_structure(4);
  const Eigen::Matrix4d j0 = standard_complex_structure();
  for (const auto& j : s.J) CHECK(j == j0);
  CHECK((j0 * j0 + Eigen::Matrix4d::Identity()).norm() == 0.0);
  const auto r = structure_residuals(s);
  CHECK(r.determinant == 0.0);
  CHECK(r.coframe == 0.0);
  CHECK(nijenhuis_norm(s).maxCoeff() <= 1e-12);
  CHECK(adapted_coframe(s).coframe[5] == Eigen::Matrix4d::Identity());
  CHECK_THROWS_AS(make_flat_structure(5), std::invalid_argument);
}

TEST_CASE("zero amplitude reproduces the flat structure") {
  const StructureField p = make_perturbed_structure(8, 3, 0.0, 2);
  const StructureField f = make_flat_structure(8);
  CHECK(p.J == f.J);
  CHECK(p.g == f.g);
  CHECK(p.coframe == f.coframe);
}

TEST_CASE("perturbed structure invariants") {
  const StructureField s = make_perturbed_structure(8, 1, 0.3, 2);
  const auto r = structure_residuals(s);
  CHECK(r.complex_structure <= 1e-12);
  CHECK(r.compatibility <= 1e-12);
  CHECK(r.determinant <= 1e-12);
  CHECK(r.coframe <= 1e-12);
  CHECK(r.min_eigenvalue > 0.0);
  CHECK(nijenhuis_norm(s).maxCoeff() > 1e-3);
  CHECK_THROWS_AS(make_perturbed_structure(8, 1, 0.3, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_perturbed_structure(8, 1, -1.0, 2), std::invalid_argument);
}

TEST_CASE("perturbation is deterministic and refinement-consistent") {
  const StructureField a = make_perturbed_structure(4, 7, 0.2, 1);
  const StructureField b = make_perturbed_structure(4, 7, 0.2, 1);
  CHECK(a.J == b.J);
  const StructureField fine = make_perturbed_structure(8, 7, 0.2, 1);
  double diff = 0.0;
  for (Eigen::Index node = 0; node < a.nodes(); ++node) {
    auto idx = a.grid->multi_index(node);
    for (auto& v : idx) v *= 2;
    diff = std::max(diff, (a.J[node] - fine.J[fine.grid->node(idx)]).norm());
  }
  CHECK(diff < 1e-13);
}

TEST_CASE("coframe is smooth") {
  const StructureField s = make_perturbed_structure(8, 1, 0.3, 2);
  const StructureField fine = make_perturbed_structure(16, 1, 0.3, 2);
  auto max_jump = [](const StructureField& f) {
    double jump = 0.0;
    for (Eigen::Index node = 0; node < f.nodes(); ++node)
      for (int a = 0; a < 4; ++a) {
        auto idx = f.grid->multi_index(node);
        idx[a] += 1;
        jump = std::max(jump, (f.coframe[node] - f.coframe[f.grid->node(idx)]).norm());
      }
    return jump;
  };
  const double coarse = max_jump(s);
  const double refined = max_jump(fine);
  CHECK(refined < 0.75 * coarse);
}

TEST_CASE("nijenhuis scales linearly at small amplitude") {
  const double n1 = nijenhuis_norm(make_perturbed_structure(8, 2, 0.1, 1)).maxCoeff();
  const double n2 = nijenhuis_norm(make_perturbed_structure(8, 2, 0.05, 1)).maxCoeff();
  const double n3 = nijenhuis_norm(make_perturbed_structure(8, 2, 0.025, 1)).maxCoeff();
  CHECK(n1 / n2 == doctest::Approx(2.0).epsilon(0.15));
  CHECK(n2 / n3 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("structure dump") {
  std::ostringstream os;
  write_structure(os, make_flat_structure(4));
  const std::string text = os.str();
  CHECK(text.rfind("# basic_hodge structure v1 N=4", 0) == 0);
  std::size_t lines = 0;
  for (char c : text) lines += (c == '\n');
  CHECK(lines == 2 + 256);
}
