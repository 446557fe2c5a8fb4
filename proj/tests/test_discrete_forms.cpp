#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "basic_hodge/discrete_forms.hpp"

#include <cmath>
#include <numbers>

using namespace basic_hodge;
using pointwise::Projector;

namespace {

const double kTorus = std::pow(2.0 * std::numbers::pi, 4);

RealForm scalar_times(const std::shared_ptr<const PeriodicGrid>& grid, int p, int comp, auto f) {
  RealForm out(grid, p);
  for (Eigen::Index node = 0; node < grid->nodes(); ++node) {
    const auto m = grid->multi_index(node);
    out.coeffs(node, comp) = f(grid->coordinate(m[0]), grid->coordinate(m[1]), grid->coordinate(m[2]), grid->coordinate(m[3]));
  }
  return out;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("exterior derivative") {
  const FormMetric flat(make_flat_structure(8));
  const auto& grid = flat.grid_ptr();
  Eigen::VectorXd c(4);
  c << 1.0, -2.0, 0.5, 3.0;
  CHECK(max_abs(d(constant_form(grid, 1, c)).coeffs) < 1e-12);

  const RealForm f = scalar_times(grid, 0, 0, [](double x1, double, double, double) { return std::sin(x1); });
  const RealForm want = scalar_times(grid, 1, 0, [](double x1, double, double, double) { return std::cos(x1); });
  CHECK(max_abs((d(f) - want).coeffs) < 1e-12);

  for (int p = 0; p <= 2; ++p) {
    const RealForm a = random_form(grid, p, 11 + p, 2);
    CHECK(d(d(a)).coeffs.norm() <= 1e-12 * a.coeffs.norm());
  }
  CHECK_THROWS_AS(d(RealForm(grid, 4)), std::invalid_argument);
}

TEST_CASE("l2 inner product") {
  const FormMetric flat(make_flat_structure(4));
  const auto& grid = flat.grid_ptr();
  Eigen::VectorXd e01 = Eigen::VectorXd::Unit(6, 0), e02 = Eigen::VectorXd::Unit(6, 1);
  CHECK(l2_inner(constant_form(grid, 2, e01), constant_form(grid, 2, e01), flat) == doctest::Approx(kTorus));
  CHECK(l2_inner(constant_form(grid, 2, e01), constant_form(grid, 2, e02), flat) == 0.0);

  const FormMetric pert(make_perturbed_structure(8, 1, 0.3, 2));
  for (int p = 0; p <= 4; ++p) {
    const RealForm a = random_form(pert.grid_ptr(), p, 3 + p, 2);
    const RealForm b = random_form(pert.grid_ptr(), p, 30 + p, 2);
    CHECK(l2_inner(a, a, pert) > 0.0);
    CHECK(l2_inner(a, b, pert) == doctest::Approx(l2_inner(b, a, pert)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(l2_inner(RealForm(grid, 1), RealForm(grid, 2), flat), std::invalid_argument);
}

TEST_CASE("codifferential") {
  const FormMetric flat(make_flat_structure(8));
  const auto& grid = flat.grid_ptr();
  CHECK(max_abs(codifferential(omega_field(grid), flat).coeffs) < 1e-12);

  // δ(sin x1 dx1∧dy1) = −cos x1 dy1
  const RealForm a = scalar_times(grid, 2, 0, [](double x1, double, double, double) { return std::sin(x1); });
  const RealForm want = scalar_times(grid, 1, 1, [](double x1, double, double, double) { return -std::cos(x1); });
  CHECK(max_abs((codifferential(a, flat) - want).coeffs) < 1e-12);

  const FormMetric pert(make_perturbed_structure(8, 1, 0.3, 2));
  for (int p = 1; p <= 4; ++p)
    for (int trial = 0; trial < 10; ++trial) {
      const RealForm x = random_form(pert.grid_ptr(), p - 1, 100 + 10 * p + trial, 2);
      const RealForm y = random_form(pert.grid_ptr(), p, 200 + 10 * p + trial, 2);
      const double lhs = l2_inner(d(x), y, pert);
      const double rhs = l2_inner(x, codifferential(y, pert), pert);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * l2_norm(d(x), pert) * l2_norm(y, pert));
      // δ = −★d★ on a 4-dimensional base
      const RealForm via_star = -1.0 * star_coord(d(star_coord(y, pert)), pert);
      CHECK(max_abs((codifferential(y, pert) - via_star).coeffs) <= 1e-10 * max_abs(y.coeffs));
    }
  CHECK_THROWS_AS(codifferential(RealForm(grid, 0), flat), std::invalid_argument);
}

TEST_CASE("coordinate star") {
  const FormMetric flat(make_flat_structure(4));
  const auto& grid = flat.grid_ptr();
  const RealForm s = star_coord(constant_form(grid, 2, Eigen::VectorXd::Unit(6, 0)), flat);
  CHECK(max_abs((s - constant_form(grid, 2, Eigen::VectorXd::Unit(6, 5))).coeffs) == 0.0);

  const FormMetric pert(make_perturbed_structure(8, 2, 0.3, 2));
  for (int p = 0; p <= 4; ++p) {
    const RealForm a = random_form(pert.grid_ptr(), p, 7 + p, 2);
    const RealForm b = random_form(pert.grid_ptr(), p, 70 + p, 2);
    const double sign = (p * (4 - p)) % 2 == 0 ? 1.0 : -1.0;
    CHECK(max_abs((star_coord(star_coord(a, pert), pert) - sign * a).coeffs) <= 1e-12 * max_abs(a.coeffs));
    CHECK(l2_inner(star_coord(a, pert), star_coord(b, pert), pert) ==
          doctest::Approx(l2_inner(a, b, pert)).epsilon(1e-12));
  }
  const auto r = dual_path_residual(pert, 100, 5);
  CHECK(r.star <= 1e-10);
  CHECK(r.phi <= 1e-10);
}

TEST_CASE("projectors") {
  const FormMetric flat(make_flat_structure(4));
  const auto& grid = flat.grid_ptr();
  const RealForm w = omega_field(grid);
  CHECK(max_abs((project_field(w, flat, Projector::PhiPlus) - w).coeffs) == 0.0);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(6);
  c(1) = 1.0;   // dx1∧dx2
  c(4) = -1.0;  // dy1∧dy2
  const RealForm anti = constant_form(grid, 2, c);
  CHECK(max_abs((project_field(anti, flat, Projector::PhiMinus) - anti).coeffs) == 0.0);

  const FormMetric pert(make_perturbed_structure(8, 3, 0.3, 2));
  const RealForm a = random_form(pert.grid_ptr(), 2, 9, 2);
  for (auto [plus, minus] : {std::pair{Projector::GPlus, Projector::GMinus}, std::pair{Projector::PhiPlus, Projector::PhiMinus}}) {
    const RealForm ap = project_field(a, pert, plus);
    const RealForm am = project_field(a, pert, minus);
    CHECK(max_abs((ap + am - a).coeffs) <= 1e-12 * max_abs(a.coeffs));
    CHECK(max_abs((project_field(ap, pert, plus) - ap).coeffs) <= 1e-12 * max_abs(a.coeffs));
    CHECK(std::abs(l2_inner(ap, am, pert)) <= 1e-12 * l2_inner(a, a, pert));
  }
  // Λ_Φ^- ⊆ Λ_g^+
  const RealForm am = project_field(a, pert, Projector::PhiMinus);
  CHECK(max_abs((project_field(am, pert, Projector::GPlus) - am).coeffs) <= 1e-10 * max_abs(a.coeffs));
}

TEST_CASE("pair_eta") {
  const FormMetric flat(make_flat_structure(4));
  const auto& grid = flat.grid_ptr();
  const RealForm w = omega_field(grid);
  CHECK(pair_eta(w, w) == doctest::Approx(2.0 * kTorus));
  const RealForm e = constant_form(grid, 2, Eigen::VectorXd::Unit(6, 2));
  CHECK(pair_eta(e, e) == 0.0);

  const FormMetric pert(make_perturbed_structure(8, 4, 0.3, 2));
  for (int trial = 0; trial < 10; ++trial) {
    const RealForm a = random_form(pert.grid_ptr(), 2, 500 + trial, 2);
    const double lhs = pair_eta(a, star_coord(a, pert));
    CHECK(std::abs(lhs - l2_inner(a, a, pert)) <= 1e-10 * std::abs(lhs));
  }
}

TEST_CASE("bidegree projections") {
  const FormMetric flat(make_flat_structure(4));
  const auto& grid = flat.grid_ptr();
  const ComplexFormField dxdy = complexify(constant_form(grid, 2, Eigen::VectorXd::Unit(6, 0)));
  const auto p11 = bidegree_project_field(dxdy, flat, Bidegree::P11);
  CHECK((p11.coeffs - dxdy.coeffs).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(p11.bidegree == Bidegree::P11);

  const FormMetric pert(make_perturbed_structure(8, 5, 0.3, 2));
  const ComplexFormField a{FormField<cd>(pert.grid_ptr(), 2,
                                         random_form(pert.grid_ptr(), 2, 1, 2).coeffs.cast<cd>() +
                                             cd(0, 1) * random_form(pert.grid_ptr(), 2, 2, 2).coeffs.cast<cd>())};
  const auto a20 = bidegree_project_field(a, pert, Bidegree::P20);
  const auto a11 = bidegree_project_field(a, pert, Bidegree::P11);
  const auto a02 = bidegree_project_field(a, pert, Bidegree::P02);
  const double scale = a.coeffs.cwiseAbs().maxCoeff();
  CHECK((a20.coeffs + a11.coeffs + a02.coeffs - a.coeffs).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  const auto lhs = conjugate(a20);
  const auto rhs = bidegree_project_field(conjugate(a), pert, Bidegree::P02);
  CHECK((lhs.coeffs - rhs.coeffs).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  CHECK(lhs.bidegree == Bidegree::P02);
  // (1,1) real part is Φ-invariant, (2,0)+(0,2) real part anti-invariant
  const RealForm re11(pert.grid_ptr(), 2, a11.coeffs.real());
  CHECK(max_abs((project_field(re11, pert, Projector::PhiPlus) - re11).coeffs) <= 1e-12 * scale);
}

TEST_CASE("del and delbar") {
  const FormMetric flat(make_flat_structure(8));
  const auto& grid = flat.grid_ptr();
  // Θ = f ω¹∧ω² with ω^j = dx_j + i dy_j
  auto theta_of = [&](auto f) {
    FormField<cd> t(grid, 2);
    const cd i(0, 1);
    for (Eigen::Index node = 0; node < grid->nodes(); ++node) {
      const auto m = grid->multi_index(node);
      const cd v = f(grid->coordinate(m[0]));
      t.coeffs(node, 1) = v;        // dx1∧dx2
      t.coeffs(node, 2) = i * v;    // dx1∧dy2
      t.coeffs(node, 3) = i * v;    // dy1∧dx2
      t.coeffs(node, 4) = -v;       // dy1∧dy2
    }
    return ComplexFormField{t, Bidegree::P20};
  };
  const auto constant = theta_of([](double) { return cd(1.0, 0.0); });
  CHECK((bidegree_project_field(constant, flat, Bidegree::P20).coeffs - constant.coeffs).cwiseAbs().maxCoeff() < 1e-14);
  auto dd = del_delbar(constant, flat);
  CHECK(dd.delbar.coeffs.cwiseAbs().maxCoeff() < 1e-12);

  const auto wave = theta_of([](double x) { return std::exp(cd(0, x)); });
  dd = del_delbar(wave, flat);
  CHECK(dd.del.coeffs.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(dd.delbar.coeffs.cwiseAbs().maxCoeff() > 0.1);
  CHECK(dd.remainder.coeffs.cwiseAbs().maxCoeff() < 1e-10);

  const ComplexFormField a{FormField<cd>(grid, 2,
                                         random_form(grid, 2, 8, 2).coeffs.cast<cd>() +
                                             cd(0, 1) * random_form(grid, 2, 9, 2).coeffs.cast<cd>())};
  for (Bidegree b : {Bidegree::P20, Bidegree::P11, Bidegree::P02}) {
    const auto ab = bidegree_project_field(a, flat, b);
    const auto lhs = del_delbar(ab, flat);
    const auto rhs = del_delbar(conjugate(ab), flat);
    CHECK((lhs.del.coeffs.conjugate() - rhs.delbar.coeffs).cwiseAbs().maxCoeff() < 1e-12 * a.coeffs.cwiseAbs().maxCoeff());
    CHECK(lhs.remainder.coeffs.cwiseAbs().maxCoeff() < 1e-10 * a.coeffs.cwiseAbs().maxCoeff());
  }
  CHECK_THROWS_AS(del_delbar(ComplexFormField(FormField<cd>(grid, 2)), flat), std::invalid_argument);

  // ∂ of a (2,0) form vanishes for any J: there are no (3,0) forms in complex dimension 2
  const FormMetric pert(make_perturbed_structure(8, 6, 0.3, 2));
  const ComplexFormField b{FormField<cd>(pert.grid_ptr(), 2, random_form(pert.grid_ptr(), 2, 10, 2).coeffs.cast<cd>())};
  const auto b20 = bidegree_project_field(b, pert, Bidegree::P20);
  CHECK(del_delbar(b20, pert).del.coeffs.cwiseAbs().maxCoeff() < 1e-10 * b.coeffs.cwiseAbs().maxCoeff());
}

TEST_CASE("checkerboard sector") {
  const auto grid = std::make_shared<const PeriodicGrid>(4);
  RealForm a(grid, 1);
  a.coeffs.col(2) = grid->checkerboards()[3];
  const RealForm pen = checkerboard_penalty(a);
  CHECK(max_abs((pen - grid->cell_volume() * a).coeffs) < 1e-14);
  CHECK(checkerboard_content(a) == doctest::Approx(1.0));
  CHECK(checkerboard_content(d(random_form(grid, 0, 1, 1))) < 1e-12);
}
