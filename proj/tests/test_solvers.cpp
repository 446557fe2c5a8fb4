#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "basic_hodge/solvers.hpp"

#include <cmath>

using namespace basic_hodge;

namespace {

// 1-D periodic Laplacian tensor-free test problem: A = tridiag(−1, 2, −1) with a
// 3-dimensional kernel inserted, B = diag(1 + i/n).
struct Problem {
  Eigen::Index n = 400;
  Eigen::VectorXd bdiag;
  Eigen::MatrixXd dense;

  Problem() {
    bdiag.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) bdiag(i) = 1.0 + static_cast<double>(i) / n;
    Eigen::VectorXd spec(n);
    for (Eigen::Index i = 0; i < n; ++i) spec(i) = i < 3 ? 0.0 : 0.5 + i;
    Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::Random(n, n)).householderQ();
    // A = B^{1/2} Q diag Qᵀ B^{1/2} has generalized eigenvalues spec
    const Eigen::VectorXd s = bdiag.cwiseSqrt();
    dense = s.asDiagonal() * q * spec.asDiagonal() * q.transpose() * s.asDiagonal();
  }
};

}  // namespace

TEST_CASE("lobpcg finds the kernel and the next eigenvalue") {
  Problem pr;
  BlockOperator a = [&](const Eigen::MatrixXd& x, Eigen::MatrixXd& y) { y = pr.dense * x; };
  BlockOperator b = [&](const Eigen::MatrixXd& x, Eigen::MatrixXd& y) { y = pr.bdiag.asDiagonal() * x; };
  BlockOperator binv = [&](const Eigen::MatrixXd& x, Eigen::MatrixXd& y) { y = pr.bdiag.cwiseInverse().asDiagonal() * x; };
  BlockOperator t = [&](const Eigen::MatrixXd& x, Eigen::MatrixXd& y) { y = x; };
  LobpcgOptions opt;
  opt.block = 7;
  opt.want = 4;
  opt.max_iterations = 2000;
  const auto r = lobpcg(a, b, binv, t, pr.n, opt);
  REQUIRE(r.converged);
  CHECK(std::abs(r.values(0)) < 1e-12);
  CHECK(std::abs(r.values(2)) < 1e-12);
  CHECK(r.values(3) == doctest::Approx(3.5).epsilon(1e-8));
  const Eigen::MatrixXd gram = r.vectors.transpose() * pr.bdiag.asDiagonal() * r.vectors;
  CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).norm() < 1e-10);
  const auto cert = certify_kernel(r.values.head(4), 1e-8, false);
  CHECK(cert.count == 3);
  CHECK(cert.certificate > 1e6);
}

TEST_CASE("gap certificate edge cases") {
  Eigen::VectorXd v(3);
  v << 0.5, 1.0, 2.0;
  auto c = certify_kernel(v, 1e-8, true);
  CHECK(c.count == 0);
  CHECK(c.certificate == doctest::Approx(0.5e8));
  v << 1e-14, 1e-13, 1e-12;
  c = certify_kernel(v, 1e-8, true);
  CHECK(c.count == 3);
  CHECK(c.certificate == doctest::Approx(1e4));
  CHECK(certify_kernel(v, 1e-8, false).certificate == 0.0);
  v << 1e-14, 1e-9, 1.0;
  c = certify_kernel(v, 1e-8, true);
  CHECK(c.count == 2);
  CHECK(c.certificate == doctest::Approx(1e9));
}

TEST_CASE("pcg solves a consistent semidefinite system") {
  const int n = 50;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 2.0;
    a(i, (i + 1) % n) = -1.0;
    a((i + 1) % n, i) = -1.0;
  }
  Eigen::VectorXd xs = Eigen::VectorXd::Random(n);
  xs.array() -= xs.mean();
  const Eigen::VectorXd b = a * xs;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> op = [&](const Eigen::VectorXd& u, Eigen::VectorXd& v) { v = a * u; };
  std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> id = [](const Eigen::VectorXd& u, Eigen::VectorXd& v) { v = u; };
  const auto r = pcg(op, id, b, x, 1e-12, 500);
  CHECK(r.converged);
  CHECK((x - xs).norm() < 1e-9);

  Eigen::VectorXcd bc = b.cast<std::complex<double>>() * std::complex<double>(0, 2);
  Eigen::VectorXcd xc = Eigen::VectorXcd::Zero(n);
  std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)> opc = [&](const Eigen::VectorXcd& u, Eigen::VectorXcd& v) { v = a * u; };
  std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)> idc = [](const Eigen::VectorXcd& u, Eigen::VectorXcd& v) { v = u; };
  CHECK(pcg(opc, idc, bc, xc, 1e-12, 500).converged);
  CHECK((xc - xs.cast<std::complex<double>>() * std::complex<double>(0, 2)).norm() < 1e-9);
}
