#include "basic_hodge/transverse_geometry.hpp"

#include "basic_hodge/errors.hpp"
#include "basic_hodge/random.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace basic_hodge {

std::string Provenance::describe() const {
  if (kind == Kind::Flat) return "flat";
  std::ostringstream os;
  os << "perturbed(seed=" << seed << ", amplitude=" << amplitude << ", modes=" << mode_cutoff << ")";
  return os.str();
}

Eigen::Matrix4d standard_symplectic() {
  Eigen::Matrix4d o = Eigen::Matrix4d::Zero();
  o(0, 1) = 1.0;
  o(1, 0) = -1.0;
  o(2, 3) = 1.0;
  o(3, 2) = -1.0;
  return o;
}

Eigen::Matrix4d standard_complex_structure() { return -standard_symplectic(); }

StructureField make_flat_structure(int n) {
  StructureField s;
  s.grid = std::make_shared<const PeriodicGrid>(n);
  s.omega0 = standard_symplectic();
  const Eigen::Index nodes = s.grid->nodes();
  s.J.assign(static_cast<std::size_t>(nodes), standard_complex_structure());
  s.g.assign(static_cast<std::size_t>(nodes), Eigen::Matrix4d::Identity());
  s.coframe.assign(static_cast<std::size_t>(nodes), Eigen::Matrix4d::Identity());
  return s;
}

namespace {

Eigen::Matrix4d random_symmetric(NormalSource& normal) {
  Eigen::Matrix4d s;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) s(i, j) = s(j, i) = normal();
  return s;
}

struct Mode {
  std::array<int, 4> k;
  Eigen::Matrix4d cos_part;
  Eigen::Matrix4d sin_part;
};

}  // namespace

StructureField make_perturbed_structure(int n, std::uint64_t seed, double amplitude, int mode_cutoff) {
  if (!(amplitude >= 0.0)) throw std::invalid_argument("amplitude must be non-negative");
  if (mode_cutoff < 0 || 2 * mode_cutoff >= n) throw std::invalid_argument("mode cutoff must satisfy 0 ≤ m < N/2");
  StructureField s = make_flat_structure(n);
  s.provenance = {Provenance::Kind::Perturbed, seed, amplitude, mode_cutoff};
  if (amplitude == 0.0) return s;

  // k ∈ [−m, m]⁴ up to k ~ −k; the zero mode carries only a cosine part.
  NormalSource normal(seed);
  std::vector<Mode> modes;
  double mean_square = 0.0;
  const int m = mode_cutoff;
  for (int a = -m; a <= m; ++a)
    for (int b = -m; b <= m; ++b)
      for (int c = -m; c <= m; ++c)
        for (int d = -m; d <= m; ++d) {
          const std::array<int, 4> k{a, b, c, d};
          int lead = 0;
          for (int v : k)
            if (v != 0) {
              lead = v;
              break;
            }
          if (lead < 0) continue;
          Mode mode{k, random_symmetric(normal), Eigen::Matrix4d::Zero()};
          if (lead == 0) {
            mean_square += mode.cos_part.squaredNorm();
          } else {
            mode.sin_part = random_symmetric(normal);
            mean_square += 0.5 * (mode.cos_part.squaredNorm() + mode.sin_part.squaredNorm());
          }
          modes.push_back(std::move(mode));
        }
  const double scale = amplitude / std::sqrt(mean_square);

  const Eigen::Matrix4d omega = s.omega0;
  const Eigen::Matrix4d j0 = standard_complex_structure();
  const PeriodicGrid& grid = *s.grid;
  std::vector<double> cos_table(static_cast<std::size_t>(n)), sin_table(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    cos_table[static_cast<std::size_t>(i)] = std::cos(grid.coordinate(i));
    sin_table[static_cast<std::size_t>(i)] = std::sin(grid.coordinate(i));
  }

  for (Eigen::Index node = 0; node < grid.nodes(); ++node) {
    const auto idx = grid.multi_index(node);
    Eigen::Matrix4d sym = Eigen::Matrix4d::Zero();
    for (const auto& mode : modes) {
      int phase = 0;
      for (int a = 0; a < 4; ++a) phase += mode.k[static_cast<std::size_t>(a)] * idx[static_cast<std::size_t>(a)];
      phase = ((phase % n) + n) % n;
      sym += cos_table[static_cast<std::size_t>(phase)] * mode.cos_part +
             sin_table[static_cast<std::size_t>(phase)] * mode.sin_part;
    }
    const Eigen::Matrix4d a = scale * (omega * sym);
    const Eigen::Matrix4d u = a.exp();
    const Eigen::Matrix4d u_inv = (-a).exp();
    const Eigen::Matrix4d j = u * j0 * u_inv;
    const Eigen::Matrix4d g = omega * j;
    s.J[static_cast<std::size_t>(node)] = j;
    s.g[static_cast<std::size_t>(node)] = 0.5 * (g + g.transpose());
  }
  s = adapted_coframe(std::move(s));

  const StructureResiduals r = structure_residuals(s);
  const double worst = std::max({r.complex_structure, r.compatibility, r.metric, r.determinant, r.coframe});
  if (!(worst <= 1e-10) || !(r.min_eigenvalue > 0.0)) {
    std::ostringstream os;
    os << "perturbed structure violates its invariants (max residual " << worst << ")";
    throw InvalidStructure(os.str());
  }
  return s;
}

StructureField adapted_coframe(StructureField s) {
  for (std::size_t node = 0; node < s.J.size(); ++node) {
    const Eigen::Matrix4d& j = s.J[node];
    const Eigen::Matrix4d& g = s.g[node];
    auto dot = [&g](const Eigen::Vector4d& u, const Eigen::Vector4d& v) { return u.dot(g * v); };

    Eigen::Vector4d e1 = Eigen::Vector4d::Unit(0);
    e1 /= std::sqrt(dot(e1, e1));
    const Eigen::Vector4d f1 = j * e1;

    Eigen::Vector4d e2;
    double norm = 0.0;
    for (int axis : {2, 3}) {
      e2 = Eigen::Vector4d::Unit(axis);
      e2 -= dot(e2, e1) * e1 + dot(e2, f1) * f1;
      norm = std::sqrt(dot(e2, e2));
      if (norm >= 1e-8) break;
    }
    if (norm < 1e-8) throw InvalidStructure("adapted frame degenerates at a node");
    e2 /= norm;
    const Eigen::Vector4d f2 = j * e2;

    Eigen::Matrix4d frame;
    frame << e1, f1, e2, f2;
    s.coframe[node] = frame.inverse();
  }
  return s;
}

StructureResiduals structure_residuals(const StructureField& s) {
  StructureResiduals r;
  r.min_eigenvalue = std::numeric_limits<double>::infinity();
  const Eigen::Matrix4d& omega = s.omega0;
  const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
  for (std::size_t node = 0; node < s.J.size(); ++node) {
    const Eigen::Matrix4d& j = s.J[node];
    const Eigen::Matrix4d& g = s.g[node];
    const Eigen::Matrix4d& c = s.coframe[node];
    r.complex_structure = std::max(r.complex_structure, (j * j + id).norm());
    r.compatibility = std::max(r.compatibility, (j.transpose() * omega * j - omega).norm());
    r.metric = std::max(r.metric, (g - omega * j).norm() + (g - g.transpose()).norm());
    r.determinant = std::max(r.determinant, std::abs(g.determinant() - 1.0));
    r.min_eigenvalue = std::min(r.min_eigenvalue, Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(g).eigenvalues()(0));
    const Eigen::Matrix4d frame = c.inverse();
    double adapt = (frame.transpose() * g * frame - id).norm();
    adapt += (c.row(1) + c.row(0) * j).norm() + (c.row(3) + c.row(2) * j).norm();
    r.coframe = std::max(r.coframe, adapt);
  }
  return r;
}

Eigen::VectorXd nijenhuis_norm(const StructureField& s) {
  const PeriodicGrid& grid = *s.grid;
  const Eigen::Index nodes = grid.nodes();
  // component fields J_kb and their derivatives ∂_c J_kb
  std::array<Eigen::VectorXd, 16> comp;
  std::array<std::array<Eigen::VectorXd, 16>, 4> deriv;
  for (int e = 0; e < 16; ++e) {
    comp[static_cast<std::size_t>(e)].resize(nodes);
    for (Eigen::Index node = 0; node < nodes; ++node)
      comp[static_cast<std::size_t>(e)](node) = s.J[static_cast<std::size_t>(node)](e / 4, e % 4);
    for (int c = 0; c < 4; ++c) {
      auto& out = deriv[static_cast<std::size_t>(c)][static_cast<std::size_t>(e)];
      out.resize(nodes);
      grid.differentiate(comp[static_cast<std::size_t>(e)].data(), out.data(), c);
    }
  }
  Eigen::VectorXd result(nodes);
  for (Eigen::Index node = 0; node < nodes; ++node) {
    const Eigen::Matrix4d& j = s.J[static_cast<std::size_t>(node)];
    std::array<Eigen::Matrix4d, 4> dj;  // dj[c](k, b) = ∂_c J_kb
    for (int c = 0; c < 4; ++c)
      for (int e = 0; e < 16; ++e)
        dj[static_cast<std::size_t>(c)](e / 4, e % 4) = deriv[static_cast<std::size_t>(c)][static_cast<std::size_t>(e)](node);
    double sum = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        Eigen::Vector4d v = Eigen::Vector4d::Zero();
        for (int i = 0; i < 4; ++i)
          v += j(i, a) * dj[static_cast<std::size_t>(i)].col(b) - j(i, b) * dj[static_cast<std::size_t>(i)].col(a);
        v += j * dj[static_cast<std::size_t>(b)].col(a) - j * dj[static_cast<std::size_t>(a)].col(b);
        sum += v.squaredNorm();
      }
    result(node) = std::sqrt(sum);
  }
  return result;
}

void write_structure(std::ostream& os, const StructureField& s) {
  os << "# basic_hodge structure v1 N=" << s.n() << " nodes=" << s.nodes() << " provenance=" << s.provenance.describe()
     << "\n# node i0 i1 i2 i3 | J(16, row-major) | g(16) | coframe(16)\n";
  os << std::setprecision(17);
  for (Eigen::Index node = 0; node < s.nodes(); ++node) {
    const auto idx = s.grid->multi_index(node);
    os << node << ' ' << idx[0] << ' ' << idx[1] << ' ' << idx[2] << ' ' << idx[3];
    for (const auto* field : {&s.J, &s.g, &s.coframe}) {
      const Eigen::Matrix4d& m = (*field)[static_cast<std::size_t>(node)];
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) os << ' ' << m(r, c);
    }
    os << '\n';
  }
}

}  // namespace basic_hodge
