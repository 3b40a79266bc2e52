#include "willmore/representation.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace willmore::representations {

namespace {

// E_{jk} - E_{kj} acting on R^n; unit norm under <A,B> = -Tr(AB)/2.
Eigen::MatrixXd elementary_rotation(int n, int j, int k) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(j, k) = 1.0;
  m(k, j) = -1.0;
  return m;
}

std::vector<std::pair<int, int>> plane_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) pairs.emplace_back(j, k);
  return pairs;
}

// Orthonormal basis of trace-free symmetric 3x3 matrices under
// <A,B> = Tr(AB):
//   (E23+E32)/s2, (E13+E31)/s2, (E12+E21)/s2, (E11-E22)/s2,
//   (E11+E22-2E33)/s6
std::vector<Eigen::Matrix3d> symmetric_traceless_basis() {
  const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
  std::vector<Eigen::Matrix3d> basis(5, Eigen::Matrix3d::Zero());
  basis[0](1, 2) = basis[0](2, 1) = 1.0 / s2;
  basis[1](0, 2) = basis[1](2, 0) = 1.0 / s2;
  basis[2](0, 1) = basis[2](1, 0) = 1.0 / s2;
  basis[3].diagonal() << 1.0 / s2, -1.0 / s2, 0.0;
  basis[4].diagonal() << 1.0 / s6, 1.0 / s6, -2.0 / s6;
  return basis;
}

}  // namespace

Representation build_so_block_rep(const std::vector<int>& dims) {
  if (dims.empty()) throw std::domain_error("block representation needs at least one sphere factor");
  int ambient = 0;
  std::string name = "so_blocks";
  for (int n : dims) {
    if (n < 1) throw std::domain_error("sphere factors must have dimension >= 1");
    ambient += n + 1;
    name += "_" + std::to_string(n);
  }

  Representation rep;
  rep.name = std::move(name);
  rep.ambient_dim = ambient;
  int offset = 0;
  for (int n : dims) {
    for (auto [j, k] : plane_pairs(n + 1))
      rep.generators.push_back(elementary_rotation(ambient, offset + j, offset + k));
    offset += n + 1;
  }
  return rep;
}

Representation build_so3_conjugation_rep() {
  const auto basis = symmetric_traceless_basis();

  Representation rep;
  rep.name = "so3_conjugation";
  rep.ambient_dim = 5;
  // Generator a acts on a symmetric matrix A as [L_a, A]; express that in
  // the orthonormal coordinates above. {L_a} is orthonormal for -Tr(XY)/2.
  for (auto [j, k] : plane_pairs(3)) {
    Eigen::Matrix3d la = elementary_rotation(3, j, k);
    Eigen::MatrixXd gen(5, 5);
    for (int col = 0; col < 5; ++col) {
      Eigen::Matrix3d image = la * basis[col] - basis[col] * la;
      for (int row = 0; row < 5; ++row) gen(row, col) = (basis[row] * image).trace();
    }
    rep.generators.push_back(std::move(gen));
  }
  return rep;
}

Representation build_so5_adjoint_rep() {
  std::vector<Eigen::MatrixXd> basis;
  for (auto [j, k] : plane_pairs(5)) basis.push_back(elementary_rotation(5, j, k));

  Representation rep;
  rep.name = "so5_adjoint";
  rep.ambient_dim = 10;
  // ad_{L_a} in the coordinates of the plane basis, which is orthonormal
  // for <A,B> = -Tr(AB)/2.
  for (const auto& la : basis) {
    Eigen::MatrixXd gen(10, 10);
    for (int col = 0; col < 10; ++col) {
      Eigen::MatrixXd image = la * basis[col] - basis[col] * la;
      for (int row = 0; row < 10; ++row)
        gen(row, col) = -0.5 * (basis[row] * image).trace();
    }
    rep.generators.push_back(std::move(gen));
  }
  return rep;
}

ValidationReport validate_representation(const Representation& rep) {
  ValidationReport report;

  const int n = rep.ambient_dim;
  const int d = rep.g_dim();
  if (n <= 0 || d == 0) {
    report.failed_check = "shape";
    return report;
  }
  for (const auto& g : rep.generators) {
    if (g.rows() != n || g.cols() != n) {
      report.failed_check = "shape";
      return report;
    }
  }

  for (const auto& g : rep.generators) {
    double r = (g + g.transpose()).cwiseAbs().maxCoeff();
    report.skew_residual = std::max(report.skew_residual, r);
  }
  if (report.skew_residual > kSkewTol) {
    report.failed_check = "skew_symmetry";
    return report;
  }

  Eigen::MatrixXd flat(n * n, d);
  for (int a = 0; a < d; ++a)
    flat.col(a) = Eigen::Map<const Eigen::VectorXd>(rep.generators[a].data(), n * n);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(flat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  report.min_singular_value = svd.singularValues().minCoeff();
  if (report.min_singular_value <= kIndependenceTol) {
    report.failed_check = "linear_independence";
    return report;
  }

  // Brackets must fall back into the span of the generators.
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      Eigen::MatrixXd c = rep.generators[a] * rep.generators[b] - rep.generators[b] * rep.generators[a];
      Eigen::VectorXd vec = Eigen::Map<const Eigen::VectorXd>(c.data(), n * n);
      Eigen::VectorXd coeff = svd.solve(vec);
      report.bracket_residual = std::max(report.bracket_residual, (flat * coeff - vec).norm());
    }
  }
  if (report.bracket_residual > kBracketTol) {
    report.failed_check = "bracket_closure";
    return report;
  }

  report.pass = true;
  return report;
}

}  // namespace willmore::representations
