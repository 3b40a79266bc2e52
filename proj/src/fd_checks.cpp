#include "willmore/fd_checks.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "willmore/families.hpp"

namespace willmore::fd {

namespace {

Eigen::MatrixXd algebra_element(const representations::Representation& rep,
                                const Eigen::VectorXd& coeffs) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rep.ambient_dim, rep.ambient_dim);
  for (int a = 0; a < rep.g_dim(); ++a) m += coeffs(a) * rep.generators[a];
  return m;
}

}  // namespace

Eigen::VectorXd flow_point(const representations::Representation& rep, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& coeffs, double s) {
  if (coeffs.size() != rep.g_dim())
    throw std::domain_error("coefficient count does not match the algebra dimension");
  return (s * algebra_element(rep, coeffs)).exp() * x;
}

orbit_geometry::SecondFundamentalForm finite_difference_sff(
    const representations::Representation& rep, const Eigen::VectorXd& x,
    const orbit_geometry::TangentData& tangent, double step) {
  const int n = tangent.orbit_dim;
  if (n == 0) throw std::domain_error("point is a fixed point; orbit is 0-dimensional");

  std::vector<Eigen::MatrixXd> fields(n);
  for (int i = 0; i < n; ++i) fields[i] = algebra_element(rep, tangent.tangent_coeffs.col(i));

  // Second derivative at 0 of s -> exp(s M) x.
  auto curve_accel = [&](const Eigen::MatrixXd& m) -> Eigen::VectorXd {
    Eigen::VectorXd plus = (step * m).exp() * x;
    Eigen::VectorXd minus = (-step * m).exp() * x;
    return (plus - 2.0 * x + minus) / (step * step);
  };

  orbit_geometry::SecondFundamentalForm sff;
  sff.orbit_dim = n;
  const int m = static_cast<int>(tangent.normal_frame.cols());
  sff.components.assign(m, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Eigen::VectorXd y;
      if (i == j) {
        y = curve_accel(fields[i]);
      } else {
        // 4 II(e_i,e_j) = II(e_i+e_j, e_i+e_j) - II(e_i-e_j, e_i-e_j)
        y = 0.25 * (curve_accel(fields[i] + fields[j]) - curve_accel(fields[i] - fields[j]));
      }
      for (int nu = 0; nu < m; ++nu) {
        double v = tangent.normal_frame.col(nu).dot(y);
        sff.components[nu](i, j) = v;
        sff.components[nu](j, i) = v;
      }
    }
  }
  return sff;
}

Eigen::VectorXd finite_difference_product_gradient(const std::vector<int>& dims,
                                                   const Eigen::VectorXd& t, double step) {
  const Eigen::Index p = t.size();
  Eigen::MatrixXd column = t;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(column);
  Eigen::MatrixXd frame = Eigen::MatrixXd(qr.householderQ()).rightCols(p - 1);

  // product_sphere_W is 0-homogeneous, so plain offsets differentiate the
  // constrained function.
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(p);
  for (Eigen::Index k = 0; k < p - 1; ++k) {
    Eigen::VectorXd u = frame.col(k);
    double fwd = std::log(families::product_sphere_W(dims, t + step * u));
    double bwd = std::log(families::product_sphere_W(dims, t - step * u));
    grad += ((fwd - bwd) / (2.0 * step)) * u;
  }
  return grad;
}

}  // namespace willmore::fd
