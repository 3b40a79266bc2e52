#ifndef WILLMORE_FD_CHECKS_HPP
#define WILLMORE_FD_CHECKS_HPP

#include <Eigen/Dense>

#include <vector>

#include "willmore/orbit_geometry.hpp"
#include "willmore/representation.hpp"

// Finite-difference oracles. The library computations are algebraic; these
// exist so the verification suite (and the tests) can cross-check them
// against honest numerical differentiation.
namespace willmore::fd {

/// exp(s * sum_a coeffs(a) E_a) x — a group motion through x.
Eigen::VectorXd flow_point(const representations::Representation& rep, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& coeffs, double s);

/// Central-difference second fundamental form in the frames of `tangent`:
/// diagonal components from curves exp(s X_i) x, off-diagonal by
/// polarization along X_i +- X_j.
orbit_geometry::SecondFundamentalForm finite_difference_sff(
    const representations::Representation& rep, const Eigen::VectorXd& x,
    const orbit_geometry::TangentData& tangent, double step = 1e-4);

/// Central-difference projected gradient of log product_sphere_W along an
/// orthonormal tangent frame of {sum t_i^2 = 1}.
Eigen::VectorXd finite_difference_product_gradient(const std::vector<int>& dims,
                                                   const Eigen::VectorXd& t, double step = 1e-6);

}  // namespace willmore::fd

#endif
