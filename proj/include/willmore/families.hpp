#ifndef WILLMORE_FAMILIES_HPP
#define WILLMORE_FAMILIES_HPP

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "willmore/representation.hpp"

namespace willmore::families {

using representations::Representation;

/// A parametrized curve of sphere points sweeping a one-dimensional orbit
/// space: curve(s) is a unit vector for s in [s_lo, s_hi], and the open
/// interval (interior_lo, interior_hi) carries a constant principal
/// fingerprint. curve throws std::domain_error outside the domain.
struct OrbitFamily {
  std::string family_id;
  Representation rep;
  std::function<Eigen::VectorXd(double)> curve;
  double s_lo = 0.0;
  double s_hi = 0.0;
  double interior_lo = 0.0;
  double interior_hi = 0.0;
  std::string boundary_lo_label;
  std::string boundary_hi_label;
};

/// Volume of the unit k-sphere, 2 pi^{(k+1)/2} / Gamma((k+1)/2).
double sphere_volume(int k);

/// Exact Willmore energy of S^{n_1}(t_1) x ... x S^{n_p}(t_p) inside
/// S^{n+p-1}(1):
///   C * prod t_i^{n_i} * [sum n_i(n-n_i)/n * t_i^{-2}]^{n/2},
/// with C = prod sphere_volume(n_i). The input t is normalized to
/// sum t_i^2 = 1 first, so the function is homogeneous of degree 0.
/// Throws std::domain_error when some t_i <= 0 (boundary stratum; use the
/// collapse diagnostics for those limits).
double product_sphere_W(const std::vector<int>& dims, const Eigen::VectorXd& t);

/// Analytic gradient of log product_sphere_W projected onto the tangent
/// space of {sum t_i^2 = 1}; same zero set as the gradient of W, better
/// conditioned. Requires sum t_i^2 = 1.
Eigen::VectorXd product_sphere_gradient(const std::vector<int>& dims, const Eigen::VectorXd& t);

/// The unique interior critical radii t_i = sqrt((n-n_i)/(n(p-1))).
/// Throws std::domain_error for p = 1 (single orbit; trivially Willmore).
Eigen::VectorXd product_sphere_critical(const std::vector<int>& dims);

/// Embeds the radii into the representation space of build_so_block_rep:
/// block i gets (t_i, 0, ..., 0). The orbit of the result is the product
/// of spheres with those radii. t is normalized to sum t_i^2 = 1.
Eigen::VectorXd product_sphere_point(const std::vector<int>& dims, const Eigen::VectorXd& t);

/// Diagonal trace-free symmetric matrices diag(l1, s, l3) of unit
/// Frobenius norm with l1 <= s <= l3, parametrized by the middle
/// eigenvalue s in [-1/sqrt(6), 1/sqrt(6)]. Interior orbits are flag
/// manifolds (fingerprint (3,0)); both endpoints are Veronese surfaces
/// (fingerprint (2,1)).
OrbitFamily veronese_family();

/// Cartan curve cos(theta) L_{12} + sin(theta) L_{34} in so(5), theta in
/// [0, pi/4] (one Weyl chamber). Interior fingerprint (8,2); endpoint
/// isotropy algebras so(2)+so(3) and u(2), both fingerprint (6,4).
OrbitFamily so5_family();

/// p = 2 only: curve(t) = product_sphere_point(dims, (t, sqrt(1-t^2))),
/// t in [0,1]; each endpoint collapses one factor.
OrbitFamily product_sphere_line_family(const std::vector<int>& dims);

}  // namespace willmore::families

#endif
