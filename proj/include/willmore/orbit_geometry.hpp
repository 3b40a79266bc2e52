#ifndef WILLMORE_ORBIT_GEOMETRY_HPP
#define WILLMORE_ORBIT_GEOMETRY_HPP

#include <Eigen/Dense>

#include <vector>

#include "willmore/representation.hpp"

namespace willmore::orbit_geometry {

using representations::Representation;

inline constexpr double kRankTol = 1e-9;       // relative to the largest singular value
inline constexpr double kUnitNormTol = 1e-10;  // accepted deviation of |x| from 1
inline constexpr double kPinchSlack = 1e-9;    // tolerated negative S - n|H|^2 before clamping

/// Orbit-type fingerprint of a point: two points in one stratum always
/// agree on it (strata differing only by finite isotropy components can
/// share a fingerprint).
struct Fingerprint {
  int orbit_dim = 0;
  int isotropy_dim = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// Tangent/normal splitting of the ambient space at a point x: the orbit
/// tangent space (columns E_a x), its orthonormal frame, and the normal
/// frame inside the sphere (orthogonal to the orbit and to x).
struct TangentData {
  Eigen::MatrixXd phi;              // ambient_dim x g_dim, column a = E_a x
  Eigen::VectorXd singular_values;  // nonincreasing
  int orbit_dim = 0;                // count of singular values > kRankTol * sigma_max
  int isotropy_dim = 0;             // g_dim - orbit_dim
  Eigen::MatrixXd tangent_frame;    // ambient_dim x orbit_dim, orthonormal
  Eigen::MatrixXd normal_frame;     // ambient_dim x (ambient_dim - 1 - orbit_dim)
  Eigen::MatrixXd tangent_coeffs;   // g_dim x orbit_dim; frame column i = sum_a coeffs(a,i) E_a x
  bool ambiguous_rank = false;      // a singular value fell near the rank threshold
};

/// Components <II(e_i,e_j), nu> of the second fundamental form of the
/// orbit inside the sphere, one symmetric orbit_dim x orbit_dim matrix per
/// normal-frame column nu.
struct SecondFundamentalForm {
  int orbit_dim = 0;
  std::vector<Eigen::MatrixXd> components;

  double norm_squared() const;             // S
  double mean_curvature_squared() const;   // |H|^2
};

/// Per-point geometric summary of the orbit; relW is the Willmore
/// integrand times the volume proxy and equals the orbit's Willmore
/// energy up to a constant factor depending only on the stratum.
struct OrbitInvariants {
  int orbit_dim = 0;
  int isotropy_dim = 0;
  double S = 0.0;
  double H2 = 0.0;
  double integrand = 0.0;  // (S - n|H|^2)^{n/2}, 0 when n <= 1
  double vol_proxy = 0.0;  // product of the nonzero singular values of phi
  double relW = 0.0;
  bool ambiguous_rank = false;

  Fingerprint fingerprint() const { return {orbit_dim, isotropy_dim}; }
};

/// Throws std::domain_error unless |x| = 1 within kUnitNormTol. Ambiguous
/// rank (a singular value within a factor 10 of the threshold) sets a flag
/// instead of failing.
TangentData tangent_map(const Representation& rep, const Eigen::VectorXd& x);

/// Algebraic second fundamental form: frame vectors are e_i = X_i x with
/// X_i = sum_a coeffs(a,i) E_a, and II(e_i,e_j) is the normal projection
/// of (X_i e_j + X_j e_i)/2. No finite differences. Throws
/// std::domain_error at fixed points (orbit_dim = 0).
SecondFundamentalForm second_fundamental_form(const Representation& rep, const Eigen::VectorXd& x);
SecondFundamentalForm second_fundamental_form(const Representation& rep, const Eigen::VectorXd& x,
                                              const TangentData& tangent);

OrbitInvariants orbit_invariants(const Representation& rep, const Eigen::VectorXd& x);

/// OrbitInvariants.relW; comparisons are meaningful only between points
/// with the same stratum fingerprint.
double relative_willmore(const Representation& rep, const Eigen::VectorXd& x);

Fingerprint stratum_fingerprint(const Representation& rep, const Eigen::VectorXd& x);

/// Rescales the ambient metric by c (all lengths by sqrt(c)), recomputes
/// the invariants of the orbit of x inside the sphere of radius sqrt(c),
/// and returns |relW_scaled - relW_unit|. The two agree exactly in theory;
/// the residual measures numerical faithfulness. Throws std::domain_error
/// for c <= 0.
double scale_invariance_check(const Representation& rep, const Eigen::VectorXd& x, double c);

}  // namespace willmore::orbit_geometry

#endif
