#ifndef WILLMORE_CRITICAL_SEARCH_HPP
#define WILLMORE_CRITICAL_SEARCH_HPP

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

#include "willmore/families.hpp"
#include "willmore/orbit_geometry.hpp"

namespace willmore::critical_search {

using families::OrbitFamily;
using orbit_geometry::Fingerprint;

struct ScanPoint {
  double param = 0.0;
  double value = 0.0;  // relative Willmore value
  Fingerprint fingerprint;
};

enum class CriticalKind { minimum, maximum, saddle_or_inflection };
const char* to_string(CriticalKind kind);

/// A located critical orbit: params has one entry for curve families and
/// the full radius vector for the product-sphere simplex search.
struct CriticalPoint {
  Eigen::VectorXd params;
  double value = 0.0;
  CriticalKind kind = CriticalKind::saddle_or_inflection;
  double grad_norm = 0.0;
  double second_deriv = 0.0;

  double param() const { return params(0); }
};

enum class Boundary { lo, hi };

/// Power-law fit of the energy blow-up toward a boundary stratum: slope of
/// log(relW) against log(distance-to-boundary). The exponent and r2 are
/// fitted over the final two decades of distances; samples keeps every
/// (distance, value) pair measured.
struct CollapseFit {
  Boundary boundary = Boundary::lo;
  std::string boundary_label;
  double exponent = 0.0;
  double r2 = 0.0;
  bool diverges = false;  // exponent < 0
  bool accepted = false;  // diverges and r2 >= 0.999
  std::vector<std::pair<double, double>> samples;
};

/// Extrema census of a family: counts of classified critical points plus
/// whether the energy diverges at both ends (in which case at least one
/// interior minimum must exist, and its absence is reported as an error).
struct ExtremaReport {
  int count_min = 0;
  int count_max = 0;
  int count_other = 0;
  bool both_ends_diverge = false;
  std::vector<CriticalPoint> critical_points;
};

/// Uniform grid over the family interior shrunk by `margin` (fraction of
/// the interior length cut at each end), evaluated concurrently; results
/// are in increasing parameter order. Requires steps >= 8 and margin in
/// (0, 0.2).
std::vector<ScanPoint> scan_1d(const OrbitFamily& family, int steps, double margin = 0.02);

/// Brackets sign changes of the central-difference derivative of
/// log(relW) along the curve (raw relW when the family is not positive;
/// the log makes grad_tol scale-free and stratum constants cancel
/// exactly) and bisects them down to machine-level parameter width; roots
/// whose residual derivative exceeds grad_tol are dropped, and roots
/// closer than 1e-6 are deduplicated. Classification is by the
/// finite-difference second derivative. An empty result means no sign
/// change was found (not an error).
std::vector<CriticalPoint> find_critical_1d(const OrbitFamily& family, double grad_tol = 1e-8,
                                            int max_iter = 100);

/// Minimizes the product-sphere energy over the simplex
/// {sum t_i^2 = 1, t_i > 0} by projected gradient descent with
/// backtracking, switching to a projected Newton polish once the gradient
/// is small (log W differences fall below double resolution before the
/// gradient does). Empty init starts from the barycenter. Iterates
/// entering min t_i < 1e-6 abort with an error: that is a collapse
/// direction, not a critical point.
CriticalPoint optimize_product_spheres(const std::vector<int>& dims,
                                       Eigen::VectorXd init = Eigen::VectorXd(),
                                       double tol = 1e-10, int max_iter = 500);

/// Samples distances d_k = d0 * 10^{-k/4}, k = 0..4*decades, from the
/// chosen boundary (d0 = 10% of the interior length) and fits the
/// power-law exponent. Requires decades >= 2.
CollapseFit collapse_exponent(const OrbitFamily& family, Boundary boundary, int decades = 3);

/// Runs find_critical_1d plus collapse fits at both ends and tallies the
/// results. Throws if both ends diverge yet no interior minimum was found.
ExtremaReport extrema_report(const OrbitFamily& family);

}  // namespace willmore::critical_search

#endif
