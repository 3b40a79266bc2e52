#ifndef WILLMORE_REPRESENTATION_HPP
#define WILLMORE_REPRESENTATION_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace willmore::representations {

// Validation thresholds, sized for double-precision accumulation over
// matrix products of dimension <= 10.
inline constexpr double kSkewTol = 1e-12;
inline constexpr double kBracketTol = 1e-9;
inline constexpr double kIndependenceTol = 1e-9;

/// A compact Lie algebra acting on Euclidean space, given as a basis of
/// skew-symmetric generator matrices. Builders return generators in
/// coordinates where the invariant inner product of the representation
/// space is the standard dot product, so the action preserves the unit
/// sphere. Values are immutable after construction and safe to share
/// across threads.
struct Representation {
  std::string name;
  int ambient_dim = 0;
  std::vector<Eigen::MatrixXd> generators;

  int g_dim() const { return static_cast<int>(generators.size()); }
};

struct ValidationReport {
  bool pass = false;
  double skew_residual = 0.0;       // max |E + E^T| entry over generators
  double bracket_residual = 0.0;    // worst Frobenius distance of [E_a,E_b] to the span
  double min_singular_value = 0.0;  // of the matrix of vectorized generators
  std::string failed_check;         // first failing check, empty on pass
};

/// Canonical action of SO(n_1+1) x ... x SO(n_p+1) on R^{sum(n_i+1)},
/// with block-diagonal elementary rotation generators. Orbits of points
/// with block norms t_i are products of round spheres S^{n_i}(t_i).
/// Throws std::domain_error when p = 0 or any n_i < 1.
Representation build_so_block_rep(const std::vector<int>& dims);

/// SO(3) acting by conjugation on trace-free symmetric 3x3 matrices with
/// <A,B> = Tr(AB), coordinatized by a fixed orthonormal basis of R^5.
/// The degenerate-eigenvalue orbits of the induced S^4 action are
/// Veronese surfaces.
Representation build_so3_conjugation_rep();

/// Ad-action of SO(5) on so(5) with <A,B> = -Tr(AB)/2, in the orthonormal
/// basis of elementary rotation generators (lexicographic plane order).
Representation build_so5_adjoint_rep();

/// Checks skew-symmetry, linear independence of the generators, and
/// closure of the span under commutators. Violations are reported in the
/// result, not thrown.
ValidationReport validate_representation(const Representation& rep);

}  // namespace willmore::representations

#endif
