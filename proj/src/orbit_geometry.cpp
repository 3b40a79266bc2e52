#include "willmore/orbit_geometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace willmore::orbit_geometry {

namespace {

void check_point_shape(const Representation& rep, const Eigen::VectorXd& x) {
  if (x.size() != rep.ambient_dim)
    throw std::domain_error("point dimension does not match the representation's ambient dimension");
}

void check_unit(const Representation& rep, const Eigen::VectorXd& x) {
  check_point_shape(rep, x);
  if (std::abs(x.norm() - 1.0) > kUnitNormTol)
    throw std::domain_error("point not on unit sphere");
}

// Core of tangent_map; accepts points of any radius so that the scale
// invariance check can evaluate the same construction on r*x.
TangentData tangent_data_at(const Representation& rep, const Eigen::VectorXd& x) {
  const int N = rep.ambient_dim;
  const int d = rep.g_dim();

  TangentData td;
  td.phi.resize(N, d);
  for (int a = 0; a < d; ++a) td.phi.col(a) = rep.generators[a] * x;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(td.phi, Eigen::ComputeThinU | Eigen::ComputeThinV);
  td.singular_values = svd.singularValues();

  const double sigma_max = td.singular_values.size() ? td.singular_values(0) : 0.0;
  const double threshold = kRankTol * sigma_max;
  td.orbit_dim = 0;
  for (int i = 0; i < td.singular_values.size(); ++i) {
    double s = td.singular_values(i);
    if (s > threshold) ++td.orbit_dim;
    if (sigma_max > 0.0 && s > 0.1 * threshold && s < 10.0 * threshold) td.ambiguous_rank = true;
  }
  td.isotropy_dim = d - td.orbit_dim;

  const int n = td.orbit_dim;
  td.tangent_frame = svd.matrixU().leftCols(n);
  td.tangent_coeffs = svd.matrixV().leftCols(n);
  for (int i = 0; i < n; ++i) td.tangent_coeffs.col(i) /= td.singular_values(i);

  // Complete {tangent frame, radial direction} to an orthonormal basis;
  // the remaining columns frame the normal space of the orbit inside the
  // sphere. phi^T x = 0 exactly in theory (skew generators), so the
  // stacked matrix has full column rank.
  Eigen::MatrixXd span(N, n + 1);
  span.leftCols(n) = td.tangent_frame;
  span.col(n) = x.normalized();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(span);
  Eigen::MatrixXd q = qr.householderQ();
  td.normal_frame = q.rightCols(N - n - 1);
  return td;
}

SecondFundamentalForm sff_from_tangent(const Representation& rep, const TangentData& td) {
  const int n = td.orbit_dim;
  if (n == 0) throw std::domain_error("point is a fixed point; orbit is 0-dimensional");

  const int d = rep.g_dim();
  std::vector<Eigen::MatrixXd> fields(n);  // X_i = sum_a coeffs(a,i) E_a
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rep.ambient_dim, rep.ambient_dim);
    for (int a = 0; a < d; ++a) m += td.tangent_coeffs(a, i) * rep.generators[a];
    fields[i] = std::move(m);
  }

  SecondFundamentalForm sff;
  sff.orbit_dim = n;
  const int m = static_cast<int>(td.normal_frame.cols());
  sff.components.assign(m, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      // Ambient derivative of the orbit through x along e_i of the Killing
      // field generating e_j, symmetrized: e_j = X_j x exactly.
      Eigen::VectorXd y =
          0.5 * (fields[i] * td.tangent_frame.col(j) + fields[j] * td.tangent_frame.col(i));
      for (int nu = 0; nu < m; ++nu) {
        double v = td.normal_frame.col(nu).dot(y);
        sff.components[nu](i, j) = v;
        sff.components[nu](j, i) = v;
      }
    }
  }
  return sff;
}

OrbitInvariants invariants_at(const Representation& rep, const Eigen::VectorXd& x) {
  TangentData td = tangent_data_at(rep, x);

  OrbitInvariants inv;
  inv.orbit_dim = td.orbit_dim;
  inv.isotropy_dim = td.isotropy_dim;
  inv.ambiguous_rank = td.ambiguous_rank;
  inv.vol_proxy = 1.0;
  for (int i = 0; i < td.orbit_dim; ++i) inv.vol_proxy *= td.singular_values(i);

  const int n = td.orbit_dim;
  if (n == 0) return inv;  // fixed point: S = H2 = integrand = relW = 0

  SecondFundamentalForm sff = sff_from_tangent(rep, td);
  inv.S = sff.norm_squared();
  inv.H2 = sff.mean_curvature_squared();

  double pinch = inv.S - n * inv.H2;
  if (pinch < -kPinchSlack)
    throw std::runtime_error("S - n|H|^2 fell below the clamping slack: inconsistent second fundamental form");
  pinch = std::max(pinch, 0.0);

  // W is a constant functional on orbits of dimension <= 1; the engine
  // reports their mass as 0 so they never pollute critical-point searches.
  inv.integrand = (n <= 1) ? 0.0 : std::pow(pinch, 0.5 * n);
  inv.relW = inv.integrand * inv.vol_proxy;
  return inv;
}

}  // namespace

double SecondFundamentalForm::norm_squared() const {
  double s = 0.0;
  for (const auto& c : components) s += c.squaredNorm();
  return s;
}

double SecondFundamentalForm::mean_curvature_squared() const {
  if (orbit_dim == 0) return 0.0;
  double h2 = 0.0;
  for (const auto& c : components) {
    double t = c.trace();
    h2 += t * t;
  }
  return h2 / (static_cast<double>(orbit_dim) * orbit_dim);
}

TangentData tangent_map(const Representation& rep, const Eigen::VectorXd& x) {
  check_unit(rep, x);
  return tangent_data_at(rep, x);
}

SecondFundamentalForm second_fundamental_form(const Representation& rep, const Eigen::VectorXd& x) {
  check_unit(rep, x);
  return sff_from_tangent(rep, tangent_data_at(rep, x));
}

SecondFundamentalForm second_fundamental_form(const Representation& rep, const Eigen::VectorXd& x,
                                              const TangentData& tangent) {
  check_point_shape(rep, x);
  return sff_from_tangent(rep, tangent);
}

OrbitInvariants orbit_invariants(const Representation& rep, const Eigen::VectorXd& x) {
  check_unit(rep, x);
  return invariants_at(rep, x);
}

double relative_willmore(const Representation& rep, const Eigen::VectorXd& x) {
  return orbit_invariants(rep, x).relW;
}

Fingerprint stratum_fingerprint(const Representation& rep, const Eigen::VectorXd& x) {
  TangentData td = tangent_map(rep, x);
  return {td.orbit_dim, td.isotropy_dim};
}

double scale_invariance_check(const Representation& rep, const Eigen::VectorXd& x, double c) {
  if (c <= 0.0) throw std::domain_error("scale factor must be positive");
  check_unit(rep, x);
  double unit = invariants_at(rep, x).relW;
  double scaled = invariants_at(rep, std::sqrt(c) * x).relW;
  return std::abs(scaled - unit);
}

}  // namespace willmore::orbit_geometry
