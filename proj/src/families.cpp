#include "willmore/families.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace willmore::families {

namespace {

void check_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw std::domain_error("need at least one sphere factor");
  for (int n : dims)
    if (n < 1) throw std::domain_error("sphere factors must have dimension >= 1");
}

int total_dim(const std::vector<int>& dims) {
  int n = 0;
  for (int ni : dims) n += ni;
  return n;
}

// Positive radii, normalized to the unit simplex sum t_i^2 = 1.
Eigen::VectorXd normalized_radii(const std::vector<int>& dims, const Eigen::VectorXd& t) {
  if (t.size() != static_cast<Eigen::Index>(dims.size()))
    throw std::domain_error("radius vector length does not match the number of factors");
  for (Eigen::Index i = 0; i < t.size(); ++i)
    if (t(i) <= 0.0)
      throw std::domain_error("all radii must be positive (boundary stratum; use collapse diagnostics)");
  return t / t.norm();
}

void check_param(double s, double lo, double hi) {
  if (s < lo - 1e-12 || s > hi + 1e-12) throw std::domain_error("parameter outside family domain");
}

}  // namespace

double sphere_volume(int k) {
  if (k < 0) throw std::domain_error("sphere dimension must be nonnegative");
  double half = 0.5 * (k + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double product_sphere_W(const std::vector<int>& dims, const Eigen::VectorXd& t) {
  check_dims(dims);
  Eigen::VectorXd u = normalized_radii(dims, t);
  const double n = total_dim(dims);

  double c = 1.0;
  double radial = 1.0;
  double bracket = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    double ni = dims[i];
    c *= sphere_volume(dims[i]);
    radial *= std::pow(u(static_cast<Eigen::Index>(i)), ni);
    bracket += ni * (n - ni) / n / (u(static_cast<Eigen::Index>(i)) * u(static_cast<Eigen::Index>(i)));
  }
  return c * radial * std::pow(bracket, 0.5 * n);
}

Eigen::VectorXd product_sphere_gradient(const std::vector<int>& dims, const Eigen::VectorXd& t) {
  check_dims(dims);
  if (t.size() != static_cast<Eigen::Index>(dims.size()))
    throw std::domain_error("radius vector length does not match the number of factors");
  for (Eigen::Index i = 0; i < t.size(); ++i)
    if (t(i) <= 0.0)
      throw std::domain_error("all radii must be positive (boundary stratum; use collapse diagnostics)");
  if (std::abs(t.squaredNorm() - 1.0) > 1e-8)
    throw std::domain_error("radii must satisfy sum t_i^2 = 1");

  const double n = total_dim(dims);
  double bracket = 0.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    double ni = dims[i];
    bracket += ni * (n - ni) / n / (t(static_cast<Eigen::Index>(i)) * t(static_cast<Eigen::Index>(i)));
  }

  // d/dt_i log W = n_i/t_i - n_i(n-n_i) t_i^{-3} / bracket
  Eigen::VectorXd grad(t.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    double ni = dims[i];
    double ti = t(static_cast<Eigen::Index>(i));
    grad(static_cast<Eigen::Index>(i)) = ni / ti - ni * (n - ni) / (ti * ti * ti) / bracket;
  }
  return grad - grad.dot(t) * t;
}

Eigen::VectorXd product_sphere_critical(const std::vector<int>& dims) {
  check_dims(dims);
  const int p = static_cast<int>(dims.size());
  if (p < 2) throw std::domain_error("single orbit; trivially Willmore");
  const double n = total_dim(dims);

  Eigen::VectorXd t(p);
  for (int i = 0; i < p; ++i) t(i) = std::sqrt((n - dims[i]) / (n * (p - 1)));
  return t;
}

Eigen::VectorXd product_sphere_point(const std::vector<int>& dims, const Eigen::VectorXd& t) {
  check_dims(dims);
  Eigen::VectorXd u = normalized_radii(dims, t);

  int ambient = 0;
  for (int ni : dims) ambient += ni + 1;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ambient);
  int offset = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    x(offset) = u(static_cast<Eigen::Index>(i));
    offset += dims[i] + 1;
  }
  return x;
}

OrbitFamily veronese_family() {
  const double bound = 1.0 / std::sqrt(6.0);

  OrbitFamily fam;
  fam.family_id = "veronese";
  fam.rep = representations::build_so3_conjugation_rep();
  fam.s_lo = -bound;
  fam.s_hi = bound;
  fam.interior_lo = -bound;
  fam.interior_hi = bound;
  fam.boundary_lo_label = "veronese surface (eigenvalues -1,-1,2 up to scale)";
  fam.boundary_hi_label = "veronese surface (eigenvalues -2,1,1 up to scale)";
  fam.curve = [bound](double s) {
    check_param(s, -bound, bound);
    // diag(l1, s, l3) with trace 0 and unit Frobenius norm, l1 <= s <= l3,
    // written in the fixed orthonormal basis of trace-free symmetrics
    // (only the two diagonal basis elements contribute).
    double q = std::sqrt(2.0 - 3.0 * s * s);
    double l1 = 0.5 * (-s - q);
    double l3 = 0.5 * (-s + q);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(5);
    x(3) = (l1 - s) / std::sqrt(2.0);
    x(4) = (l1 + s - 2.0 * l3) / std::sqrt(6.0);
    return x;
  };
  return fam;
}

OrbitFamily so5_family() {
  OrbitFamily fam;
  fam.family_id = "so5-adjoint";
  fam.rep = representations::build_so5_adjoint_rep();
  fam.s_lo = 0.0;
  fam.s_hi = 0.25 * std::numbers::pi;
  fam.interior_lo = fam.s_lo;
  fam.interior_hi = fam.s_hi;
  fam.boundary_lo_label = "singular orbit, isotropy so(2)+so(3)";
  fam.boundary_hi_label = "singular orbit, isotropy u(2)";
  const double hi = fam.s_hi;
  fam.curve = [hi](double theta) {
    check_param(theta, 0.0, hi);
    // Cartan combination cos(theta) L_{12} + sin(theta) L_{34}; in the
    // lexicographic plane basis those are coordinates 0 and 7.
    Eigen::VectorXd x = Eigen::VectorXd::Zero(10);
    x(0) = std::cos(theta);
    x(7) = std::sin(theta);
    return x;
  };
  return fam;
}

OrbitFamily product_sphere_line_family(const std::vector<int>& dims) {
  check_dims(dims);
  if (dims.size() != 2) throw std::domain_error("line family needs exactly two sphere factors");

  OrbitFamily fam;
  fam.family_id = "product-line";
  fam.rep = representations::build_so_block_rep(dims);
  fam.s_lo = 0.0;
  fam.s_hi = 1.0;
  fam.interior_lo = 0.0;
  fam.interior_hi = 1.0;
  fam.boundary_lo_label = "first factor collapsed";
  fam.boundary_hi_label = "second factor collapsed";
  const int gap = dims[0] + 1;
  const int ambient = dims[0] + dims[1] + 2;
  fam.curve = [gap, ambient](double t) {
    check_param(t, 0.0, 1.0);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(ambient);
    x(0) = t;
    x(gap) = std::sqrt(std::max(0.0, 1.0 - t * t));
    return x;
  };
  return fam;
}

}  // namespace willmore::families
