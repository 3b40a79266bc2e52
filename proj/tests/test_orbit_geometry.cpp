#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "willmore/families.hpp"
#include "willmore/fd_checks.hpp"
#include "willmore/orbit_geometry.hpp"
#include "willmore/representation.hpp"

using namespace willmore;
using namespace willmore::orbit_geometry;
namespace reps = willmore::representations;
namespace fams = willmore::families;

namespace {

Eigen::VectorXd product_point(const std::vector<int>& dims, const std::vector<double>& t) {
  return fams::product_sphere_point(
      dims, Eigen::Map<const Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size())));
}

// Closed forms for S^{n_1}(t_1) x ... x S^{n_p}(t_p) in the unit sphere.
double product_S(const std::vector<int>& dims, const Eigen::VectorXd& t) {
  double s = 0.0;
  for (size_t i = 0; i < dims.size(); ++i) s += dims[i] * (1.0 / (t(i) * t(i)) - 1.0);
  return s;
}

double product_H2(const std::vector<int>& dims, const Eigen::VectorXd& t) {
  double n = 0.0, acc = 0.0;
  for (int d : dims) n += d;
  for (size_t i = 0; i < dims.size(); ++i)
    acc += static_cast<double>(dims[i]) * dims[i] / (t(i) * t(i));
  return acc / (n * n) - 1.0;
}

}  // namespace

TEST_CASE("rejects points off the unit sphere") {
  reps::Representation rep = reps::build_so_block_rep({1, 1});
  Eigen::VectorXd x = product_point({1, 1}, {M_SQRT1_2, M_SQRT1_2});
  CHECK_THROWS_WITH_AS(tangent_map(rep, 1.01 * x), "point not on unit sphere",
                       std::domain_error);
  CHECK_NOTHROW(tangent_map(rep, x));
}

TEST_CASE("tangent data frames are orthonormal and split the sphere") {
  reps::Representation rep = reps::build_so_block_rep({2, 3});
  Eigen::VectorXd x = product_point({2, 3}, {0.6, 0.8});
  TangentData data = tangent_map(rep, x);
  CHECK(data.orbit_dim == 5);
  CHECK(data.isotropy_dim == rep.g_dim() - 5);
  const int N = rep.ambient_dim;
  CHECK(data.normal_frame.cols() == N - 1 - data.orbit_dim);

  Eigen::MatrixXd tt = data.tangent_frame.transpose() * data.tangent_frame;
  CHECK((tt - Eigen::MatrixXd::Identity(5, 5)).norm() < 1e-12);
  Eigen::MatrixXd nn = data.normal_frame.transpose() * data.normal_frame;
  CHECK((nn - Eigen::MatrixXd::Identity(nn.rows(), nn.cols())).norm() < 1e-12);
  CHECK((data.normal_frame.transpose() * data.tangent_frame).norm() < 1e-12);
  CHECK((data.normal_frame.transpose() * x).norm() < 1e-12);
  CHECK((data.tangent_frame.transpose() * x).norm() < 1e-12);

  // tangent_coeffs reproduces the frame through the generators
  for (int i = 0; i < data.orbit_dim; ++i) {
    Eigen::VectorXd rebuilt = Eigen::VectorXd::Zero(N);
    for (int a = 0; a < rep.g_dim(); ++a)
      rebuilt += data.tangent_coeffs(a, i) * (rep.generators[a] * x);
    CHECK((rebuilt - data.tangent_frame.col(i)).norm() < 1e-10);
  }
}

TEST_CASE("great subsphere orbits are totally geodesic") {
  reps::Representation rep = reps::build_so_block_rep({3});
  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  x(0) = 1.0;
  OrbitInvariants inv = orbit_invariants(rep, x);
  CHECK(inv.orbit_dim == 3);
  CHECK(inv.isotropy_dim == 3);  // stabilizer SO(3)
  CHECK(std::abs(inv.S) < 1e-12);
  CHECK(std::abs(inv.H2) < 1e-12);
  CHECK(inv.integrand == 0.0);
  CHECK(inv.vol_proxy == doctest::Approx(1.0));
}

TEST_CASE("equatorial S^2 in S^3 is totally geodesic with vanishing SFF") {
  // so(3) rotating only the first three coordinates of R^4: the orbit of
  // e0 is a great 2-sphere with an honest normal direction to test.
  reps::Representation rep = reps::build_so_block_rep({2});
  for (Eigen::MatrixXd& gen : rep.generators) {
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(4, 4);
    padded.topLeftCorner(3, 3) = gen;
    gen = padded;
  }
  rep.ambient_dim = 4;
  REQUIRE(reps::validate_representation(rep).pass);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  x(0) = 1.0;
  TangentData data = tangent_map(rep, x);
  CHECK(data.orbit_dim == 2);
  REQUIRE(data.normal_frame.cols() == 1);
  SecondFundamentalForm sff = second_fundamental_form(rep, x, data);
  REQUIRE(sff.components.size() == 1);
  CHECK(sff.components[0].cwiseAbs().maxCoeff() <= 1e-10);
  OrbitInvariants inv = orbit_invariants(rep, x);
  CHECK(std::abs(inv.S) <= 1e-10);
  CHECK(std::abs(inv.H2) <= 1e-10);
}

TEST_CASE("tangent map singular values are the block radii") {
  reps::Representation rep = reps::build_so_block_rep({1, 1});
  Eigen::VectorXd x = product_point({1, 1}, {0.6, 0.8});
  TangentData data = tangent_map(rep, x);
  REQUIRE(data.singular_values.size() == 2);
  // nonincreasing, so the larger radius comes first
  CHECK(data.singular_values(0) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(data.singular_values(1) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(data.orbit_dim == 2);
}

TEST_CASE("circle orbits carry no Willmore energy") {
  reps::Representation rep = reps::build_so_block_rep({1, 1});
  Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
  x(0) = 1.0;  // second factor collapsed: orbit is a great circle
  OrbitInvariants inv = orbit_invariants(rep, x);
  CHECK(inv.orbit_dim == 1);
  CHECK(inv.integrand == 0.0);
  CHECK(inv.relW == 0.0);
  CHECK(inv.vol_proxy == doctest::Approx(1.0));
}

TEST_CASE("fixed points are flagged") {
  // Pad the conjugation representation with an inert sixth coordinate.
  reps::Representation rep = reps::build_so3_conjugation_rep();
  for (Eigen::MatrixXd& gen : rep.generators) {
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(6, 6);
    padded.topLeftCorner(5, 5) = gen;
    gen = padded;
  }
  rep.ambient_dim = 6;
  REQUIRE(reps::validate_representation(rep).pass);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
  x(5) = 1.0;
  OrbitInvariants inv = orbit_invariants(rep, x);
  CHECK(inv.orbit_dim == 0);
  CHECK(inv.isotropy_dim == 3);
  CHECK(inv.relW == 0.0);
  CHECK_THROWS_WITH_AS(second_fundamental_form(rep, x),
                       "point is a fixed point; orbit is 0-dimensional", std::domain_error);
}

TEST_CASE("Clifford torus invariants") {
  reps::Representation rep = reps::build_so_block_rep({1, 1});
  Eigen::VectorXd x = product_point({1, 1}, {1.0, 1.0});
  OrbitInvariants inv = orbit_invariants(rep, x);
  CHECK(inv.orbit_dim == 2);
  CHECK(inv.isotropy_dim == 0);
  CHECK(inv.S == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(std::abs(inv.H2) < 1e-13);
  CHECK(inv.integrand == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(inv.vol_proxy == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(inv.relW == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("Clifford torus shape operator has eigenvalues +1 and -1") {
  reps::Representation rep = reps::build_so_block_rep({1, 1});
  Eigen::VectorXd x = product_point({1, 1}, {1.0, 1.0});
  SecondFundamentalForm sff = second_fundamental_form(rep, x);
  REQUIRE(sff.components.size() == 1);  // codimension one inside S^3
  const Eigen::MatrixXd& shape = sff.components[0];
  CHECK((shape - shape.transpose()).norm() < 1e-13);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(shape);
  REQUIRE(eig.eigenvalues().size() == 2);
  CHECK(eig.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eig.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Veronese endpoints are minimal surfaces with S = 4/3") {
  fams::OrbitFamily family = fams::veronese_family();
  for (double s : {family.s_lo, family.s_hi}) {
    CAPTURE(s);
    OrbitInvariants inv = orbit_invariants(family.rep, family.curve(s));
    CHECK(inv.orbit_dim == 2);
    CHECK(std::abs(inv.H2) <= 1e-8);
    CHECK(inv.S == doctest::Approx(4.0 / 3.0).epsilon(1e-8));
  }
}

TEST_CASE("product orbits match the closed-form S and |H|^2") {
  std::vector<std::vector<int>> cases = {{1, 1}, {2, 3}, {1, 2, 3}};
  std::vector<std::vector<double>> radii = {{0.3, 0.0}, {0.45, 0.0}, {0.25, 0.55, 0.0}};
  for (size_t c = 0; c < cases.size(); ++c) {
    const std::vector<int>& dims = cases[c];
    std::vector<double> t = radii[c];
    double rem = 1.0;
    for (size_t i = 0; i + 1 < t.size(); ++i) rem -= t[i] * t[i];
    t.back() = std::sqrt(rem);
    Eigen::VectorXd tv = Eigen::Map<const Eigen::VectorXd>(t.data(), t.size());

    reps::Representation rep = reps::build_so_block_rep(dims);
    Eigen::VectorXd x = product_point(dims, t);
    OrbitInvariants inv = orbit_invariants(rep, x);
    CAPTURE(c);
    CHECK(inv.S == doctest::Approx(product_S(dims, tv)).epsilon(1e-11));
    CHECK(inv.H2 == doctest::Approx(product_H2(dims, tv)).epsilon(1e-10).scale(1e-12));
    double vol = 1.0;
    for (size_t i = 0; i < dims.size(); ++i) vol *= std::pow(t[i], dims[i]);
    CHECK(inv.vol_proxy == doctest::Approx(vol).epsilon(1e-12));
  }
}

TEST_CASE("algebraic SFF agrees with finite differences") {
  std::mt19937 rng(7);
  std::normal_distribution<double> gauss;
  std::vector<reps::Representation> cases = {reps::build_so_block_rep({2, 3}),
                                             reps::build_so3_conjugation_rep(),
                                             reps::build_so5_adjoint_rep()};
  for (const reps::Representation& rep : cases) {
    CAPTURE(rep.name);
    for (int trial = 0; trial < 3; ++trial) {
      Eigen::VectorXd x(rep.ambient_dim);
      TangentData data;
      // principal points only: near rank drops the FD step leaves the stratum
      do {
        for (int i = 0; i < x.size(); ++i) x(i) = gauss(rng);
        x.normalize();
        data = tangent_map(rep, x);
      } while (data.ambiguous_rank ||
               data.singular_values(data.orbit_dim - 1) < 0.35);
      SecondFundamentalForm algebraic = second_fundamental_form(rep, x, data);
      SecondFundamentalForm numeric = fd::finite_difference_sff(rep, x, data);
      REQUIRE(algebraic.components.size() == numeric.components.size());
      for (const Eigen::MatrixXd& comp : algebraic.components)
        CHECK((comp - comp.transpose()).norm() < 1e-12);
      double worst = 0.0;
      for (size_t nu = 0; nu < algebraic.components.size(); ++nu)
        worst = std::max(worst,
                         (algebraic.components[nu] - numeric.components[nu]).cwiseAbs().maxCoeff());
      CHECK(worst < 1e-6);
    }
  }
}

TEST_CASE("invariants are constant along group motions") {
  reps::Representation rep = reps::build_so3_conjugation_rep();
  fams::OrbitFamily family = fams::veronese_family();
  Eigen::VectorXd x = family.curve(0.17);
  OrbitInvariants base = orbit_invariants(rep, x);

  std::mt19937 rng(11);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 4; ++trial) {
    Eigen::VectorXd coeffs(rep.g_dim());
    for (int a = 0; a < coeffs.size(); ++a) coeffs(a) = gauss(rng);
    coeffs.normalize();
    Eigen::VectorXd moved = fd::flow_point(rep, x, coeffs, 0.4);
    CHECK(std::abs(moved.norm() - 1.0) < 1e-12);  // the motion is isometric
    OrbitInvariants inv = orbit_invariants(rep, moved);
    CHECK(inv.orbit_dim == base.orbit_dim);
    CHECK(inv.S == doctest::Approx(base.S).epsilon(1e-10));
    CHECK(inv.H2 == doctest::Approx(base.H2).epsilon(1e-10).scale(1e-10));
    CHECK(inv.relW == doctest::Approx(base.relW).epsilon(1e-10));
  }
}

TEST_CASE("scale invariance diagnostic") {
  reps::Representation rep = reps::build_so_block_rep({2, 3});
  Eigen::VectorXd x = product_point({2, 3}, {0.6, 0.8});
  for (double c : {0.3, 4.0, 10.0}) {
    CAPTURE(c);
    CHECK(scale_invariance_check(rep, x, c) <= 1e-8);
  }
  CHECK_THROWS_AS(scale_invariance_check(rep, x, 0.0), std::domain_error);
  CHECK_THROWS_AS(scale_invariance_check(rep, x, -2.0), std::domain_error);

  // the Clifford torus sits so symmetrically that the residual is tighter
  reps::Representation cliff = reps::build_so_block_rep({1, 1});
  Eigen::VectorXd xc = product_point({1, 1}, {1.0, 1.0});
  CHECK(scale_invariance_check(cliff, xc, 4.0) <= 1e-10);
}

TEST_CASE("stratum fingerprints along the Veronese family") {
  fams::OrbitFamily family = fams::veronese_family();
  Fingerprint interior = stratum_fingerprint(family.rep, family.curve(0.0));
  CHECK(interior == Fingerprint{3, 0});
  Fingerprint lo = stratum_fingerprint(family.rep, family.curve(family.s_lo));
  Fingerprint hi = stratum_fingerprint(family.rep, family.curve(family.s_hi));
  CHECK(lo == Fingerprint{2, 1});
  CHECK(hi == Fingerprint{2, 1});
}

TEST_CASE("relative Willmore is the integrand times the volume proxy") {
  reps::Representation rep = reps::build_so5_adjoint_rep();
  fams::OrbitFamily family = fams::so5_family();
  Eigen::VectorXd x = family.curve(0.5);
  OrbitInvariants inv = orbit_invariants(rep, x);
  CHECK(inv.relW == doctest::Approx(inv.integrand * inv.vol_proxy).epsilon(1e-14));
  CHECK(relative_willmore(rep, x) == doctest::Approx(inv.relW).epsilon(1e-14));
  double n = inv.orbit_dim;
  CHECK(inv.integrand ==
        doctest::Approx(std::pow(inv.S - n * inv.H2, n / 2.0)).epsilon(1e-12));
}
