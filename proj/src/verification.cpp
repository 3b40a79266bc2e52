#include "willmore/verification.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "willmore/critical_search.hpp"
#include "willmore/families.hpp"
#include "willmore/fd_checks.hpp"
#include "willmore/io.hpp"
#include "willmore/orbit_geometry.hpp"
#include "willmore/representation.hpp"

namespace willmore::verification {

namespace {

namespace cs = critical_search;
namespace og = orbit_geometry;
using families::product_sphere_line_family;
using families::product_sphere_W;
using representations::Representation;

std::string strf(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Random unit point well inside the principal stratum: the smallest
// nonzero singular value must clear `sep`, keeping the finite-difference
// oracle's fourth-derivative error inside its tolerance.
Eigen::VectorXd principal_point(std::mt19937& rng, const Representation& rep, double sep) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    Eigen::VectorXd x(rep.ambient_dim);
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = gauss(rng);
    x.normalize();
    auto td = og::tangent_map(rep, x);
    if (td.orbit_dim == 0 || td.ambiguous_rank) continue;
    if (td.singular_values(td.orbit_dim - 1) >= sep) return x;
  }
  throw std::runtime_error("failed to sample a well-separated principal point");
}

Outcome check_product_line_critical() {
  const std::vector<std::vector<int>> cases = {{1, 1}, {1, 2}, {2, 3}, {3, 4}};
  bool pass = true;
  std::string detail;
  double worst = 0.0;
  for (const auto& dims : cases) {
    auto fam = product_sphere_line_family(dims);
    auto cps = cs::find_critical_1d(fam);
    double expected = std::sqrt(dims[1] / static_cast<double>(dims[0] + dims[1]));
    if (cps.size() != 1) {
      pass = false;
      detail += strf("[%d,%d]: %zu critical points; ", dims[0], dims[1], cps.size());
      continue;
    }
    double err = std::abs(cps[0].param() - expected);
    worst = std::max(worst, err);
    if (err > 1e-8) {
      pass = false;
      detail += strf("[%d,%d]: |dt| = %.3e > 1e-8; ", dims[0], dims[1], err);
    }
  }
  if (pass) detail = strf("4 line families, one critical point each, worst |dt| = %.2e", worst);
  return {pass, detail};
}

Outcome check_product_spheres_critical() {
  const std::vector<std::vector<int>> cases = {
      {1, 1}, {2, 3}, {1, 1, 1}, {1, 2, 3}, {2, 2, 2, 2}};
  bool pass = true;
  std::string detail;
  double worst_t = 0.0, worst_g = 0.0;
  for (const auto& dims : cases) {
    auto cp = cs::optimize_product_spheres(dims);
    Eigen::VectorXd expected = families::product_sphere_critical(dims);
    double err = (cp.params - expected).cwiseAbs().maxCoeff();
    worst_t = std::max(worst_t, err);
    worst_g = std::max(worst_g, cp.grad_norm);
    if (err > 1e-7 || cp.grad_norm > 1e-10) {
      pass = false;
      detail += strf("p=%zu: |dt| = %.3e, grad = %.3e; ", dims.size(), err, cp.grad_norm);
    }
  }
  if (pass)
    detail = strf("5 simplex searches from barycenter, worst |dt| = %.2e, worst grad = %.2e",
                  worst_t, worst_g);
  return {pass, detail};
}

Outcome check_clifford_energy() {
  Eigen::VectorXd t(2);
  t << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  double w = product_sphere_W({1, 1}, t);
  double expected = 4.0 * std::numbers::pi * std::numbers::pi;
  double rel = std::abs(w - expected) / expected;
  return {rel <= 1e-12, strf("W = %.17g, 4*pi^2 = %.17g, rel err = %.2e", w, expected, rel)};
}

Outcome check_closed_form_consistency() {
  const std::vector<int> dims = {1, 2};
  auto fam = product_sphere_line_family(dims);
  auto scan = cs::scan_1d(fam, 33);

  double mean = 0.0;
  std::vector<double> ratios;
  double worst_s = 0.0, worst_h = 0.0;
  for (const auto& pnt : scan) {
    double t1 = pnt.param;
    double t2 = std::sqrt(1.0 - t1 * t1);
    Eigen::VectorXd t(2);
    t << t1, t2;
    ratios.push_back(product_sphere_W(dims, t) / pnt.value);
    mean += ratios.back();

    auto inv = og::orbit_invariants(fam.rep, fam.curve(t1));
    double s_formula = (1.0 / (t1 * t1) - 1.0) + 2.0 * (1.0 / (t2 * t2) - 1.0);
    double h_formula = (1.0 / (t1 * t1) + 4.0 / (t2 * t2)) / 9.0 - 1.0;
    worst_s = std::max(worst_s, std::abs(inv.S - s_formula) / std::abs(s_formula));
    worst_h = std::max(worst_h, std::abs(inv.H2 - h_formula) / std::abs(h_formula));
  }
  mean /= ratios.size();
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  double cv = std::sqrt(var / ratios.size()) / mean;

  bool pass = cv <= 1e-7 && worst_s <= 1e-9 && worst_h <= 1e-9;
  return {pass, strf("W/relW coefficient of variation = %.2e, S rel err = %.2e, H2 rel err = %.2e",
                     cv, worst_s, worst_h)};
}

Outcome check_veronese_critical() {
  auto fam = families::veronese_family();
  auto cps = cs::find_critical_1d(fam);
  bool pass = cps.size() == 1 && std::abs(cps[0].param()) <= 1e-6;
  std::string detail =
      cps.size() == 1 ? strf("s* = %.3e", cps[0].param()) : strf("%zu critical points", cps.size());

  auto lo = og::orbit_invariants(fam.rep, fam.curve(fam.s_lo));
  auto hi = og::orbit_invariants(fam.rep, fam.curve(fam.s_hi));
  og::Fingerprint veronese{2, 1};
  pass = pass && lo.fingerprint() == veronese && hi.fingerprint() == veronese;
  pass = pass && lo.H2 <= 1e-8 && hi.H2 <= 1e-8;
  detail += strf("; endpoints (%d,%d)/(%d,%d), H2 = %.1e/%.1e", lo.orbit_dim, lo.isotropy_dim,
                 hi.orbit_dim, hi.isotropy_dim, lo.H2, hi.H2);
  return {pass, detail};
}

Outcome check_so5_strata() {
  auto fam = families::so5_family();
  auto lo = og::stratum_fingerprint(fam.rep, fam.curve(fam.s_lo));
  auto hi = og::stratum_fingerprint(fam.rep, fam.curve(fam.s_hi));
  og::Fingerprint singular{6, 4}, principal{8, 2};
  bool pass = lo == singular && hi == singular;

  auto scan = cs::scan_1d(fam, 65);
  int interior_bad = 0;
  for (const auto& pnt : scan)
    if (!(pnt.fingerprint == principal)) ++interior_bad;
  pass = pass && interior_bad == 0;

  auto report = cs::extrema_report(fam);
  pass = pass && report.count_min >= 1;
  return {pass, strf("endpoints (%d,%d)/(%d,%d), %d interior fingerprint misses, "
                     "count_min = %d over %zu critical points",
                     lo.orbit_dim, lo.isotropy_dim, hi.orbit_dim, hi.isotropy_dim, interior_bad,
                     report.count_min, report.critical_points.size())};
}

Outcome check_collapse_divergence() {
  bool pass = true;
  std::string detail;

  auto fit11 = cs::collapse_exponent(product_sphere_line_family({1, 1}), cs::Boundary::lo);
  if (!(std::abs(fit11.exponent + 1.0) <= 0.05 && fit11.r2 >= 0.999)) pass = false;
  detail += strf("[1,1]: %.4f (r2 %.5f); ", fit11.exponent, fit11.r2);

  auto fit23 = cs::collapse_exponent(product_sphere_line_family({2, 3}), cs::Boundary::lo);
  if (!(std::abs(fit23.exponent + 3.0) <= 0.1 && fit23.r2 >= 0.999)) pass = false;
  detail += strf("[2,3]: %.4f (r2 %.5f); ", fit23.exponent, fit23.r2);

  for (auto* fam_name : {"veronese", "so5"}) {
    auto fam = fam_name[0] == 'v' ? families::veronese_family() : families::so5_family();
    for (auto boundary : {cs::Boundary::lo, cs::Boundary::hi}) {
      auto fit = cs::collapse_exponent(fam, boundary);
      if (!fit.accepted) pass = false;
      detail += strf("%s/%s: %.3f (r2 %.5f); ", fam_name,
                     boundary == cs::Boundary::lo ? "lo" : "hi", fit.exponent, fit.r2);
    }
  }
  return {pass, detail};
}

Outcome check_invariant_suites() {
  std::mt19937 rng(20240614);
  std::vector<Representation> reps = {representations::build_so_block_rep({2, 3}),
                                      representations::build_so3_conjugation_rep(),
                                      representations::build_so5_adjoint_rep()};
  const double sep = 0.35;

  double worst_sff = 0.0;
  for (const auto& rep : reps) {
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::VectorXd x = principal_point(rng, rep, sep);
      auto td = og::tangent_map(rep, x);
      auto algebraic = og::second_fundamental_form(rep, x, td);
      auto oracle = fd::finite_difference_sff(rep, x, td);
      for (std::size_t nu = 0; nu < algebraic.components.size(); ++nu) {
        double err = (algebraic.components[nu] - oracle.components[nu]).cwiseAbs().maxCoeff();
        worst_sff = std::max(worst_sff, err);
      }
    }
  }

  double worst_ginv = 0.0;
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const auto& rep : reps) {
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd x = principal_point(rng, rep, sep);
      auto base = og::orbit_invariants(rep, x);
      for (int motion = 0; motion < 2; ++motion) {
        Eigen::VectorXd coeffs(rep.g_dim());
        for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) = gauss(rng);
        coeffs.normalize();
        auto moved = og::orbit_invariants(rep, fd::flow_point(rep, x, coeffs, 0.3));
        if (moved.orbit_dim != base.orbit_dim || moved.isotropy_dim != base.isotropy_dim)
          worst_ginv = std::max(worst_ginv, 1.0);
        worst_ginv = std::max({worst_ginv, std::abs(moved.S - base.S),
                               std::abs(moved.H2 - base.H2),
                               std::abs(moved.integrand - base.integrand),
                               std::abs(moved.vol_proxy - base.vol_proxy),
                               std::abs(moved.relW - base.relW)});
      }
    }
  }

  double worst_scale = 0.0;
  for (const auto& rep : reps) {
    for (int trial = 0; trial < 2; ++trial) {
      Eigen::VectorXd x = principal_point(rng, rep, sep);
      for (double c : {0.3, 4.0, 10.0})
        worst_scale = std::max(worst_scale, og::scale_invariance_check(rep, x, c));
    }
  }

  double worst_grad = 0.0;
  std::uniform_real_distribution<double> uniform(0.35, 1.0);
  const std::vector<std::vector<int>> grad_cases = {{1, 1}, {1, 2}, {2, 3}, {1, 1, 1}, {2, 2, 1}};
  for (const auto& dims : grad_cases) {
    for (int trial = 0; trial < 2; ++trial) {
      Eigen::VectorXd t(dims.size());
      for (Eigen::Index i = 0; i < t.size(); ++i) t(i) = uniform(rng);
      t.normalize();
      Eigen::VectorXd analytic = families::product_sphere_gradient(dims, t);
      Eigen::VectorXd oracle = fd::finite_difference_product_gradient(dims, t);
      worst_grad = std::max(worst_grad, (analytic - oracle).cwiseAbs().maxCoeff());
    }
  }

  bool pass = worst_sff <= 1e-6 && worst_ginv <= 1e-8 && worst_scale <= 1e-8 && worst_grad <= 1e-6;
  return {pass, strf("worst deviations: sff = %.2e, motion = %.2e, scale = %.2e, grad = %.2e",
                     worst_sff, worst_ginv, worst_scale, worst_grad)};
}

Outcome check_rep_file(const std::string& path) {
  auto rep = io::load_representation(path);
  auto report = representations::validate_representation(rep);
  if (!report.pass)
    return {false, strf("'%s' failed %s (skew %.2e, bracket %.2e, min sv %.2e)", rep.name.c_str(),
                        report.failed_check.c_str(), report.skew_residual, report.bracket_residual,
                        report.min_singular_value)};
  return {true, strf("'%s': N = %d, g_dim = %d, bracket residual %.2e", rep.name.c_str(),
                     rep.ambient_dim, rep.g_dim(), report.bracket_residual)};
}

struct NamedCheck {
  std::string name;
  double time_limit;  // seconds; 0 = none
  std::function<Outcome()> body;
};

}  // namespace

VerificationReport run_verification(const std::string& only, const std::string& rep_path) {
  std::vector<NamedCheck> checks;
  if (!rep_path.empty())
    checks.push_back({"rep-validation", 0.0, [rep_path] { return check_rep_file(rep_path); }});
  checks.push_back({"product-line-critical", 5.0, check_product_line_critical});
  checks.push_back({"product-spheres-critical", 10.0, check_product_spheres_critical});
  checks.push_back({"product-spheres-clifford", 0.0, check_clifford_energy});
  checks.push_back({"product-spheres-closed-form", 0.0, check_closed_form_consistency});
  checks.push_back({"veronese-critical", 0.0, check_veronese_critical});
  checks.push_back({"so5-strata", 30.0, check_so5_strata});
  checks.push_back({"collapse-divergence", 0.0, check_collapse_divergence});
  checks.push_back({"invariant-suites", 0.0, check_invariant_suites});

  VerificationReport report;
  for (const auto& check : checks) {
    if (!only.empty() && check.name.find(only) == std::string::npos) continue;
    CheckResult result;
    result.name = check.name;
    auto start = std::chrono::steady_clock::now();
    try {
      Outcome outcome = check.body();
      result.pass = outcome.pass;
      result.detail = std::move(outcome.detail);
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (check.time_limit > 0.0 && result.seconds >= check.time_limit) {
      result.pass = false;
      result.detail += strf(" [exceeded %.0f s limit]", check.time_limit);
    }
    report.total_seconds += result.seconds;
    report.checks.push_back(std::move(result));
  }

  const std::string total_name = "total-runtime";
  if (only.empty() || total_name.find(only) != std::string::npos) {
    CheckResult result;
    result.name = total_name;
    result.pass = report.total_seconds < 120.0;
    result.detail = strf("%.2f s over %zu checks (limit 120 s)", report.total_seconds,
                         report.checks.size());
    report.checks.push_back(std::move(result));
  }

  for (const auto& c : report.checks) report.all_pass = report.all_pass && c.pass;
  return report;
}

}  // namespace willmore::verification
