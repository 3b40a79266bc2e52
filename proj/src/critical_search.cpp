#include "willmore/critical_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace willmore::critical_search {

namespace {

constexpr double kScanMargin = 0.02;   // default fraction of the interior skipped per end
constexpr double kDedupRadius = 1e-6;  // parameter distance below FD resolution
constexpr double kBoundaryFloor = 1e-6;

int thread_budget(int tasks) {
  if (tasks <= 1) return 1;
  long requested = 0;  // 0 = auto
  if (const char* env = std::getenv("WILLMORE_THREADS"); env && *env) {
    char* end = nullptr;
    long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed > 0) requested = parsed;
  }
  long hw = static_cast<long>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  long cap = requested > 0 ? requested : hw;
  return static_cast<int>(std::min<long>(cap, tasks));
}

// Evaluations are pure per point, so a counter-fed worker pool with no
// shared mutable state suffices. First exception wins; the rest drain.
template <typename F>
void parallel_for(int count, F&& body) {
  const int workers = thread_budget(count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto run = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double interior_length(const OrbitFamily& family) {
  double len = family.interior_hi - family.interior_lo;
  if (!(len > 0.0)) throw std::domain_error("family interior empty");
  return len;
}

double family_value(const OrbitFamily& family, double s) {
  double v = orbit_geometry::relative_willmore(family.rep, family.curve(s));
  if (!std::isfinite(v))
    throw std::runtime_error("non-finite value at param=" + std::to_string(s));
  return v;
}

// Orthonormal basis of the tangent space of {|t| = 1} at t.
Eigen::MatrixXd constraint_tangent_basis(const Eigen::VectorXd& t) {
  Eigen::MatrixXd column = t;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(column);
  Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(t.size() - 1);
}

// FD Hessian of log W as a 0-homogeneous function (W normalizes its
// input), symmetrized; restricted to the constraint tangent space this is
// the curvature that classifies the critical point.
Eigen::MatrixXd projected_log_hessian(const std::vector<int>& dims, const Eigen::VectorXd& t,
                                      const Eigen::MatrixXd& tangent) {
  const double delta = 1e-6;
  const Eigen::Index p = t.size();
  Eigen::MatrixXd h(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    Eigen::VectorXd fwd = t, bwd = t;
    fwd(j) += delta;
    bwd(j) -= delta;
    h.col(j) = (families::product_sphere_gradient(dims, fwd.normalized()) -
                families::product_sphere_gradient(dims, bwd.normalized())) /
               (2.0 * delta);
  }
  h = 0.5 * (h + h.transpose()).eval();
  return tangent.transpose() * h * tangent;
}

}  // namespace

const char* to_string(CriticalKind kind) {
  switch (kind) {
    case CriticalKind::minimum: return "min";
    case CriticalKind::maximum: return "max";
    default: return "saddle/inflection";
  }
}

std::vector<ScanPoint> scan_1d(const OrbitFamily& family, int steps, double margin) {
  if (steps < 8) throw std::domain_error("scan needs at least 8 steps");
  if (!(margin > 0.0 && margin < 0.2)) throw std::domain_error("margin must lie in (0, 0.2)");
  const double len = interior_length(family);
  const double lo = family.interior_lo + margin * len;
  const double hi = family.interior_hi - margin * len;

  std::vector<ScanPoint> out(steps);
  parallel_for(steps, [&](int i) {
    double s = lo + (hi - lo) * i / (steps - 1.0);
    auto inv = orbit_geometry::orbit_invariants(family.rep, family.curve(s));
    if (!std::isfinite(inv.relW))
      throw std::runtime_error("non-finite value at param=" + std::to_string(s));
    out[i] = ScanPoint{s, inv.relW, inv.fingerprint()};
  });
  return out;
}

std::vector<CriticalPoint> find_critical_1d(const OrbitFamily& family, double grad_tol,
                                            int max_iter) {
  if (!(grad_tol > 0.0)) throw std::domain_error("grad_tol must be positive");
  const double len = interior_length(family);
  const double domain_len = family.s_hi - family.s_lo;
  const double h = std::max(1e-5, 1e-5 * domain_len);
  const double lo = family.interior_lo + kScanMargin * len;
  const double hi = family.interior_hi - kScanMargin * len;

  auto f = [&](double s) { return family_value(family, s); };

  const int nodes = 129;
  std::vector<double> ss(nodes), fs(nodes), gs(nodes);
  for (int i = 0; i < nodes; ++i) ss[i] = lo + (hi - lo) * i / (nodes - 1.0);
  parallel_for(nodes, [&](int i) { fs[i] = f(ss[i]); });

  // Relative energies are defined up to a stratum constant, so the search
  // differentiates log relW whenever the family is positive: the constant
  // cancels exactly and grad_tol becomes scale-free. (Families of low-
  // dimensional orbits can have relW = 0; those fall back to raw values.)
  const bool log_scale = *std::min_element(fs.begin(), fs.end()) > 0.0;
  auto deriv = [&](double s) {
    double a = f(s + h), b = f(s - h);
    if (log_scale) return (std::log(a) - std::log(b)) / (2.0 * h);
    return (a - b) / (2.0 * h);
  };
  parallel_for(nodes, [&](int i) { gs[i] = deriv(ss[i]); });

  auto refine = [&](double a, double b, double ga) {
    for (int it = 0; it < max_iter && (b - a) > 1e-13 * std::max(1.0, domain_len); ++it) {
      double mid = 0.5 * (a + b);
      double gm = deriv(mid);
      if (gm == 0.0) return mid;
      if ((gm < 0.0) == (ga < 0.0)) {
        a = mid;
        ga = gm;
      } else {
        b = mid;
      }
    }
    return 0.5 * (a + b);
  };

  std::vector<CriticalPoint> out;
  for (int i = 0; i + 1 < nodes; ++i) {
    double root;
    if (gs[i] == 0.0) {
      // exact node hit (symmetric families); flat stretches are not roots
      if ((i > 0 && gs[i - 1] == 0.0) || gs[i + 1] == 0.0) continue;
      root = ss[i];
    } else if (gs[i] * gs[i + 1] < 0.0) {
      root = refine(ss[i], ss[i + 1], gs[i]);
    } else {
      continue;
    }

    double grad = std::abs(deriv(root));
    if (grad > grad_tol) continue;  // bracket failed to refine to tolerance

    double second;
    if (log_scale)
      second = (std::log(f(root + h)) - 2.0 * std::log(f(root)) + std::log(f(root - h))) /
               (h * h);
    else
      second = (f(root + h) - 2.0 * f(root) + f(root - h)) / (h * h);
    CriticalPoint cp;
    cp.params = Eigen::VectorXd::Constant(1, root);
    cp.value = f(root);
    cp.grad_norm = grad;
    cp.second_deriv = second;
    if (std::abs(second) < 10.0 * grad_tol / h)
      cp.kind = CriticalKind::saddle_or_inflection;
    else
      cp.kind = second > 0.0 ? CriticalKind::minimum : CriticalKind::maximum;

    if (!out.empty() && root - out.back().param() <= kDedupRadius) continue;
    out.push_back(std::move(cp));
  }
  return out;
}

CriticalPoint optimize_product_spheres(const std::vector<int>& dims, Eigen::VectorXd init,
                                       double tol, int max_iter) {
  const int p = static_cast<int>(dims.size());
  if (p < 2) throw std::domain_error("single orbit; trivially Willmore");
  if (!(tol > 0.0)) throw std::domain_error("tol must be positive");

  Eigen::VectorXd t;
  if (init.size() == 0) {
    t = Eigen::VectorXd::Constant(p, 1.0 / std::sqrt(static_cast<double>(p)));
  } else {
    if (init.size() != p) throw std::domain_error("init length does not match the number of factors");
    if (init.minCoeff() <= 0.0) throw std::domain_error("initial radii must be positive");
    t = init.normalized();
  }
  auto guard = [](const Eigen::VectorXd& v) {
    if (v.minCoeff() < kBoundaryFloor)
      throw std::runtime_error("collapse direction; no interior critical point reachable from init");
  };
  guard(t);

  auto value = [&](const Eigen::VectorXd& v) { return std::log(families::product_sphere_W(dims, v)); };
  auto grad = [&](const Eigen::VectorXd& v) { return families::product_sphere_gradient(dims, v); };

  Eigen::VectorXd g = grad(t);
  double gn = g.norm();
  int iter = 0;

  // Projected gradient descent with backtracking while log W still
  // resolves decreases in double precision.
  while (gn > tol && gn > 1e-6 && iter < max_iter) {
    const double f0 = value(t);
    double alpha = 0.5;
    bool moved = false;
    while (alpha > 1e-14) {
      Eigen::VectorXd cand = (t - alpha * g).normalized();
      if (cand.minCoeff() > 0.0 && value(cand) < f0) {
        t = cand;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
    guard(t);
    g = grad(t);
    gn = g.norm();
    ++iter;
  }

  // Newton polish on the constraint tangent space, accepting steps that
  // shrink the (analytic, machine-accurate) gradient norm instead of the
  // objective.
  while (gn > tol && iter < max_iter) {
    Eigen::MatrixXd tangent = constraint_tangent_basis(t);
    Eigen::MatrixXd hr = projected_log_hessian(dims, t, tangent);
    Eigen::VectorXd gr = tangent.transpose() * g;
    Eigen::VectorXd step = tangent * hr.ldlt().solve(-gr);

    bool moved = false;
    if (step.allFinite()) {
      double scale = 1.0;
      for (int k = 0; k < 30 && !moved; ++k, scale *= 0.5) {
        Eigen::VectorXd cand = (t + scale * step).normalized();
        if (cand.minCoeff() <= 0.0) continue;
        Eigen::VectorXd gc = grad(cand);
        if (gc.norm() < gn) {
          t = cand;
          g = gc;
          gn = gc.norm();
          moved = true;
        }
      }
    }
    if (!moved) {
      double alpha = 0.5;
      for (; alpha > 1e-14 && !moved; alpha *= 0.5) {
        Eigen::VectorXd cand = (t - alpha * g).normalized();
        if (cand.minCoeff() <= 0.0) continue;
        Eigen::VectorXd gc = grad(cand);
        if (gc.norm() < gn) {
          t = cand;
          g = gc;
          gn = gc.norm();
          moved = true;
        }
      }
    }
    if (!moved) break;  // numerical floor
    guard(t);
    ++iter;
  }

  if (gn > tol)
    throw std::runtime_error("optimizer stalled above the requested gradient tolerance");

  Eigen::MatrixXd tangent = constraint_tangent_basis(t);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(projected_log_hessian(dims, t, tangent));
  const double eig_min = eig.eigenvalues().minCoeff();
  const double eig_max = eig.eigenvalues().maxCoeff();

  CriticalPoint cp;
  cp.params = t;
  cp.value = families::product_sphere_W(dims, t);
  cp.grad_norm = gn;
  cp.second_deriv = eig_min;
  if (eig_min > 1e-6)
    cp.kind = CriticalKind::minimum;
  else if (eig_max < -1e-6)
    cp.kind = CriticalKind::maximum;
  else
    cp.kind = CriticalKind::saddle_or_inflection;
  return cp;
}

CollapseFit collapse_exponent(const OrbitFamily& family, Boundary boundary, int decades) {
  if (decades < 2) throw std::domain_error("collapse fit needs at least two decades");
  const double len = interior_length(family);
  const double d0 = 0.1 * len;

  CollapseFit fit;
  fit.boundary = boundary;
  fit.boundary_label =
      boundary == Boundary::lo ? family.boundary_lo_label : family.boundary_hi_label;

  const int count = 4 * decades + 1;
  std::vector<std::pair<double, double>> samples(count, {0.0, -1.0});
  parallel_for(count, [&](int k) {
    double d = d0 * std::pow(10.0, -k / 4.0);
    double s = boundary == Boundary::lo ? family.s_lo + d : family.s_hi - d;
    try {
      double v = orbit_geometry::relative_willmore(family.rep, family.curve(s));
      if (std::isfinite(v) && v > 0.0) samples[k] = {d, v};
    } catch (const std::exception&) {
      // evaluation failed this close to the boundary; sample dropped
    }
  });
  for (const auto& s : samples)
    if (s.second > 0.0) fit.samples.push_back(s);
  if (fit.samples.size() < 8)
    throw std::runtime_error("too few valid samples near the boundary for a collapse fit");

  // Power-law behavior is asymptotic: fit only the final two decades.
  const double d_window = d0 * std::pow(10.0, -(decades - 2)) * (1.0 + 1e-9);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
  std::vector<std::pair<double, double>> window;
  for (const auto& [d, v] : fit.samples)
    if (d <= d_window) window.emplace_back(std::log(d), std::log(v));
  if (window.size() < 3) throw std::runtime_error("collapse fit window too small");
  m = static_cast<double>(window.size());
  for (const auto& [x, y] : window) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double var = sxx - sx * sx / m;
  fit.exponent = (sxy - sx * sy / m) / var;
  const double intercept = (sy - fit.exponent * sx) / m;
  double ss_res = 0, ss_tot = 0;
  for (const auto& [x, y] : window) {
    double e = y - (fit.exponent * x + intercept);
    double c = y - sy / m;
    ss_res += e * e;
    ss_tot += c * c;
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.diverges = fit.exponent < 0.0;
  fit.accepted = fit.diverges && fit.r2 >= 0.999;
  return fit;
}

ExtremaReport extrema_report(const OrbitFamily& family) {
  ExtremaReport report;
  report.critical_points = find_critical_1d(family);
  for (const auto& cp : report.critical_points) {
    switch (cp.kind) {
      case CriticalKind::minimum: ++report.count_min; break;
      case CriticalKind::maximum: ++report.count_max; break;
      default: ++report.count_other; break;
    }
  }
  CollapseFit lo = collapse_exponent(family, Boundary::lo);
  CollapseFit hi = collapse_exponent(family, Boundary::hi);
  report.both_ends_diverge = lo.accepted && hi.accepted;
  if (report.both_ends_diverge && report.count_min == 0)
    throw std::runtime_error(
        "energy diverges at both ends of the family but no interior minimum was found");
  return report;
}

}  // namespace willmore::critical_search
