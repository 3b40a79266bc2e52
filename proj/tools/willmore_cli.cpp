// Command-line front end: evaluate orbit invariants, scan one-parameter
// families, locate critical orbits, probe collapse divergence, and run the
// built-in verification suite.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage/validation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "CLI11.hpp"
#include "json.hpp"

#include "willmore/critical_search.hpp"
#include "willmore/families.hpp"
#include "willmore/io.hpp"
#include "willmore/orbit_geometry.hpp"
#include "willmore/representation.hpp"
#include "willmore/verification.hpp"

namespace {

using nlohmann::json;
namespace reps = willmore::representations;
namespace geo = willmore::orbit_geometry;
namespace fams = willmore::families;
namespace search = willmore::critical_search;
namespace wio = willmore::io;

struct Options {
  std::string family;
  std::string rep_path;
  std::string point_path;
  std::string out_path;
  std::string format = "csv";
  std::string boundary;
  std::string only;
  std::vector<int> dims;
  std::vector<double> t_values;
  std::vector<double> init;
  std::optional<double> param;
  int steps = 65;
  double margin = 0.02;
  int decades = 3;
  double tol = 1e-10;
  double grad_tol = 1e-8;
  int max_iter = 0;  // 0 = library default
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot write " + out_path);
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

fams::OrbitFamily make_curve_family(const Options& opt) {
  if (opt.family == "veronese") return fams::veronese_family();
  if (opt.family == "so5-adjoint") return fams::so5_family();
  if (opt.family == "product-line") {
    if (opt.dims.size() != 2)
      throw std::domain_error("product-line requires --dims n1,n2");
    return fams::product_sphere_line_family(opt.dims);
  }
  if (opt.family.empty()) throw std::domain_error("missing --family");
  throw std::domain_error("unknown one-parameter family: " + opt.family);
}

reps::Representation load_validated_rep(const std::string& path) {
  reps::Representation rep = wio::load_representation(path);
  reps::ValidationReport report = reps::validate_representation(rep);
  if (!report.pass)
    throw std::domain_error("representation failed validation: " + report.failed_check);
  return rep;
}

int cmd_eval(const Options& opt) {
  json j;
  if (!opt.rep_path.empty()) {
    reps::Representation rep = load_validated_rep(opt.rep_path);
    if (opt.point_path.empty())
      throw std::domain_error("eval with --rep requires --point");
    Eigen::VectorXd x = wio::load_point(opt.point_path);
    geo::OrbitInvariants inv = geo::orbit_invariants(rep, x);
    j = wio::to_json(inv);
    j["rep"] = rep.name;
  } else if (opt.family == "product-spheres") {
    if (opt.dims.empty() || opt.t_values.empty())
      throw std::domain_error("product-spheres requires --dims and --t");
    Eigen::VectorXd t = to_vector(opt.t_values);
    double W = fams::product_sphere_W(opt.dims, t);
    Eigen::VectorXd x = fams::product_sphere_point(opt.dims, t);
    reps::Representation rep = reps::build_so_block_rep(opt.dims);
    geo::OrbitInvariants inv = geo::orbit_invariants(rep, x);
    j = wio::to_json(inv);
    j["family"] = opt.family;
    j["dims"] = opt.dims;
    Eigen::VectorXd tn = t / t.norm();
    j["t"] = std::vector<double>(tn.data(), tn.data() + tn.size());
    j["W"] = W;
  } else if (!opt.family.empty()) {
    if (!opt.param) throw std::domain_error("family evaluation requires --param");
    fams::OrbitFamily family = make_curve_family(opt);
    Eigen::VectorXd x = family.curve(*opt.param);
    geo::OrbitInvariants inv = geo::orbit_invariants(family.rep, x);
    j = wio::to_json(inv);
    j["family"] = opt.family;
    j["param"] = *opt.param;
  } else {
    throw std::domain_error("eval requires --rep/--point or --family");
  }
  emit(j.dump(2), opt.out_path);
  return 0;
}

int cmd_scan(const Options& opt) {
  fams::OrbitFamily family = make_curve_family(opt);
  std::vector<search::ScanPoint> scan = search::scan_1d(family, opt.steps, opt.margin);
  if (opt.format == "csv")
    emit(wio::scan_to_csv(scan), opt.out_path);
  else
    emit(wio::scan_to_json(scan).dump(2), opt.out_path);
  return 0;
}

int cmd_optimize(const Options& opt) {
  json out = json::array();
  if (opt.family == "product-spheres") {
    if (opt.dims.empty()) throw std::domain_error("product-spheres requires --dims");
    Eigen::VectorXd init;
    if (!opt.init.empty()) init = to_vector(opt.init);
    int max_iter = opt.max_iter > 0 ? opt.max_iter : 500;
    search::CriticalPoint cp =
        search::optimize_product_spheres(opt.dims, init, opt.tol, max_iter);
    json cj = wio::to_json(cp);
    cj["family"] = opt.family;
    cj["dims"] = opt.dims;
    out.push_back(cj);
  } else {
    fams::OrbitFamily family = make_curve_family(opt);
    int max_iter = opt.max_iter > 0 ? opt.max_iter : 100;
    std::vector<search::CriticalPoint> found =
        search::find_critical_1d(family, opt.grad_tol, max_iter);
    for (const search::CriticalPoint& cp : found) {
      json cj = wio::to_json(cp);
      cj["family"] = opt.family;
      out.push_back(cj);
    }
  }
  emit(out.dump(2), opt.out_path);
  return 0;
}

int cmd_collapse(const Options& opt) {
  fams::OrbitFamily family = make_curve_family(opt);
  search::Boundary boundary =
      opt.boundary == "hi" ? search::Boundary::hi : search::Boundary::lo;
  search::CollapseFit fit = search::collapse_exponent(family, boundary, opt.decades);
  json j = wio::to_json(fit);
  j["family"] = opt.family;
  emit(j.dump(2), opt.out_path);
  return 0;
}

int cmd_fingerprint(const Options& opt) {
  reps::Representation rep;
  Eigen::VectorXd x;
  json j;
  if (!opt.rep_path.empty()) {
    rep = load_validated_rep(opt.rep_path);
    if (opt.point_path.empty())
      throw std::domain_error("fingerprint with --rep requires --point");
    x = wio::load_point(opt.point_path);
    j["rep"] = rep.name;
  } else if (!opt.family.empty()) {
    if (!opt.param) throw std::domain_error("fingerprint requires --param");
    fams::OrbitFamily family = make_curve_family(opt);
    rep = family.rep;
    x = family.curve(*opt.param);
    j["family"] = opt.family;
    j["param"] = *opt.param;
  } else {
    throw std::domain_error("fingerprint requires --rep/--point or --family");
  }
  geo::TangentData data = geo::tangent_map(rep, x);
  j["orbit_dim"] = data.orbit_dim;
  j["isotropy_dim"] = data.isotropy_dim;
  j["ambiguous_rank"] = data.ambiguous_rank;
  emit(j.dump(2), opt.out_path);
  return 0;
}

int cmd_verify(const Options& opt) {
  willmore::verification::VerificationReport report =
      willmore::verification::run_verification(opt.only, opt.rep_path);
  std::string text;
  char line[256];
  for (const willmore::verification::CheckResult& check : report.checks) {
    std::snprintf(line, sizeof(line), "%-28s %s %9.3f s", check.name.c_str(),
                  check.pass ? "pass" : "FAIL", check.seconds);
    text += line;
    if (!check.detail.empty()) text += "  [" + check.detail + "]";
    text += '\n';
  }
  std::snprintf(line, sizeof(line), "%-28s %s %9.3f s\n", "overall",
                report.all_pass ? "pass" : "FAIL", report.total_seconds);
  text += line;
  emit(text, opt.out_path);
  return report.all_pass ? 0 : 1;
}

int cmd_families(const Options& opt) {
  json out = json::array();
  out.push_back({{"family", "product-spheres"},
                 {"parameters", "--dims n1,...,np --t r1,...,rp (radii, normalized internally)"},
                 {"description", "orbit of SO(n1+1) x ... x SO(np+1) through block-diagonal "
                                 "points; product of round spheres"}});
  out.push_back({{"family", "product-line"},
                 {"parameters", "--dims n1,n2; param t in (0,1) is the first radius"},
                 {"description", "one-parameter slice S^{n1}(t) x S^{n2}(sqrt(1-t^2))"}});
  out.push_back({{"family", "veronese"},
                 {"parameters", "param s in [-0.408..., +0.408...] = middle eigenvalue"},
                 {"description", "SO(3) acting by conjugation on symmetric traceless 3x3 "
                                 "matrices; curve of diagonal starting points in S^4"}});
  out.push_back({{"family", "so5-adjoint"},
                 {"parameters", "param theta in [0, pi/4]"},
                 {"description", "adjoint SO(5) orbits in S^9 through "
                                 "cos(theta) e01 + sin(theta) e23"}});
  emit(out.dump(2), opt.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Willmore energies of compact-group orbits in round spheres"};
  app.require_subcommand(1);

  auto add_family_opts = [&](CLI::App* cmd) {
    cmd->add_option("--family", opt.family, "family id (see `families`)");
    cmd->add_option("--dims", opt.dims, "sphere dimensions n1,n2,...")->delimiter(',');
    cmd->add_option("--param", opt.param, "curve parameter");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out_path, "write output to file instead of stdout");
  };

  CLI::App* eval = app.add_subcommand("eval", "invariants of a single orbit");
  add_family_opts(eval);
  eval->add_option("--t", opt.t_values, "radii for product-spheres")->delimiter(',');
  eval->add_option("--rep", opt.rep_path, "representation JSON file");
  eval->add_option("--point", opt.point_path, "point JSON file");
  add_out(eval);

  CLI::App* scan = app.add_subcommand("scan", "sample a one-parameter family");
  add_family_opts(scan);
  scan->add_option("--steps", opt.steps, "number of samples")->capture_default_str();
  scan->add_option("--margin", opt.margin, "relative margin inside the domain")
      ->capture_default_str();
  scan->add_option("--format", opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  add_out(scan);

  CLI::App* optimize = app.add_subcommand("optimize", "locate critical orbits");
  add_family_opts(optimize);
  optimize->add_option("--init", opt.init, "initial radii for product-spheres")->delimiter(',');
  optimize->add_option("--tol", opt.tol, "gradient tolerance (product-spheres)")
      ->capture_default_str();
  optimize->add_option("--grad-tol", opt.grad_tol, "gradient tolerance (curve families)")
      ->capture_default_str();
  optimize->add_option("--max-iter", opt.max_iter, "iteration cap (0 = default)");
  add_out(optimize);

  CLI::App* collapse = app.add_subcommand("collapse", "fit the divergence exponent at a boundary");
  add_family_opts(collapse);
  collapse->add_option("--boundary", opt.boundary, "which end of the family")
      ->required()
      ->check(CLI::IsMember({"lo", "hi"}));
  collapse->add_option("--decades", opt.decades, "decades of approach to fit")
      ->capture_default_str();
  add_out(collapse);

  CLI::App* fingerprint = app.add_subcommand("fingerprint", "orbit/isotropy dimensions");
  add_family_opts(fingerprint);
  fingerprint->add_option("--rep", opt.rep_path, "representation JSON file");
  fingerprint->add_option("--point", opt.point_path, "point JSON file");
  add_out(fingerprint);

  CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suite");
  verify->add_option("--only", opt.only, "run only checks whose name contains this string");
  verify->add_option("--rep", opt.rep_path, "also validate this representation file");
  add_out(verify);

  CLI::App* families_cmd = app.add_subcommand("families", "list built-in families");
  add_out(families_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    json err = {{"error", e.what()}, {"kind", "usage"}};
    std::cerr << err.dump() << "\n";
    return 2;
  }

  try {
    if (eval->parsed()) return cmd_eval(opt);
    if (scan->parsed()) return cmd_scan(opt);
    if (optimize->parsed()) return cmd_optimize(opt);
    if (collapse->parsed()) return cmd_collapse(opt);
    if (fingerprint->parsed()) return cmd_fingerprint(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (families_cmd->parsed()) return cmd_families(opt);
    json err = {{"error", "no subcommand"}, {"kind", "usage"}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const json::exception& e) {
    json err = {{"error", e.what()}, {"kind", "validation"}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    json err = {{"error", e.what()}, {"kind", "validation"}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err = {{"error", e.what()}, {"kind", "numerical"}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
}
