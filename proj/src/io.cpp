#include "willmore/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace willmore::io {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json to_json(const representations::Representation& rep) {
  json gens = json::array();
  for (const auto& g : rep.generators) {
    json flat = json::array();
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c) flat.push_back(g(r, c));
    gens.push_back(std::move(flat));
  }
  return json{{"name", rep.name}, {"ambient_dim", rep.ambient_dim}, {"generators", std::move(gens)}};
}

representations::Representation representation_from_json(const json& j) {
  representations::Representation rep;
  rep.name = j.at("name").get<std::string>();
  rep.ambient_dim = j.at("ambient_dim").get<int>();
  if (rep.ambient_dim <= 0) throw std::invalid_argument("ambient_dim must be positive");
  const int n = rep.ambient_dim;
  for (const auto& flat : j.at("generators")) {
    if (static_cast<int>(flat.size()) != n * n)
      throw std::invalid_argument("generator entry count does not match ambient_dim^2");
    Eigen::MatrixXd g(n, n);
    int k = 0;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) g(r, c) = flat[k++].get<double>();
    rep.generators.push_back(std::move(g));
  }
  if (rep.generators.empty()) throw std::invalid_argument("representation has no generators");
  return rep;
}

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return json::parse(in);
}

}  // namespace

representations::Representation load_representation(const std::string& path) {
  return representation_from_json(parse_file(path));
}

Eigen::VectorXd point_from_json(const json& j) {
  const auto& arr = j.at("point");
  Eigen::VectorXd x(arr.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = arr[i].get<double>();
  return x;
}

Eigen::VectorXd load_point(const std::string& path) {
  return point_from_json(parse_file(path));
}

json to_json(const orbit_geometry::OrbitInvariants& inv) {
  return json{{"orbit_dim", inv.orbit_dim},
              {"isotropy_dim", inv.isotropy_dim},
              {"S", inv.S},
              {"H2", inv.H2},
              {"integrand", inv.integrand},
              {"vol_proxy", inv.vol_proxy},
              {"relW", inv.relW},
              {"ambiguous_rank", inv.ambiguous_rank},
              {"fingerprint", {inv.orbit_dim, inv.isotropy_dim}}};
}

json to_json(const critical_search::CriticalPoint& cp) {
  json j{{"value", cp.value},
         {"kind", critical_search::to_string(cp.kind)},
         {"grad_norm", cp.grad_norm},
         {"second_deriv", cp.second_deriv}};
  if (cp.params.size() == 1) {
    j["param"] = cp.params(0);
  } else {
    json t = json::array();
    for (Eigen::Index i = 0; i < cp.params.size(); ++i) t.push_back(cp.params(i));
    j["t"] = std::move(t);
  }
  return j;
}

json to_json(const critical_search::CollapseFit& fit) {
  json samples = json::array();
  for (const auto& [d, v] : fit.samples) samples.push_back({d, v});
  return json{{"boundary", fit.boundary == critical_search::Boundary::lo ? "lo" : "hi"},
              {"boundary_label", fit.boundary_label},
              {"exponent", fit.exponent},
              {"r2", fit.r2},
              {"diverges", fit.diverges},
              {"accepted", fit.accepted},
              {"samples", std::move(samples)}};
}

json to_json(const critical_search::ExtremaReport& report) {
  json points = json::array();
  for (const auto& cp : report.critical_points) points.push_back(to_json(cp));
  return json{{"count_min", report.count_min},
              {"count_max", report.count_max},
              {"count_other", report.count_other},
              {"both_ends_diverge", report.both_ends_diverge},
              {"critical_points", std::move(points)}};
}

json scan_to_json(const std::vector<critical_search::ScanPoint>& scan) {
  json rows = json::array();
  for (const auto& p : scan)
    rows.push_back(json{{"param", p.param},
                        {"value", p.value},
                        {"orbit_dim", p.fingerprint.orbit_dim},
                        {"isotropy_dim", p.fingerprint.isotropy_dim}});
  return rows;
}

std::string scan_to_csv(const std::vector<critical_search::ScanPoint>& scan) {
  std::string out = "param,value,orbit_dim,isotropy_dim\n";
  for (const auto& p : scan) {
    out += format_double(p.param);
    out += ',';
    out += format_double(p.value);
    out += ',';
    out += std::to_string(p.fingerprint.orbit_dim);
    out += ',';
    out += std::to_string(p.fingerprint.isotropy_dim);
    out += '\n';
  }
  return out;
}

std::vector<critical_search::ScanPoint> scan_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "param,value,orbit_dim,isotropy_dim")
    throw std::invalid_argument("bad scan CSV header");

  std::vector<critical_search::ScanPoint> scan;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw std::invalid_argument("bad scan CSV row: " + line);
    critical_search::ScanPoint p;
    p.param = std::strtod(cells[0].c_str(), nullptr);
    p.value = std::strtod(cells[1].c_str(), nullptr);
    p.fingerprint.orbit_dim = std::stoi(cells[2]);
    p.fingerprint.isotropy_dim = std::stoi(cells[3]);
    scan.push_back(p);
  }
  return scan;
}

std::vector<critical_search::ScanPoint> read_scan_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return scan_from_csv(in);
}

}  // namespace willmore::io
