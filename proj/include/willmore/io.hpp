#ifndef WILLMORE_IO_HPP
#define WILLMORE_IO_HPP

#include <Eigen/Dense>

#include <istream>
#include <string>
#include <vector>

#include "json.hpp"
#include "willmore/critical_search.hpp"
#include "willmore/orbit_geometry.hpp"
#include "willmore/representation.hpp"

namespace willmore::io {

/// 17 significant digits: round-trips double precision exactly.
std::string format_double(double v);

nlohmann::json to_json(const representations::Representation& rep);
representations::Representation representation_from_json(const nlohmann::json& j);

/// Parses {"name", "ambient_dim", "generators": [[row-major floats]]}.
/// Loaded representations still need validate_representation before use.
representations::Representation load_representation(const std::string& path);

Eigen::VectorXd point_from_json(const nlohmann::json& j);

/// Parses {"point": [floats]}.
Eigen::VectorXd load_point(const std::string& path);

nlohmann::json to_json(const orbit_geometry::OrbitInvariants& inv);
nlohmann::json to_json(const critical_search::CriticalPoint& cp);
nlohmann::json to_json(const critical_search::CollapseFit& fit);
nlohmann::json to_json(const critical_search::ExtremaReport& report);
nlohmann::json scan_to_json(const std::vector<critical_search::ScanPoint>& scan);

/// Header "param,value,orbit_dim,isotropy_dim"; floats with 17 significant
/// digits so a written scan reads back bit-exactly.
std::string scan_to_csv(const std::vector<critical_search::ScanPoint>& scan);
std::vector<critical_search::ScanPoint> scan_from_csv(std::istream& in);
std::vector<critical_search::ScanPoint> read_scan_csv(const std::string& path);

}  // namespace willmore::io

#endif
