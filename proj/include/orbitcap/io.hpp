#ifndef ORBITCAP_IO_HPP_
#define ORBITCAP_IO_HPP_

#include <string>
#include <vector>

#include "orbitcap/capacity.hpp"
#include "orbitcap/orbit.hpp"

#include <json.hpp>

// File schemas.  Points: {"n": int, "line": [[re,im],...]} with a "matrix"
// echo; writers always emit both, readers require "line".

namespace orbitcap::io {

nlohmann::json point_to_json(const orbit::OrbitPoint& p);
orbit::OrbitPoint point_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j);

nlohmann::json pair_to_json(const orbit::TangentPair& p);
orbit::TangentPair pair_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const capacity::CapacityReport& r);
std::string reports_to_json(const std::vector<capacity::CapacityReport>& rs);
std::string reports_to_csv(const std::vector<capacity::CapacityReport>& rs);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// minimal static SVG plots (capacity curves, billiard scans)
std::string svg_curve_plot(const std::vector<double>& x, const std::vector<std::vector<double>>& ys,
                           const std::vector<std::string>& labels, const std::string& title);

}  // namespace orbitcap::io

#endif  // ORBITCAP_IO_HPP_
