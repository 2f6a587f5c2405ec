#include "orbitcap/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace orbitcap::io {

using nlohmann::json;

json matrix_to_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

CMat matrix_from_json(const json& j) {
  const auto rows = j.size();
  if (rows == 0) throw std::invalid_argument("empty matrix");
  const auto cols = j.at(0).size();
  CMat m(rows, cols);
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < cols; ++k)
      m(i, k) = cplx(j.at(i).at(k).at(0).get<double>(), j.at(i).at(k).at(1).get<double>());
  return m;
}

json point_to_json(const orbit::OrbitPoint& p) {
  json line = json::array();
  for (Eigen::Index k = 0; k < p.line.size(); ++k)
    line.push_back({p.line(k).real(), p.line(k).imag()});
  return {{"n", p.n}, {"line", line}, {"matrix", matrix_to_json(p.matrix)}};
}

orbit::OrbitPoint point_from_json(const json& j) {
  if (!j.contains("line")) throw std::invalid_argument("point JSON requires a \"line\" field");
  const auto& line = j.at("line");
  CVec z(line.size());
  for (size_t k = 0; k < line.size(); ++k)
    z(k) = cplx(line.at(k).at(0).get<double>(), line.at(k).at(1).get<double>());
  orbit::OrbitPoint p = orbit::from_line(z);
  if (j.contains("n") && j.at("n").get<int>() != p.n)
    throw std::invalid_argument("point JSON dimension mismatch");
  return p;
}

json pair_to_json(const orbit::TangentPair& p) {
  return {{"x", point_to_json(p.base)},
          {"v", matrix_to_json(p.vec.m)},
          {"radius_bound", p.radius_bound}};
}

orbit::TangentPair pair_from_json(const json& j) {
  orbit::OrbitPoint x = point_from_json(j.at("x"));
  liealg::AlgebraElement v{matrix_from_json(j.at("v"))};
  double rb = j.value("radius_bound", 1.0);
  return {x, v, rb};
}

json report_to_json(const capacity::CapacityReport& r) {
  json diag;
  for (const auto& [k, v] : r.diagnostics) diag[k] = v;
  return {{"space", r.space}, {"n", r.n},         {"s", r.s},     {"lower", r.lower},
          {"upper", r.upper}, {"l_unit", r.l_unit}, {"eps", r.eps}, {"diagnostics", diag}};
}

std::string reports_to_json(const std::vector<capacity::CapacityReport>& rs) {
  json arr = json::array();
  for (const auto& r : rs) arr.push_back(report_to_json(r));
  return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<capacity::CapacityReport>& rs) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "space,n,s,lower,upper,l_unit,eps\n";
  for (const auto& r : rs)
    out << r.space << "," << r.n << "," << r.s << "," << r.lower << "," << r.upper << ","
        << r.l_unit << "," << r.eps << "\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string svg_curve_plot(const std::vector<double>& x, const std::vector<std::vector<double>>& ys,
                           const std::vector<std::string>& labels, const std::string& title) {
  const int w = 640, h = 420, margin = 50;
  double xmin = x.front(), xmax = x.back();
  double ymin = 1e300, ymax = -1e300;
  for (const auto& y : ys)
    for (double v : y) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double v) { return margin + (v - xmin) / (xmax - xmin) * (w - 2 * margin); };
  auto py = [&](double v) { return h - margin - (v - ymin) / (ymax - ymin) * (h - 2 * margin); };

  std::ostringstream svg;
  svg << std::setprecision(8);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
      << "</text>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin
      << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
      << h - margin << "\" stroke=\"black\"/>\n";
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  for (size_t c = 0; c < ys.size(); ++c) {
    svg << "<polyline fill=\"none\" stroke=\"" << colors[c % 5] << "\" stroke-width=\"1.5\" points=\"";
    for (size_t k = 0; k < x.size() && k < ys[c].size(); ++k)
      svg << px(x[k]) << "," << py(ys[c][k]) << " ";
    svg << "\"/>\n";
    if (c < labels.size())
      svg << "<text x=\"" << w - margin - 150 << "\" y=\"" << margin + 16 * (c + 1)
          << "\" font-size=\"12\" fill=\"" << colors[c % 5] << "\">" << labels[c] << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace orbitcap::io
