#include "ergokit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ergokit {

using nlohmann::json;

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"dim", m.rows()}, {"entries", entries}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.contains("dim") || !j.contains("entries"))
    throw validation_error("matrix json: need \"dim\" and \"entries\"");
  const int d = j.at("dim").get<int>();
  if (d < 1) throw validation_error("matrix json: dim must be positive");
  const auto& e = j.at("entries");
  if (!e.is_array() || static_cast<int>(e.size()) != d * d)
    throw validation_error("matrix json: entries must hold dim^2 [re, im] pairs");
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const auto& pair = e.at(i * d + k);
      if (!pair.is_array() || pair.size() != 2)
        throw validation_error("matrix json: each entry is a [re, im] pair");
      m(i, k) = Complex(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
  return m;
}

json channel_to_json(const Channel& ch) {
  switch (ch.kind) {
    case Channel::Kind::dephasing:
      return json{{"kind", "dephasing"}, {"kappa", ch.kappa},
                  {"dim", ch.cell_dim}};
    case Channel::Kind::depolarizing:
      return json{{"kind", "depolarizing"}, {"lambda", ch.lambda},
                  {"dim", ch.cell_dim}};
    case Channel::Kind::replacement:
      return json{{"kind", "replacement"}, {"dim", ch.cell_dim},
                  {"rho0", matrix_to_json(ch.rho0.entries)}};
    default:
      throw validation_error("channel json: composed channels not serialized");
  }
}

Channel channel_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "dephasing") {
    return Channel::dephasing(j.at("kappa").get<double>(),
                              j.value("dim", 2));
  }
  if (kind == "depolarizing") {
    return Channel::depolarizing(j.at("lambda").get<double>(),
                                 j.value("dim", 2));
  }
  if (kind == "replacement") {
    Matrix m = matrix_from_json(j.at("rho0"));
    return Channel::replacement(DensityMatrix(m));
  }
  throw validation_error("channel json: unknown kind \"" + kind + "\"");
}

json work_report_to_json(const WorkReport& rep) {
  return json{{"mean_energy", rep.mean_energy},
              {"ergotropy", rep.ergotropy},
              {"total_ergotropy", rep.total_ergotropy},
              {"free_energy_work", rep.free_energy_work},
              {"local_ergotropy", rep.local_ergotropy},
              {"passive_energy", rep.passive_energy}};
}

json search_result_to_json(const SearchResult& r) {
  json witness = json::array();
  for (Eigen::Index i = 0; i < r.witness.size(); ++i)
    witness.push_back({r.witness(i).real(), r.witness(i).imag()});
  return json{{"value", r.value},
              {"witness_state", witness},
              {"achieved_energy", r.achieved_energy},
              {"starts", r.starts},
              {"converged", r.converged}};
}

std::string capacitance_csv(const std::string& channel, double param,
                            const std::vector<CapacitancePoint>& points) {
  std::ostringstream os;
  os << "channel,param,functional,e,value,provenance\n";
  for (const auto& p : points)
    os << channel << ',' << format_number(param) << ',' << p.functional << ','
       << format_number(p.e) << ',' << format_number(p.value) << ','
       << p.provenance << '\n';
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw validation_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw validation_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw validation_error("cannot open for reading: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

namespace {

constexpr int kW = 640, kH = 440;
constexpr int kL = 70, kR = 20, kT = 40, kB = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = 0.0, hi = 1.0;
  void grow(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
};

double map_lin(double v, double lo, double hi, double p0, double p1) {
  if (hi <= lo) return 0.5 * (p0 + p1);
  return p0 + (v - lo) / (hi - lo) * (p1 - p0);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

void svg_header(std::ostringstream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
     << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH
     << "\">\n<rect width=\"" << kW << "\" height=\"" << kH
     << "\" fill=\"white\"/>\n";
}

void svg_axes(std::ostringstream& os, double x0, double x1, double y0,
              double y1, const std::string& x_label,
              const std::string& y_label, const std::string& title) {
  os << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR
     << "\" height=\"" << kH - kT - kB
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"15\">"
     << xml_escape(title) << "</text>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"13\">"
     << xml_escape(x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << kH / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"13\" transform=\"rotate(-90 16 "
     << kH / 2 << ")\">" << xml_escape(y_label) << "</text>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = x0 + k * (x1 - x0) / 4.0;
    const double fy = y0 + k * (y1 - y0) / 4.0;
    const double px = map_lin(fx, x0, x1, kL, kW - kR);
    const double py = map_lin(fy, y0, y1, kH - kB, kT);
    os << "<text x=\"" << format_number(px) << "\" y=\"" << kH - kB + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"11\">"
       << format_number(fx) << "</text>\n";
    os << "<text x=\"" << kL - 6 << "\" y=\"" << format_number(py + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
          "font-size=\"11\">"
       << format_number(fy) << "</text>\n";
  }
}

}  // namespace

std::string svg_line_plot(const std::vector<SvgSeries>& series,
                          const std::string& x_label,
                          const std::string& y_label,
                          const std::string& title) {
  Range xr, yr;
  xr.lo = yr.lo = std::numeric_limits<double>::infinity();
  xr.hi = yr.hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xr.grow(s.x[i]);
      yr.grow(s.y[i]);
    }
  if (!std::isfinite(xr.lo)) xr = {0.0, 1.0};
  if (!std::isfinite(yr.lo)) yr = {0.0, 1.0};
  if (yr.hi == yr.lo) yr.hi = yr.lo + 1.0;
  if (xr.hi == xr.lo) xr.hi = xr.lo + 1.0;
  const double pad = 0.05 * (yr.hi - yr.lo);
  yr.lo -= pad;
  yr.hi += pad;

  std::ostringstream os;
  svg_header(os);
  svg_axes(os, xr.lo, xr.hi, yr.lo, yr.hi, x_label, y_label, title);
  int ci = 0;
  for (const auto& s : series) {
    const char* color = kPalette[ci % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) os << ' ';
      os << format_number(map_lin(s.x[i], xr.lo, xr.hi, kL, kW - kR)) << ','
         << format_number(map_lin(s.y[i], yr.lo, yr.hi, kH - kB, kT));
    }
    os << "\"/>\n";
    os << "<text x=\"" << kL + 10 << "\" y=\"" << kT + 18 + 16 * ci
       << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
       << "\">" << xml_escape(s.label) << "</text>\n";
    ++ci;
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const std::vector<std::vector<double>>& values,
                        double x0, double x1, double y0, double y1,
                        const std::string& x_label, const std::string& y_label,
                        const std::string& title) {
  const int rows = static_cast<int>(values.size());
  const int cols = rows ? static_cast<int>(values[0].size()) : 0;
  if (!rows || !cols) throw validation_error("svg_heatmap: empty grid");
  double lo = values[0][0], hi = values[0][0];
  for (const auto& row : values)
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (hi == lo) hi = lo + 1.0;

  std::ostringstream os;
  svg_header(os);
  const double cw = double(kW - kL - kR) / cols;
  const double chh = double(kH - kT - kB) / rows;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double t = (values[r][c] - lo) / (hi - lo);
      // dark blue -> yellow
      const int red = static_cast<int>(std::lround(255 * t));
      const int green = static_cast<int>(std::lround(40 + 200 * t));
      const int blue = static_cast<int>(std::lround(120 * (1.0 - t)));
      char color[8];
      std::snprintf(color, sizeof(color), "#%02x%02x%02x", red, green, blue);
      os << "<rect x=\"" << format_number(kL + c * cw) << "\" y=\""
         << format_number(kH - kB - (r + 1) * chh) << "\" width=\""
         << format_number(cw + 0.5) << "\" height=\""
         << format_number(chh + 0.5) << "\" fill=\"" << color << "\"/>\n";
    }
  svg_axes(os, x0, x1, y0, y1, x_label, y_label, title);
  os << "</svg>\n";
  return os.str();
}

}  // namespace ergokit
