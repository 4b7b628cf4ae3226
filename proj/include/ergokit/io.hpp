#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ergokit/asymptotics.hpp"
#include "ergokit/channels.hpp"
#include "ergokit/search.hpp"
#include "ergokit/types.hpp"
#include "ergokit/work.hpp"

namespace ergokit {

// Matrix files: {"dim": d, "entries": [[re, im], ...]} row-major.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json channel_to_json(const Channel& ch);
Channel channel_from_json(const nlohmann::json& j);

nlohmann::json work_report_to_json(const WorkReport& rep);
nlohmann::json search_result_to_json(const SearchResult& r);

std::string format_number(double v);

/// One row per point: channel, param, functional, e, value, provenance.
std::string capacitance_csv(const std::string& channel, double param,
                            const std::vector<CapacitancePoint>& points);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string svg_line_plot(const std::vector<SvgSeries>& series,
                          const std::string& x_label,
                          const std::string& y_label,
                          const std::string& title);

/// values indexed [row][col]; rows map to the y axis bottom-up.
std::string svg_heatmap(const std::vector<std::vector<double>>& values,
                        double x0, double x1, double y0, double y1,
                        const std::string& x_label, const std::string& y_label,
                        const std::string& title);

}  // namespace ergokit
