#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dfp/config.hpp"
#include "dfp/engine.hpp"

namespace dfp {

// Round-trip-exact decimal form (printf %.17g): rereading the text yields
// the same double, and equal doubles always print identically, so replayed
// runs produce byte-identical files.
std::string format_double(double v);

void write_trace_csv(const std::string& path, const SimTrace& trace);

// Same numeric columns in gnuplot-friendly whitespace layout.
void write_trace_dat(const std::string& path, const SimTrace& trace);

nlohmann::ordered_json connectivity_json(const WindowConnectivityReport& report);
nlohmann::ordered_json world_json(const TargetWorld& world);

// Run summary: config echo, world, connectivity, final metrics, NE-hit
// time, emitted file list.
nlohmann::ordered_json summary_json(const ResolvedConfig& resolved, const RunResult& result,
                                    const std::optional<long>& ne_hit,
                                    const std::vector<std::string>& files);

// Minimal self-contained line chart (log-log when requested); one series
// of (t, value) points.
struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::vector<ChartSeries>& series, bool log_log);

}  // namespace dfp
