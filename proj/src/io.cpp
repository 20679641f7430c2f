#include "dfp/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dfp {
namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

std::string join_actions(const JointAction& actions) {
  std::string s;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(actions[i]);
  }
  return s;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(const std::string& path, const SimTrace& trace) {
  std::ofstream out = open_for_write(path);
  out << "t,estimate_error,ne_distance,tv_disagreement,actions\n";
  for (const TraceRecord& r : trace.records) {
    out << r.t << ',' << format_double(r.estimate_error) << ',' << format_double(r.ne_distance)
        << ',' << format_double(r.tv_disagreement) << ',' << join_actions(r.actions) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_trace_dat(const std::string& path, const SimTrace& trace) {
  std::ofstream out = open_for_write(path);
  out << "# t estimate_error ne_distance tv_disagreement\n";
  for (const TraceRecord& r : trace.records) {
    out << r.t << ' ' << format_double(r.estimate_error) << ' ' << format_double(r.ne_distance)
        << ' ' << format_double(r.tv_disagreement) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

nlohmann::ordered_json connectivity_json(const WindowConnectivityReport& report) {
  nlohmann::ordered_json j;
  j["window"] = report.window;
  j["t_start"] = report.t_start;
  j["t_end"] = report.t_end;
  j["connected"] = report.connected;
  j["windows_checked"] = report.windows_checked;
  if (report.first_failing_window_start)
    j["first_failing_window_start"] = *report.first_failing_window_start;
  else
    j["first_failing_window_start"] = nullptr;
  return j;
}

nlohmann::ordered_json world_json(const TargetWorld& world) {
  nlohmann::ordered_json j;
  j["seed"] = world.seed;
  j["noise_scale"] = world.noise_scale;
  j["agents"] = nlohmann::ordered_json::array();
  for (const auto& a : world.agents) j["agents"].push_back({a[0], a[1]});
  j["targets"] = nlohmann::ordered_json::array();
  for (const auto& t : world.targets) j["targets"].push_back({t[0], t[1]});
  return j;
}

nlohmann::ordered_json summary_json(const ResolvedConfig& resolved, const RunResult& result,
                                    const std::optional<long>& ne_hit,
                                    const std::vector<std::string>& files) {
  nlohmann::ordered_json j;
  j["config"] = resolved.echo;
  j["game_kind"] = resolved.game_kind;
  if (resolved.world) j["world"] = world_json(*resolved.world);
  j["seed"] = resolved.sim.seed;
  j["horizon"] = resolved.sim.horizon;
  j["equilibrium_count"] = resolved.sim.ne_set.size();

  const TraceRecord& last = result.trace.records.back();
  nlohmann::ordered_json final_metrics;
  final_metrics["t"] = last.t;
  final_metrics["estimate_error"] = last.estimate_error;
  final_metrics["ne_distance"] = last.ne_distance;
  final_metrics["tv_disagreement"] = last.tv_disagreement;
  j["final"] = final_metrics;

  if (ne_hit)
    j["ne_hit_time"] = *ne_hit;
  else
    j["ne_hit_time"] = nullptr;
  j["connectivity"] = connectivity_json(result.trace.connectivity);
  j["files"] = files;
  return j;
}

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::vector<ChartSeries>& series, bool log_log) {
  static constexpr int kWidth = 720;
  static constexpr int kHeight = 440;
  static constexpr int kMarginLeft = 70;
  static constexpr int kMarginRight = 20;
  static constexpr int kMarginTop = 40;
  static constexpr int kMarginBottom = 50;
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  auto transform = [log_log](double v) { return log_log ? std::log10(v) : v; };

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool any = false;
  for (const ChartSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      if (log_log && (x <= 0.0 || y <= 0.0)) continue;
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      const double tx = transform(x);
      const double ty = transform(y);
      if (!any) {
        x_min = x_max = tx;
        y_min = y_max = ty;
        any = true;
      } else {
        x_min = std::min(x_min, tx);
        x_max = std::max(x_max, tx);
        y_min = std::min(y_min, ty);
        y_max = std::max(y_max, ty);
      }
    }
  }
  if (x_max - x_min < 1e-12) x_max = x_min + 1.0;
  if (y_max - y_min < 1e-12) y_max = y_min + 1.0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double tx) { return kMarginLeft + (tx - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double ty) { return kHeight - kMarginBottom - (ty - y_min) / (y_max - y_min) * plot_h; };

  auto axis_label = [log_log](double tv) {
    return format_double(log_log ? std::pow(10.0, tv) : tv);
  };

  std::ofstream out = open_for_write(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << title << (log_log ? " (log-log)" : "") << "</text>\n";
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kHeight - kMarginBottom << "\" x2=\""
      << kWidth - kMarginRight << "\" y2=\"" << kHeight - kMarginBottom
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
      << "\" y2=\"" << kHeight - kMarginBottom << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kMarginLeft << "\" y=\"" << kHeight - kMarginBottom + 20
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << axis_label(x_min) << "</text>\n";
  out << "<text x=\"" << kWidth - kMarginRight << "\" y=\"" << kHeight - kMarginBottom + 20
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << axis_label(x_max)
      << "</text>\n";
  out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kHeight - kMarginBottom
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << axis_label(y_min)
      << "</text>\n";
  out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << kMarginTop + 10
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << axis_label(y_max)
      << "</text>\n";

  int color_index = 0;
  int legend_y = kMarginTop + 8;
  for (const ChartSeries& s : series) {
    const char* color = kPalette[static_cast<std::size_t>(color_index) % 5];
    ++color_index;
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : s.points) {
      if (log_log && (x <= 0.0 || y <= 0.0)) continue;
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      out << px(transform(x)) << ',' << py(transform(y)) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << kWidth - kMarginRight - 8 << "\" y=\"" << legend_y
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color
        << "\">" << s.label << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace dfp
