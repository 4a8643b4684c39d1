#include "beam/writers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <system_error>

namespace beam {

std::string format_double(double x) {
  char buf[40];
  if (x == 0.0) x = 0.0;  // no "-0"
  const int len = std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  static std::atomic<unsigned long> counter{0};
  auto tmp = path;
  tmp += ".tmp" + std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::filesystem::filesystem_error("cannot open for writing", tmp,
                                              std::make_error_code(std::errc::io_error));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignore;
      std::filesystem::remove(tmp, ignore);
      throw std::filesystem::filesystem_error("write failed", tmp, std::make_error_code(std::errc::io_error));
    }
  }
  std::filesystem::rename(tmp, path);
}

namespace {

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_double(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string trajectory_csv(const Trajectory& trajectory, std::size_t stride) {
  if (stride == 0) stride = 1;
  std::string out =
      "t,energy_total,kinetic,elastic,potential,forcing,dissipated_cumulative,h2star_norm_u,l2_norm_v\n";
  const auto& led = trajectory.energy;
  for (std::size_t k = 0; k < led.size(); ++k) {
    if (k % stride != 0 && k + 1 != led.size()) continue;
    const auto& e = led[k];
    append_row(out, {e.t, e.total, e.kinetic, e.elastic, e.potential, e.forcing, e.dissipated_cumulative,
                     e.h2star_norm_u, e.l2_norm_v});
  }
  return out;
}

std::string snapshots_csv(const Trajectory& trajectory, const Grid& grid) {
  std::string out = "t,x,u,v\n";
  const std::size_t n = grid.size();
  for (const auto& s : trajectory.snapshots) {
    append_row(out, {s.t, grid.a(), 0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) append_row(out, {s.t, grid.node(i), s.u[i], s.v[i]});
    append_row(out, {s.t, grid.b(), 0.0, 0.0});
  }
  return out;
}

std::string stationary_csv(const StationarySolution& solution, const Grid& grid) {
  std::string out = "x,u_hat\n";
  append_row(out, {grid.a(), 0.0});
  for (std::size_t i = 0; i < grid.size(); ++i) append_row(out, {grid.node(i), solution.u_hat[i]});
  append_row(out, {grid.b(), 0.0});
  return out;
}

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 90, kRight = 170, kTop = 50, kBottom = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string line_chart_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
  const double inf = std::numeric_limits<double>::infinity();
  double x0 = inf, x1 = -inf, y0 = inf, y1 = -inf;
  auto yt = [&](double y) { return spec.log_y ? std::log10(y) : y; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!spec.log_y || y > 0.0);
  };
  for (const auto& s : series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, yt(s.y[i]));
      y1 = std::max(y1, yt(s.y[i]));
    }
  if (!(x0 <= x1)) x0 = 0, x1 = 1;
  if (!(y0 <= y1)) y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (yt(y) - y0) / (y1 - y0)) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
  out += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
  out += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         escape(spec.title) + "</text>\n";
  out += "<rect x=\"" + short_num(kLeft) + "\" y=\"" + short_num(kTop) + "\" width=\"" + short_num(pw) +
         "\" height=\"" + short_num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    const double fx = x0 + (x1 - x0) * k / 4.0;
    const double sx = kLeft + pw * k / 4.0;
    out += "<line x1=\"" + short_num(sx) + "\" y1=\"" + short_num(kTop + ph) + "\" x2=\"" + short_num(sx) +
           "\" y2=\"" + short_num(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + short_num(sx) + "\" y=\"" + short_num(kTop + ph + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + short_num(fx) + "</text>\n";
    const double fy = y0 + (y1 - y0) * k / 4.0;
    const double sy = kTop + ph * (1.0 - k / 4.0);
    const std::string label = spec.log_y ? "1e" + short_num(fy) : short_num(fy);
    out += "<line x1=\"" + short_num(kLeft - 5) + "\" y1=\"" + short_num(sy) + "\" x2=\"" + short_num(kLeft) +
           "\" y2=\"" + short_num(sy) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + short_num(kLeft - 8) + "\" y=\"" + short_num(sy + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" + label + "</text>\n";
  }
  out += "<text x=\"" + short_num(kLeft + pw / 2) + "\" y=\"" + short_num(kHeight - 15) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(spec.x_label) +
         "</text>\n";
  out += "<text x=\"20\" y=\"" + short_num(kTop + ph / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" " +
         "font-size=\"13\" transform=\"rotate(-90 20 " + short_num(kTop + ph / 2) + ")\">" + escape(spec.y_label) +
         "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % std::size(kColors)];
    std::string pts;
    const auto& ser = series[s];
    for (std::size_t i = 0; i < std::min(ser.x.size(), ser.y.size()); ++i) {
      if (!usable(ser.x[i], ser.y[i])) continue;
      if (!pts.empty()) pts += ' ';
      pts += short_num(px(ser.x[i])) + "," + short_num(py(ser.y[i]));
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
           "\"/>\n";
    const double ly = kTop + 15 + 20.0 * static_cast<double>(s);
    const double lx = kLeft + pw + 15;
    out += "<line x1=\"" + short_num(lx) + "\" y1=\"" + short_num(ly) + "\" x2=\"" + short_num(lx + 20) +
           "\" y2=\"" + short_num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + short_num(lx + 26) + "\" y=\"" + short_num(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + escape(ser.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

namespace {

// Plots need at most a few thousand points.
std::size_t thin_stride(std::size_t count) { return std::max<std::size_t>(1, count / 2000); }

}  // namespace

std::string energy_svg(const Trajectory& trajectory) {
  PlotSeries energy{"E(t)", {}, {}}, dissipated{"dissipated", {}, {}};
  const auto& led = trajectory.energy;
  const std::size_t stride = thin_stride(led.size());
  for (std::size_t k = 0; k < led.size(); ++k) {
    if (k % stride != 0 && k + 1 != led.size()) continue;
    energy.x.push_back(led[k].t);
    energy.y.push_back(led[k].total);
    dissipated.x.push_back(led[k].t);
    dissipated.y.push_back(led[k].dissipated_cumulative);
  }
  return line_chart_svg({"Energy", "t", "energy", false}, {energy, dissipated});
}

std::string gap_svg(const ConvergenceReport& report) {
  PlotSeries gap{"|u - u_hat| H2*", report.times, report.h2star_gap};
  PlotSeries vel{"|u'| L2", report.times, report.v_l2};
  return line_chart_svg({"Distance to equilibrium", "t", "norm", true}, {gap, vel});
}

}  // namespace beam
