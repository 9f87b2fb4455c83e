#include "swarmsched/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "swarmsched/errors.hpp"

namespace swarmsched {

namespace {

constexpr double kWidth = 720, kHeight = 420;
constexpr double kLeft = 80, kRight = 20, kTop = 40, kBottom = 80;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

double quantile(std::vector<double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::string shape_label(int l, int m, int n) {
  return "l" + std::to_string(l) + " m" + std::to_string(m) + " n" + std::to_string(n);
}

}  // namespace

std::string box_plot_svg(const std::string& title, const std::string& y_label,
                         const std::vector<Series>& series) {
  double lo = INFINITY, hi = -INFINITY;
  std::size_t points = 0;
  for (const auto& s : series)
    for (double v : s.values)
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        ++points;
      }
  if (points == 0) throw DomainError("plot: no data");
  if (hi - lo < 1e-12) {
    const double pad = std::max(1.0, std::abs(lo) * 0.05);
    lo -= pad;
    hi += pad;
  } else {
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }

  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  auto y_of = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };
  const double slot = plot_w / static_cast<double>(series.size());

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << escape(title) << "</text>\n";
  svg << "<rect id=\"plot-area\" x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\""
      << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    const double y = y_of(v);
    svg << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft)
        << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(v) << "</text>\n";
  }
  svg << "<text x=\"18\" y=\"" << fmt(kTop + plot_h / 2) << "\" transform=\"rotate(-90 18 "
      << fmt(kTop + plot_h / 2) << ")\" text-anchor=\"middle\" font-size=\"12\">"
      << escape(y_label) << "</text>\n";

  for (std::size_t g = 0; g < series.size(); ++g) {
    const double cx = kLeft + slot * (static_cast<double>(g) + 0.5);
    const double half = std::min(30.0, slot * 0.3);
    svg << "<text x=\"" << fmt(cx) << "\" y=\"" << fmt(kTop + plot_h + 20)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << escape(series[g].label)
        << "</text>\n";
    std::vector<double> values;
    for (double v : series[g].values)
      if (std::isfinite(v)) values.push_back(v);
    if (values.empty()) continue;
    std::sort(values.begin(), values.end());
    const double q1 = quantile(values, 0.25), med = quantile(values, 0.5),
                 q3 = quantile(values, 0.75);
    svg << "<line class=\"whisker\" x1=\"" << fmt(cx) << "\" y1=\"" << fmt(y_of(values.front()))
        << "\" x2=\"" << fmt(cx) << "\" y2=\"" << fmt(y_of(values.back()))
        << "\" stroke=\"gray\"/>\n";
    svg << "<rect class=\"box\" x=\"" << fmt(cx - half) << "\" y=\"" << fmt(y_of(q3))
        << "\" width=\"" << fmt(2 * half) << "\" height=\"" << fmt(y_of(q1) - y_of(q3))
        << "\" fill=\"#cfe0f3\" stroke=\"black\"/>\n";
    svg << "<line class=\"median\" x1=\"" << fmt(cx - half) << "\" y1=\"" << fmt(y_of(med))
        << "\" x2=\"" << fmt(cx + half) << "\" y2=\"" << fmt(y_of(med))
        << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (double v : values)
      svg << "<circle class=\"point\" cx=\"" << fmt(cx) << "\" cy=\"" << fmt(y_of(v))
          << "\" r=\"2.5\" fill=\"#1f4e8c\" fill-opacity=\"0.6\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::filesystem::path> emit_plots(const std::vector<BenchRecord>& records,
                                              const std::filesystem::path& out_dir) {
  if (records.empty()) throw DomainError("plot: no data");
  std::filesystem::create_directories(out_dir);

  std::map<std::string, Series> cost, time;
  std::vector<std::string> order;
  for (const auto& r : records) {
    const std::string label = shape_label(r.l, r.m, r.n) + " " + r.solver;
    if (!cost.count(label)) {
      order.push_back(label);
      cost[label].label = time[label].label = label;
    }
    cost[label].values.push_back(r.makespan);
    time[label].values.push_back(std::log10(std::max(r.wall_ms, 1e-6)));
  }
  auto ordered = [&](std::map<std::string, Series>& by_label) {
    std::vector<Series> out;
    for (const auto& label : order) out.push_back(by_label[label]);
    return out;
  };

  std::vector<std::filesystem::path> written;
  auto write = [&](const std::string& name, const std::string& svg) {
    const auto path = out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << svg;
    written.push_back(path);
  };
  write("cost.svg", box_plot_svg("Makespan", "makespan (time units)", ordered(cost)));
  write("time.svg", box_plot_svg("Wall clock solving time", "log10 wall ms", ordered(time)));

  const auto relative = relative_performance(records);
  if (!relative.empty()) {
    std::map<std::string, Series> rel_cost, rel_time;
    std::vector<std::string> shapes;
    for (const auto& r : relative) {
      const std::string label = shape_label(r.l, r.m, r.n);
      if (!rel_cost.count(label)) {
        shapes.push_back(label);
        rel_cost[label].label = rel_time[label].label = label;
      }
      rel_cost[label].values.push_back(r.relative_cost);
      rel_time[label].values.push_back(r.log10_relative_time);
    }
    std::vector<Series> c, t;
    for (const auto& label : shapes) {
      c.push_back(rel_cost[label]);
      t.push_back(rel_time[label]);
    }
    write("relative_cost.svg", box_plot_svg("Greedy / exact makespan", "relative cost", c));
    write("relative_time.svg",
          box_plot_svg("Greedy / exact wall time", "log10 relative run-time", t));
  }
  return written;
}

}  // namespace swarmsched
