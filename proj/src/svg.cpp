#include "splitconf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace splitconf {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 610.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 380.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const SvgChart& chart) {
  double x_min = 0.0;
  double x_max = 1.0;
  bool have_x = false;
  for (const SvgSeries& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      double v = chart.log_x ? std::log10(x) : x;
      if (!have_x) {
        x_min = x_max = v;
        have_x = true;
      } else {
        x_min = std::min(x_min, v);
        x_max = std::max(x_max, v);
      }
    }
  }
  if (!have_x || x_max <= x_min) {
    x_max = x_min + 1.0;
  }

  auto map_x = [&](double x) {
    double v = chart.log_x ? std::log10(x) : x;
    return kLeft + (kRight - kLeft) * (v - x_min) / (x_max - x_min);
  };
  auto map_y = [&](double y) {
    double clamped = std::clamp(y, chart.y_min, chart.y_max);
    return kBottom - (kBottom - kTop) * (clamped - chart.y_min) / (chart.y_max - chart.y_min);
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) +
         "\">\n";
  out += "<title>" + escape(chart.title) + "</title>\n";

  // axes
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(kRight) +
         "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";
  out += "<text x=\"" + num(0.5 * (kLeft + kRight)) + "\" y=\"" + num(kBottom + 35.0) +
         "\" text-anchor=\"middle\" font-size=\"13\">" + escape(chart.x_label) + "</text>\n";
  out += "<text x=\"18.00\" y=\"" + num(0.5 * (kTop + kBottom)) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18.00 " +
         num(0.5 * (kTop + kBottom)) + ")\">" + escape(chart.y_label) + "</text>\n";
  out += "<text x=\"" + num(0.5 * (kLeft + kRight)) + "\" y=\"22.00\" text-anchor=\"middle\" " +
         "font-size=\"14\">" + escape(chart.title) + "</text>\n";

  // y ticks at 5 even positions
  for (int k = 0; k <= 4; ++k) {
    double y = chart.y_min + (chart.y_max - chart.y_min) * k / 4.0;
    double py = map_y(y);
    out += "<line x1=\"" + num(kLeft - 4.0) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + num(kLeft - 8.0) + "\" y=\"" + num(py + 4.0) +
           "\" text-anchor=\"end\" font-size=\"11\">" + num(y) + "</text>\n";
  }

  // x ticks at each distinct sample point of the first series
  if (!chart.series.empty()) {
    for (const auto& [x, y] : chart.series.front().points) {
      (void)y;
      double px = map_x(x);
      out += "<line x1=\"" + num(px) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(px) +
             "\" y2=\"" + num(kBottom + 4.0) + "\" stroke=\"black\"/>\n";
      char label[32];
      std::snprintf(label, sizeof(label), "%g", x);
      out += "<text x=\"" + num(px) + "\" y=\"" + num(kBottom + 18.0) +
             "\" text-anchor=\"middle\" font-size=\"11\">" + label + "</text>\n";
    }
  }

  for (const auto& [name, y] : chart.dashed_refs) {
    double py = map_y(y);
    out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kRight) +
           "\" y2=\"" + num(py) + "\" stroke=\"#444444\" stroke-dasharray=\"6,4\"/>\n";
    out += "<text x=\"" + num(kRight - 4.0) + "\" y=\"" + num(py - 4.0) +
           "\" text-anchor=\"end\" font-size=\"10\" fill=\"#444444\">" + escape(name) +
           "</text>\n";
  }
  for (const auto& [name, y] : chart.dashdot_refs) {
    double py = map_y(y);
    out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kRight) +
           "\" y2=\"" + num(py) + "\" stroke=\"#444444\" stroke-dasharray=\"8,3,2,3\"/>\n";
    out += "<text x=\"" + num(kRight - 4.0) + "\" y=\"" + num(py + 12.0) +
           "\" text-anchor=\"end\" font-size=\"10\" fill=\"#444444\">" + escape(name) +
           "</text>\n";
  }

  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const SvgSeries& s = chart.series[i];
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string pts;
    for (const auto& [x, y] : s.points) {
      if (!pts.empty()) pts += ' ';
      pts += num(map_x(x)) + "," + num(map_y(y));
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
           pts + "\"/>\n";
    // legend entry
    double ly = kTop + 16.0 * static_cast<double>(i) + 8.0;
    out += "<line x1=\"" + num(kLeft + 8.0) + "\" y1=\"" + num(ly) + "\" x2=\"" +
           num(kLeft + 28.0) + "\" y2=\"" + num(ly) + "\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
    out += "<text x=\"" + num(kLeft + 32.0) + "\" y=\"" + num(ly + 4.0) +
           "\" font-size=\"11\">" + escape(s.name) + "</text>\n";
  }

  out += "</svg>\n";
  return out;
}

void write_svg(const std::string& path, const SvgChart& chart) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_svg: cannot open " + path);
  }
  out << render_svg(chart);
  if (!out) {
    throw std::runtime_error("write_svg: write failed for " + path);
  }
}

}  // namespace splitconf
