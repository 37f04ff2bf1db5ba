#include "bootperc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bootperc/errors.hpp"

namespace bootperc {

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_chart(const std::vector<ChartSeries>& series,
                         const std::vector<ChartMarker>& markers,
                         const ChartOptions& options) {
  if (series.empty()) throw param_error("render_chart: no series");
  for (const ChartSeries& s : series) {
    if (s.points.empty())
      throw param_error("render_chart: series '" + s.label + "' is empty");
  }

  auto tx = [&](double x) {
    if (options.log_x) {
      if (!(x > 0.0))
        throw param_error("render_chart: log x-axis requires x > 0");
      return std::log10(x);
    }
    return x;
  };

  double xmin = tx(series[0].points[0].first);
  double xmax = xmin;
  for (const ChartSeries& s : series) {
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, tx(x));
      xmax = std::max(xmax, tx(x));
    }
  }
  for (const ChartMarker& m : markers) {
    xmin = std::min(xmin, tx(m.x));
    xmax = std::max(xmax, tx(m.x));
  }
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }

  const double left = 70, right = 30, top = 42, bottom = 58;
  const double plot_w = options.width - left - right;
  const double plot_h = options.height - top - bottom;
  auto sx = [&](double x) { return left + (tx(x) - xmin) / (xmax - xmin) * plot_w; };
  auto sy = [&](double y) { return top + (1.0 - y) * plot_h; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(options.width) + "\" height=\"" +
         std::to_string(options.height) + "\" viewBox=\"0 0 " +
         std::to_string(options.width) + " " + std::to_string(options.height) +
         "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (!options.title.empty()) {
    out += "<text x=\"" + px(options.width / 2.0) +
           "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">" +
           xml_escape(options.title) + "</text>\n";
  }

  // frame
  out += "<rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" +
         px(plot_w) + "\" height=\"" + px(plot_h) +
         "\" fill=\"none\" stroke=\"#333\"/>\n";

  // y ticks at 0, .25, .5, .75, 1
  for (int i = 0; i <= 4; ++i) {
    const double yv = i / 4.0;
    const double y = sy(yv);
    out += "<line x1=\"" + px(left - 4) + "\" y1=\"" + px(y) + "\" x2=\"" +
           px(left) + "\" y2=\"" + px(y) + "\" stroke=\"#333\"/>\n";
    out += "<text x=\"" + px(left - 8) + "\" y=\"" + px(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           tick_label(yv) + "</text>\n";
    if (i > 0 && i < 4) {
      out += "<line x1=\"" + px(left) + "\" y1=\"" + px(y) + "\" x2=\"" +
             px(left + plot_w) + "\" y2=\"" + px(y) +
             "\" stroke=\"#ddd\"/>\n";
    }
  }

  // x ticks: 6 stops across the (possibly log-transformed) range
  for (int i = 0; i <= 5; ++i) {
    const double t = xmin + (xmax - xmin) * i / 5.0;
    const double xv = options.log_x ? std::pow(10.0, t) : t;
    const double x = left + (t - xmin) / (xmax - xmin) * plot_w;
    out += "<line x1=\"" + px(x) + "\" y1=\"" + px(top + plot_h) + "\" x2=\"" +
           px(x) + "\" y2=\"" + px(top + plot_h + 4) + "\" stroke=\"#333\"/>\n";
    out += "<text x=\"" + px(x) + "\" y=\"" + px(top + plot_h + 17) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           tick_label(xv) + "</text>\n";
  }

  out += "<text x=\"" + px(left + plot_w / 2.0) + "\" y=\"" +
         px(options.height - 14.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" +
         xml_escape(options.x_label) + "</text>\n";
  out += "<text x=\"16\" y=\"" + px(top + plot_h / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 " +
         px(top + plot_h / 2.0) + ")\">" +
         xml_escape(options.y_label) + "</text>\n";

  for (const ChartMarker& m : markers) {
    const double x = sx(m.x);
    out += "<line x1=\"" + px(x) + "\" y1=\"" + px(top) + "\" x2=\"" + px(x) +
           "\" y2=\"" + px(top + plot_h) +
           "\" stroke=\"#666\" stroke-dasharray=\"6 4\"/>\n";
    if (!m.label.empty()) {
      out += "<text x=\"" + px(x + 4) + "\" y=\"" + px(top + 14) +
             "\" font-family=\"sans-serif\" font-size=\"11\" "
             "fill=\"#444\">" +
             xml_escape(m.label) + "</text>\n";
    }
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    std::string pts;
    for (const auto& [x, y] : series[si].points) {
      if (!pts.empty()) pts += ' ';
      pts += px(sx(x)) + "," + px(sy(y));
    }
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1.6\" points=\"" + pts + "\"/>\n";
    if (!series[si].label.empty()) {
      const double ly = top + 16.0 + 16.0 * static_cast<double>(si);
      out += "<line x1=\"" + px(left + plot_w - 150) + "\" y1=\"" + px(ly) +
             "\" x2=\"" + px(left + plot_w - 126) + "\" y2=\"" + px(ly) +
             "\" stroke=\"";
      out += color;
      out += "\" stroke-width=\"1.6\"/>\n";
      out += "<text x=\"" + px(left + plot_w - 120) + "\" y=\"" + px(ly + 4) +
             "\" font-family=\"sans-serif\" font-size=\"11\">" +
             xml_escape(series[si].label) + "</text>\n";
    }
  }

  out += "</svg>\n";
  return out;
}

}  // namespace bootperc
