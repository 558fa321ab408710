#include "voa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "voa/numkit.hpp"

namespace voa {

namespace {

constexpr double kWidth = 840.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 820.0;
constexpr double kTop = 24.0;
constexpr double kBottom = 430.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                "#9467bd", "#ff7f0e", "#8c564b"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
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

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void validate(const ScanTable& t) {
  if (t.rows.empty()) throw StructuralError("to_svg: empty table");
  if (t.columns.empty()) throw StructuralError("to_svg: no columns");
  double prev = t.rows.front().param;
  if (!std::isfinite(prev)) throw NumericalError("to_svg: non-finite param");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const ScanRow& r = t.rows[i];
    if (i > 0) {
      if (!std::isfinite(r.param) || r.param <= prev)
        throw StructuralError("to_svg: params must increase strictly");
      prev = r.param;
    }
    if (r.values.size() != t.columns.size())
      throw StructuralError("to_svg: row width mismatch");
    for (double v : r.values)
      if (!std::isfinite(v)) throw NumericalError("to_svg: non-finite value");
  }
}

}  // namespace

std::string to_svg(const ScanTable& table) {
  validate(table);

  double xmin = table.rows.front().param;
  double xmax = table.rows.back().param;
  if (xmax - xmin < 1e-300) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  double ymin = table.rows[0].values[0];
  double ymax = ymin;
  for (const ScanRow& r : table.rows)
    for (double v : r.values) {
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  double pad = 0.05 * (ymax - ymin);
  if (pad < 1e-12) pad = 1.0;
  ymin -= pad;
  ymax += pad;

  const auto sx = [&](double x) {
    return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft);
  };
  const auto sy = [&](double y) {
    return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"840\" "
         "height=\"480\" viewBox=\"0 0 840 480\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"840\" height=\"480\" "
         "fill=\"#ffffff\"/>\n";

  // grid and ticks
  const int nticks = 6;
  for (int i = 0; i < nticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / (nticks - 1);
    const double px = sx(fx);
    out += "<line x1=\"" + coord(px) + "\" y1=\"" + coord(kTop) + "\" x2=\"" +
           coord(px) + "\" y2=\"" + coord(kBottom) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + coord(px) + "\" y=\"" + coord(kBottom + 18.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"middle\" fill=\"#333333\">" +
           escape_xml(tick_label(fx)) + "</text>\n";

    const double fy = ymin + (ymax - ymin) * i / (nticks - 1);
    const double py = sy(fy);
    out += "<line x1=\"" + coord(kLeft) + "\" y1=\"" + coord(py) + "\" x2=\"" +
           coord(kRight) + "\" y2=\"" + coord(py) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + coord(kLeft - 8.0) + "\" y=\"" + coord(py + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "text-anchor=\"end\" fill=\"#333333\">" +
           escape_xml(tick_label(fy)) + "</text>\n";
  }

  // frame
  out += "<rect x=\"" + coord(kLeft) + "\" y=\"" + coord(kTop) + "\" width=\"" +
         coord(kRight - kLeft) + "\" height=\"" + coord(kBottom - kTop) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  // one polyline per column
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    std::string pts;
    for (const ScanRow& r : table.rows) {
      if (!pts.empty()) pts += ' ';
      pts += coord(sx(r.param)) + "," + coord(sy(r.values[c]));
    }
    out += "<polyline fill=\"none\" stroke=\"";
    out += kPalette[c % kPaletteSize];
    out += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
  }

  // axis label and legend
  out += "<text x=\"" + coord((kLeft + kRight) / 2.0) + "\" y=\"" +
         coord(kHeight - 10.0) +
         "\" font-family=\"sans-serif\" font-size=\"13\" "
         "text-anchor=\"middle\" fill=\"#000000\">" +
         escape_xml(table.param_name) + "</text>\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    const double ly = kTop + 16.0 + 18.0 * static_cast<double>(c);
    out += "<line x1=\"" + coord(kRight - 150.0) + "\" y1=\"" + coord(ly) +
           "\" x2=\"" + coord(kRight - 126.0) + "\" y2=\"" + coord(ly) +
           "\" stroke=\"";
    out += kPalette[c % kPaletteSize];
    out += "\" stroke-width=\"3\"/>\n";
    out += "<text x=\"" + coord(kRight - 120.0) + "\" y=\"" + coord(ly + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\"#000000\">" +
           escape_xml(table.columns[c]) + "</text>\n";
  }
  if (!table.provenance.empty()) {
    out += "<text x=\"" + coord(kLeft) + "\" y=\"" + coord(14.0) +
           "\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#666666\">" +
           escape_xml(table.provenance) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace voa
