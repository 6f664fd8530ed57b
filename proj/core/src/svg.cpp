#include "wsnsec/svg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wsnsec::svg {

namespace {

constexpr double kWidth = 800, kHeight = 480;
constexpr double kLeft = 70, kRight = 640, kTop = 50, kBottom = 430;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
                          "#bcbd22", "#e377c2", "#393b79", "#637939"};
constexpr std::size_t kPaletteSize = sizeof kPalette / sizeof kPalette[0];

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) { return csv::format_double(v); }

}  // namespace

std::string line_chart(const csv::Table& table, const std::string& title) {
  if (table.rows.empty())
    throw std::invalid_argument("cannot plot an empty table");
  if (table.columns() < 2)
    throw std::invalid_argument("plotting needs an x column plus one series");

  const std::size_t series_count = table.columns() - 1;
  const std::size_t rows = table.rows.size();

  std::vector<double> xs(rows);
  std::vector<std::vector<double>> ys(series_count,
                                      std::vector<double>(rows));
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    xs[r] = table.number_at(r, 0);
    if (r == 0) xmin = xmax = xs[r];
    xmin = std::min(xmin, xs[r]);
    xmax = std::max(xmax, xs[r]);
    for (std::size_t s = 0; s < series_count; ++s) {
      const double v = table.number_at(r, s + 1);
      ys[s][r] = v;
      if (r == 0 && s == 0) ymin = ymax = v;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  }
  // Degenerate spans (single sample or constant series) still render.
  if (xmax == xmin) {
    xmin -= 1;
    xmax += 1;
  }
  if (ymax == ymin) {
    ymin -= 1;
    ymax += 1;
  }

  auto sx = [&](double x) {
    return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft);
  };
  auto sy = [&](double y) {
    return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth)
      << "\" height=\"" << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth)
      << " " << num(kHeight) << "\">\n";
  out << "<rect width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kLeft) << "\" y=\"24\" font-family=\"sans-serif\""
      << " font-size=\"16\">" << escape(title) << "</text>\n";

  // Gridlines and y labels at five levels.
  for (int i = 0; i <= 4; ++i) {
    const double frac = static_cast<double>(i) / 4.0;
    const double y = ymin + frac * (ymax - ymin);
    const double py = sy(y);
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py) << "\" x2=\""
        << num(kRight) << "\" y2=\"" << num(py)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\""
        << " text-anchor=\"end\">" << num(y) << "</text>\n";
  }
  // x labels at the ends.
  for (double x : {xmin, xmax}) {
    out << "<text x=\"" << num(sx(x)) << "\" y=\"" << num(kBottom + 18)
        << "\" font-family=\"sans-serif\" font-size=\"11\""
        << " text-anchor=\"middle\">" << num(x) << "</text>\n";
  }
  // Axes.
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\""
      << num(kLeft) << "\" y2=\"" << num(kBottom)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kBottom)
      << "\" x2=\"" << num(kRight) << "\" y2=\"" << num(kBottom)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  for (std::size_t s = 0; s < series_count; ++s) {
    const char* color = kPalette[s % kPaletteSize];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t r = 0; r < rows; ++r) {
      if (r) out << ' ';
      out << num(sx(xs[r])) << ',' << num(sy(ys[s][r]));
    }
    out << "\"/>\n";
    // Legend entry.
    const double ly = kTop + 16 * static_cast<double>(s);
    out << "<line x1=\"" << num(kRight + 10) << "\" y1=\"" << num(ly)
        << "\" x2=\"" << num(kRight + 30) << "\" y2=\"" << num(ly)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(kRight + 35) << "\" y=\"" << num(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << escape(table.header[s + 1]) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_line_chart(const csv::Table& table, const std::string& title,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << line_chart(table, title);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace wsnsec::svg
