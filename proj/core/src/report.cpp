#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mcs/error.hpp"
#include "mcs/experiment.hpp"

namespace mcs::experiment {
namespace {

std::string shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fixed(double v, int digits) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, r.ptr);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T number(const std::string& field, std::size_t line, const char* column) {
  T value{};
  const auto r = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || r.ec != std::errc() || r.ptr != field.data() + field.size()) {
    throw ParseError(line, std::string("bad ") + column + " value '" + field + "'");
  }
  return value;
}

}  // namespace

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << shortest(r.p) << ',' << r.seed << ',' << r.method << ',' << r.size << ',';
    if (r.accuracy) out << shortest(*r.accuracy);
    out << ',' << r.iterations << ',';
    if (r.kernel_size) out << *r.kernel_size;
    out << ',';
    if (r.wall_ms) out << fixed(*r.wall_ms, 3);
    out << '\n';
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit_csv(rows, out);
  if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kCsvHeader) throw ParseError(1, "unexpected CSV header '" + line + "'");
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 8) throw ParseError(line_no, "expected 8 fields, got " + std::to_string(f.size()));
    ResultRow r;
    r.p = number<double>(f[0], line_no, "p");
    r.seed = number<std::uint64_t>(f[1], line_no, "seed");
    if (f[2].empty()) throw ParseError(line_no, "empty method");
    r.method = f[2];
    r.size = number<std::size_t>(f[3], line_no, "size");
    if (!f[4].empty()) r.accuracy = number<double>(f[4], line_no, "accuracy");
    r.iterations = number<std::size_t>(f[5], line_no, "iterations");
    if (!f[6].empty()) r.kernel_size = number<std::size_t>(f[6], line_no, "kernel_size");
    if (!f[7].empty()) r.wall_ms = number<double>(f[7], line_no, "wall_ms");
    rows.push_back(std::move(r));
  }
  if (line_no == 0) throw ParseError(1, "empty CSV");
  return rows;
}

std::vector<SeriesPoint> aggregate(const std::vector<ResultRow>& rows) {
  std::vector<std::string> methods;
  std::map<std::string, bool> use_accuracy;
  for (const auto& r : rows) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
      use_accuracy[r.method] = true;
    }
    if (!r.accuracy) use_accuracy[r.method] = false;
  }
  std::vector<SeriesPoint> out;
  for (const auto& m : methods) {
    std::map<double, std::vector<double>> by_p;
    for (const auto& r : rows) {
      if (r.method == m) by_p[r.p].push_back(use_accuracy[m] ? *r.accuracy : static_cast<double>(r.size));
    }
    for (const auto& [p, values] : by_p) {
      SeriesPoint s;
      s.method = m;
      s.p = p;
      s.count = values.size();
      double sum = 0.0;
      for (double v : values) sum += v;
      s.mean = sum / static_cast<double>(values.size());
      double sq = 0.0;
      for (double v : values) sq += (v - s.mean) * (v - s.mean);
      s.stddev = std::sqrt(sq / static_cast<double>(values.size()));
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::string render_svg(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw ParameterError("nothing to plot: no rows");
  const auto points = aggregate(rows);

  double lo = points.front().mean - points.front().stddev;
  double hi = points.front().mean + points.front().stddev;
  for (const auto& s : points) {
    lo = std::min(lo, s.mean - s.stddev);
    hi = std::max(hi, s.mean + s.stddev);
  }
  if (hi - lo < 1e-9) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = (hi - lo) * 0.05;
  lo -= pad;
  hi += pad;

  constexpr double kWidth = 640, kHeight = 400, kLeft = 60, kRight = 140, kTop = 20, kBottom = 40;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double p) { return kLeft + p * plot_w; };
  auto sy = [&](double v) { return kTop + (hi - v) / (hi - lo) * plot_h; };
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 10; t += 2) {
    const double p = t / 10.0;
    svg << "<text x=\"" << sx(p) << "\" y=\"" << kTop + plot_h + 16 << "\" text-anchor=\"middle\">" << fixed(p, 1)
        << "</text>\n";
  }
  for (int t = 0; t <= 4; ++t) {
    const double v = lo + (hi - lo) * t / 4.0;
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << sy(v) + 4 << "\" text-anchor=\"end\">" << fixed(v, 2)
        << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 6 << "\" text-anchor=\"middle\">p</text>\n";

  std::size_t series = 0;
  for (std::size_t i = 0; i < points.size();) {
    const std::string& method = points[i].method;
    const char* color = kColors[series % std::size(kColors)];
    std::ostringstream line;
    std::size_t j = i;
    for (; j < points.size() && points[j].method == method; ++j) {
      const auto& s = points[j];
      line << (j == i ? "" : " ") << sx(s.p) << ',' << sy(s.mean);
      svg << "<line class=\"errorbar\" x1=\"" << sx(s.p) << "\" y1=\"" << sy(s.mean - s.stddev) << "\" x2=\""
          << sx(s.p) << "\" y2=\"" << sy(s.mean + s.stddev) << "\" stroke=\"" << color << "\"/>\n";
    }
    svg << "<polyline data-method=\"" << method << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"" << line.str() << "\"/>\n";
    const double ly = kTop + 16.0 * static_cast<double>(series + 1);
    svg << "<text x=\"" << kLeft + plot_w + 12 << "\" y=\"" << ly << "\" fill=\"" << color << "\">" << method
        << "</text>\n";
    ++series;
    i = j;
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(const std::string& csv_path, const std::string& svg_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + csv_path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  const std::string svg = render_svg(parse_csv(text.str()));
  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + svg_path + "' for writing");
  out << svg;
  if (!out.flush()) throw IoError("write to '" + svg_path + "' failed");
}

}  // namespace mcs::experiment
