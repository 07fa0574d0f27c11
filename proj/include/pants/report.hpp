#pragma once

// Serialization of results: result JSON, histogram CSV, length dumps and
// SVG histograms. Every writer is byte-deterministic for a given input.
//
// Numbers are written with 12 significant digits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pants/errors.hpp"
#include "pants/experiment.hpp"
#include "pants/stats.hpp"

namespace pants {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kSignificantDigits = 12;

// %.12g, but never in exponent notation.
inline std::string format_decimal(double v) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, v);
  if (std::string_view(buf).find_first_of("eE") == std::string_view::npos) return buf;
  const int magnitude = static_cast<int>(std::floor(std::log10(std::fabs(v))));
  const int decimals = std::clamp(kSignificantDigits - 1 - magnitude, 0, 340);
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

// Fixed twelve decimals, the format of the `length` command.
inline std::string format_length(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

// Rounds to 12 significant digits so the JSON writer's shortest round-trip
// output has at most 12 digits.
inline double round_significant(double v) {
  if (!std::isfinite(v) || v == 0) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, v);
  return std::strtod(buf, nullptr);
}

inline std::string format_metric(const BoundaryLengths& m) {
  return "(" + format_decimal(m.A) + ", " + format_decimal(m.B) + ", " + format_decimal(m.C) + ")";
}

// ---------------------------------------------------------------------------
// JSON

inline ordered_json to_json(const ExperimentResult& r, bool include_timing) {
  const auto num = [](double v) { return round_significant(v); };
  ordered_json j;
  const ExperimentConfig& c = r.config;
  j["config"] = {
      {"A", num(c.metric.A)},
      {"B", num(c.metric.B)},
      {"C", num(c.metric.C)},
      {"L", c.L},
      {"N", r.sample.N()},
      {"mode", std::string(to_string(c.mode))},
      {"seed", c.mode == Mode::sampled ? ordered_json(c.master_seed) : ordered_json(nullptr)},
      {"chunks", c.chunks},
  };
  if (r.stats) {
    j["stats"] = {
        {"mean", num(r.stats->mean)},
        {"std", num(r.stats->sample_std)},
        {"skewness", num(r.stats->skewness)},
        {"excess_kurtosis", num(r.stats->excess_kurtosis)},
        {"ks", num(r.stats->ks_statistic)},
    };
  } else {
    j["stats"] = nullptr;
  }
  j["scaling"] = {
      {"kappa_hat", num(r.scaling.kappa_hat)},
      {"sigma_hat", num(r.scaling.sigma_hat)},
      {"se_kappa", num(r.scaling.se_kappa)},
      {"se_sigma", num(r.scaling.se_sigma)},
      {"std_over_L", num(r.scaling.std_over_L)},
  };
  j["histogram"] = {
      {"bin_width", num(r.hist.bin_width)},
      {"origin", num(r.hist.origin)},
      {"counts", r.hist.counts},
  };
  j["wall_time_s"] = include_timing ? ordered_json(num(r.wall_time_seconds)) : ordered_json(nullptr);
  j["version"] = r.version;
  return j;
}

// ---------------------------------------------------------------------------
// CSV

inline void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t k = 0; k < h.size(); ++k)
    out << format_decimal(h.lower_edge(k)) << ',' << format_decimal(h.upper_edge(k)) << ','
        << h.counts[k] << '\n';
}

// Inverse of write_histogram_csv. Bin width and origin come from the first
// row; later rows must continue the grid.
inline Histogram read_histogram_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("histogram CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "bin_lo,bin_hi,count") throw IoError("histogram CSV must start with 'bin_lo,bin_hi,count'");
  Histogram h;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double lo = 0, hi = 0;
    unsigned long long count = 0;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%llu%c", &lo, &hi, &count, &tail) != 3 || !(hi > lo))
      throw IoError("malformed histogram CSV row " + std::to_string(row) + ": " + line);
    if (h.counts.empty()) {
      h.origin = lo;
      h.bin_width = hi - lo;
    } else {
      const double expected = h.lower_edge(h.counts.size());
      if (std::fabs(lo - expected) > 1e-6 * h.bin_width)
        throw IoError("histogram CSV row " + std::to_string(row) + " is not contiguous");
    }
    h.counts.push_back(count);
    h.total += count;
  }
  if (h.counts.empty()) throw IoError("histogram CSV has no bins");
  return h;
}

inline void write_lengths_csv(std::ostream& out, std::span<const double> lengths) {
  out << "length\n";
  for (double v : lengths) out << format_decimal(v) << '\n';
}

template <class Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  writer(f);
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// SVG

namespace detail {

// Smallest of {1, 2, 5} x 10^k that is at least span / target_ticks.
inline double nice_step(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double p = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * p >= raw) return m * p;
  return 10 * p;
}

inline std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace detail

// Self-contained 800x500 bar chart of a histogram.
inline std::string render_svg(const Histogram& h, std::string_view title) {
  if (h.counts.empty() || h.total == 0) throw IoError("refusing to render an empty histogram");
  constexpr double kW = 800, kH = 500;
  constexpr double kLeft = 70, kRight = 20, kTop = 50, kBottom = 50;
  const double plot_w = kW - kLeft - kRight;
  const double plot_h = kH - kTop - kBottom;

  const double x_lo = h.origin;
  const double x_hi = h.upper_edge(h.size() - 1);
  const auto peak = static_cast<double>(*std::max_element(h.counts.begin(), h.counts.end()));
  const auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto sy = [&](double y) { return kTop + plot_h - y / peak * plot_h; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
       "viewBox=\"0 0 800 500\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
  o << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" << detail::xml_escape(title)
    << "</text>\n";

  o << "<g fill=\"steelblue\" stroke=\"none\">\n";
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (h.counts[k] == 0) continue;
    const double x0 = sx(h.lower_edge(k));
    const double x1 = sx(h.upper_edge(k));
    const double y0 = sy(static_cast<double>(h.counts[k]));
    o << "<rect x=\"" << detail::fmt2(x0) << "\" y=\"" << detail::fmt2(y0) << "\" width=\""
      << detail::fmt2(x1 - x0) << "\" height=\"" << detail::fmt2(kTop + plot_h - y0) << "\"/>\n";
  }
  o << "</g>\n";

  // Axes.
  o << "<g stroke=\"black\" stroke-width=\"1\">\n";
  o << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
    << "\" y2=\"" << kTop + plot_h << "\"/>\n";
  o << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
    << "\"/>\n";
  o << "</g>\n";

  o << "<g text-anchor=\"middle\">\n";
  const double xs = detail::nice_step(x_hi - x_lo, 8);
  const auto first_tick = static_cast<std::int64_t>(std::ceil(x_lo / xs - 1e-9));
  const auto last_tick = static_cast<std::int64_t>(std::floor(x_hi / xs + 1e-9));
  for (std::int64_t i = first_tick; i <= last_tick; ++i) {
    const double t = static_cast<double>(i) * xs;
    const double x = sx(t);
    o << "<line x1=\"" << detail::fmt2(x) << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << detail::fmt2(x)
      << "\" y2=\"" << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << detail::fmt2(x) << "\" y=\"" << kTop + plot_h + 20 << "\">"
      << format_decimal(round_significant(t)) << "</text>\n";
  }
  o << "</g>\n";

  o << "<g text-anchor=\"end\">\n";
  const double ys = std::max(1.0, detail::nice_step(peak, 5));
  for (std::int64_t i = 0; static_cast<double>(i) * ys <= peak; ++i) {
    const double t = static_cast<double>(i) * ys;
    const double y = sy(t);
    o << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << detail::fmt2(y) << "\" x2=\"" << kLeft
      << "\" y2=\"" << detail::fmt2(y) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << kLeft - 8 << "\" y=\"" << detail::fmt2(y + 4) << "\">" << format_decimal(t)
      << "</text>\n";
  }
  o << "</g>\n";

  o << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kH - 10
    << "\" text-anchor=\"middle\">geodesic length</text>\n";
  o << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << kTop + plot_h / 2 << ")\">count</text>\n";
  o << "</svg>\n";
  return o.str();
}

inline std::string svg_title(const ExperimentResult& r) {
  std::string t = "Geodesic lengths, (A,B,C) = " + format_metric(r.config.metric) +
                  ", L = " + std::to_string(r.config.L) + ", ";
  if (r.config.mode == Mode::enumerated)
    t += "all " + std::to_string(r.sample.N()) + " classes";
  else
    t += "N = " + std::to_string(r.sample.N()) + ", seed " + std::to_string(r.config.master_seed);
  return t;
}

inline void emit_svg(const Histogram& h, const std::string& path, std::string_view title) {
  const std::string svg = render_svg(h, title);  // throws before the file is touched
  write_file(path, [&](std::ostream& f) { f << svg; });
}

}  // namespace pants
