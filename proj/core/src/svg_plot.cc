/*
 * Copyright 2026 The CDL Fleet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cdl/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cdl {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string Tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

double NiceStep(double range) {
  const double raw = range / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= f * mag) return f * mag;
  }
  return 10.0 * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void Add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void Finish() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) {
      const double pad = std::max(1e-6, std::abs(lo) * 0.1);
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

std::string RenderSvg(const PlotSpec& spec) {
  Range xr;
  Range yr;
  for (const PlotSeries& s : spec.series) {
    for (double v : s.x) xr.Add(v);
    for (double v : s.y) yr.Add(v);
  }
  xr.Finish();
  yr.Finish();
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  if (spec.equal_aspect) {
    const double scale = std::max((xr.hi - xr.lo) / pw, (yr.hi - yr.lo) / ph);
    const double cx = 0.5 * (xr.lo + xr.hi);
    const double cy = 0.5 * (yr.lo + yr.hi);
    xr = {cx - 0.5 * scale * pw, cx + 0.5 * scale * pw};
    yr = {cy - 0.5 * scale * ph, cy + 0.5 * scale * ph};
  }
  const auto px = [&](double x) {
    return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw;
  };
  const auto py = [&](double y) {
    return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph;
  };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
    << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
    << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << Num(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\""
    << " font-size=\"15\">" << Escape(spec.title) << "</text>\n";

  const double xs = NiceStep(xr.hi - xr.lo);
  for (double v = std::ceil(xr.lo / xs) * xs; v <= xr.hi + 1e-9 * xs; v += xs) {
    o << "<line x1=\"" << Num(px(v)) << "\" y1=\"" << Num(kTop) << "\" x2=\""
      << Num(px(v)) << "\" y2=\"" << Num(kTop + ph)
      << "\" stroke=\"#e5e5e5\"/>\n";
    o << "<text x=\"" << Num(px(v)) << "\" y=\"" << Num(kTop + ph + 16)
      << "\" text-anchor=\"middle\">" << Tick(v) << "</text>\n";
  }
  const double ys = NiceStep(yr.hi - yr.lo);
  for (double v = std::ceil(yr.lo / ys) * ys; v <= yr.hi + 1e-9 * ys; v += ys) {
    o << "<line x1=\"" << Num(kLeft) << "\" y1=\"" << Num(py(v)) << "\" x2=\""
      << Num(kLeft + pw) << "\" y2=\"" << Num(py(v))
      << "\" stroke=\"#e5e5e5\"/>\n";
    o << "<text x=\"" << Num(kLeft - 6) << "\" y=\"" << Num(py(v) + 4)
      << "\" text-anchor=\"end\">" << Tick(v) << "</text>\n";
  }
  o << "<rect x=\"" << Num(kLeft) << "\" y=\"" << Num(kTop) << "\" width=\""
    << Num(pw) << "\" height=\"" << Num(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << Num(kLeft + pw / 2) << "\" y=\"" << Num(kHeight - 12)
    << "\" text-anchor=\"middle\">" << Escape(spec.x_label) << "</text>\n";
  o << "<text transform=\"translate(16," << Num(kTop + ph / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << Escape(spec.y_label)
    << "</text>\n";

  for (size_t k = 0; k < spec.series.size(); ++k) {
    const PlotSeries& s = spec.series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    o << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"5,4\"" : "")
      << " points=\"";
    const size_t count = std::min(s.x.size(), s.y.size());
    for (size_t i = 0; i < count; ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      o << Num(px(s.x[i])) << ',' << Num(py(s.y[i])) << ' ';
    }
    o << "\"/>\n";
    const double ly = kTop + 10 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << Num(kLeft + pw + 12) << "\" y1=\"" << Num(ly)
      << "\" x2=\"" << Num(kLeft + pw + 36) << "\" y2=\"" << Num(ly)
      << "\" stroke=\"" << color << "\" stroke-width=\"2\""
      << (s.dashed ? " stroke-dasharray=\"5,4\"" : "") << "/>\n";
    o << "<text x=\"" << Num(kLeft + pw + 42) << "\" y=\"" << Num(ly + 4)
      << "\">" << Escape(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void WriteSvg(const std::filesystem::path& path, const PlotSpec& spec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << RenderSvg(spec);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace cdl
