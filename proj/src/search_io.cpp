// Copyright 2026 The causaldistill Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CSV and SVG writers for scans, maps and bias sweeps. Output is a pure
// function of the data, so identical inputs give byte-identical files.

#include <cstdio>
#include <map>
#include <ostream>

#include "cdist/search.hpp"

namespace cdist {

std::string NumberFormat::operator()(double v) const {
  char buf[40];
  std::snprintf(buf, sizeof buf, full ? "%.17g" : "%.6g", v);
  return buf;
}

namespace {

std::string quoted(const std::string& s) { return '"' + s + '"'; }

// 12 distinguishable fills, one per switch role assignment.
constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                    "#bcbd22", "#17becf", "#393b79", "#637939"};

}  // namespace

void write_scan_csv(std::ostream& os, const RegionScan& scan, const NumberFormat& fmt,
                    bool advantage_only) {
  os << "F0,F1,F2,F3,FS,FG,FJ,pS,pG,pJ,margin\n";
  for (const AdvantagePoint& p : scan.points) {
    if (advantage_only && !p.advantageous()) continue;
    os << fmt(p.fvec[0]) << ',' << fmt(p.fvec[1]) << ',' << fmt(p.fvec[2]) << ','
       << fmt(p.fvec[3]) << ',' << fmt(p.fs) << ',' << fmt(p.fg) << ',' << fmt(p.fj) << ','
       << fmt(p.ps) << ',' << fmt(p.pg) << ',' << fmt(p.pj) << ',' << fmt(p.margin) << '\n';
  }
}

void write_map_csv(std::ostream& os, const ProtocolMap& map, const NumberFormat& fmt) {
  os << "F0,F1,bestG,bestS,bestJ,advantage\n";
  for (const MapCell& c : map.cells) {
    os << fmt(c.f0) << ',' << fmt(c.f1) << ',' << quoted(c.best_g) << ',' << quoted(c.best_s)
       << ',' << quoted(c.best_j) << ',' << (c.point.advantageous() ? 1 : 0) << '\n';
  }
}

void write_map_svg(std::ostream& os, const ProtocolMap& map, int cell_px) {
  const int n = map.grid;
  const int margin = 40, legend = 150;
  const int side = n * cell_px;
  const int width = side + 2 * margin + legend, height = side + 2 * margin;

  std::map<std::string, int> color_of;
  const auto& s_plans = plans_S();
  for (std::size_t i = 0; i < s_plans.size(); ++i) color_of[s_plans[i].encode()] = int(i);

  NumberFormat fmt;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<title>best switch plan, F2=" << fmt(map.f2) << " F3=" << fmt(map.f3) << "</title>\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // F0 grows to the right, F1 grows upwards.
  auto x_of = [&](int i0) { return margin + i0 * cell_px; };
  auto y_of = [&](int i1) { return margin + (n - 1 - i1) * cell_px; };
  os << "<g shape-rendering=\"crispEdges\">\n";
  for (int i0 = 0; i0 < n; ++i0) {
    for (int i1 = 0; i1 < n; ++i1) {
      const MapCell& c = map.cells[std::size_t(i0) * n + i1];
      os << "<rect x=\"" << x_of(i0) << "\" y=\"" << y_of(i1) << "\" width=\"" << cell_px
         << "\" height=\"" << cell_px << "\" fill=\"" << kPalette[color_of[c.best_s] % 12]
         << "\"/>\n";
    }
  }
  os << "</g>\n";

  // Advantage contour: every cell edge between an advantageous cell and a
  // non-advantageous (or off-grid) neighbour.
  auto adv = [&](int i0, int i1) {
    if (i0 < 0 || i1 < 0 || i0 >= n || i1 >= n) return false;
    return map.cells[std::size_t(i0) * n + i1].point.advantageous();
  };
  os << "<path fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
  for (int i0 = 0; i0 < n; ++i0) {
    for (int i1 = 0; i1 < n; ++i1) {
      if (!adv(i0, i1)) continue;
      const int x = x_of(i0), y = y_of(i1);
      if (!adv(i0 - 1, i1)) os << 'M' << x << ' ' << y << 'v' << cell_px;
      if (!adv(i0 + 1, i1)) os << 'M' << x + cell_px << ' ' << y << 'v' << cell_px;
      if (!adv(i0, i1 + 1)) os << 'M' << x << ' ' << y << 'h' << cell_px;
      if (!adv(i0, i1 - 1)) os << 'M' << x << ' ' << y + cell_px << 'h' << cell_px;
    }
  }
  os << "\"/>\n";

  os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<text x=\"" << margin + side / 2 << "\" y=\"" << height - 10
     << "\" text-anchor=\"middle\">F0 (0.25 to 1)</text>\n";
  os << "<text x=\"12\" y=\"" << margin + side / 2 << "\" transform=\"rotate(-90 12 "
     << margin + side / 2 << ")\" text-anchor=\"middle\">F1 (0.25 to 1)</text>\n";
  for (std::size_t i = 0; i < s_plans.size(); ++i) {
    const int y = margin + int(i) * 16;
    os << "<rect x=\"" << side + margin + 12 << "\" y=\"" << y << "\" width=\"10\" height=\"10\" fill=\""
       << kPalette[i % 12] << "\"/>";
    os << "<text x=\"" << side + margin + 28 << "\" y=\"" << y + 9 << "\">"
       << s_plans[i].encode() << "</text>\n";
  }
  os << "</g>\n</svg>\n";
}

void write_bias_csv(std::ostream& os, const std::vector<BiasSweepRow>& rows,
                    const NumberFormat& fmt) {
  os << "axis,r,FS,FG,FJ\n";
  for (const BiasSweepRow& r : rows) {
    os << to_string(r.axis) << ',' << fmt(r.r) << ',' << fmt(r.fs) << ',' << fmt(r.fg) << ','
       << fmt(r.fj) << '\n';
  }
}

}  // namespace cdist
