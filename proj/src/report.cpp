// Copyright 2026 The otreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text renderings of a RateTable. Output depends only on the table values.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "otreg/harness.hpp"

namespace otreg {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed(double v, int digits = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string RateTable::to_csv() const {
  std::string out = "N,R,mean_sq_risk,stderr\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + std::to_string(r.replicates) + "," + num(r.mean_sq_risk) + "," +
           num(r.std_error) + "\n";
  }
  out += "slope," + num(fit.slope) + "\n";
  out += "slope_stderr," + num(fit.slope_stderr) + "\n";
  out += "intercept," + num(fit.intercept) + "\n";
  if (degenerate) out += "degenerate,true\n";
  return out;
}

std::string RateTable::to_svg() const {
  constexpr double width = 640, height = 480, left = 80, right = 30, top = 40, bottom = 60;
  const double plot_w = width - left - right, plot_h = height - top - bottom;

  std::vector<std::pair<double, double>> pts;  // log10 N, log10 risk
  for (const auto& r : rows) {
    if (r.mean_sq_risk > 0.0) pts.emplace_back(std::log10(double(r.n)), std::log10(r.mean_sq_risk));
  }

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width, 0) + "\" height=\"" +
                    fixed(height, 0) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + fixed(left) + "\" y=\"" + fixed(top) + "\" width=\"" + fixed(plot_w) + "\" height=\"" +
         fixed(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + fixed(left + plot_w / 2) + "\" y=\"" + fixed(height - 15) +
         "\" text-anchor=\"middle\" font-size=\"14\">log10 N</text>\n";
  svg += "<text x=\"20\" y=\"" + fixed(top + plot_h / 2) + "\" text-anchor=\"middle\" font-size=\"14\" "
         "transform=\"rotate(-90 20 " + fixed(top + plot_h / 2) + ")\">log10 mean squared risk</text>\n";

  if (!pts.empty()) {
    double x0 = pts.front().first, x1 = pts.front().first, y0 = pts.front().second, y1 = pts.front().second;
    for (const auto& [x, y] : pts) {
      x0 = std::min(x0, x), x1 = std::max(x1, x);
      y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
    const double padx = std::max(0.05, 0.05 * (x1 - x0)), pady = std::max(0.05, 0.05 * (y1 - y0));
    x0 -= padx, x1 += padx, y0 -= pady, y1 += pady;
    const auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * plot_w; };
    const auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * plot_h; };

    svg += "<text x=\"" + fixed(left) + "\" y=\"" + fixed(height - 40) + "\" font-size=\"11\" text-anchor=\"middle\">" +
           fixed(x0) + "</text>\n";
    svg += "<text x=\"" + fixed(left + plot_w) + "\" y=\"" + fixed(height - 40) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + fixed(x1) + "</text>\n";
    svg += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(top + plot_h) + "\" font-size=\"11\" text-anchor=\"end\">" +
           fixed(y0) + "</text>\n";
    svg += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(top + 10) + "\" font-size=\"11\" text-anchor=\"end\">" +
           fixed(y1) + "</text>\n";

    for (const auto& [x, y] : pts) {
      svg += "<circle cx=\"" + fixed(sx(x)) + "\" cy=\"" + fixed(sy(y)) + "\" r=\"4\" fill=\"steelblue\"/>\n";
    }
    if (!degenerate) {
      // log10 risk = intercept/ln10 + slope * log10 N
      const double c = fit.intercept / std::log(10.0);
      const double ya = c + fit.slope * x0, yb = c + fit.slope * x1;
      svg += "<line x1=\"" + fixed(sx(x0)) + "\" y1=\"" + fixed(sy(ya)) + "\" x2=\"" + fixed(sx(x1)) + "\" y2=\"" +
             fixed(sy(yb)) + "\" stroke=\"firebrick\" stroke-width=\"1.5\"/>\n";
      svg += "<text x=\"" + fixed(left + plot_w - 8) + "\" y=\"" + fixed(top + 20) +
             "\" text-anchor=\"end\" font-size=\"13\">slope " + fixed(fit.slope, 3) + " +/- " +
             fixed(fit.slope_stderr, 3) + "</text>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace otreg
