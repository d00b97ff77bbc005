// ofdma-ia-sim
// Copyright (C) 2026 The ofdma-ia-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ofdma/harness.hpp"

namespace ofdma {

namespace {

const char* scheme_color(SchemeId id) {
  switch (id) {
    case SchemeId::kTraditional:
      return "#1f77b4";
    case SchemeId::kIaPerfect:
      return "#2ca02c";
    case SchemeId::kIaRi:
      return "#d62728";
    case SchemeId::kHybrid:
      return "#9467bd";
    case SchemeId::kOfp:
      return "#ff7f0e";
  }
  return "#333333";
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Round step to 1, 2 or 5 times a power of ten.
double nice_step(double range, int ticks) {
  const double raw = range / std::max(ticks, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step;
  if (frac <= 1.0) {
    step = 1.0;
  } else if (frac <= 2.0) {
    step = 2.0;
  } else if (frac <= 5.0) {
    step = 5.0;
  } else {
    step = 10.0;
  }
  return step * mag;
}

}  // namespace

void emit_plot(const ResultTable& table, const std::string& path) {
  if (table.rows.empty()) {
    throw std::invalid_argument("emit_plot: empty result table");
  }

  double x_min = table.rows.front().snr_db, x_max = x_min;
  double y_max = 0.0;
  for (const ResultRow& r : table.rows) {
    x_min = std::min(x_min, r.snr_db);
    x_max = std::max(x_max, r.snr_db);
    if (std::isfinite(r.mean_sum_rate)) {
      y_max = std::max(y_max, r.mean_sum_rate + r.std_error);
    }
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  const double w = 860, h = 540;
  const double ml = 70, mr = 170, mt = 30, mb = 55;
  const double pw = w - ml - mr, ph = h - mt - mb;
  auto px = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) { return mt + ph - y / y_max * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) +
         "\" height=\"" + fmt(h) + "\" viewBox=\"0 0 " + fmt(w) + " " +
         fmt(h) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes.
  svg += "<g stroke=\"#222\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" +
         fmt(ml + pw) + "\" y2=\"" + fmt(mt + ph) + "\"/>\n";
  svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" +
         fmt(ml) + "\" y2=\"" + fmt(mt + ph) + "\"/>\n";
  svg += "</g>\n";

  // X ticks at each distinct SNR value.
  std::vector<double> xs;
  for (const ResultRow& r : table.rows) {
    if (std::find(xs.begin(), xs.end(), r.snr_db) == xs.end()) {
      xs.push_back(r.snr_db);
    }
  }
  std::sort(xs.begin(), xs.end());
  svg += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">\n";
  for (double x : xs) {
    svg += "<line stroke=\"#222\" x1=\"" + fmt(px(x)) + "\" y1=\"" +
           fmt(mt + ph) + "\" x2=\"" + fmt(px(x)) + "\" y2=\"" +
           fmt(mt + ph + 5) + "\"/>\n";
    svg += "<text text-anchor=\"middle\" x=\"" + fmt(px(x)) + "\" y=\"" +
           fmt(mt + ph + 18) + "\">" + fmt(x) + "</text>\n";
  }
  const double ystep = nice_step(y_max, 6);
  for (double y = 0.0; y <= y_max + 1e-9; y += ystep) {
    svg += "<line stroke=\"#ddd\" x1=\"" + fmt(ml) + "\" y1=\"" + fmt(py(y)) +
           "\" x2=\"" + fmt(ml + pw) + "\" y2=\"" + fmt(py(y)) + "\"/>\n";
    svg += "<text text-anchor=\"end\" x=\"" + fmt(ml - 8) + "\" y=\"" +
           fmt(py(y) + 4) + "\">" + fmt(y) + "</text>\n";
  }
  svg += "<text text-anchor=\"middle\" x=\"" + fmt(ml + pw / 2) + "\" y=\"" +
         fmt(h - 12) + "\">SNR (dB)</text>\n";
  svg += "<text text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt(mt + ph / 2) + ")\" x=\"16\" y=\"" + fmt(mt + ph / 2) +
         "\">mean sum rate (bits/s/Hz)</text>\n";
  svg += "</g>\n";

  // One polyline plus error bars per scheme, in row order.
  std::vector<SchemeId> order;
  for (const ResultRow& r : table.rows) {
    if (std::find(order.begin(), order.end(), r.scheme) == order.end()) {
      order.push_back(r.scheme);
    }
  }
  for (SchemeId id : order) {
    const char* color = scheme_color(id);
    std::string points;
    std::string bars;
    for (const ResultRow& r : table.rows) {
      if (r.scheme != id || !std::isfinite(r.mean_sum_rate)) continue;
      const double x = px(r.snr_db);
      const double y = py(r.mean_sum_rate);
      points += fmt(x) + "," + fmt(y) + " ";
      if (r.std_error > 0.0) {
        const double y0 = py(r.mean_sum_rate - r.std_error);
        const double y1 = py(r.mean_sum_rate + r.std_error);
        bars += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(y0) + "\" x2=\"" +
                fmt(x) + "\" y2=\"" + fmt(y1) + "\"/>\n";
        bars += "<line x1=\"" + fmt(x - 3) + "\" y1=\"" + fmt(y0) +
                "\" x2=\"" + fmt(x + 3) + "\" y2=\"" + fmt(y0) + "\"/>\n";
        bars += "<line x1=\"" + fmt(x - 3) + "\" y1=\"" + fmt(y1) +
                "\" x2=\"" + fmt(x + 3) + "\" y2=\"" + fmt(y1) + "\"/>\n";
      }
      bars += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) +
              "\" r=\"2.5\"/>\n";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.8\" points=\"" + points + "\"/>\n";
    svg += "<g stroke=\"" + std::string(color) + "\" fill=\"" +
           std::string(color) + "\" stroke-width=\"1\">\n" + bars + "</g>\n";
  }

  // Legend.
  double ly = mt + 10;
  svg += "<g font-family=\"sans-serif\" font-size=\"13\">\n";
  for (SchemeId id : order) {
    const double lx = ml + pw + 14;
    svg += "<line stroke=\"" + std::string(scheme_color(id)) +
           "\" stroke-width=\"2.5\" x1=\"" + fmt(lx) + "\" y1=\"" +
           fmt(ly - 4) + "\" x2=\"" + fmt(lx + 24) + "\" y2=\"" +
           fmt(ly - 4) + "\"/>\n";
    svg += "<text x=\"" + fmt(lx + 30) + "\" y=\"" + fmt(ly) + "\">" +
           std::string(scheme_name(id)) + "</text>\n";
    ly += 20;
  }
  svg += "</g>\n</svg>\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << svg;
}

}  // namespace ofdma
