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

#ifndef CDL_SVG_PLOT_H_
#define CDL_SVG_PLOT_H_

#include <filesystem>
#include <string>
#include <vector>

namespace cdl {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  bool equal_aspect = false;  // same scale on both axes (path plots)
};

// Minimal standalone SVG line chart with axes, ticks and a legend.
std::string RenderSvg(const PlotSpec& spec);

void WriteSvg(const std::filesystem::path& path, const PlotSpec& spec);

}  // namespace cdl

#endif  // CDL_SVG_PLOT_H_
