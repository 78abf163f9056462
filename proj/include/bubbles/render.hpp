#pragma once

#include <string>
#include <vector>

#include "bubbles/configuration.hpp"

namespace bubbles {

struct RenderSpec {
  Configuration config;
  int width = 800;
  int height = 220;
  std::vector<std::string> palette;  ///< one color per region; empty: default_palette
  bool show_density_cone = false;
};

/// Distinct colors for n regions; the first ten are a fixed qualitative set.
std::vector<std::string> default_palette(int n);

/// Standalone SVG: number line, one rect per labelled cell (with
/// data-region, data-lo and data-hi attributes), ticks at breakpoints and
/// optionally the graph of the density. Gaps are left unfilled.
std::string render_svg(const RenderSpec& spec);

}  // namespace bubbles
