#pragma once

#include <optional>
#include <string>

#include "uf/geometry.hpp"
#include "uf/region.hpp"

namespace uf {

// Figure overlay: region filled, convex hull dashed, minimal unfolded region
// bold, centroid dot. Fixed 800x800 viewport, region bounding box plus 10%.
struct FigureSpec {
  const Region* region = nullptr;
  const ConvexPolygon* hull = nullptr;
  const ConvexPolygon* unfolded = nullptr;
  std::optional<Vec2> centroid;
  std::optional<Vec2> marker;
};

std::string render_figure(const FigureSpec& fig);
void write_figure(const std::string& path, const FigureSpec& fig);

}  // namespace uf
