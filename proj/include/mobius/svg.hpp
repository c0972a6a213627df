#pragma once

#include <string>
#include <vector>

#include "mobius/circle.hpp"
#include "mobius/moebius_map.hpp"

namespace mobius {

/// Unit-disc picture of RP^1 with infinity at the top and 0 at the bottom.
struct SvgScene {
  struct Layer {
    ArcUnion arcs;
    std::string color;
    std::string label;
  };
  struct Marker {
    BoundaryPoint point;
    std::string color;
    std::string label;
  };
  struct Axis {
    MoebiusMap map;
    std::string color;
    std::string label;
  };
  std::string title;
  std::vector<Layer> layers;
  std::vector<Marker> markers;
  /// Hyperbolic maps: geodesic from the repelling to the attracting point.
  /// Parabolic: horocycle at the fixed point. Elliptic: the interior fixed point.
  std::vector<Axis> axes;
};

std::string render_svg(const SvgScene& scene);

}  // namespace mobius
