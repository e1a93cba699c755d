// SVG 1.1 drawing of a slice S_P: cells, labeled vertices, tail rays as arrows.
#pragma once

#include "tvb/divisorial_fan.hpp"

#include <string>

namespace tvb {

/// Byte-identical output for identical input. Throws GeometryError for
/// lattice rank 0 or above 2.
std::string render_slice_svg(const DivisorialFan& s, const PointP1& p);

}  // namespace tvb
