#pragma once

#include <string>

#include "fractarc/arc.hpp"

namespace fractarc::cli {

/// Deepest-generation cells as rectangles and the connectors of every
/// generation as polylines, thinner for finer generations. n = 1 only.
std::string render_svg(const ArcApproximation& arc, int size = 800);

}  // namespace fractarc::cli
