#pragma once

#include <string>

#include "chromatic/coloring.hpp"

namespace chromatic::io {

// Planar colorings only: the scaled pieces around one fundamental domain,
// filled by color, with a unit-diameter circle overlaid for visual reference
// against the forbidden distance.
std::string svg_render(const color::Coloring& c);

}  // namespace chromatic::io
