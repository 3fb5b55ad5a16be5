#pragma once

#include <string>

#include "webfaces/arrangement.hpp"

namespace webfaces {

/// Boundary steps at integer abscissae, arcs as true semicircles in their
/// colour, crossings as green dots. Interior faces of size > 6 get a light
/// fill when `shade_faces` is set.
std::string render_svg(const Arrangement& a, bool shade_faces = false);

}  // namespace webfaces
