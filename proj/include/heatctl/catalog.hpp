#pragma once

#include <functional>
#include <string_view>

#include "heatctl/mesh.hpp"
#include "heatctl/pde.hpp"

namespace heatctl {

using BoundaryField = std::function<double(Point, Side)>;

/// Named closures usable as data in config files.
///
///   constant:<c>     c
///   linear_x         x
///   linear_y         y
///   quadratic_x      x - x^2/2
///   manufactured_1   sin(pi x) sin(pi y)
///   manufactured_2   exp(x) cos(y)        (harmonic)
///
/// Any name may carry a scale prefix, e.g. "2.5*manufactured_1".
/// Throws ValidationError for unknown names.
ScalarField make_scalar_field(std::string_view name);

/// Boundary data for q: every scalar field above, plus
///
///   flux_linear_x    -du/dn of u = x on each side (-1 right, +1 left, 0 else)
BoundaryField make_boundary_field(std::string_view name);

}  // namespace heatctl
