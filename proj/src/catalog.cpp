#include "heatctl/catalog.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "heatctl/errors.hpp"

namespace heatctl {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ValidationError("cannot parse number '" + std::string(text) + "' in " + std::string(what));
  }
  return v;
}

struct Scaled {
  double factor = 1.0;
  std::string_view base;
};

Scaled split_scale(std::string_view name) {
  const auto star = name.find('*');
  if (star == std::string_view::npos) return {1.0, name};
  return {parse_number(name.substr(0, star), name), name.substr(star + 1)};
}

ScalarField base_field(std::string_view base, std::string_view full) {
  using std::numbers::pi;
  if (base.starts_with("constant:")) {
    const double c = parse_number(base.substr(9), full);
    return [c](Point) { return c; };
  }
  if (base == "linear_x") return [](Point p) { return p.x; };
  if (base == "linear_y") return [](Point p) { return p.y; };
  if (base == "quadratic_x") return [](Point p) { return p.x - 0.5 * p.x * p.x; };
  if (base == "manufactured_1") {
    return [](Point p) { return std::sin(pi * p.x) * std::sin(pi * p.y); };
  }
  if (base == "manufactured_2") return [](Point p) { return std::exp(p.x) * std::cos(p.y); };
  throw ValidationError("unknown field '" + std::string(full) + "'");
}

}  // namespace

ScalarField make_scalar_field(std::string_view name) {
  const auto [factor, base] = split_scale(name);
  ScalarField f = base_field(base, name);
  if (factor == 1.0) return f;
  return [factor, f](Point p) { return factor * f(p); };
}

BoundaryField make_boundary_field(std::string_view name) {
  const auto [factor, base] = split_scale(name);
  if (base == "flux_linear_x") {
    return [factor](Point, Side s) {
      return s == Side::Right ? -factor : s == Side::Left ? factor : 0.0;
    };
  }
  ScalarField f = make_scalar_field(name);
  return [f](Point p, Side) { return f(p); };
}

}  // namespace heatctl
