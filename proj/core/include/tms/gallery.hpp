#pragma once

/// Closed-form timelike minimal surfaces with their analytic oracle data.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tms/conformal_calculus.hpp"
#include "tms/loop_weierstrass.hpp"
#include "tms/surface_geometry.hpp"

namespace tms {

/// Analytic value of a named field ("eomega", "Q", "R", "H", "K") at (u, v).
struct Oracle {
  std::string field;
  std::function<double(double, double)> value;
};

struct NamedExample {
  std::string name;
  std::map<std::string, double> parameters;
  std::function<SurfacePatch(const NullGrid&)> generator;
  std::vector<Oracle> oracles;
  /// A grid on which the example is regular.
  NullGrid default_grid;
};

/// Lorentz catenoid X(u) + Y(v) and its conjugate, the timelike helicoid X(u) - Y(v), with
/// X(u) = (sinh(sqrt2 u)/2, cosh(sqrt2 u)/2, u/sqrt2), Y(v) = -X(v). Both degenerate on u = v.
SurfacePatch make_catenoid(const NullGrid& grid);
SurfacePatch make_helicoid(const NullGrid& grid);
NullCurvePair catenoid_curves();

/// X(u) = (-(u + u^3/3), u - u^3/3, eps u^2)/2, Y(v) = (v + v^3/3, v - v^3/3, v^2)/2.
/// Throws Error(InvalidArgument) unless eps = +-1 and Error(OutsideBigCell) where 1 + eps u v <= 0.
SurfacePatch make_enneper_cousin(double eps, const NullGrid& grid);
NullCurvePair enneper_curves(double eps);

/// phi = (-u^3/3 - u + v, -u^3/3 + u + v, u^2)/2.
SurfacePatch make_parabolic_null_cylinder(const NullGrid& grid);

/// Surfaces of revolution in coordinates (s, t) = grid axes (u, v). The variants of a case are
/// tried in order and the first that is regular with H = 0 on a probe grid is used. The chosen
/// variant is stored in metadata["variant"]. Throws Error(InvalidArgument) for a = 0 or a case
/// outside 1..4 and Error(InvalidDomain) when no variant is regular and minimal on the grid.
SurfacePatch make_revolution_surface(int which, double a, double b, const NullGrid& grid);

/// Variant names tried for a case, in order.
std::vector<std::string> revolution_variants(int which);

/// Evaluates a specific revolution variant without the probe.
SurfacePatch make_revolution_variant(int which, const std::string& variant, double a, double b, const NullGrid& grid);

/// The null frame L1 = (-1, 1, 0)/sqrt2, L2 = (1, 1, 0)/sqrt2, L3 = (0, 0, 1).
inline const Vec3M kL1{-0.70710678118654752, 0.70710678118654752, 0.0};
inline const Vec3M kL2{0.70710678118654752, 0.70710678118654752, 0.0};
inline const Vec3M kL3{0.0, 0.0, 1.0};

/// Names accepted by make_example: catenoid, helicoid, enneper-cousin (eps),
/// parabolic-null-cylinder, revolution (case, a, b).
std::vector<std::string> example_names();

/// Throws Error(InvalidArgument) for unknown names or parameters.
NamedExample make_example(const std::string& name, const std::map<std::string, double>& params = {});

}  // namespace tms
