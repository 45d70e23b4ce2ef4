#include "tms/minkowski_algebra.hpp"

#include <cmath>
#include <string>

#include "tms/error.hpp"

namespace tms {

namespace {
constexpr double kSingularTolerance = 1e-12;
}

CausalType causal_type(const Vec3M& v, double tol) {
  const double n = minkowski_dot(v, v);
  if (n > tol) return CausalType::Spacelike;
  if (n < -tol) return CausalType::Timelike;
  return CausalType::Null;
}

Vec3M conjugate(const Mat2& g, const Vec3M& v) {
  return to_vector(g * to_matrix(v) * g.inverse());
}

Vec3M adjoint_action(const Mat2& g, const Vec3M& v) {
  const double d = g.det();
  if (std::fabs(d - 1.0) > kUnimodularTolerance) {
    throw Error(ErrorKind::NonUnimodular, "det g = " + std::to_string(d));
  }
  return conjugate(g, v);
}

Vec2M stereo_project(const Vec3M& p) {
  const double denom = p.x3 + 1.0;
  if (std::fabs(denom) <= kSingularTolerance) {
    throw Error(ErrorKind::PoleSingular, "x3 = -1 is excluded", ErrorSite{p.x1, p.x2, p.x3});
  }
  return {p.x1 / denom, p.x2 / denom};
}

Vec3M stereo_unproject(const Vec2M& w) {
  const double denom = -w.x * w.x + w.y * w.y + 1.0;
  if (std::fabs(denom) <= kSingularTolerance) {
    throw Error(ErrorKind::UnprojectSingular, "-u^2 + v^2 + 1 vanishes", ErrorSite{w.x, w.y, denom});
  }
  return Vec3M{2.0 * w.x, 2.0 * w.y, w.x * w.x - w.y * w.y + 1.0} / denom;
}

}  // namespace tms
