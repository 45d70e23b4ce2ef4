#pragma once

/// Split-complex numbers, split-quaternions and their 2x2 real matrix model,
/// together with the Minkowski 3-space E^3_1 of signature (-,+,+).
///
/// The imaginary split-quaternions x1 i + x2 j' + x3 k' are identified with
/// E^3_1; under the matrix model they are exactly the trace-free 2x2 real
/// matrices, and the unit-determinant matrices act on them by conjugation.

#include <array>
#include <cmath>

namespace tms {

/// Tolerance on |det g - 1| accepted by adjoint_action.
inline constexpr double kUnimodularTolerance = 1e-9;

struct SplitComplex {
  double re = 0.0;
  double im = 0.0;  // coefficient of k', (k')^2 = 1

  constexpr SplitComplex operator+(const SplitComplex& o) const { return {re + o.re, im + o.im}; }
  constexpr SplitComplex operator-(const SplitComplex& o) const { return {re - o.re, im - o.im}; }
  constexpr SplitComplex operator*(const SplitComplex& o) const {
    return {re * o.re + im * o.im, re * o.im + im * o.re};
  }
  constexpr SplitComplex conj() const { return {re, -im}; }
  /// -zeta * conj(zeta) = -re^2 + im^2, the E^2_1 quadratic form.
  constexpr double minkowski_norm_sq() const { return -re * re + im * im; }
  constexpr bool operator==(const SplitComplex&) const = default;
};

/// s0 + s1 i + s2 j' + s3 k' with i^2 = -1, (j')^2 = (k')^2 = 1, i j' = k'.
struct SplitQuaternion {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  static constexpr SplitQuaternion one() { return {1, 0, 0, 0}; }
  static constexpr SplitQuaternion i() { return {0, 1, 0, 0}; }
  static constexpr SplitQuaternion j() { return {0, 0, 1, 0}; }
  static constexpr SplitQuaternion k() { return {0, 0, 0, 1}; }

  constexpr SplitQuaternion operator+(const SplitQuaternion& o) const {
    return {s0 + o.s0, s1 + o.s1, s2 + o.s2, s3 + o.s3};
  }
  constexpr SplitQuaternion operator-(const SplitQuaternion& o) const {
    return {s0 - o.s0, s1 - o.s1, s2 - o.s2, s3 - o.s3};
  }
  constexpr SplitQuaternion operator*(double c) const { return {c * s0, c * s1, c * s2, c * s3}; }
  constexpr SplitQuaternion operator*(const SplitQuaternion& o) const {
    return {
        s0 * o.s0 - s1 * o.s1 + s2 * o.s2 + s3 * o.s3,
        s0 * o.s1 + s1 * o.s0 - s2 * o.s3 + s3 * o.s2,
        s0 * o.s2 + s2 * o.s0 + s3 * o.s1 - s1 * o.s3,
        s0 * o.s3 + s3 * o.s0 + s1 * o.s2 - s2 * o.s1,
    };
  }
  constexpr SplitQuaternion conj() const { return {s0, -s1, -s2, -s3}; }
  /// xi * conj(xi) (a real multiple of 1).
  constexpr double norm_product() const { return s0 * s0 + s1 * s1 - s2 * s2 - s3 * s3; }
  /// -xi * conj(xi), the E^4_2 form -s0^2 - s1^2 + s2^2 + s3^2.
  constexpr double neutral_norm_sq() const { return -norm_product(); }
  constexpr bool operator==(const SplitQuaternion&) const = default;
};

/// Real 2x2 matrix [[a11, a12], [a21, a22]].
struct Mat2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;

  static constexpr Mat2 identity() { return {1, 0, 0, 1}; }
  static constexpr Mat2 zero() { return {0, 0, 0, 0}; }
  static constexpr Mat2 diag(double d1, double d2) { return {d1, 0, 0, d2}; }

  constexpr Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
  constexpr Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
  constexpr Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }
  constexpr Mat2 operator*(double c) const { return {c * a11, c * a12, c * a21, c * a22}; }
  constexpr Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  Mat2& operator+=(const Mat2& o) { return *this = *this + o; }
  Mat2& operator-=(const Mat2& o) { return *this = *this - o; }

  constexpr double det() const { return a11 * a22 - a12 * a21; }
  constexpr double trace() const { return a11 + a22; }
  constexpr Mat2 transpose() const { return {a11, a21, a12, a22}; }
  constexpr Mat2 adjugate() const { return {a22, -a12, -a21, a11}; }
  /// Inverse; the caller guarantees det() != 0.
  constexpr Mat2 inverse() const { return adjugate() * (1.0 / det()); }
  /// Largest absolute entry.
  double max_abs() const {
    return std::fmax(std::fmax(std::fabs(a11), std::fabs(a12)), std::fmax(std::fabs(a21), std::fabs(a22)));
  }
  constexpr bool operator==(const Mat2&) const = default;
};

inline constexpr Mat2 operator*(double c, const Mat2& m) { return m * c; }

/// Point or vector of E^3_1 with metric -dx1^2 + dx2^2 + dx3^2.
struct Vec3M {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  constexpr Vec3M operator+(const Vec3M& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
  constexpr Vec3M operator-(const Vec3M& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
  constexpr Vec3M operator-() const { return {-x1, -x2, -x3}; }
  constexpr Vec3M operator*(double c) const { return {c * x1, c * x2, c * x3}; }
  constexpr Vec3M operator/(double c) const { return {x1 / c, x2 / c, x3 / c}; }
  Vec3M& operator+=(const Vec3M& o) { return *this = *this + o; }
  Vec3M& operator-=(const Vec3M& o) { return *this = *this - o; }
  /// Largest absolute coordinate (a Euclidean-style size used by validators).
  double max_abs() const { return std::fmax(std::fabs(x1), std::fmax(std::fabs(x2), std::fabs(x3))); }
  constexpr bool operator==(const Vec3M&) const = default;
};

inline constexpr Vec3M operator*(double c, const Vec3M& v) { return v * c; }

/// Point of the Minkowski plane E^2_1, metric -dx^2 + dy^2.
struct Vec2M {
  double x = 0.0;
  double y = 0.0;
  constexpr bool operator==(const Vec2M&) const = default;
};

enum class CausalType { Spacelike, Timelike, Null };

constexpr SplitComplex sc_mul(const SplitComplex& a, const SplitComplex& b) { return a * b; }
constexpr SplitQuaternion sq_mul(const SplitQuaternion& a, const SplitQuaternion& b) { return a * b; }

/// Matrix model: xi0 + xi1 i + xi2 j' + xi3 k' -> [[xi0 - xi3, -xi1 + xi2], [xi1 + xi2, xi0 + xi3]].
constexpr Mat2 sq_to_mat(const SplitQuaternion& q) {
  return {q.s0 - q.s3, -q.s1 + q.s2, q.s1 + q.s2, q.s0 + q.s3};
}
constexpr SplitQuaternion mat_to_sq(const Mat2& m) {
  return {0.5 * (m.a11 + m.a22), 0.5 * (m.a21 - m.a12), 0.5 * (m.a12 + m.a21), 0.5 * (m.a22 - m.a11)};
}

/// 1/2 (tr(XY) - tr X tr Y).
constexpr double mat_scalar_product(const Mat2& x, const Mat2& y) {
  return 0.5 * ((x * y).trace() - x.trace() * y.trace());
}

constexpr double minkowski_dot(const Vec3M& a, const Vec3M& b) {
  return -a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}
constexpr double minkowski_dot(const Vec2M& a, const Vec2M& b) { return -a.x * b.x + a.y * b.y; }

CausalType causal_type(const Vec3M& v, double tol = 0.0);

/// (a3 b2 - a2 b3, a3 b1 - a1 b3, a1 b2 - a2 b1); equals half the commutator in the matrix model.
constexpr Vec3M vector_product(const Vec3M& a, const Vec3M& b) {
  return {a.x3 * b.x2 - a.x2 * b.x3, a.x3 * b.x1 - a.x1 * b.x3, a.x1 * b.x2 - a.x2 * b.x1};
}

/// Trace-free matrix image of x1 i + x2 j' + x3 k'.
constexpr Mat2 to_matrix(const Vec3M& v) { return sq_to_mat({0.0, v.x1, v.x2, v.x3}); }
/// Imaginary part of the split-quaternion preimage (the trace part is discarded).
constexpr Vec3M to_vector(const Mat2& m) {
  const SplitQuaternion q = mat_to_sq(m);
  return {q.s1, q.s2, q.s3};
}

/// Ad(g) v = g v g^{-1}; throws Error(NonUnimodular) when |det g - 1| > kUnimodularTolerance.
Vec3M adjoint_action(const Mat2& g, const Vec3M& v);

/// Conjugation without the unimodularity check (g invertible).
Vec3M conjugate(const Mat2& g, const Vec3M& v);

/// Stereographic projection of S^2_1 from the north pole (0,0,-1) onto the plane x3 = 0.
/// Throws Error(PoleSingular) when x3 + 1 vanishes.
Vec2M stereo_project(const Vec3M& p);
/// Inverse projection; throws Error(UnprojectSingular) when -x^2 + y^2 + 1 vanishes.
Vec3M stereo_unproject(const Vec2M& w);

inline constexpr Vec3M kE1{1, 0, 0};
inline constexpr Vec3M kE2{0, 1, 0};
inline constexpr Vec3M kE3{0, 0, 1};

}  // namespace tms
