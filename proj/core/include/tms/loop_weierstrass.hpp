#pragma once

/// Minimal timelike surfaces from normalized potentials: explicit holomorphic
/// frames and Iwasawa splitting, the Gauss-map family, the normalized
/// Weierstrass immersion, associated / conjugate / dual constructions and
/// potential extraction.
///
/// A potential is a pair p'(u), p''(v) with primitives q(u) = int_0^u p',
/// r(v) = int_0^v p''. Everything below lives on the big cell 1 + q r > 0.

#include <cstddef>
#include <functional>
#include <vector>

#include "tms/conformal_calculus.hpp"
#include "tms/laurent_loop.hpp"
#include "tms/minkowski_algebra.hpp"
#include "tms/surface_geometry.hpp"

namespace tms {

using RealFn = std::function<double(double)>;

/// q, r are optional; when absent they are obtained by quadrature of dq, dr from 0.
struct Potential {
  RealFn q;
  RealFn dq;  // p'
  RealFn r;
  RealFn dr;  // p''

  static Potential from_primitives(RealFn q, RealFn dq, RealFn r, RealFn dr);
  static Potential from_derivatives(RealFn p1, RealFn p2);

  double q_at(double u) const;
  double dq_at(double u) const;
  double r_at(double v) const;
  double dr_at(double v) const;
};

/// Max |q(x) - int_0^x p'| (and likewise for r) at n points of each range; 0 when a
/// primitive is absent.
double potential_consistency(const Potential& pot, double u_lo, double u_hi, double v_lo, double v_hi,
                             std::size_t n = 101);

struct PotentialSamples {
  std::vector<double> u;
  std::vector<double> q;
  std::vector<double> v;
  std::vector<double> r;
};

/// q and r at n equally spaced nodes of each range by composite Simpson (midpoint evaluation)
/// anchored at 0. Throws Error(RangeExcludesOrigin) or Error(InvalidArgument) for n < 2.
PotentialSamples integrate_potential(const Potential& pot, double u_lo, double u_hi, double v_lo, double v_hi,
                                     std::size_t n);

/// Cumulative composite Simpson primitive of f at the given increasing nodes, zero at x = 0.
std::vector<double> primitive_from_origin(const RealFn& f, const std::vector<double>& nodes);

/// Phi'(u) = [[1, 0], [lambda q, 1]] and Phi''(v) = [[1, -r/lambda], [0, 1]].
Mat2 holomorphic_frame_u(double q, double lambda);
Mat2 holomorphic_frame_v(double r, double lambda);

struct HolomorphicFrames {
  std::function<Mat2(double)> phi_u;
  std::function<Mat2(double)> phi_v;
};
HolomorphicFrames explicit_holomorphic_frames(const Potential& pot, double lambda);

struct IwasawaSplitting {
  Mat2 Phi;
  LaurentLoop Phi_loop;      // Phi as a loop in lambda
  LaurentLoop Lminus_inv;    // exponents {-1, 0}
  LaurentLoop Lplus_inv;     // exponents {0, 1}
};

/// Closed-form splitting at values q, r. Throws Error(OutsideBigCell) when 1 + q r <= 0 and
/// Error(InvalidArgument) for lambda == 0.
IwasawaSplitting explicit_iwasawa(double q, double r, double lambda);

/// The extended frame (u, v, lambda) -> Phi for a potential.
struct ExtendedFrame {
  Potential pot;
  bool valid(double u, double v) const;
  Mat2 operator()(double u, double v, double lambda) const;
};

/// N_lambda = Ad(Phi) k' = (-lambda q + r/lambda, -lambda q - r/lambda, 1 - q r) / (1 + q r).
Vec3M gauss_map_family(double q, double r, double lambda);

/// Throws Error(OutsideBigCell) naming the first grid node (row-major) with 1 + q r <= 0.
void require_big_cell(const Potential& pot, const NullGrid& grid);

/// phi = X(u) + Y(v) with X_u = (-(1+q^2)/2, (1-q^2)/2, q), Y_v = ((1+r^2)/2, (1-r^2)/2, r),
/// each integrated from 0 by composite Simpson. The patch carries exact jets.
SurfacePatch weierstrass_immersion(const Potential& pot, const NullGrid& grid);

/// e^omega = (1 + q r)^2, Q = q_u, R = r_v, H = 0, K = -4 q_u r_v (1 + q r)^{-4}, with an
/// analytic Lax-data callback.
FundamentalData metric_and_hopf(const Potential& pot, const NullGrid& grid);

/// A null curve with two derivatives at any parameter.
struct CurveJet {
  Vec3M p;
  Vec3M d1;
  Vec3M d2;
};
using CurveFn = std::function<CurveJet(double)>;

struct NullCurvePair {
  CurveFn X;
  CurveFn Y;
};

/// The Weierstrass null curves of a potential (adaptive quadrature from 0).
NullCurvePair weierstrass_curves(const Potential& pot);

/// a X(u) + b Y(v) on the grid, with jets.
SurfacePatch patch_from_curves(const NullCurvePair& c, double a, double b, const NullGrid& grid);

/// lambda X + Y / lambda (lambda > 0, else Error(InvalidArgument)).
SurfacePatch associated_family(const NullCurvePair& c, double lambda, const NullGrid& grid);
/// X - Y.
SurfacePatch conjugate_surface(const NullCurvePair& c, const NullGrid& grid);

/// I* = e^{-omega} du dv, Q* = R* = H/2, H* = 2Q. Throws Error(NotIsothermic) when the interior
/// max |Q - R| exceeds tol (default 1e-8 (1 + max |Q|)).
FundamentalData dual_fundamental_forms(const FundamentalData& fd, double tol = -1.0);

struct ExtractedPotential {
  ScalarField q;
  ScalarField r;
  DerivativeMode mode = DerivativeMode::FiniteDifference;
};

/// Reads q = (phi_u)_3 and r = (phi_v)_3 after checking the normalized gauge
/// s = (phi_u)_2 - (phi_u)_1 > 0, t = (phi_v)_1 + (phi_v)_2 > 0, |s t - 1| <= tol. For s = t = 1
/// this is q = (phi_u)_3 / s, r = (phi_v)_3 / t; on associated-family patches it yields
/// (lambda q, r / lambda). Throws Error(NotNormalizedGauge).
ExtractedPotential extract_potential(const SurfacePatch& p, double tol = 1e-6,
                                     DerivativePreference pref = DerivativePreference::Auto);

}  // namespace tms
