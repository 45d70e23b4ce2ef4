#pragma once

/// Null curves in E^3_1: null Frenet frames (A, B, C) with curvatures k1, k2,
/// pseudoarc reparametrization, null helices and B-scrolls.
///
/// Frame system: A' = k1 C, B' = k2 C, C' = -k2 A - k1 B with
/// <A,B> = 1, <A,A> = <B,B> = 0, <C,C> = 1, <A,C> = <B,C> = 0.

#include <cstddef>
#include <utility>
#include <vector>

#include "tms/minkowski_algebra.hpp"

namespace tms {

struct SurfacePatch;

/// Ordered samples gamma(s_k). Derivative arrays d1, d2, d3 (gamma', gamma'', gamma''')
/// are optional; each missing level is differentiated numerically from the level below.
struct NullCurve {
  std::vector<double> s;
  std::vector<Vec3M> points;
  std::vector<Vec3M> d1;
  std::vector<Vec3M> d2;
  std::vector<Vec3M> d3;

  std::size_t size() const { return s.size(); }
  bool analytic() const { return d1.size() == s.size() && d2.size() == s.size() && d3.size() == s.size(); }
};

struct NullFrame {
  std::vector<double> s;
  std::vector<Vec3M> A;
  std::vector<Vec3M> B;
  std::vector<Vec3M> C;
  std::vector<double> k1;
  std::vector<double> k2;
};

/// Tolerance on <gamma'', gamma''> below which the frame is declared degenerate.
inline constexpr double kDegenerateAcceleration = 1e-12;

/// Max |<gamma', gamma'>| over the samples.
double nullity_residual(const NullCurve& c);

/// Max deviation from the six frame orthonormality relations.
double frame_orthogonality_residual(const NullFrame& f);

/// Second-order derivative of samples on a (possibly non-uniform) parameter grid.
std::vector<Vec3M> differentiate(const std::vector<double>& s, const std::vector<Vec3M>& values);
std::vector<double> differentiate(const std::vector<double>& s, const std::vector<double>& values);

/// Throws Error(DegenerateAcceleration) where <gamma'', gamma''> <= kDegenerateAcceleration,
/// Error(InvalidArgument) on fewer than 3 samples or non-increasing parameters.
NullFrame frenet_frame(const NullCurve& c);

/// Resamples in sigma with d sigma / ds = <gamma'', gamma''>^{1/4}. sigma = 0 at s = 0 when 0
/// lies in the parameter range, otherwise at the first sample. Derivatives are transformed
/// by the chain rule (d3 is differentiated numerically in sigma).
NullCurve pseudoarc_reparametrize(const NullCurve& c);

/// Null helix with k1 = 1, k2 = k on [sigma_lo, sigma_hi] with n samples. k = 0 uses the closed
/// form (-(sigma + sigma^3/3)/2, (sigma - sigma^3/3)/2, sigma^2/2); otherwise RK4 from sigma = 0.
NullCurve null_helix(double k, double sigma_lo, double sigma_hi, std::size_t n);

/// The RK4 integration used by null_helix, available for every k (including 0).
NullCurve null_helix_ode(double k, double sigma_lo, double sigma_hi, std::size_t n);

/// Initial null frame at sigma = 0: A = (-1/2, 1/2, 0), B = (1, 1, 0), C = (0, 0, 1).
NullFrame helix_initial_frame();

/// phi(s, t) = gamma(s) + t B(s) on samples of c (uniform spacing required) times nt values of t.
/// The patch uses general (non-null) coordinates (s, t) and carries jets built from the frame.
SurfacePatch b_scroll(const NullCurve& c, double t_lo, double t_hi, std::size_t nt);

}  // namespace tms
