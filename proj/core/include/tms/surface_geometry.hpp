#pragma once

/// Timelike surface patches in E^3_1: fundamental forms, curvatures, the Gauss
/// map and its harmonicity, Gauss-Codazzi residuals and Lax-pair frame
/// integration.
///
/// Null-coordinate conventions: I = e^omega du dv with e^omega = 2<phi_u, phi_v>,
/// N = (phi_v x phi_u)/|.|, Q = <phi_uu, N>, R = <phi_vv, N>,
/// H = 2 e^{-omega} <phi_uv, N>, K = H^2 - 4 e^{-2 omega} Q R.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tms/conformal_calculus.hpp"
#include "tms/minkowski_algebra.hpp"

namespace tms {

enum class CoordinateKind { Null, General };
enum class DerivativeMode { Analytic, FiniteDifference };
enum class DerivativePreference { Auto, FiniteDifference };

std::string to_string(DerivativeMode m);

/// Exact first and second partials sampled at the grid nodes.
struct PatchJets {
  VectorField pu;
  VectorField pv;
  VectorField puu;
  VectorField puv;
  VectorField pvv;
};

/// Samples phi(u_i, v_j). For CoordinateKind::General the grid axes are arbitrary
/// coordinates (s, t) playing the roles of (u, v).
struct SurfacePatch {
  VectorField points;
  CoordinateKind coordinates = CoordinateKind::Null;
  std::optional<PatchJets> jets;
  std::map<std::string, std::string> metadata;

  const NullGrid& grid() const { return points.grid; }
  const Vec3M& at(std::size_t i, std::size_t j) const { return points.at(i, j); }
};

struct PatchDerivatives {
  VectorField pu;
  VectorField pv;
  VectorField puu;
  VectorField puv;
  VectorField pvv;
  DerivativeMode mode = DerivativeMode::FiniteDifference;
};

/// Jets when present (unless FiniteDifference is requested), else central differences.
PatchDerivatives patch_derivatives(const SurfacePatch& p, DerivativePreference pref = DerivativePreference::Auto);

/// Largest |e^omega| treated as degenerate.
inline constexpr double kDegenerateMetric = 1e-12;

struct FirstFundamental {
  ScalarField eomega;
  double conformality_u = 0.0;  // interior max |<phi_u, phi_u>|
  double conformality_v = 0.0;  // interior max |<phi_v, phi_v>|
  DerivativeMode mode = DerivativeMode::FiniteDifference;
};

/// Throws Error(DegenerateMetric) when |e^omega| <= kDegenerateMetric at an interior node.
/// Anti-oriented null coordinates (e^omega < 0, e.g. conjugate surfaces) are allowed.
FirstFundamental first_fundamental(const SurfacePatch& p, DerivativePreference pref = DerivativePreference::Auto);

/// Unit normal (second x first coordinate derivative, normalized). Throws Error(DegenerateMetric)
/// where the cross product is not spacelike.
VectorField unit_normal(const SurfacePatch& p, DerivativePreference pref = DerivativePreference::Auto);
VectorField unit_normal(const PatchDerivatives& d);

/// Symmetric 2-tensor field a du^2 + 2 b du dv + c dv^2.
struct SymmetricFormField {
  ScalarField uu;
  ScalarField uv;
  ScalarField vv;
};

/// Analytic point values driving the Lax pair.
struct LaxData {
  double eomega = 1.0;
  double omega_u = 0.0;
  double omega_v = 0.0;
  double Q = 0.0;
  double R = 0.0;
  double H = 0.0;
};

struct FundamentalData {
  ScalarField eomega;
  ScalarField Q;
  ScalarField R;
  ScalarField H;
  ScalarField K;
  std::optional<SymmetricFormField> III;
  /// Optional exact evaluation at arbitrary (u, v), used by integrate_frame.
  std::function<LaxData(double, double)> analytic;
  DerivativeMode mode = DerivativeMode::FiniteDifference;

  const NullGrid& grid() const { return eomega.grid; }
};

/// Null-coordinate patches only (Error(InvalidArgument) otherwise). K comes from the Gauss
/// equation and III = 2H II - K I.
FundamentalData second_fundamental(const SurfacePatch& p, DerivativePreference pref = DerivativePreference::Auto);

/// Curvatures in arbitrary coordinates: H = tr(I^{-1} II)/2, K = det II / det I.
struct GeneralCurvatures {
  ScalarField E, F, G;  // first fundamental form
  ScalarField L, M, N;  // second fundamental form
  ScalarField H;
  ScalarField K;
  DerivativeMode mode = DerivativeMode::FiniteDifference;
};

/// Throws Error(DegenerateMetric) where |det I| <= kDegenerateMetric.
GeneralCurvatures general_curvatures(const SurfacePatch& p, DerivativePreference pref = DerivativePreference::Auto);

/// Interior max |H| using the null formula on null patches and the general one otherwise.
struct MeanCurvatureCheck {
  double max_abs_H = 0.0;
  DerivativeMode mode = DerivativeMode::FiniteDifference;
};
MeanCurvatureCheck mean_curvature_residual(const SurfacePatch& p, DerivativePreference pref = DerivativePreference::Auto);

struct GaussCodazziResiduals {
  double gauss = 0.0;      // |omega_uv + H^2 e^omega / 2 - 2 Q R e^{-omega}|
  double codazzi_u = 0.0;  // |H_u - 2 e^{-omega} Q_v|
  double codazzi_v = 0.0;  // |H_v - 2 e^{-omega} R_u|

  double max() const;
};

/// Interior maxima (two-node margin). Throws Error(GridMismatch) when fields differ in grid.
GaussCodazziResiduals gauss_codazzi_residuals(const FundamentalData& fd);

/// Interior max |H^2 - K - 4 e^{-2 omega} Q R|.
double gauss_equation_residual(const FundamentalData& fd);

struct FrameField {
  NullGrid grid;
  std::vector<Mat2> frames;
  double lambda = 1.0;
  double path_discrepancy = 0.0;  // max entry difference between the two path orders
  double error_budget = 0.0;      // threshold the discrepancy was checked against
  DerivativeMode mode = DerivativeMode::FiniteDifference;

  const Mat2& at(std::size_t i, std::size_t j) const { return frames[grid.index(i, j)]; }
  double max_det_deviation() const;
};

struct FrameOptions {
  /// Integrability threshold: residuals must stay below coefficient * h^2 * (1 + scale).
  double integrability_coefficient = 100.0;
  bool check_integrability = true;
  bool check_paths = true;
};

/// U(lambda) and V(lambda) in the trace-free gauge.
Mat2 lax_U(const LaxData& d, double lambda);
Mat2 lax_V(const LaxData& d, double lambda);

/// Integrates Phi_u = Phi U, Phi_v = Phi V with RK4 from Phi(u0, v0) = 1, first along u then
/// along v, and cross-checks the opposite order. Throws Error(NotIntegrable),
/// Error(PathInconsistent), Error(DegenerateMetric) (e^omega must be positive) or
/// Error(InvalidArgument) for lambda <= 0.
FrameField integrate_frame(const FundamentalData& fd, double lambda, const FrameOptions& opts = {});

struct FrameGeometry {
  VectorField pu;
  VectorField pv;
  VectorField N;
};

/// phi_u = e^{omega/2} Ad(Phi)((-i + j')/2), phi_v = e^{omega/2} Ad(Phi)((i + j')/2), N = Ad(Phi) k'.
FrameGeometry frame_to_geometry(const FrameField& f, const ScalarField& eomega);

struct GaussMapResult {
  VectorField psi;
  double harmonic_residual = 0.0;
  double conformality_residual = 0.0;
  DerivativeMode mode = DerivativeMode::FiniteDifference;
};

/// psi = unit normal; residuals of the harmonic map equation into S^2_1 and of conformality.
/// Null patches: 4 psi_uv + 4 <psi_u, psi_v> psi and max(|<psi_u,psi_u>|, |<psi_v,psi_v>|).
/// General patches: 2 sqrt|g| times the tension field and the trace-free part of psi^* <,>.
GaussMapResult gauss_map(const SurfacePatch& p, DerivativePreference pref = DerivativePreference::Auto);

}  // namespace tms
