#pragma once

/// Uniform sample grids in null coordinates (u, v) and the discrete
/// Lorentz-conformal calculus on them: the d' / d'' splitting of d, the star
/// operator, the d'Alembert operator and harmonic (d'Alembert) splitting.
///
/// Derivatives use fourth-order differences: centered five-point stencils at
/// interior nodes and shifted windows near the boundary (lower order on grids
/// with fewer than six nodes per axis). Validators report interior maxima only,
/// and those that differentiate derived fields skip a two-node margin.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "tms/minkowski_algebra.hpp"

namespace tms {

struct NullGrid {
  double u0 = 0.0;
  double v0 = 0.0;
  double hu = 1.0;
  double hv = 1.0;
  std::size_t nu = 3;
  std::size_t nv = 3;

  /// Grid with nu x nv nodes spanning [u_lo, u_hi] x [v_lo, v_hi] inclusive.
  static NullGrid span(double u_lo, double u_hi, double v_lo, double v_hi, std::size_t nu, std::size_t nv);

  double u(std::size_t i) const { return u0 + hu * static_cast<double>(i); }
  double v(std::size_t j) const { return v0 + hv * static_cast<double>(j); }
  double u_end() const { return u(nu - 1); }
  double v_end() const { return v(nv - 1); }
  std::size_t size() const { return nu * nv; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * nv + j; }
  double max_step() const { return hu > hv ? hu : hv; }

  /// Throws Error(InvalidGrid) on non-positive steps and Error(GridTooSmall) when nu or nv < 3.
  void validate() const;

  bool operator==(const NullGrid&) const = default;
};

/// Row-major (u-major) samples of a value per grid node.
template <class T>
struct GridField {
  NullGrid grid;
  std::vector<T> values;

  GridField() = default;
  explicit GridField(const NullGrid& g, T fill = T{}) : grid(g), values(g.size(), fill) {}

  T& at(std::size_t i, std::size_t j) { return values[grid.index(i, j)]; }
  const T& at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }

  template <class F>
  static GridField sample(const NullGrid& g, F&& f) {
    GridField out(g);
    for (std::size_t i = 0; i < g.nu; ++i)
      for (std::size_t j = 0; j < g.nv; ++j) out.at(i, j) = f(g.u(i), g.v(j));
    return out;
  }
};

using ScalarField = GridField<double>;
using VectorField = GridField<Vec3M>;

/// a du + b dv sampled on a grid.
struct OneForm {
  NullGrid grid;
  std::vector<double> a;  // du component
  std::vector<double> b;  // dv component
};

/// Throws Error(GridMismatch) unless the two grids are identical.
void require_same_grid(const NullGrid& a, const NullGrid& b);

/// Partial derivatives of a sampled field (centered interior, shifted boundary windows).
template <class T>
GridField<T> partial_u(const GridField<T>& f);
template <class T>
GridField<T> partial_v(const GridField<T>& f);

/// Second partials: d^2/du^2, d^2/du dv (centred cross difference inside), d^2/dv^2.
template <class T>
GridField<T> partial_uu(const GridField<T>& f);
template <class T>
GridField<T> partial_uv(const GridField<T>& f);
template <class T>
GridField<T> partial_vv(const GridField<T>& f);

/// Largest margin <= `margin` (and >= 1) that still leaves interior nodes on g.
std::size_t effective_margin(const NullGrid& g, std::size_t margin);

/// Maximum of |f| over nodes at least `margin` nodes away from the boundary.
double interior_max_abs(const ScalarField& f, std::size_t margin = 1);
/// Maximum Euclidean-style coordinate size over the same nodes.
double interior_max_abs(const VectorField& f, std::size_t margin = 1);
double max_abs(const ScalarField& f);

OneForm d_prime(const ScalarField& f);
OneForm d_double_prime(const ScalarField& f);

/// *du = du, *dv = -dv.
OneForm star(const OneForm& w);

/// 4 e^{-omega} f_uv, i.e. e^{-omega}(-f_xx + f_yy) with x = (u - v)/2, y = (u + v)/2.
ScalarField dalembertian(const ScalarField& f, const ScalarField& omega);

struct HarmonicSplit {
  std::vector<double> f;  // f(u_i) = h(u_i, v0)
  std::vector<double> g;  // g(v_j) = h(u0, v_j) - h(u0, v0)
  double residual = 0.0;  // interior max |h_uv| that passed the check

  double operator()(std::size_t i, std::size_t j) const { return f[i] + g[j]; }
};

/// Default harmonicity tolerance, 1e-6 (1 + max|h|).
double default_harmonic_tolerance(const ScalarField& h);

/// Splits a Lorentz harmonic h into holomorphic + anti-holomorphic parts anchored at the
/// grid corner. Throws Error(NotHarmonic) with the residual when interior max |h_uv| > tol.
HarmonicSplit harmonic_split(const ScalarField& h, double tol);
HarmonicSplit harmonic_split(const ScalarField& h);

/// (max |d fmap / dv|, max |d gmap / du|) over the interior; both ~0 iff (fmap, gmap) is holomorphic.
std::pair<double, double> holomorphy_residual(const ScalarField& fmap, const ScalarField& gmap);

}  // namespace tms
