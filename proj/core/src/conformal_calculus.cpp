#include "tms/conformal_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tms/error.hpp"

namespace tms {

NullGrid NullGrid::span(double u_lo, double u_hi, double v_lo, double v_hi, std::size_t nu, std::size_t nv) {
  if (nu < 2 || nv < 2) throw Error(ErrorKind::GridTooSmall, "need at least two nodes per axis");
  NullGrid g;
  g.u0 = u_lo;
  g.v0 = v_lo;
  g.hu = (u_hi - u_lo) / static_cast<double>(nu - 1);
  g.hv = (v_hi - v_lo) / static_cast<double>(nv - 1);
  g.nu = nu;
  g.nv = nv;
  g.validate();
  return g;
}

void NullGrid::validate() const {
  if (!(hu > 0.0) || !(hv > 0.0)) throw Error(ErrorKind::InvalidGrid, "grid steps must be positive");
  if (nu < 3 || nv < 3) {
    throw Error(ErrorKind::GridTooSmall,
                "grid " + std::to_string(nu) + "x" + std::to_string(nv) + " has no interior nodes");
  }
}

void require_same_grid(const NullGrid& a, const NullGrid& b) {
  if (!(a == b)) throw Error(ErrorKind::GridMismatch, "fields live on different grids");
}

namespace {

// Fornberg weights for derivative order m at offset 0 from the integer offsets x.
std::vector<double> fd_weights(const std::vector<double>& x, int m) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0];
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

struct Stencil {
  std::size_t first = 0;
  std::vector<double> w;
};

// Fourth-order stencils: centered five-point inside, shifted windows near the ends.
std::vector<Stencil> line_stencils(std::size_t n, double h, int m) {
  std::vector<Stencil> out(n);
  const double scale = m == 1 ? 1.0 / h : 1.0 / (h * h);
  for (std::size_t k = 0; k < n; ++k) {
    const bool centered = k >= 2 && k + 2 < n;
    std::size_t width = (m == 2 && !centered) ? 6 : 5;
    width = std::min(width, n);
    std::size_t first = k >= 2 ? k - 2 : 0;
    first = std::min(first, n - width);
    std::vector<double> x(width);
    for (std::size_t i = 0; i < width; ++i) x[i] = static_cast<double>(first + i) - static_cast<double>(k);
    std::vector<double> w = fd_weights(x, m);
    for (double& wi : w) wi *= scale;
    out[k] = {first, std::move(w)};
  }
  return out;
}

template <class T, class Get, class Put>
void apply_line(const std::vector<Stencil>& st, Get get, Put put) {
  for (std::size_t k = 0; k < st.size(); ++k) {
    T acc = get(st[k].first) * st[k].w[0];
    for (std::size_t i = 1; i < st[k].w.size(); ++i) acc = acc + get(st[k].first + i) * st[k].w[i];
    put(k, acc);
  }
}

template <class T>
GridField<T> along_u(const GridField<T>& f, int m) {
  f.grid.validate();
  GridField<T> out(f.grid);
  const std::vector<Stencil> st = line_stencils(f.grid.nu, f.grid.hu, m);
  for (std::size_t j = 0; j < f.grid.nv; ++j) {
    apply_line<T>(st, [&](std::size_t i) { return f.at(i, j); }, [&](std::size_t i, const T& val) { out.at(i, j) = val; });
  }
  return out;
}

template <class T>
GridField<T> along_v(const GridField<T>& f, int m) {
  f.grid.validate();
  GridField<T> out(f.grid);
  const std::vector<Stencil> st = line_stencils(f.grid.nv, f.grid.hv, m);
  for (std::size_t i = 0; i < f.grid.nu; ++i) {
    apply_line<T>(st, [&](std::size_t j) { return f.at(i, j); }, [&](std::size_t j, const T& val) { out.at(i, j) = val; });
  }
  return out;
}

}  // namespace

template <class T>
GridField<T> partial_u(const GridField<T>& f) {
  return along_u(f, 1);
}

template <class T>
GridField<T> partial_v(const GridField<T>& f) {
  return along_v(f, 1);
}

template <class T>
GridField<T> partial_uu(const GridField<T>& f) {
  return along_u(f, 2);
}

template <class T>
GridField<T> partial_vv(const GridField<T>& f) {
  return along_v(f, 2);
}

template <class T>
GridField<T> partial_uv(const GridField<T>& f) {
  return partial_u(partial_v(f));
}

template GridField<double> partial_u(const GridField<double>&);
template GridField<double> partial_v(const GridField<double>&);
template GridField<double> partial_uu(const GridField<double>&);
template GridField<double> partial_uv(const GridField<double>&);
template GridField<double> partial_vv(const GridField<double>&);
template GridField<Vec3M> partial_u(const GridField<Vec3M>&);
template GridField<Vec3M> partial_v(const GridField<Vec3M>&);
template GridField<Vec3M> partial_uu(const GridField<Vec3M>&);
template GridField<Vec3M> partial_uv(const GridField<Vec3M>&);
template GridField<Vec3M> partial_vv(const GridField<Vec3M>&);

std::size_t effective_margin(const NullGrid& g, std::size_t margin) {
  while (margin > 1 && (2 * margin >= g.nu || 2 * margin >= g.nv)) --margin;
  return margin;
}

double interior_max_abs(const ScalarField& f, std::size_t margin) {
  const std::size_t m0 = effective_margin(f.grid, margin);
  double m = 0.0;
  for (std::size_t i = m0; i + m0 < f.grid.nu; ++i)
    for (std::size_t j = m0; j + m0 < f.grid.nv; ++j) m = std::max(m, std::fabs(f.at(i, j)));
  return m;
}

double interior_max_abs(const VectorField& f, std::size_t margin) {
  const std::size_t m0 = effective_margin(f.grid, margin);
  double m = 0.0;
  for (std::size_t i = m0; i + m0 < f.grid.nu; ++i)
    for (std::size_t j = m0; j + m0 < f.grid.nv; ++j) m = std::max(m, f.at(i, j).max_abs());
  return m;
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.values) m = std::max(m, std::fabs(x));
  return m;
}

OneForm d_prime(const ScalarField& f) {
  const ScalarField fu = partial_u(f);
  return {f.grid, fu.values, std::vector<double>(f.grid.size(), 0.0)};
}

OneForm d_double_prime(const ScalarField& f) {
  const ScalarField fv = partial_v(f);
  return {f.grid, std::vector<double>(f.grid.size(), 0.0), fv.values};
}

OneForm star(const OneForm& w) {
  OneForm out = w;
  for (double& b : out.b) b = -b;
  return out;
}

ScalarField dalembertian(const ScalarField& f, const ScalarField& omega) {
  require_same_grid(f.grid, omega.grid);
  ScalarField out = partial_uv(f);
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] *= 4.0 * std::exp(-omega.values[k]);
  return out;
}

double default_harmonic_tolerance(const ScalarField& h) { return 1e-6 * (1.0 + max_abs(h)); }

HarmonicSplit harmonic_split(const ScalarField& h) { return harmonic_split(h, default_harmonic_tolerance(h)); }

HarmonicSplit harmonic_split(const ScalarField& h, double tol) {
  h.grid.validate();
  const double residual = interior_max_abs(partial_uv(h));
  if (residual > tol) {
    throw Error(ErrorKind::NotHarmonic,
                "max |h_uv| = " + std::to_string(residual) + " exceeds " + std::to_string(tol),
                ErrorSite{h.grid.u0, h.grid.v0, residual});
  }
  HarmonicSplit split;
  split.residual = residual;
  split.f.resize(h.grid.nu);
  split.g.resize(h.grid.nv);
  for (std::size_t i = 0; i < h.grid.nu; ++i) split.f[i] = h.at(i, 0);
  for (std::size_t j = 0; j < h.grid.nv; ++j) split.g[j] = h.at(0, j) - h.at(0, 0);
  return split;
}

std::pair<double, double> holomorphy_residual(const ScalarField& fmap, const ScalarField& gmap) {
  require_same_grid(fmap.grid, gmap.grid);
  return {interior_max_abs(partial_v(fmap)), interior_max_abs(partial_u(gmap))};
}

}  // namespace tms
