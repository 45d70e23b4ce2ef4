#include "tms/null_curves.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tms/error.hpp"
#include "tms/surface_geometry.hpp"

namespace tms {

namespace {

template <class T>
std::vector<T> differentiate_impl(const std::vector<double>& s, const std::vector<T>& f) {
  const std::size_t n = s.size();
  if (n < 3 || f.size() != n) throw Error(ErrorKind::InvalidArgument, "need at least 3 matching samples");
  std::vector<T> out(n);
  auto three_point = [&](std::size_t a, std::size_t b, std::size_t c, double at) {
    // Derivative at `at` of the quadratic through (s_a, f_a), (s_b, f_b), (s_c, f_c).
    const double xa = s[a], xb = s[b], xc = s[c];
    const double wa = (2.0 * at - xb - xc) / ((xa - xb) * (xa - xc));
    const double wb = (2.0 * at - xa - xc) / ((xb - xa) * (xb - xc));
    const double wc = (2.0 * at - xa - xb) / ((xc - xa) * (xc - xb));
    return f[a] * wa + f[b] * wb + f[c] * wc;
  };
  for (std::size_t k = 1; k + 1 < n; ++k) out[k] = three_point(k - 1, k, k + 1, s[k]);
  out[0] = three_point(0, 1, 2, s[0]);
  out[n - 1] = three_point(n - 3, n - 2, n - 1, s[n - 1]);
  return out;
}

void require_increasing(const std::vector<double>& s) {
  if (s.size() < 3) throw Error(ErrorKind::InvalidArgument, "a curve needs at least 3 samples");
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (!(s[k] > s[k - 1])) throw Error(ErrorKind::InvalidArgument, "curve parameters must increase");
  }
}

struct HelixState {
  Vec3M g, A, B, C;
};

HelixState helix_rhs(const HelixState& y, double k) { return {y.A, y.C, y.C * k, -(y.A * k) - y.B}; }

HelixState axpy(const HelixState& y, const HelixState& d, double h) {
  return {y.g + d.g * h, y.A + d.A * h, y.B + d.B * h, y.C + d.C * h};
}

HelixState rk4_step(const HelixState& y, double k, double h) {
  const HelixState k1 = helix_rhs(y, k);
  const HelixState k2 = helix_rhs(axpy(y, k1, 0.5 * h), k);
  const HelixState k3 = helix_rhs(axpy(y, k2, 0.5 * h), k);
  const HelixState k4 = helix_rhs(axpy(y, k3, h), k);
  HelixState out = y;
  out = axpy(out, k1, h / 6.0);
  out = axpy(out, k2, h / 3.0);
  out = axpy(out, k3, h / 3.0);
  out = axpy(out, k4, h / 6.0);
  return out;
}

HelixState advance(HelixState y, double k, double from, double to, double hmax) {
  const double span = to - from;
  if (span == 0.0) return y;
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(std::fabs(span) / hmax - 1e-9)));
  const double h = span / static_cast<double>(steps);
  for (std::size_t m = 0; m < steps; ++m) y = rk4_step(y, k, h);
  return y;
}

}  // namespace

std::vector<Vec3M> differentiate(const std::vector<double>& s, const std::vector<Vec3M>& values) {
  return differentiate_impl(s, values);
}

std::vector<double> differentiate(const std::vector<double>& s, const std::vector<double>& values) {
  return differentiate_impl(s, values);
}

double nullity_residual(const NullCurve& c) {
  const std::vector<Vec3M> d1 = c.d1.size() == c.size() ? c.d1 : differentiate(c.s, c.points);
  double m = 0.0;
  for (const Vec3M& a : d1) m = std::max(m, std::fabs(minkowski_dot(a, a)));
  return m;
}

double frame_orthogonality_residual(const NullFrame& f) {
  double m = 0.0;
  for (std::size_t k = 0; k < f.s.size(); ++k) {
    const Vec3M &A = f.A[k], &B = f.B[k], &C = f.C[k];
    m = std::max({m, std::fabs(minkowski_dot(A, B) - 1.0), std::fabs(minkowski_dot(B, B)),
                  std::fabs(minkowski_dot(C, C) - 1.0), std::fabs(minkowski_dot(A, A)),
                  std::fabs(minkowski_dot(A, C)), std::fabs(minkowski_dot(B, C))});
  }
  return m;
}

NullFrame frenet_frame(const NullCurve& c) {
  require_increasing(c.s);
  const std::size_t n = c.size();
  const std::vector<Vec3M> d1 = c.d1.size() == n ? c.d1 : differentiate(c.s, c.points);
  const std::vector<Vec3M> d2 = c.d2.size() == n ? c.d2 : differentiate(c.s, d1);
  const std::vector<Vec3M> d3 = c.d3.size() == n ? c.d3 : differentiate(c.s, d2);

  NullFrame f;
  f.s = c.s;
  f.A.resize(n);
  f.B.resize(n);
  f.C.resize(n);
  f.k1.resize(n);
  f.k2.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3M& A = d1[k];
    const double g2 = minkowski_dot(d2[k], d2[k]);
    if (g2 <= kDegenerateAcceleration) {
      throw Error(ErrorKind::DegenerateAcceleration, "<gamma'', gamma''> = " + std::to_string(g2) +
                  " at s = " + std::to_string(c.s[k]), ErrorSite{c.s[k], 0.0, g2});
    }
    const double k1 = std::sqrt(g2);
    const Vec3M C = d2[k] / k1;

    // B is the unique null vector with <A,B> = 1 and <B,C> = 0.
    Vec3M P = kE1;
    for (const Vec3M& e : {kE2, kE3}) {
      if (std::fabs(minkowski_dot(e, A)) > std::fabs(minkowski_dot(P, A))) P = e;
    }
    const Vec3M B0 = (P - C * minkowski_dot(P, C)) / minkowski_dot(P, A);
    const Vec3M B = B0 - A * (0.5 * minkowski_dot(B0, B0));

    const double k1p = minkowski_dot(d3[k], d2[k]) / k1;
    const Vec3M Cp = d3[k] / k1 - d2[k] * (k1p / g2);
    f.A[k] = A;
    f.B[k] = B;
    f.C[k] = C;
    f.k1[k] = k1;
    f.k2[k] = -minkowski_dot(Cp, B);
  }
  return f;
}

NullCurve pseudoarc_reparametrize(const NullCurve& c) {
  require_increasing(c.s);
  const std::size_t n = c.size();
  const std::vector<Vec3M> d1 = c.d1.size() == n ? c.d1 : differentiate(c.s, c.points);
  const std::vector<Vec3M> d2 = c.d2.size() == n ? c.d2 : differentiate(c.s, d1);
  const std::vector<Vec3M> d3 = c.d3.size() == n ? c.d3 : differentiate(c.s, d2);

  std::vector<double> rho(n), rhop(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double g2 = minkowski_dot(d2[k], d2[k]);
    if (g2 <= kDegenerateAcceleration) {
      throw Error(ErrorKind::DegenerateAcceleration, "<gamma'', gamma''> = " + std::to_string(g2) +
                  " at s = " + std::to_string(c.s[k]), ErrorSite{c.s[k], 0.0, g2});
    }
    rho[k] = std::pow(g2, 0.25);
    rhop[k] = 0.5 * minkowski_dot(d3[k], d2[k]) / (rho[k] * rho[k] * rho[k]);
  }

  // Corrected trapezoid (exact for cubics) on sigma' = rho.
  std::vector<double> sigma(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double h = c.s[k + 1] - c.s[k];
    sigma[k + 1] = sigma[k] + 0.5 * h * (rho[k] + rho[k + 1]) + h * h / 12.0 * (rhop[k] - rhop[k + 1]);
  }
  if (c.s.front() <= 0.0 && 0.0 <= c.s.back()) {
    std::size_t k = 0;
    while (k + 2 < n && c.s[k + 1] < 0.0) ++k;
    const double h = c.s[k + 1] - c.s[k];
    const double t = (0.0 - c.s[k]) / h;
    const double h00 = 2 * t * t * t - 3 * t * t + 1, h10 = t * t * t - 2 * t * t + t;
    const double h01 = -2 * t * t * t + 3 * t * t, h11 = t * t * t - t * t;
    const double at0 = h00 * sigma[k] + h10 * h * rho[k] + h01 * sigma[k + 1] + h11 * h * rho[k + 1];
    for (double& x : sigma) x -= at0;
  }

  NullCurve out;
  out.s = sigma;
  out.points = c.points;
  out.d1.resize(n);
  out.d2.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.d1[k] = d1[k] / rho[k];
    out.d2[k] = (d2[k] - out.d1[k] * rhop[k]) / (rho[k] * rho[k]);
  }
  out.d3 = differentiate(out.s, out.d2);
  return out;
}

NullFrame helix_initial_frame() {
  NullFrame f;
  f.s = {0.0};
  f.A = {Vec3M{-0.5, 0.5, 0.0}};
  f.B = {Vec3M{1.0, 1.0, 0.0}};
  f.C = {Vec3M{0.0, 0.0, 1.0}};
  f.k1 = {1.0};
  f.k2 = {0.0};
  return f;
}

namespace {

std::vector<double> helix_nodes(double lo, double hi, std::size_t n) {
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "a helix needs at least 3 samples");
  if (!(hi > lo)) throw Error(ErrorKind::InvalidArgument, "sigma range must be increasing");
  std::vector<double> s(n);
  const double d = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) s[k] = lo + d * static_cast<double>(k);
  s[n - 1] = hi;
  return s;
}

}  // namespace

NullCurve null_helix(double k, double sigma_lo, double sigma_hi, std::size_t n) {
  if (k != 0.0) return null_helix_ode(k, sigma_lo, sigma_hi, n);
  NullCurve c;
  c.s = helix_nodes(sigma_lo, sigma_hi, n);
  for (double x : c.s) {
    c.points.push_back({-0.5 * (x + x * x * x / 3.0), 0.5 * (x - x * x * x / 3.0), 0.5 * x * x});
    c.d1.push_back({-0.5 * (1.0 + x * x), 0.5 * (1.0 - x * x), x});
    c.d2.push_back({-x, -x, 1.0});
    c.d3.push_back({-1.0, -1.0, 0.0});
  }
  return c;
}

NullCurve null_helix_ode(double k, double sigma_lo, double sigma_hi, std::size_t n) {
  NullCurve c;
  c.s = helix_nodes(sigma_lo, sigma_hi, n);
  const double hmax = (sigma_hi - sigma_lo) / static_cast<double>(std::max<std::size_t>(n - 1, 1000));
  const NullFrame f0 = helix_initial_frame();
  const HelixState start{{0, 0, 0}, f0.A[0], f0.B[0], f0.C[0]};

  std::vector<HelixState> states(n);
  // Forward from sigma = 0 through nonnegative nodes, backward through negative ones.
  HelixState y = start;
  double at = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    if (c.s[m] < 0.0) continue;
    y = advance(y, k, at, c.s[m], hmax);
    at = c.s[m];
    states[m] = y;
  }
  y = start;
  at = 0.0;
  for (std::size_t m = n; m-- > 0;) {
    if (c.s[m] >= 0.0) continue;
    y = advance(y, k, at, c.s[m], hmax);
    at = c.s[m];
    states[m] = y;
  }
  for (const HelixState& st : states) {
    c.points.push_back(st.g);
    c.d1.push_back(st.A);
    c.d2.push_back(st.C);
    c.d3.push_back(-(st.A * k) - st.B);
  }
  return c;
}

SurfacePatch b_scroll(const NullCurve& c, double t_lo, double t_hi, std::size_t nt) {
  const NullFrame f = frenet_frame(c);
  const std::size_t n = c.size();
  const double hs = (c.s.back() - c.s.front()) / static_cast<double>(n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    if (std::fabs((c.s[k] - c.s[k - 1]) - hs) > 1e-9 * (1.0 + std::fabs(hs))) {
      throw Error(ErrorKind::InvalidGrid, "b_scroll needs uniformly spaced curve samples");
    }
  }
  if (nt < 3 || !(t_hi > t_lo)) throw Error(ErrorKind::GridTooSmall, "b_scroll needs nt >= 3 and t_hi > t_lo");
  NullGrid g;
  g.u0 = c.s.front();
  g.hu = hs;
  g.nu = n;
  g.v0 = t_lo;
  g.hv = (t_hi - t_lo) / static_cast<double>(nt - 1);
  g.nv = nt;
  g.validate();

  const std::vector<double> k2p = differentiate(f.s, f.k2);
  SurfacePatch p;
  p.coordinates = CoordinateKind::General;
  p.points = VectorField(g);
  PatchJets j{VectorField(g), VectorField(g), VectorField(g), VectorField(g), VectorField(g)};
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3M &A = f.A[i], &B = f.B[i], &C = f.C[i];
    const double k1 = f.k1[i], k2 = f.k2[i];
    const Vec3M Cp = -(A * k2) - B * k1;
    for (std::size_t m = 0; m < nt; ++m) {
      const double t = g.v(m);
      p.points.at(i, m) = c.points[i] + B * t;
      j.pu.at(i, m) = A + C * (t * k2);
      j.pv.at(i, m) = B;
      j.puu.at(i, m) = C * k1 + (C * k2p[i] + Cp * k2) * t;
      j.puv.at(i, m) = C * k2;
      j.pvv.at(i, m) = Vec3M{};
    }
  }
  p.jets = std::move(j);
  return p;
}

}  // namespace tms
