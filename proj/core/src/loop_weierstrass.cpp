#include "tms/loop_weierstrass.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "tms/error.hpp"

namespace tms {

namespace {

double integrate_from_origin(const RealFn& f, double x) {
  if (x == 0.0) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, x, 12, 1e-15);
}

Vec3M magid_u(double q) { return {-0.5 * (1.0 + q * q), 0.5 * (1.0 - q * q), q}; }
Vec3M magid_v(double r) { return {0.5 * (1.0 + r * r), 0.5 * (1.0 - r * r), r}; }

template <class T, class F>
std::vector<T> simpson_primitive(const F& f, const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  if (x.front() > 0.0 || x.back() < 0.0) {
    throw Error(ErrorKind::RangeExcludesOrigin, "range [" + std::to_string(x.front()) + ", " +
                                                    std::to_string(x.back()) + "] does not contain 0");
  }
  auto simpson = [&](double a, double b) -> T {
    return (f(a) + f(0.5 * (a + b)) * 4.0 + f(b)) * ((b - a) / 6.0);
  };
  // First node at or right of the origin.
  std::size_t k = 0;
  while (k < n && x[k] < 0.0) ++k;
  std::vector<T> out(n, T{});
  if (k < n) {
    out[k] = x[k] == 0.0 ? T{} : simpson(0.0, x[k]);
    for (std::size_t m = k + 1; m < n; ++m) out[m] = out[m - 1] + simpson(x[m - 1], x[m]);
  }
  if (k > 0) {
    out[k - 1] = T{} - simpson(x[k - 1], 0.0);
    for (std::size_t m = k - 1; m-- > 0;) out[m] = out[m + 1] - simpson(x[m], x[m + 1]);
  }
  return out;
}

std::vector<double> axis_nodes(double lo, double hi, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  return x;
}

std::vector<double> grid_u(const NullGrid& g) {
  std::vector<double> x(g.nu);
  for (std::size_t i = 0; i < g.nu; ++i) x[i] = g.u(i);
  return x;
}

std::vector<double> grid_v(const NullGrid& g) {
  std::vector<double> x(g.nv);
  for (std::size_t j = 0; j < g.nv; ++j) x[j] = g.v(j);
  return x;
}

[[noreturn]] void outside_big_cell(double u, double v, double w) {
  throw Error(ErrorKind::OutsideBigCell,
              "u=" + std::to_string(u) + ", v=" + std::to_string(v) + ", 1+qr=" + std::to_string(w),
              ErrorSite{u, v, w});
}

}  // namespace

Potential Potential::from_primitives(RealFn q, RealFn dq, RealFn r, RealFn dr) {
  return {std::move(q), std::move(dq), std::move(r), std::move(dr)};
}

Potential Potential::from_derivatives(RealFn p1, RealFn p2) { return {nullptr, std::move(p1), nullptr, std::move(p2)}; }

double Potential::q_at(double u) const {
  if (q) return q(u);
  if (dq) return integrate_from_origin(dq, u);
  throw Error(ErrorKind::InvalidArgument, "potential has neither q nor p'");
}

double Potential::dq_at(double u) const {
  if (dq) return dq(u);
  throw Error(ErrorKind::InvalidArgument, "potential has no p'");
}

double Potential::r_at(double v) const {
  if (r) return r(v);
  if (dr) return integrate_from_origin(dr, v);
  throw Error(ErrorKind::InvalidArgument, "potential has neither r nor p''");
}

double Potential::dr_at(double v) const {
  if (dr) return dr(v);
  throw Error(ErrorKind::InvalidArgument, "potential has no p''");
}

double potential_consistency(const Potential& pot, double u_lo, double u_hi, double v_lo, double v_hi, std::size_t n) {
  double m = 0.0;
  if (pot.q && pot.dq) {
    for (double u : axis_nodes(u_lo, u_hi, n)) m = std::max(m, std::fabs(pot.q(u) - integrate_from_origin(pot.dq, u)));
  }
  if (pot.r && pot.dr) {
    for (double v : axis_nodes(v_lo, v_hi, n)) m = std::max(m, std::fabs(pot.r(v) - integrate_from_origin(pot.dr, v)));
  }
  return m;
}

std::vector<double> primitive_from_origin(const RealFn& f, const std::vector<double>& nodes) {
  return simpson_primitive<double>(f, nodes);
}

PotentialSamples integrate_potential(const Potential& pot, double u_lo, double u_hi, double v_lo, double v_hi,
                                     std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 nodes");
  if (!pot.dq || !pot.dr) throw Error(ErrorKind::InvalidArgument, "integrate_potential needs p' and p''");
  PotentialSamples s;
  s.u = axis_nodes(u_lo, u_hi, n);
  s.v = axis_nodes(v_lo, v_hi, n);
  s.q = primitive_from_origin(pot.dq, s.u);
  s.r = primitive_from_origin(pot.dr, s.v);
  return s;
}

Mat2 holomorphic_frame_u(double q, double lambda) { return {1.0, 0.0, lambda * q, 1.0}; }

Mat2 holomorphic_frame_v(double r, double lambda) { return {1.0, -r / lambda, 0.0, 1.0}; }

HolomorphicFrames explicit_holomorphic_frames(const Potential& pot, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
  return {[pot, lambda](double u) { return holomorphic_frame_u(pot.q_at(u), lambda); },
          [pot, lambda](double v) { return holomorphic_frame_v(pot.r_at(v), lambda); }};
}

IwasawaSplitting explicit_iwasawa(double q, double r, double lambda) {
  if (lambda == 0.0) throw Error(ErrorKind::InvalidArgument, "lambda must be nonzero");
  const double w = 1.0 + q * r;
  if (!(w > 0.0)) {
    throw Error(ErrorKind::OutsideBigCell, "1+qr=" + std::to_string(w), ErrorSite{q, r, w});
  }
  const double s = 1.0 / std::sqrt(w);
  IwasawaSplitting out;
  out.Phi_loop = LaurentLoop{{-1, Mat2{0, -s * r, 0, 0}}, {0, Mat2::diag(s, s)}, {1, Mat2{0, 0, s * q, 0}}};
  out.Lminus_inv = LaurentLoop{{-1, Mat2{0, s * r, 0, 0}}, {0, Mat2::diag(s * w, s)}};
  out.Lplus_inv = LaurentLoop{{0, Mat2::diag(s, s * w)}, {1, Mat2{0, 0, -s * q, 0}}};
  out.Phi = out.Phi_loop(lambda);
  return out;
}

bool ExtendedFrame::valid(double u, double v) const { return 1.0 + pot.q_at(u) * pot.r_at(v) > 0.0; }

Mat2 ExtendedFrame::operator()(double u, double v, double lambda) const {
  return explicit_iwasawa(pot.q_at(u), pot.r_at(v), lambda).Phi;
}

Vec3M gauss_map_family(double q, double r, double lambda) {
  const double w = 1.0 + q * r;
  if (!(w > 0.0)) throw Error(ErrorKind::OutsideBigCell, "1+qr=" + std::to_string(w), ErrorSite{q, r, w});
  return Vec3M{-lambda * q + r / lambda, -lambda * q - r / lambda, 1.0 - q * r} / w;
}

void require_big_cell(const Potential& pot, const NullGrid& grid) {
  std::vector<double> qs(grid.nu), rs(grid.nv);
  for (std::size_t i = 0; i < grid.nu; ++i) qs[i] = pot.q_at(grid.u(i));
  for (std::size_t j = 0; j < grid.nv; ++j) rs[j] = pot.r_at(grid.v(j));
  for (std::size_t i = 0; i < grid.nu; ++i) {
    for (std::size_t j = 0; j < grid.nv; ++j) {
      const double w = 1.0 + qs[i] * rs[j];
      if (!(w > 0.0)) outside_big_cell(grid.u(i), grid.v(j), w);
    }
  }
}

SurfacePatch weierstrass_immersion(const Potential& pot, const NullGrid& grid) {
  grid.validate();
  require_big_cell(pot, grid);
  const std::vector<double> us = grid_u(grid), vs = grid_v(grid);
  const std::vector<Vec3M> X = simpson_primitive<Vec3M>([&](double u) { return magid_u(pot.q_at(u)); }, us);
  const std::vector<Vec3M> Y = simpson_primitive<Vec3M>([&](double v) { return magid_v(pot.r_at(v)); }, vs);

  SurfacePatch p;
  p.coordinates = CoordinateKind::Null;
  p.points = VectorField(grid);
  PatchJets j{VectorField(grid), VectorField(grid), VectorField(grid), VectorField(grid), VectorField(grid)};
  for (std::size_t i = 0; i < grid.nu; ++i) {
    const double q = pot.q_at(us[i]), dq = pot.dq_at(us[i]);
    for (std::size_t m = 0; m < grid.nv; ++m) {
      const double r = pot.r_at(vs[m]), dr = pot.dr_at(vs[m]);
      p.points.at(i, m) = X[i] + Y[m];
      j.pu.at(i, m) = magid_u(q);
      j.pv.at(i, m) = magid_v(r);
      j.puu.at(i, m) = Vec3M{-q, -q, 1.0} * dq;
      j.puv.at(i, m) = Vec3M{};
      j.pvv.at(i, m) = Vec3M{r, -r, 1.0} * dr;
    }
  }
  p.jets = std::move(j);
  return p;
}

FundamentalData metric_and_hopf(const Potential& pot, const NullGrid& grid) {
  grid.validate();
  require_big_cell(pot, grid);
  FundamentalData fd;
  fd.mode = DerivativeMode::Analytic;
  for (ScalarField* f : {&fd.eomega, &fd.Q, &fd.R, &fd.H, &fd.K}) *f = ScalarField(grid);
  for (std::size_t i = 0; i < grid.nu; ++i) {
    const double q = pot.q_at(grid.u(i)), dq = pot.dq_at(grid.u(i));
    for (std::size_t m = 0; m < grid.nv; ++m) {
      const double r = pot.r_at(grid.v(m)), dr = pot.dr_at(grid.v(m));
      const double w = 1.0 + q * r;
      fd.eomega.at(i, m) = w * w;
      fd.Q.at(i, m) = dq;
      fd.R.at(i, m) = dr;
      fd.H.at(i, m) = 0.0;
      fd.K.at(i, m) = -4.0 * dq * dr / (w * w * w * w);
    }
  }
  fd.analytic = [pot](double u, double v) {
    const double q = pot.q_at(u), r = pot.r_at(v), dq = pot.dq_at(u), dr = pot.dr_at(v);
    const double w = 1.0 + q * r;
    return LaxData{w * w, 2.0 * dq * r / w, 2.0 * q * dr / w, dq, dr, 0.0};
  };
  return fd;
}

NullCurvePair weierstrass_curves(const Potential& pot) {
  auto X = [pot](double u) {
    const RealFn q = [&pot](double s) { return pot.q_at(s); };
    const RealFn q2 = [&pot](double s) { const double x = pot.q_at(s); return x * x; };
    const double i1 = integrate_from_origin(q, u), i2 = integrate_from_origin(q2, u);
    const double qu = pot.q_at(u);
    return CurveJet{{-0.5 * (u + i2), 0.5 * (u - i2), i1}, magid_u(qu), Vec3M{-qu, -qu, 1.0} * pot.dq_at(u)};
  };
  auto Y = [pot](double v) {
    const RealFn r = [&pot](double s) { return pot.r_at(s); };
    const RealFn r2 = [&pot](double s) { const double x = pot.r_at(s); return x * x; };
    const double j1 = integrate_from_origin(r, v), j2 = integrate_from_origin(r2, v);
    const double rv = pot.r_at(v);
    return CurveJet{{0.5 * (v + j2), 0.5 * (v - j2), j1}, magid_v(rv), Vec3M{rv, -rv, 1.0} * pot.dr_at(v)};
  };
  return {X, Y};
}

SurfacePatch patch_from_curves(const NullCurvePair& c, double a, double b, const NullGrid& grid) {
  grid.validate();
  std::vector<CurveJet> xs(grid.nu), ys(grid.nv);
  for (std::size_t i = 0; i < grid.nu; ++i) xs[i] = c.X(grid.u(i));
  for (std::size_t j = 0; j < grid.nv; ++j) ys[j] = c.Y(grid.v(j));
  SurfacePatch p;
  p.coordinates = CoordinateKind::Null;
  p.points = VectorField(grid);
  PatchJets jet{VectorField(grid), VectorField(grid), VectorField(grid), VectorField(grid), VectorField(grid)};
  for (std::size_t i = 0; i < grid.nu; ++i) {
    for (std::size_t j = 0; j < grid.nv; ++j) {
      p.points.at(i, j) = xs[i].p * a + ys[j].p * b;
      jet.pu.at(i, j) = xs[i].d1 * a;
      jet.pv.at(i, j) = ys[j].d1 * b;
      jet.puu.at(i, j) = xs[i].d2 * a;
      jet.puv.at(i, j) = Vec3M{};
      jet.pvv.at(i, j) = ys[j].d2 * b;
    }
  }
  p.jets = std::move(jet);
  return p;
}

SurfacePatch associated_family(const NullCurvePair& c, double lambda, const NullGrid& grid) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
  return patch_from_curves(c, lambda, 1.0 / lambda, grid);
}

SurfacePatch conjugate_surface(const NullCurvePair& c, const NullGrid& grid) { return patch_from_curves(c, 1.0, -1.0, grid); }

FundamentalData dual_fundamental_forms(const FundamentalData& fd, double tol) {
  const NullGrid& g = fd.grid();
  for (const ScalarField* f : {&fd.Q, &fd.R, &fd.H}) require_same_grid(g, f->grid);
  ScalarField diff(g);
  for (std::size_t k = 0; k < g.size(); ++k) diff.values[k] = fd.Q.values[k] - fd.R.values[k];
  const double limit = tol >= 0.0 ? tol : 1e-8 * (1.0 + max_abs(fd.Q));
  const double worst = interior_max_abs(diff);
  if (worst > limit) {
    throw Error(ErrorKind::NotIsothermic,
                "max |Q - R| = " + std::to_string(worst) + " exceeds " + std::to_string(limit), ErrorSite{g.u0, g.v0, worst});
  }
  FundamentalData out;
  out.mode = fd.mode;
  for (ScalarField* f : {&out.eomega, &out.Q, &out.R, &out.H, &out.K}) *f = ScalarField(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double e = fd.eomega.values[k], H = fd.H.values[k], Q = fd.Q.values[k];
    out.eomega.values[k] = 1.0 / e;
    out.Q.values[k] = 0.5 * H;
    out.R.values[k] = 0.5 * H;
    out.H.values[k] = 2.0 * Q;
    out.K.values[k] = 4.0 * Q * Q - e * e * H * H;
  }
  return out;
}

ExtractedPotential extract_potential(const SurfacePatch& p, double tol, DerivativePreference pref) {
  const PatchDerivatives d = patch_derivatives(p, pref);
  const NullGrid& g = p.grid();
  ExtractedPotential out{ScalarField(g), ScalarField(g), d.mode};
  for (std::size_t i = 0; i < g.nu; ++i) {
    for (std::size_t j = 0; j < g.nv; ++j) {
      const Vec3M &pu = d.pu.at(i, j), &pv = d.pv.at(i, j);
      const double s = pu.x2 - pu.x1, t = pv.x1 + pv.x2;
      if (!(s > 0.0) || !(t > 0.0) || std::fabs(s * t - 1.0) > tol) {
        throw Error(ErrorKind::NotNormalizedGauge,
                    "s=" + std::to_string(s) + ", t=" + std::to_string(t) + " at u=" + std::to_string(g.u(i)) +
                        ", v=" + std::to_string(g.v(j)),
                    ErrorSite{g.u(i), g.v(j), s * t});
      }
      out.q.at(i, j) = pu.x3;
      out.r.at(i, j) = pv.x3;
    }
  }
  return out;
}

}  // namespace tms
