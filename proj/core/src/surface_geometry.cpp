#include "tms/surface_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tms/error.hpp"

namespace tms {

std::string to_string(DerivativeMode m) {
  return m == DerivativeMode::Analytic ? "analytic" : "finite-difference";
}

PatchDerivatives patch_derivatives(const SurfacePatch& p, DerivativePreference pref) {
  p.grid().validate();
  PatchDerivatives d;
  if (p.jets && pref == DerivativePreference::Auto) {
    d.pu = p.jets->pu;
    d.pv = p.jets->pv;
    d.puu = p.jets->puu;
    d.puv = p.jets->puv;
    d.pvv = p.jets->pvv;
    d.mode = DerivativeMode::Analytic;
    return d;
  }
  d.pu = partial_u(p.points);
  d.pv = partial_v(p.points);
  d.puu = partial_uu(p.points);
  d.puv = partial_uv(p.points);
  d.pvv = partial_vv(p.points);
  d.mode = DerivativeMode::FiniteDifference;
  return d;
}

namespace {

bool is_interior(const NullGrid& g, std::size_t i, std::size_t j) {
  return i > 0 && j > 0 && i + 1 < g.nu && j + 1 < g.nv;
}

[[noreturn]] void throw_degenerate(const NullGrid& g, std::size_t i, std::size_t j, double value,
                                   const std::string& what) {
  throw Error(ErrorKind::DegenerateMetric,
              what + " = " + std::to_string(value) + " at u=" + std::to_string(g.u(i)) + ", v=" + std::to_string(g.v(j)),
              ErrorSite{g.u(i), g.v(j), value});
}

double max_abs_all(std::initializer_list<const ScalarField*> fields) {
  double m = 0.0;
  for (const ScalarField* f : fields) m = std::max(m, max_abs(*f));
  return m;
}

}  // namespace

FirstFundamental first_fundamental(const SurfacePatch& p, DerivativePreference pref) {
  const PatchDerivatives d = patch_derivatives(p, pref);
  const NullGrid& g = p.grid();
  FirstFundamental out;
  out.mode = d.mode;
  out.eomega = ScalarField(g);
  ScalarField cu(g), cv(g);
  for (std::size_t i = 0; i < g.nu; ++i) {
    for (std::size_t j = 0; j < g.nv; ++j) {
      const double e = 2.0 * minkowski_dot(d.pu.at(i, j), d.pv.at(i, j));
      if (is_interior(g, i, j) && std::fabs(e) <= kDegenerateMetric) throw_degenerate(g, i, j, e, "e^omega");
      out.eomega.at(i, j) = e;
      cu.at(i, j) = minkowski_dot(d.pu.at(i, j), d.pu.at(i, j));
      cv.at(i, j) = minkowski_dot(d.pv.at(i, j), d.pv.at(i, j));
    }
  }
  out.conformality_u = interior_max_abs(cu);
  out.conformality_v = interior_max_abs(cv);
  return out;
}

VectorField unit_normal(const PatchDerivatives& d) {
  const NullGrid& g = d.pu.grid;
  VectorField n(g);
  for (std::size_t i = 0; i < g.nu; ++i) {
    for (std::size_t j = 0; j < g.nv; ++j) {
      const Vec3M w = vector_product(d.pv.at(i, j), d.pu.at(i, j));
      const double n2 = minkowski_dot(w, w);
      if (!(n2 > kDegenerateMetric * kDegenerateMetric)) throw_degenerate(g, i, j, n2, "<N~, N~>");
      n.at(i, j) = w / std::sqrt(n2);
    }
  }
  return n;
}

VectorField unit_normal(const SurfacePatch& p, DerivativePreference pref) {
  return unit_normal(patch_derivatives(p, pref));
}

FundamentalData second_fundamental(const SurfacePatch& p, DerivativePreference pref) {
  if (p.coordinates != CoordinateKind::Null) {
    throw Error(ErrorKind::InvalidArgument, "second_fundamental needs null coordinates; use general_curvatures");
  }
  const PatchDerivatives d = patch_derivatives(p, pref);
  const VectorField N = unit_normal(d);
  const NullGrid& g = p.grid();
  FundamentalData fd;
  fd.mode = d.mode;
  fd.eomega = ScalarField(g);
  fd.Q = ScalarField(g);
  fd.R = ScalarField(g);
  fd.H = ScalarField(g);
  fd.K = ScalarField(g);
  SymmetricFormField III{ScalarField(g), ScalarField(g), ScalarField(g)};
  for (std::size_t i = 0; i < g.nu; ++i) {
    for (std::size_t j = 0; j < g.nv; ++j) {
      const double e = 2.0 * minkowski_dot(d.pu.at(i, j), d.pv.at(i, j));
      if (std::fabs(e) <= kDegenerateMetric) throw_degenerate(g, i, j, e, "e^omega");
      const Vec3M& n = N.at(i, j);
      const double Q = minkowski_dot(d.puu.at(i, j), n);
      const double R = minkowski_dot(d.pvv.at(i, j), n);
      const double M = minkowski_dot(d.puv.at(i, j), n);
      const double H = 2.0 * M / e;
      const double K = H * H - 4.0 * Q * R / (e * e);
      fd.eomega.at(i, j) = e;
      fd.Q.at(i, j) = Q;
      fd.R.at(i, j) = R;
      fd.H.at(i, j) = H;
      fd.K.at(i, j) = K;
      III.uu.at(i, j) = 2.0 * H * Q;
      III.uv.at(i, j) = 2.0 * H * M - K * 0.5 * e;
      III.vv.at(i, j) = 2.0 * H * R;
    }
  }
  fd.III = std::move(III);
  return fd;
}

GeneralCurvatures general_curvatures(const SurfacePatch& p, DerivativePreference pref) {
  const PatchDerivatives d = patch_derivatives(p, pref);
  const VectorField n = unit_normal(d);
  const NullGrid& g = p.grid();
  GeneralCurvatures c;
  c.mode = d.mode;
  for (ScalarField* f : {&c.E, &c.F, &c.G, &c.L, &c.M, &c.N, &c.H, &c.K}) *f = ScalarField(g);
  for (std::size_t i = 0; i < g.nu; ++i) {
    for (std::size_t j = 0; j < g.nv; ++j) {
      const Vec3M &pu = d.pu.at(i, j), &pv = d.pv.at(i, j), &nn = n.at(i, j);
      const double E = minkowski_dot(pu, pu), F = minkowski_dot(pu, pv), G = minkowski_dot(pv, pv);
      const double L = minkowski_dot(d.puu.at(i, j), nn);
      const double M = minkowski_dot(d.puv.at(i, j), nn);
      const double N = minkowski_dot(d.pvv.at(i, j), nn);
      const double det = E * G - F * F;
      if (std::fabs(det) <= kDegenerateMetric) throw_degenerate(g, i, j, det, "det I");
      c.E.at(i, j) = E;
      c.F.at(i, j) = F;
      c.G.at(i, j) = G;
      c.L.at(i, j) = L;
      c.M.at(i, j) = M;
      c.N.at(i, j) = N;
      c.H.at(i, j) = 0.5 * (G * L - 2.0 * F * M + E * N) / det;
      c.K.at(i, j) = (L * N - M * M) / det;
    }
  }
  return c;
}

MeanCurvatureCheck mean_curvature_residual(const SurfacePatch& p, DerivativePreference pref) {
  if (p.coordinates == CoordinateKind::Null) {
    const FundamentalData fd = second_fundamental(p, pref);
    return {interior_max_abs(fd.H), fd.mode};
  }
  const GeneralCurvatures c = general_curvatures(p, pref);
  return {interior_max_abs(c.H), c.mode};
}

double GaussCodazziResiduals::max() const { return std::max({gauss, codazzi_u, codazzi_v}); }

GaussCodazziResiduals gauss_codazzi_residuals(const FundamentalData& fd) {
  const NullGrid& g = fd.grid();
  for (const ScalarField* f : {&fd.Q, &fd.R, &fd.H, &fd.K}) require_same_grid(g, f->grid);
  ScalarField omega(g);
  for (std::size_t k = 0; k < g.size(); ++k) omega.values[k] = std::log(std::fabs(fd.eomega.values[k]));
  const ScalarField w_uv = partial_uv(omega);
  const ScalarField H_u = partial_u(fd.H), H_v = partial_v(fd.H);
  const ScalarField Q_v = partial_v(fd.Q), R_u = partial_u(fd.R);
  ScalarField ga(g), cu(g), cv(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double e = fd.eomega.values[k], H = fd.H.values[k];
    ga.values[k] = w_uv.values[k] + 0.5 * H * H * e - 2.0 * fd.Q.values[k] * fd.R.values[k] / e;
    cu.values[k] = H_u.values[k] - 2.0 * Q_v.values[k] / e;
    cv.values[k] = H_v.values[k] - 2.0 * R_u.values[k] / e;
  }
  return {interior_max_abs(ga, 2), interior_max_abs(cu, 2), interior_max_abs(cv, 2)};
}

double gauss_equation_residual(const FundamentalData& fd) {
  const NullGrid& g = fd.grid();
  for (const ScalarField* f : {&fd.Q, &fd.R, &fd.H, &fd.K}) require_same_grid(g, f->grid);
  ScalarField r(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double e = fd.eomega.values[k], H = fd.H.values[k];
    r.values[k] = H * H - fd.K.values[k] - 4.0 * fd.Q.values[k] * fd.R.values[k] / (e * e);
  }
  return interior_max_abs(r);
}

double FrameField::max_det_deviation() const {
  double m = 0.0;
  for (const Mat2& f : frames) m = std::max(m, std::fabs(f.det() - 1.0));
  return m;
}

Mat2 lax_U(const LaxData& d, double lambda) {
  const double s = std::sqrt(d.eomega);
  return {0.25 * d.omega_u, -lambda * 0.5 * d.H * s, lambda * d.Q / s, -0.25 * d.omega_u};
}

Mat2 lax_V(const LaxData& d, double lambda) {
  const double s = std::sqrt(d.eomega);
  return {-0.25 * d.omega_v, -d.R / (lambda * s), 0.5 * d.H * s / lambda, 0.25 * d.omega_v};
}

namespace {

// Lax data at nodes and at midpoints between neighbouring nodes.
class LaxSource {
 public:
  LaxSource(const FundamentalData& fd) : fd_(fd), g_(fd.grid()) {
    if (fd.analytic) return;
    ScalarField omega(g_);
    for (std::size_t k = 0; k < g_.size(); ++k) omega.values[k] = std::log(fd.eomega.values[k]);
    omega_u_ = partial_u(omega);
    omega_v_ = partial_v(omega);
  }

  LaxData node(std::size_t i, std::size_t j) const {
    if (fd_.analytic) return fd_.analytic(g_.u(i), g_.v(j));
    const std::size_t k = g_.index(i, j);
    return {fd_.eomega.values[k], omega_u_.values[k], omega_v_.values[k],
            fd_.Q.values[k],      fd_.R.values[k],       fd_.H.values[k]};
  }

  // Between (i, j) and (i+1, j).
  LaxData mid_u(std::size_t i, std::size_t j) const {
    if (fd_.analytic) return fd_.analytic(g_.u(i) + 0.5 * g_.hu, g_.v(j));
    return interpolate(i, g_.nu, [&](std::size_t a) { return node(a, j); });
  }

  // Between (i, j) and (i, j+1).
  LaxData mid_v(std::size_t i, std::size_t j) const {
    if (fd_.analytic) return fd_.analytic(g_.u(i), g_.v(j) + 0.5 * g_.hv);
    return interpolate(j, g_.nv, [&](std::size_t b) { return node(i, b); });
  }

 private:
  // Cubic through four consecutive nodes (clamped to the axis), evaluated halfway between k and k+1.
  template <class At>
  static LaxData interpolate(std::size_t k, std::size_t n, At at) {
    std::size_t first = k == 0 ? 0 : k - 1;
    if (first + 3 >= n) first = n >= 4 ? n - 4 : 0;
    const double x = static_cast<double>(k) + 0.5 - static_cast<double>(first);
    const std::size_t count = std::min<std::size_t>(4, n - first);
    double w[4] = {0, 0, 0, 0};
    for (std::size_t a = 0; a < count; ++a) {
      double l = 1.0;
      for (std::size_t b = 0; b < count; ++b) {
        if (b != a) l *= (x - static_cast<double>(b)) / (static_cast<double>(a) - static_cast<double>(b));
      }
      w[a] = l;
    }
    LaxData out{0, 0, 0, 0, 0, 0};
    for (std::size_t a = 0; a < count; ++a) {
      const LaxData d = at(first + a);
      out.eomega += w[a] * d.eomega;
      out.omega_u += w[a] * d.omega_u;
      out.omega_v += w[a] * d.omega_v;
      out.Q += w[a] * d.Q;
      out.R += w[a] * d.R;
      out.H += w[a] * d.H;
    }
    return out;
  }

  const FundamentalData& fd_;
  NullGrid g_;
  ScalarField omega_u_;
  ScalarField omega_v_;
};

Mat2 rk4(const Mat2& phi, const Mat2& a0, const Mat2& am, const Mat2& a1, double h) {
  const Mat2 k1 = phi * a0;
  const Mat2 k2 = (phi + k1 * (0.5 * h)) * am;
  const Mat2 k3 = (phi + k2 * (0.5 * h)) * am;
  const Mat2 k4 = (phi + k3 * h) * a1;
  return phi + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
}

struct Stepper {
  const LaxSource& src;
  const NullGrid& g;
  double lambda;

  Mat2 step_u(const Mat2& phi, std::size_t i, std::size_t j) const {
    return rk4(phi, lax_U(src.node(i, j), lambda), lax_U(src.mid_u(i, j), lambda), lax_U(src.node(i + 1, j), lambda),
               g.hu);
  }
  Mat2 step_v(const Mat2& phi, std::size_t i, std::size_t j) const {
    return rk4(phi, lax_V(src.node(i, j), lambda), lax_V(src.mid_v(i, j), lambda), lax_V(src.node(i, j + 1), lambda),
               g.hv);
  }
  // Double steps using the intermediate node as midpoint.
  Mat2 step2_u(const Mat2& phi, std::size_t i, std::size_t j) const {
    return rk4(phi, lax_U(src.node(i, j), lambda), lax_U(src.node(i + 1, j), lambda), lax_U(src.node(i + 2, j), lambda),
               2.0 * g.hu);
  }
  Mat2 step2_v(const Mat2& phi, std::size_t i, std::size_t j) const {
    return rk4(phi, lax_V(src.node(i, j), lambda), lax_V(src.node(i, j + 1), lambda), lax_V(src.node(i, j + 2), lambda),
               2.0 * g.hv);
  }
};

}  // namespace

FrameField integrate_frame(const FundamentalData& fd, double lambda, const FrameOptions& opts) {
  const NullGrid& g = fd.grid();
  g.validate();
  if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
  for (std::size_t i = 0; i < g.nu; ++i) {
    for (std::size_t j = 0; j < g.nv; ++j) {
      const double e = fd.eomega.at(i, j);
      if (!(e > kDegenerateMetric)) throw_degenerate(g, i, j, e, "e^omega");
    }
  }

  const GaussCodazziResiduals gc = gauss_codazzi_residuals(fd);
  if (opts.check_integrability) {
    const double h = g.max_step();
    const double scale = max_abs_all({&fd.eomega, &fd.Q, &fd.R, &fd.H});
    const double tol = opts.integrability_coefficient * h * h * (1.0 + scale);
    if (gc.max() > tol) {
      throw Error(ErrorKind::NotIntegrable,
                  "Gauss-Codazzi residual " + std::to_string(gc.max()) + " exceeds " + std::to_string(tol),
                  ErrorSite{g.u0, g.v0, gc.max()});
    }
  }

  const LaxSource src(fd);
  const Stepper st{src, g, lambda};
  FrameField out;
  out.grid = g;
  out.lambda = lambda;
  out.mode = fd.analytic ? DerivativeMode::Analytic : fd.mode;
  out.frames.assign(g.size(), Mat2::identity());

  // Path 1: along u at v0, then along v.
  for (std::size_t i = 0; i + 1 < g.nu; ++i) out.frames[g.index(i + 1, 0)] = st.step_u(out.frames[g.index(i, 0)], i, 0);
  for (std::size_t i = 0; i < g.nu; ++i)
    for (std::size_t j = 0; j + 1 < g.nv; ++j) out.frames[g.index(i, j + 1)] = st.step_v(out.frames[g.index(i, j)], i, j);

  if (!opts.check_paths) return out;

  // Path 2: along v at u0, then along u.
  std::vector<Mat2> alt(g.size(), Mat2::identity());
  for (std::size_t j = 0; j + 1 < g.nv; ++j) alt[g.index(0, j + 1)] = st.step_v(alt[g.index(0, j)], 0, j);
  for (std::size_t j = 0; j < g.nv; ++j)
    for (std::size_t i = 0; i + 1 < g.nu; ++i) alt[g.index(i + 1, j)] = st.step_u(alt[g.index(i, j)], i, j);

  // Step-doubling estimate of the RK4 error on the even sub-lattice of path 1.
  std::vector<Mat2> coarse(g.size(), Mat2::identity());
  for (std::size_t i = 0; i + 2 < g.nu; i += 2) coarse[g.index(i + 2, 0)] = st.step2_u(coarse[g.index(i, 0)], i, 0);
  double rk_est = 0.0;
  for (std::size_t i = 0; i < g.nu; i += 2) {
    for (std::size_t j = 0; j + 2 < g.nv; j += 2) coarse[g.index(i, j + 2)] = st.step2_v(coarse[g.index(i, j)], i, j);
    for (std::size_t j = 0; j < g.nv; j += 2) {
      rk_est = std::max(rk_est, (out.frames[g.index(i, j)] - coarse[g.index(i, j)]).max_abs() / 15.0);
    }
  }

  double disc = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) disc = std::max(disc, (out.frames[k] - alt[k]).max_abs());
  const double area = (g.u_end() - g.u0) * (g.v_end() - g.v0);
  out.path_discrepancy = disc;
  out.error_budget = 10.0 * (rk_est + gc.max() * area + 1e-12);
  if (disc > out.error_budget) {
    throw Error(ErrorKind::PathInconsistent,
                "path orders differ by " + std::to_string(disc) + " (budget " + std::to_string(out.error_budget) + ")",
                ErrorSite{g.u_end(), g.v_end(), disc});
  }
  return out;
}

FrameGeometry frame_to_geometry(const FrameField& f, const ScalarField& eomega) {
  require_same_grid(f.grid, eomega.grid);
  const NullGrid& g = f.grid;
  FrameGeometry out{VectorField(g), VectorField(g), VectorField(g)};
  const Vec3M tu{-0.5, 0.5, 0.0};
  const Vec3M tv{0.5, 0.5, 0.0};
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double s = std::sqrt(std::fabs(eomega.values[k]));
    out.pu.values[k] = conjugate(f.frames[k], tu) * s;
    out.pv.values[k] = conjugate(f.frames[k], tv) * s;
    out.N.values[k] = conjugate(f.frames[k], kE3);
  }
  return out;
}

GaussMapResult gauss_map(const SurfacePatch& p, DerivativePreference pref) {
  const PatchDerivatives d = patch_derivatives(p, pref);
  const NullGrid& g = p.grid();
  GaussMapResult out;
  out.mode = d.mode;
  out.psi = unit_normal(d);
  const VectorField psi_u = partial_u(out.psi);
  const VectorField psi_v = partial_v(out.psi);

  if (p.coordinates == CoordinateKind::Null) {
    const VectorField psi_uv = partial_uv(out.psi);
    VectorField harm(g);
    ScalarField conf(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const Vec3M &a = psi_u.values[k], &b = psi_v.values[k];
      harm.values[k] = (psi_uv.values[k] + out.psi.values[k] * minkowski_dot(a, b)) * 4.0;
      conf.values[k] = std::max(std::fabs(minkowski_dot(a, a)), std::fabs(minkowski_dot(b, b)));
    }
    out.harmonic_residual = interior_max_abs(harm, 2);
    out.conformality_residual = interior_max_abs(conf, 2);
    return out;
  }

  VectorField flux_u(g), flux_v(g);
  ScalarField sq(g), energy(g), conf(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Vec3M &pu = d.pu.values[k], &pv = d.pv.values[k];
    const double E = minkowski_dot(pu, pu), F = minkowski_dot(pu, pv), G = minkowski_dot(pv, pv);
    const double det = E * G - F * F;
    if (std::fabs(det) <= kDegenerateMetric) {
      throw_degenerate(g, k / g.nv, k % g.nv, det, "det I");
    }
    const double iuu = G / det, iuv = -F / det, ivv = E / det;
    const double s = std::sqrt(std::fabs(det));
    const Vec3M &a = psi_u.values[k], &b = psi_v.values[k];
    flux_u.values[k] = (a * iuu + b * iuv) * s;
    flux_v.values[k] = (a * iuv + b * ivv) * s;
    sq.values[k] = s;
    const double huu = minkowski_dot(a, a), huv = minkowski_dot(a, b), hvv = minkowski_dot(b, b);
    const double tr = iuu * huu + 2.0 * iuv * huv + ivv * hvv;
    energy.values[k] = tr;
    conf.values[k] = std::max({std::fabs(huu - 0.5 * tr * E), std::fabs(huv - 0.5 * tr * F), std::fabs(hvv - 0.5 * tr * G)});
  }
  const VectorField div_u = partial_u(flux_u);
  const VectorField div_v = partial_v(flux_v);
  VectorField tension(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Vec3M lap = (div_u.values[k] + div_v.values[k]) / sq.values[k];
    tension.values[k] = (lap + out.psi.values[k] * energy.values[k]) * (2.0 * sq.values[k]);
  }
  out.harmonic_residual = interior_max_abs(tension, 3);
  out.conformality_residual = interior_max_abs(conf, 2);
  return out;
}

}  // namespace tms
