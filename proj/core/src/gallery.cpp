#include "tms/gallery.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tms/error.hpp"

namespace tms {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Second-order forward-mode jet in two variables (s, t).
struct Jet2 {
  double f = 0, fs = 0, ft = 0, fss = 0, fst = 0, ftt = 0;

  static Jet2 constant(double c) { return {c}; }
  static Jet2 var_s(double s) { return {s, 1, 0, 0, 0, 0}; }
  static Jet2 var_t(double t) { return {t, 0, 1, 0, 0, 0}; }

  // phi(x) with phi', phi'' evaluated at x = f.
  Jet2 chain(double v, double d1, double d2) const {
    return {v, d1 * fs, d1 * ft, d2 * fs * fs + d1 * fss, d2 * fs * ft + d1 * fst, d2 * ft * ft + d1 * ftt};
  }
};

Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.f + b.f, a.fs + b.fs, a.ft + b.ft, a.fss + b.fss, a.fst + b.fst, a.ftt + b.ftt};
}
Jet2 operator-(const Jet2& a) { return {-a.f, -a.fs, -a.ft, -a.fss, -a.fst, -a.ftt}; }
Jet2 operator-(const Jet2& a, const Jet2& b) { return a + (-b); }
Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.f * b.f,
          a.fs * b.f + a.f * b.fs,
          a.ft * b.f + a.f * b.ft,
          a.fss * b.f + 2 * a.fs * b.fs + a.f * b.fss,
          a.fst * b.f + a.fs * b.ft + a.ft * b.fs + a.f * b.fst,
          a.ftt * b.f + 2 * a.ft * b.ft + a.f * b.ftt};
}
Jet2 operator*(double c, const Jet2& a) { return {c * a.f, c * a.fs, c * a.ft, c * a.fss, c * a.fst, c * a.ftt}; }
Jet2 operator+(const Jet2& a, double c) { return a + Jet2::constant(c); }

Jet2 sinh(const Jet2& x) { return x.chain(std::sinh(x.f), std::cosh(x.f), std::sinh(x.f)); }
Jet2 cosh(const Jet2& x) { return x.chain(std::cosh(x.f), std::sinh(x.f), std::cosh(x.f)); }
Jet2 sin(const Jet2& x) { return x.chain(std::sin(x.f), std::cos(x.f), -std::sin(x.f)); }
Jet2 cos(const Jet2& x) { return x.chain(std::cos(x.f), -std::sin(x.f), -std::cos(x.f)); }
Jet2 cbrt(const Jet2& x) {
  const double c = std::cbrt(x.f);
  return x.chain(c, 1.0 / (3.0 * c * c), -2.0 / (9.0 * c * c * c * c * c));
}

using JetVec = std::array<Jet2, 3>;

JetVec operator+(const JetVec& a, const JetVec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
JetVec scale(const Jet2& c, const Vec3M& v) { return {v.x1 * c, v.x2 * c, v.x3 * c}; }

using JetSurface = std::function<JetVec(const Jet2& s, const Jet2& t)>;

SurfacePatch sample_jets(const JetSurface& f, const NullGrid& grid, CoordinateKind kind) {
  grid.validate();
  SurfacePatch p;
  p.coordinates = kind;
  p.points = VectorField(grid);
  PatchJets j{VectorField(grid), VectorField(grid), VectorField(grid), VectorField(grid), VectorField(grid)};
  for (std::size_t i = 0; i < grid.nu; ++i) {
    for (std::size_t m = 0; m < grid.nv; ++m) {
      const JetVec r = f(Jet2::var_s(grid.u(i)), Jet2::var_t(grid.v(m)));
      p.points.at(i, m) = {r[0].f, r[1].f, r[2].f};
      j.pu.at(i, m) = {r[0].fs, r[1].fs, r[2].fs};
      j.pv.at(i, m) = {r[0].ft, r[1].ft, r[2].ft};
      j.puu.at(i, m) = {r[0].fss, r[1].fss, r[2].fss};
      j.puv.at(i, m) = {r[0].fst, r[1].fst, r[2].fst};
      j.pvv.at(i, m) = {r[0].ftt, r[1].ftt, r[2].ftt};
    }
  }
  p.jets = std::move(j);
  return p;
}

JetVec catenoid_x(const Jet2& u) {
  const Jet2 a = kSqrt2 * u;
  return {0.5 * sinh(a), 0.5 * cosh(a), (1.0 / kSqrt2) * u};
}

JetVec enneper_x(double eps, const Jet2& u) {
  const Jet2 u3 = u * u * u;
  return {-0.5 * (u + (1.0 / 3.0) * u3), 0.5 * (u - (1.0 / 3.0) * u3), (0.5 * eps) * (u * u)};
}

JetVec enneper_y(const Jet2& v) {
  const Jet2 v3 = v * v * v;
  return {0.5 * (v + (1.0 / 3.0) * v3), 0.5 * (v - (1.0 / 3.0) * v3), 0.5 * (v * v)};
}

CurveFn curve_from_jet(std::function<JetVec(const Jet2&)> f) {
  return [f](double x) {
    const JetVec r = f(Jet2::var_s(x));
    return CurveJet{{r[0].f, r[1].f, r[2].f}, {r[0].fs, r[1].fs, r[2].fs}, {r[0].fss, r[1].fss, r[2].fss}};
  };
}

void require_enneper(double eps, const NullGrid& grid) {
  if (eps != 1.0 && eps != -1.0) throw Error(ErrorKind::InvalidArgument, "eps must be +1 or -1");
  for (std::size_t i = 0; i < grid.nu; ++i) {
    for (std::size_t j = 0; j < grid.nv; ++j) {
      const double w = 1.0 + eps * grid.u(i) * grid.v(j);
      if (!(w > 0.0)) {
        throw Error(ErrorKind::OutsideBigCell,
                    "u=" + std::to_string(grid.u(i)) + ", v=" + std::to_string(grid.v(j)) + ", 1+qr=" + std::to_string(w),
                    ErrorSite{grid.u(i), grid.v(j), w});
      }
    }
  }
}

JetSurface revolution_formula(int which, const std::string& variant, double a, double b) {
  const double ia = 1.0 / a;
  auto arg = [a, b](const Jet2& s) { return a * s + b; };
  if (which == 1) {
    if (variant == "literal")
      return [=](const Jet2& s, const Jet2& t) -> JetVec {
        return {ia * (sinh(arg(s)) * cosh(t)), ia * (cosh(arg(s)) * sinh(t)), s};
      };
    if (variant == "sinh-profile")
      return [=](const Jet2& s, const Jet2& t) -> JetVec {
        return {ia * (sinh(arg(s)) * cosh(t)), ia * (sinh(arg(s)) * sinh(t)), s};
      };
    if (variant == "cosh-profile")
      return [=](const Jet2& s, const Jet2& t) -> JetVec {
        return {ia * (cosh(arg(s)) * cosh(t)), ia * (cosh(arg(s)) * sinh(t)), s};
      };
  } else if (which == 2) {
    if (variant == "literal")
      return [=](const Jet2& s, const Jet2& t) -> JetVec {
        return {ia * (cosh(arg(s)) * sinh(t)), ia * (sinh(arg(s)) * cosh(t)), s};
      };
    if (variant == "cosh-profile")
      return [=](const Jet2& s, const Jet2& t) -> JetVec {
        return {ia * (cosh(arg(s)) * sinh(t)), ia * (cosh(arg(s)) * cosh(t)), s};
      };
    if (variant == "sinh-profile")
      return [=](const Jet2& s, const Jet2& t) -> JetVec {
        return {ia * (sinh(arg(s)) * sinh(t)), ia * (sinh(arg(s)) * cosh(t)), s};
      };
  } else if (which == 3) {
    if (variant == "literal")
      return [=](const Jet2& s, const Jet2& t) -> JetVec {
        return {s, ia * (sin(arg(s)) * cos(t)), ia * (cos(arg(s)) * sin(t))};
      };
    if (variant == "cos-profile")
      return [=](const Jet2& s, const Jet2& t) -> JetVec {
        return {s, ia * (cos(arg(s)) * cos(t)), ia * (cos(arg(s)) * sin(t))};
      };
    if (variant == "sin-profile")
      return [=](const Jet2& s, const Jet2& t) -> JetVec {
        return {s, ia * (sin(arg(s)) * cos(t)), ia * (sin(arg(s)) * sin(t))};
      };
  } else if (which == 4) {
    auto quad = [a, b](const Jet2& s) { return cbrt((-a) * (s * s) + b); };
    auto lin = [a, b](const Jet2& s) { return cbrt((-a * a) * s + b); };
    auto build = [](const Jet2& first, const Jet2& rest, const Jet2& s, const Jet2& t) {
      const Jet2 second = (-0.5) * (t * t) * rest + s;
      return scale(first, kL1) + scale(second, kL2) + scale(t * rest, kL3);
    };
    if (variant == "uniform-quadratic")
      return [=](const Jet2& s, const Jet2& t) { const Jet2 c = quad(s); return build(c, c, s, t); };
    if (variant == "literal")
      return [=](const Jet2& s, const Jet2& t) { return build(lin(s), quad(s), s, t); };
    if (variant == "uniform-linear")
      return [=](const Jet2& s, const Jet2& t) { const Jet2 c = lin(s); return build(c, c, s, t); };
  }
  throw Error(ErrorKind::InvalidArgument, "unknown revolution variant '" + variant + "' for case " + std::to_string(which));
}

double interior_or_all_max_H(const SurfacePatch& p) {
  const GeneralCurvatures c = general_curvatures(p);
  return max_abs(c.H);
}

}  // namespace

NullCurvePair catenoid_curves() {
  return {curve_from_jet(catenoid_x), curve_from_jet([](const Jet2& v) {
            const JetVec x = catenoid_x(v);
            return JetVec{-x[0], -x[1], -x[2]};
          })};
}

SurfacePatch make_catenoid(const NullGrid& grid) {
  SurfacePatch p = sample_jets(
      [](const Jet2& u, const Jet2& v) {
        const JetVec y = catenoid_x(v);
        return catenoid_x(u) + JetVec{-y[0], -y[1], -y[2]};
      },
      grid, CoordinateKind::Null);
  p.metadata["name"] = "catenoid";
  return p;
}

SurfacePatch make_helicoid(const NullGrid& grid) {
  SurfacePatch p = sample_jets([](const Jet2& u, const Jet2& v) { return catenoid_x(u) + catenoid_x(v); }, grid,
                               CoordinateKind::Null);
  p.metadata["name"] = "helicoid";
  return p;
}

NullCurvePair enneper_curves(double eps) {
  if (eps != 1.0 && eps != -1.0) throw Error(ErrorKind::InvalidArgument, "eps must be +1 or -1");
  return {curve_from_jet([eps](const Jet2& u) { return enneper_x(eps, u); }), curve_from_jet(enneper_y)};
}

SurfacePatch make_enneper_cousin(double eps, const NullGrid& grid) {
  require_enneper(eps, grid);
  SurfacePatch p = sample_jets([eps](const Jet2& u, const Jet2& v) { return enneper_x(eps, u) + enneper_y(v); }, grid,
                               CoordinateKind::Null);
  p.metadata["name"] = "enneper-cousin";
  p.metadata["eps"] = eps > 0 ? "1" : "-1";
  return p;
}

SurfacePatch make_parabolic_null_cylinder(const NullGrid& grid) {
  SurfacePatch p = sample_jets(
      [](const Jet2& u, const Jet2& v) {
        const Jet2 u3 = u * u * u;
        return JetVec{0.5 * ((-1.0 / 3.0) * u3 - u + v), 0.5 * ((-1.0 / 3.0) * u3 + u + v), 0.5 * (u * u)};
      },
      grid, CoordinateKind::Null);
  p.metadata["name"] = "parabolic-null-cylinder";
  return p;
}

std::vector<std::string> revolution_variants(int which) {
  switch (which) {
    case 1: return {"literal", "sinh-profile", "cosh-profile"};
    case 2: return {"literal", "cosh-profile", "sinh-profile"};
    case 3: return {"literal", "cos-profile", "sin-profile"};
    case 4: return {"uniform-quadratic", "literal", "uniform-linear"};
    default: throw Error(ErrorKind::InvalidArgument, "revolution case must be 1..4");
  }
}

SurfacePatch make_revolution_variant(int which, const std::string& variant, double a, double b, const NullGrid& grid) {
  if (a == 0.0) throw Error(ErrorKind::InvalidArgument, "a must be nonzero");
  SurfacePatch p = sample_jets(revolution_formula(which, variant, a, b), grid, CoordinateKind::General);
  p.metadata["name"] = "revolution";
  p.metadata["case"] = std::to_string(which);
  p.metadata["variant"] = variant;
  return p;
}

SurfacePatch make_revolution_surface(int which, double a, double b, const NullGrid& grid) {
  grid.validate();
  if (a == 0.0) throw Error(ErrorKind::InvalidArgument, "a must be nonzero");
  const std::vector<std::string> variants = revolution_variants(which);
  if (which == 4) {
    for (std::size_t i = 0; i < grid.nu; ++i) {
      const double s = grid.u(i);
      if (!(-a * s * s + b > 0.0) && !(-a * a * s + b > 0.0)) {
        throw Error(ErrorKind::InvalidDomain, "cube-root arguments vanish or change sign at s=" + std::to_string(s),
                    ErrorSite{s, 0.0, -a * s * s + b});
      }
    }
  }
  const NullGrid probe = NullGrid::span(grid.u0, grid.u_end(), grid.v0, grid.v_end(), std::min<std::size_t>(grid.nu, 9),
                                        std::min<std::size_t>(grid.nv, 9));
  std::string reasons;
  for (const std::string& v : variants) {
    try {
      const SurfacePatch trial = make_revolution_variant(which, v, a, b, probe);
      const double h = interior_or_all_max_H(trial);
      if (std::isfinite(h) && h <= 1e-8) {
        SurfacePatch p = make_revolution_variant(which, v, a, b, grid);
        p.metadata["variants_tried"] = reasons.empty() ? "none" : reasons;
        return p;
      }
      reasons += (reasons.empty() ? "" : "; ") + v + ": max|H|=" + std::to_string(h);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateMetric) throw;
      reasons += (reasons.empty() ? "" : "; ") + v + ": degenerate";
    }
  }
  throw Error(ErrorKind::InvalidDomain, "no revolution variant is regular and minimal on the grid (" + reasons + ")");
}

std::vector<std::string> example_names() {
  return {"catenoid", "helicoid", "enneper-cousin", "parabolic-null-cylinder", "revolution"};
}

namespace {

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void require_known(const std::map<std::string, double>& params, std::initializer_list<const char*> known,
                   const std::string& name) {
  for (const auto& [k, v] : params) {
    if (std::none_of(known.begin(), known.end(), [&](const char* x) { return k == x; })) {
      throw Error(ErrorKind::InvalidArgument, "example '" + name + "' has no parameter '" + k + "'");
    }
  }
}

}  // namespace

NamedExample make_example(const std::string& name, const std::map<std::string, double>& params) {
  NamedExample ex;
  ex.name = name;
  if (name == "catenoid" || name == "helicoid") {
    require_known(params, {}, name);
    const bool cat = name == "catenoid";
    ex.generator = cat ? make_catenoid : make_helicoid;
    const double sign = cat ? 1.0 : -1.0;
    auto c = [](double u, double v) { return std::cosh(kSqrt2 * (u - v)) - 1.0; };
    ex.oracles = {{"eomega", [c, sign](double u, double v) { return sign * c(u, v); }},
                  {"Q", [sign](double, double) { return sign; }},
                  {"R", [](double, double) { return 1.0; }},
                  {"H", [](double, double) { return 0.0; }},
                  {"K", [c, sign](double u, double v) { return -4.0 * sign / (c(u, v) * c(u, v)); }}};
    ex.default_grid = NullGrid::span(0.25, 1.25, -1.25, -0.25, 51, 51);
  } else if (name == "enneper-cousin") {
    require_known(params, {"eps"}, name);
    const double eps = param(params, "eps", 1.0);
    if (eps != 1.0 && eps != -1.0) throw Error(ErrorKind::InvalidArgument, "eps must be +1 or -1");
    ex.parameters["eps"] = eps;
    ex.generator = [eps](const NullGrid& g) { return make_enneper_cousin(eps, g); };
    auto w = [eps](double u, double v) { return 1.0 + eps * u * v; };
    ex.oracles = {{"eomega", [w](double u, double v) { return w(u, v) * w(u, v); }},
                  {"Q", [eps](double, double) { return eps; }},
                  {"R", [](double, double) { return 1.0; }},
                  {"H", [](double, double) { return 0.0; }},
                  {"K", [w, eps](double u, double v) { return -4.0 * eps / std::pow(w(u, v), 4); }}};
    ex.default_grid = NullGrid::span(-0.5, 0.5, -0.5, 0.5, 51, 51);
  } else if (name == "parabolic-null-cylinder") {
    require_known(params, {}, name);
    ex.generator = make_parabolic_null_cylinder;
    ex.oracles = {{"eomega", [](double, double) { return 1.0; }},
                  {"Q", [](double, double) { return 1.0; }},
                  {"R", [](double, double) { return 0.0; }},
                  {"H", [](double, double) { return 0.0; }},
                  {"K", [](double, double) { return 0.0; }}};
    ex.default_grid = NullGrid::span(-0.5, 0.5, -0.5, 0.5, 51, 51);
  } else if (name == "revolution") {
    require_known(params, {"case", "a", "b"}, name);
    const double which_d = param(params, "case", 1.0);
    const int which = static_cast<int>(which_d);
    if (which_d != which || which < 1 || which > 4) throw Error(ErrorKind::InvalidArgument, "case must be 1..4");
    const double a = param(params, "a", 1.0);
    const double b = param(params, "b", which == 3 ? 0.0 : 1.0);
    ex.parameters = {{"case", which_d}, {"a", a}, {"b", b}};
    ex.generator = [which, a, b](const NullGrid& g) { return make_revolution_surface(which, a, b, g); };
    ex.oracles = {{"H", [](double, double) { return 0.0; }}};
    const double half = which == 3 ? 0.99 : 0.5;
    ex.default_grid = NullGrid::span(-half, half, -half, half, 51, 51);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown example '" + name + "'");
  }
  return ex;
}

}  // namespace tms
