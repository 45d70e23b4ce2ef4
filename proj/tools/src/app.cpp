#include "tmsurf/app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tms/birkhoff.hpp"
#include "tms/gallery.hpp"
#include "tms/laurent_loop.hpp"
#include "tms/loop_weierstrass.hpp"
#include "tms/surface_geometry.hpp"
#include "tmsurf/export.hpp"
#include "tmsurf/expr.hpp"
#include "tmsurf/tolerances.hpp"

namespace tms::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Range {
  double lo = -0.5;
  double hi = 0.5;
};

Range parse_range(const std::string& text, const std::string& flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError(flag + " expects a:b, got '" + text + "'");
  Range r;
  try {
    std::size_t n1 = 0, n2 = 0;
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    r.lo = std::stod(a, &n1);
    r.hi = std::stod(b, &n2);
    if (n1 != a.size() || n2 != b.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw UsageError(flag + " expects a:b, got '" + text + "'");
  }
  if (!(r.hi > r.lo)) throw UsageError(flag + " needs a < b");
  return r;
}

std::pair<double, double> parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--at expects u,v");
  try {
    std::size_t n1 = 0, n2 = 0;
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    const double u = std::stod(a, &n1), v = std::stod(b, &n2);
    if (n1 != a.size() || n2 != b.size()) throw std::invalid_argument("trailing characters");
    return {u, v};
  } catch (const std::exception&) {
    throw UsageError("--at expects u,v, got '" + text + "'");
  }
}

RealFn as_fn(const Expr& e) {
  return [e](double x) { return e(x); };
}

Expr parse_flag(const std::string& text, char var, const std::string& flag) {
  try {
    return parse_potential(text, var);
  } catch (const ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

struct SourceOptions {
  std::string example;
  std::optional<double> eps, which, a, b;
  std::string q, r, p1, p2;
  std::optional<double> lambda;
  bool conjugate = false;
  std::string u_range, v_range;
  std::size_t nu = 51, nv = 51;
  std::optional<double> perturb;

  void add_to(CLI::App* app) {
    app->add_option("--example", example, "gallery example name")
        ->check(CLI::IsMember(example_names()));
    app->add_option("--eps", eps, "enneper-cousin sign (+1 or -1)");
    app->add_option("--case", which, "revolution case 1..4");
    app->add_option("--a", a, "revolution parameter a");
    app->add_option("--b", b, "revolution parameter b");
    app->add_option("--q", q, "primitive q(u)");
    app->add_option("--r", r, "primitive r(v)");
    app->add_option("--p1", p1, "potential p'(u), integrated from 0");
    app->add_option("--p2", p2, "potential p''(v), integrated from 0");
    app->add_option("--lambda", lambda, "associated family parameter (> 0)");
    app->add_flag("--conjugate", conjugate, "conjugate surface X - Y");
    app->add_option("--u-range", u_range, "u range a:b");
    app->add_option("--v-range", v_range, "v range a:b");
    app->add_option("--nu", nu, "samples along u")->check(CLI::Range(std::size_t{3}, std::size_t{100000}));
    app->add_option("--nv", nv, "samples along v")->check(CLI::Range(std::size_t{3}, std::size_t{100000}));
    app->add_option("--perturb", perturb, "test flag: add deterministic noise of this size to the points");
  }
};

struct Source {
  SurfacePatch patch;
  std::string id;
};

Potential potential_from(const SourceOptions& o, std::string& id) {
  const bool prim = !o.q.empty() || !o.r.empty();
  const bool deriv = !o.p1.empty() || !o.p2.empty();
  if (prim && deriv) throw UsageError("use either --q/--r or --p1/--p2");
  if (prim) {
    if (o.q.empty() || o.r.empty()) throw UsageError("--q and --r must be given together");
    const Expr q = parse_flag(o.q, 'u', "--q");
    const Expr r = parse_flag(o.r, 'v', "--r");
    id = "potential:q=" + q.to_string() + ";r=" + r.to_string();
    return Potential::from_primitives(as_fn(q), as_fn(q.derivative()), as_fn(r), as_fn(r.derivative()));
  }
  if (o.p1.empty() || o.p2.empty()) throw UsageError("--p1 and --p2 must be given together");
  const Expr p1 = parse_flag(o.p1, 'u', "--p1");
  const Expr p2 = parse_flag(o.p2, 'v', "--p2");
  id = "potential:p1=" + p1.to_string() + ";p2=" + p2.to_string();
  return Potential::from_derivatives(as_fn(p1), as_fn(p2));
}

void perturb(SurfacePatch& p, double size) {
  std::mt19937_64 rng(20240229);
  std::uniform_real_distribution<double> d(-size, size);
  for (Vec3M& x : p.points.values) {
    x.x1 += d(rng);
    x.x2 += d(rng);
    x.x3 += d(rng);
  }
  p.jets.reset();
  p.metadata["perturbed"] = format_g17(size);
}

Source build_source(const SourceOptions& o) {
  const bool has_example = !o.example.empty();
  const bool has_potential = !o.q.empty() || !o.r.empty() || !o.p1.empty() || !o.p2.empty();
  if (has_example == has_potential) throw UsageError("give exactly one of --example or a potential (--q/--r or --p1/--p2)");
  if (o.lambda && !(*o.lambda > 0.0)) throw UsageError("--lambda must be positive");
  if (o.lambda && o.conjugate) throw UsageError("--lambda and --conjugate are exclusive");

  Source s;
  std::optional<NullCurvePair> curves;
  Range ur, vr;
  std::function<SurfacePatch(const NullGrid&)> generator;

  if (has_example) {
    std::map<std::string, double> params;
    if (o.eps) params["eps"] = *o.eps;
    if (o.which) params["case"] = *o.which;
    if (o.a) params["a"] = *o.a;
    if (o.b) params["b"] = *o.b;
    const NamedExample ex = make_example(o.example, params);
    s.id = "example:" + ex.name;
    for (const auto& [k, v] : ex.parameters) s.id += ";" + k + "=" + format_g17(v);
    ur = {ex.default_grid.u0, ex.default_grid.u_end()};
    vr = {ex.default_grid.v0, ex.default_grid.v_end()};
    generator = ex.generator;
    if (o.lambda || o.conjugate) {
      if (ex.name == "catenoid") curves = catenoid_curves();
      else if (ex.name == "enneper-cousin") curves = enneper_curves(ex.parameters.at("eps"));
      else if (ex.name == "parabolic-null-cylinder")
        curves = weierstrass_curves(Potential::from_primitives([](double u) { return u; }, [](double) { return 1.0; },
                                                               [](double) { return 0.0; }, [](double) { return 0.0; }));
      else throw UsageError("--lambda/--conjugate need a null-coordinate example built from null curves");
    }
  } else {
    const Potential pot = potential_from(o, s.id);
    generator = [pot](const NullGrid& g) { return weierstrass_immersion(pot, g); };
    if (o.lambda || o.conjugate) curves = weierstrass_curves(pot);
  }

  if (!o.u_range.empty()) ur = parse_range(o.u_range, "--u-range");
  if (!o.v_range.empty()) vr = parse_range(o.v_range, "--v-range");
  const NullGrid grid = NullGrid::span(ur.lo, ur.hi, vr.lo, vr.hi, o.nu, o.nv);

  if (o.lambda) {
    s.patch = associated_family(*curves, *o.lambda, grid);
    s.id += ";lambda=" + format_g17(*o.lambda);
  } else if (o.conjugate) {
    s.patch = conjugate_surface(*curves, grid);
    s.id += ";conjugate";
  } else {
    s.patch = generator(grid);
  }
  if (o.perturb) {
    if (!(*o.perturb >= 0.0)) throw UsageError("--perturb must be nonnegative");
    perturb(s.patch, *o.perturb);
  }
  return s;
}

std::unique_ptr<std::ostream> open_output(const std::string& path, std::ostream& out, std::ofstream& file) {
  if (path.empty() || path == "-") return std::make_unique<std::ostream>(out.rdbuf());
  file.open(path, std::ios::out | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  return std::make_unique<std::ostream>(file.rdbuf());
}

void finish_output(std::ostream& os, std::ofstream& file, const std::string& path) {
  os.flush();
  if (file.is_open()) file.close();
  if (!os || (file.fail() && !path.empty())) throw IoError("write to '" + path + "' failed");
}

int cmd_generate(const SourceOptions& so, const std::string& format, const std::string& out_path, std::ostream& out) {
  Source s = build_source(so);
  std::ofstream file;
  auto os = open_output(out_path, out, file);
  if (format == "obj") {
    write_obj(*os, s.patch);
  } else {
    const NodeFields f = node_fields(s.patch);
    if (format == "csv") write_csv(*os, s.patch, f);
    else write_json(*os, s.patch, f, s.id);
  }
  finish_output(*os, file, out_path);
  return kExitOk;
}

struct Check {
  std::string name;
  double residual;
  DerivativeMode mode;
};

int cmd_validate(const SourceOptions& so, const std::string& tol_path, const std::string& out_path, std::ostream& out) {
  ToleranceTable tol = ToleranceTable::defaults();
  if (!tol_path.empty()) {
    std::ifstream in(tol_path);
    if (!in) throw IoError("cannot read tolerance file '" + tol_path + "'");
    try {
      tol.load(in);
    } catch (const std::invalid_argument& e) {
      throw UsageError(tol_path + ": " + e.what());
    }
  }

  const Source s = build_source(so);
  const SurfacePatch& p = s.patch;
  std::vector<Check> checks;
  std::vector<std::string> skipped;
  std::map<std::string, std::string> errors;
  bool domain_error = false;
  // Runs one group of checks; an Error marks every residual of the group as failed.
  auto group = [&](std::initializer_list<const char*> names, const std::function<void()>& body) {
    try {
      body();
    } catch (const Error& e) {
      domain_error = domain_error || exit_code_for(e.kind()) == kExitDomain;
      for (const char* n : names) {
        checks.push_back({n, std::numeric_limits<double>::quiet_NaN(), DerivativeMode::FiniteDifference});
        errors[n] = e.what();
      }
    }
  };

  DerivativeMode mode = p.jets ? DerivativeMode::Analytic : DerivativeMode::FiniteDifference;
  if (p.coordinates == CoordinateKind::Null) {
    group({"conformality_u", "conformality_v"}, [&] {
      const FirstFundamental ff = first_fundamental(p);
      checks.push_back({"conformality_u", ff.conformality_u, ff.mode});
      checks.push_back({"conformality_v", ff.conformality_v, ff.mode});
    });
  } else {
    skipped = {"conformality_u", "conformality_v", "gauss_eq", "codazzi_u", "codazzi_v"};
  }
  group({"mean_curvature"}, [&] {
    const MeanCurvatureCheck mh = mean_curvature_residual(p);
    mode = mh.mode;
    checks.push_back({"mean_curvature", mh.max_abs_H, mh.mode});
  });
  if (p.coordinates == CoordinateKind::Null) {
    group({"gauss_eq", "codazzi_u", "codazzi_v"}, [&] {
      const GaussCodazziResiduals gc = gauss_codazzi_residuals(second_fundamental(p));
      checks.push_back({"gauss_eq", gc.gauss, DerivativeMode::FiniteDifference});
      checks.push_back({"codazzi_u", gc.codazzi_u, DerivativeMode::FiniteDifference});
      checks.push_back({"codazzi_v", gc.codazzi_v, DerivativeMode::FiniteDifference});
    });
  }
  group({"gauss_harmonic", "gauss_conformal"}, [&] {
    const GaussMapResult gm = gauss_map(p);
    checks.push_back({"gauss_harmonic", gm.harmonic_residual, DerivativeMode::FiniteDifference});
    checks.push_back({"gauss_conformal", gm.conformality_residual, DerivativeMode::FiniteDifference});
  });

  const NullGrid& g = p.grid();
  json report;
  report["surface"] = s.id;
  report["grid"] = {{"u_range", {g.u0, g.u_end()}}, {"v_range", {g.v0, g.v_end()}}, {"nu", g.nu}, {"nv", g.nv}};
  report["coordinates"] = p.coordinates == CoordinateKind::Null ? "null" : "general";
  report["derivative_mode"] = to_string(mode);
  report["metadata"] = p.metadata;
  bool all = true;
  for (const Check& c : checks) {
    const double t = tol.get(c.name, c.mode);
    const bool ok = std::isfinite(c.residual) && c.residual <= t;
    all = all && ok;
    report["residuals"][c.name] = std::isfinite(c.residual) ? json(c.residual) : json(nullptr);
    report["tolerances"][c.name] = {{"key", tol.key_for(c.name, c.mode)}, {"value", t}};
    report["modes"][c.name] = to_string(c.mode);
    report["pass"][c.name] = ok;
  }
  report["not_applicable"] = skipped;
  report["errors"] = errors;
  report["passed"] = all;

  std::ofstream file;
  auto os = open_output(out_path, out, file);
  *os << report.dump(2) << '\n';
  finish_output(*os, file, out_path);
  if (domain_error) return kExitDomain;
  return all ? kExitOk : kExitFailure;
}

std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x + 0.0);
  return buf;
}

std::string mat_text(const Mat2& m) {
  return "[[" + fmt15(m.a11) + ", " + fmt15(m.a12) + "], [" + fmt15(m.a21) + ", " + fmt15(m.a22) + "]]";
}

json mat_json(const Mat2& m) { return {{m.a11 + 0.0, m.a12 + 0.0}, {m.a21 + 0.0, m.a22 + 0.0}}; }

json loop_json(const LaurentLoop& l) {
  json c = json::object();
  for (const auto& [k, m] : l.terms()) c[std::to_string(k)] = mat_json(m);
  return {{"coeffs", c}};
}

LaurentLoop loop_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_object()) throw UsageError("loop file needs a \"coeffs\" object");
  LaurentLoop l;
  for (const auto& [key, val] : j["coeffs"].items()) {
    int k = 0;
    std::size_t used = 0;
    try {
      k = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != key.size()) throw UsageError("bad exponent key '" + key + "'");
    if (!val.is_array() || val.size() != 2 || !val[0].is_array() || !val[1].is_array() || val[0].size() != 2 ||
        val[1].size() != 2) {
      throw UsageError("coefficient " + key + " must be [[a,b],[c,d]]");
    }
    double e[4];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        if (!val[r][c].is_number()) throw UsageError("coefficient " + key + " has a non-numeric entry");
        e[2 * r + c] = val[r][c].get<double>();
      }
    l.add(k, Mat2{e[0], e[1], e[2], e[3]});
  }
  return l;
}

int cmd_frames(const std::string& qs, const std::string& rs, const std::string& at, double lambda, const std::string& format,
               const std::string& loop_out, std::ostream& out) {
  if (qs.empty() || rs.empty()) throw UsageError("frames needs --q and --r");
  if (lambda == 0.0 || !std::isfinite(lambda)) throw UsageError("--lambda must be a nonzero number");
  const Expr q = parse_flag(qs, 'u', "--q");
  const Expr r = parse_flag(rs, 'v', "--r");
  const auto [u, v] = parse_point(at);
  const double qv = q(u), rv = r(v);
  const IwasawaSplitting sp = explicit_iwasawa(qv, rv, lambda);
  const Mat2 lm = sp.Lminus_inv(lambda), lp = sp.Lplus_inv(lambda);
  const Mat2 d1 = holomorphic_frame_u(qv, lambda) - sp.Phi * lm;
  const Mat2 d2 = holomorphic_frame_v(rv, lambda) - sp.Phi * lp;
  const double residual = std::max(d1.max_abs(), d2.max_abs());
  const Vec3M n = gauss_map_family(qv, rv, lambda);
  // Phi''^{-1} Phi' as a loop.
  const LaurentLoop g = LaurentLoop{{-1, Mat2{0.0, rv, 0.0, 0.0}}, {0, Mat2::identity()}} *
                        LaurentLoop{{0, Mat2::identity()}, {1, Mat2{0.0, 0.0, qv, 0.0}}};

  if (format == "json") {
    json j;
    j["point"] = {u, v};
    j["lambda"] = lambda;
    j["q"] = qv;
    j["r"] = rv;
    j["Phi"] = mat_json(sp.Phi);
    j["Lminus_inv"] = mat_json(lm);
    j["Lplus_inv"] = mat_json(lp);
    j["Lminus_inv_loop"] = loop_json(sp.Lminus_inv);
    j["Lplus_inv_loop"] = loop_json(sp.Lplus_inv);
    j["N"] = {n.x1, n.x2, n.x3};
    j["residual"] = residual;
    out << j.dump(2) << '\n';
  } else {
    out << "u = " << fmt15(u) << ", v = " << fmt15(v) << ", lambda = " << fmt15(lambda) << '\n';
    out << "q = " << fmt15(qv) << ", r = " << fmt15(rv) << '\n';
    out << "Phi = " << mat_text(sp.Phi) << '\n';
    out << "Lminus_inv = " << mat_text(lm) << '\n';
    out << "Lplus_inv = " << mat_text(lp) << '\n';
    out << "N = (" << fmt15(n.x1) << ", " << fmt15(n.x2) << ", " << fmt15(n.x3) << ")\n";
    out << "residual = " << fmt15(residual) << '\n';
  }
  if (!loop_out.empty()) {
    std::ofstream f(loop_out);
    if (!f) throw IoError("cannot open '" + loop_out + "' for writing");
    f << loop_json(g).dump(2) << '\n';
    f.close();
    if (f.fail()) throw IoError("write to '" + loop_out + "' failed");
  }
  return kExitOk;
}

int cmd_factorize(const std::string& path, const std::string& order, int degree, const std::string& out_path,
                  std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read loop file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError(path + ": malformed JSON (" + e.what() + ")");
  }
  const LaurentLoop g = loop_from_json(j);
  const BirkhoffOrder o = order == "mp" ? BirkhoffOrder::MinusFirst : BirkhoffOrder::PlusFirst;
  BirkhoffResult res;
  try {
    res = birkhoff_factorize(g, o, degree);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) throw UsageError(e.what());
    throw;
  }
  json r;
  r["order"] = order;
  r["degree"] = degree;
  const LaurentLoop& minus = o == BirkhoffOrder::MinusFirst ? res.factor1 : res.factor2;
  const LaurentLoop& plus = o == BirkhoffOrder::MinusFirst ? res.factor2 : res.factor1;
  r["factor1"] = loop_json(res.factor1);
  r["factor2"] = loop_json(res.factor2);
  r["minus"] = loop_json(minus);
  r["plus"] = loop_json(plus);
  r["residual"] = res.residual;
  std::ofstream file;
  auto os = open_output(out_path, out, file);
  *os << r.dump(2) << '\n';
  finish_output(*os, file, out_path);
  return kExitOk;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidGrid:
    case ErrorKind::GridTooSmall:
    case ErrorKind::GridMismatch:
    case ErrorKind::InvalidArgument: return kExitUsage;
    case ErrorKind::NonUnimodular:
    case ErrorKind::PoleSingular:
    case ErrorKind::UnprojectSingular:
    case ErrorKind::DegenerateMetric:
    case ErrorKind::RangeExcludesOrigin:
    case ErrorKind::OutsideBigCell:
    case ErrorKind::InvalidDomain: return kExitDomain;
    default: return kExitFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Timelike minimal surfaces in Minkowski 3-space", "tmsurf"};
  app.require_subcommand(1);

  SourceOptions gen_src;
  std::string gen_format = "obj", gen_out;
  auto* gen = app.add_subcommand("generate", "sample a surface and write OBJ, CSV or JSON");
  gen_src.add_to(gen);
  gen->add_option("--format", gen_format, "obj | csv | json")->check(CLI::IsMember({"obj", "csv", "json"}));
  gen->add_option("--out", gen_out, "output file (default stdout)");

  SourceOptions val_src;
  std::string val_tol, val_out;
  auto* val = app.add_subcommand("validate", "emit a JSON validation report; exit 0 iff all checks pass");
  val_src.add_to(val);
  val->add_option("--tolerances", val_tol, "key = value tolerance file");
  val->add_option("--out", val_out, "report file (default stdout)");

  std::string fr_q, fr_r, fr_at = "0,0", fr_format = "text", fr_loop;
  double fr_lambda = 1.0;
  auto* fr = app.add_subcommand("frames", "print the Iwasawa splitting and Gauss map at a point");
  fr->add_option("--q", fr_q, "primitive q(u)")->required();
  fr->add_option("--r", fr_r, "primitive r(v)")->required();
  fr->add_option("--at", fr_at, "point u,v");
  fr->add_option("--lambda", fr_lambda, "spectral parameter");
  fr->add_option("--format", fr_format, "text | json")->check(CLI::IsMember({"text", "json"}));
  fr->add_option("--loop-out", fr_loop, "write the loop Phi''^{-1} Phi' as JSON");

  std::string fa_loop, fa_order = "mp", fa_out;
  int fa_degree = 4;
  auto* fa = app.add_subcommand("factorize", "Birkhoff-factorize a Laurent loop read from JSON");
  fa->add_option("--loop", fa_loop, "loop file {\"coeffs\": {\"k\": [[a,b],[c,d]]}}")->required();
  fa->add_option("--order", fa_order, "mp | pm")->check(CLI::IsMember({"mp", "pm"}));
  fa->add_option("--degree", fa_degree, "degree bound of the minus factor");
  fa->add_option("--out", fa_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    const int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(gen_src, gen_format, gen_out, out);
    if (*val) return cmd_validate(val_src, val_tol, val_out, out);
    if (*fr) return cmd_frames(fr_q, fr_r, fr_at, fr_lambda, fr_format, fr_loop, out);
    if (*fa) return cmd_factorize(fa_loop, fa_order, fa_degree, fa_out, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace tms::cli
