#include "tmsurf/export.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "json.hpp"

namespace tms::cli {

std::string format_g17(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

NodeFields node_fields(const SurfacePatch& p) {
  NodeFields f;
  if (p.coordinates == CoordinateKind::Null) {
    const FundamentalData fd = second_fundamental(p);
    f.eomega = fd.eomega.values;
    f.Q = fd.Q.values;
    f.R = fd.R.values;
    f.H = fd.H.values;
    f.K = fd.K.values;
  } else {
    const GeneralCurvatures c = general_curvatures(p);
    const std::size_t n = p.grid().size();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    f.eomega.assign(n, nan);
    f.Q.assign(n, nan);
    f.R.assign(n, nan);
    f.H = c.H.values;
    f.K = c.K.values;
  }
  return f;
}

void write_obj(std::ostream& os, const SurfacePatch& p) {
  const NullGrid& g = p.grid();
  for (const Vec3M& x : p.points.values) {
    os << "v " << format_g17(x.x1) << ' ' << format_g17(x.x2) << ' ' << format_g17(x.x3) << '\n';
  }
  for (std::size_t i = 0; i + 1 < g.nu; ++i) {
    for (std::size_t j = 0; j + 1 < g.nv; ++j) {
      const std::size_t a = g.index(i, j) + 1, b = g.index(i + 1, j) + 1, c = g.index(i + 1, j + 1) + 1,
                        d = g.index(i, j + 1) + 1;
      os << "f " << a << ' ' << b << ' ' << c << '\n';
      os << "f " << a << ' ' << c << ' ' << d << '\n';
    }
  }
}

void write_csv(std::ostream& os, const SurfacePatch& p, const NodeFields& f) {
  const NullGrid& g = p.grid();
  os << "u,v,x1,x2,x3,eomega,Q,R,H,K\n";
  for (std::size_t i = 0; i < g.nu; ++i) {
    for (std::size_t j = 0; j < g.nv; ++j) {
      const std::size_t k = g.index(i, j);
      const Vec3M& x = p.points.values[k];
      os << format_g17(g.u(i)) << ',' << format_g17(g.v(j)) << ',' << format_g17(x.x1) << ',' << format_g17(x.x2) << ','
         << format_g17(x.x3) << ',' << format_g17(f.eomega[k]) << ',' << format_g17(f.Q[k]) << ',' << format_g17(f.R[k])
         << ',' << format_g17(f.H[k]) << ',' << format_g17(f.K[k]) << '\n';
    }
  }
}

void write_json(std::ostream& os, const SurfacePatch& p, const NodeFields& f, const std::string& surface) {
  const NullGrid& g = p.grid();
  auto num = [](double x) { return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x); };
  nlohmann::json j;
  j["surface"] = surface;
  j["grid"] = {{"u_range", {g.u0, g.u_end()}}, {"v_range", {g.v0, g.v_end()}}, {"nu", g.nu}, {"nv", g.nv}};
  j["metadata"] = p.metadata;
  j["columns"] = {"u", "v", "x1", "x2", "x3", "eomega", "Q", "R", "H", "K"};
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < g.nu; ++i) {
    for (std::size_t jj = 0; jj < g.nv; ++jj) {
      const std::size_t k = g.index(i, jj);
      const Vec3M& x = p.points.values[k];
      rows.push_back({g.u(i), g.v(jj), x.x1, x.x2, x.x3, num(f.eomega[k]), num(f.Q[k]), num(f.R[k]), num(f.H[k]),
                      num(f.K[k])});
    }
  }
  j["rows"] = std::move(rows);
  os << j.dump(2) << '\n';
}

}  // namespace tms::cli
