#pragma once

/// Mesh and table writers for sampled patches.

#include <iosfwd>
#include <string>
#include <vector>

#include "tms/surface_geometry.hpp"

namespace tms::cli {

/// Per-node eomega, Q, R, H, K. General-coordinate patches have no null-coordinate
/// eomega, Q, R; those columns are NaN and H, K come from the general formulas.
struct NodeFields {
  std::vector<double> eomega, Q, R, H, K;
};
NodeFields node_fields(const SurfacePatch& p);

/// ASCII OBJ: nu*nv `v` records (row-major) and 2(nu-1)(nv-1) triangular `f` records.
void write_obj(std::ostream& os, const SurfacePatch& p);

/// Header u,v,x1,x2,x3,eomega,Q,R,H,K, row-major, 17 significant digits.
void write_csv(std::ostream& os, const SurfacePatch& p, const NodeFields& f);

/// {"grid": ..., "columns": [...], "rows": [[...], ...]} with the CSV columns.
void write_json(std::ostream& os, const SurfacePatch& p, const NodeFields& f, const std::string& surface);

std::string format_g17(double x);

}  // namespace tms::cli
