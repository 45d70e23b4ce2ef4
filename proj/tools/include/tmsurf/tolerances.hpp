#pragma once

/// Validation thresholds: a flat `key = value` table with `#` comments. A key with the
/// suffix ".fd" applies when the residual was computed with finite differences.

#include <iosfwd>
#include <map>
#include <string>

#include "tms/surface_geometry.hpp"

namespace tms::cli {

class ToleranceTable {
 public:
  static ToleranceTable defaults();

  /// Overrides entries from a stream. Throws std::invalid_argument on malformed lines or
  /// unknown keys.
  void load(std::istream& in);

  double get(const std::string& residual, DerivativeMode mode) const;
  std::string key_for(const std::string& residual, DerivativeMode mode) const;
  const std::map<std::string, double>& entries() const { return values_; }

 private:
  std::map<std::string, double> values_;
};

}  // namespace tms::cli
