#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tms {

enum class ErrorKind {
  NonUnimodular,
  PoleSingular,
  UnprojectSingular,
  InvalidGrid,
  GridTooSmall,
  GridMismatch,
  NotHarmonic,
  DegenerateAcceleration,
  DegenerateMetric,
  NotIntegrable,
  PathInconsistent,
  RangeExcludesOrigin,
  OutsideBigCell,
  NotIsothermic,
  NotNormalizedGauge,
  InvalidDomain,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Location of the first grid node (or curve sample) that violated a
/// precondition, together with the offending quantity.
struct ErrorSite {
  double u = 0.0;
  double v = 0.0;
  double value = 0.0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<ErrorSite> site = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), site_(site) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<ErrorSite>& site() const noexcept { return site_; }

 private:
  ErrorKind kind_;
  std::optional<ErrorSite> site_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonUnimodular: return "NonUnimodular";
    case ErrorKind::PoleSingular: return "PoleSingular";
    case ErrorKind::UnprojectSingular: return "UnprojectSingular";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::NotHarmonic: return "NotHarmonic";
    case ErrorKind::DegenerateAcceleration: return "DegenerateAcceleration";
    case ErrorKind::DegenerateMetric: return "DegenerateMetric";
    case ErrorKind::NotIntegrable: return "NotIntegrable";
    case ErrorKind::PathInconsistent: return "PathInconsistent";
    case ErrorKind::RangeExcludesOrigin: return "RangeExcludesOrigin";
    case ErrorKind::OutsideBigCell: return "OutsideBigCell";
    case ErrorKind::NotIsothermic: return "NotIsothermic";
    case ErrorKind::NotNormalizedGauge: return "NotNormalizedGauge";
    case ErrorKind::InvalidDomain: return "InvalidDomain";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace tms
