#include "tmsurf/tolerances.hpp"

#include <charconv>
#include <istream>
#include <stdexcept>

namespace tms::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ToleranceTable ToleranceTable::defaults() {
  ToleranceTable t;
  t.values_ = {
      {"conformality_u", 1e-8},  {"conformality_u.fd", 1e-5}, {"conformality_v", 1e-8},
      {"conformality_v.fd", 1e-5}, {"mean_curvature", 1e-9},  {"mean_curvature.fd", 1e-5},
      {"gauss_eq", 1e-3},        {"codazzi_u", 1e-3},         {"codazzi_v", 1e-3},
      {"gauss_harmonic", 1e-2},  {"gauss_conformal", 1e-3},
  };
  return t;
}

void ToleranceTable::load(std::istream& in) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!values_.count(key)) throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    double x = 0.0;
    const auto res = std::from_chars(val.data(), val.data() + val.size(), x);
    if (val.empty() || res.ec != std::errc() || res.ptr != val.data() + val.size() || !(x >= 0.0)) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": bad value '" + val + "'");
    }
    values_[key] = x;
  }
}

std::string ToleranceTable::key_for(const std::string& residual, DerivativeMode mode) const {
  if (mode == DerivativeMode::FiniteDifference && values_.count(residual + ".fd")) return residual + ".fd";
  return residual;
}

double ToleranceTable::get(const std::string& residual, DerivativeMode mode) const {
  const auto it = values_.find(key_for(residual, mode));
  if (it == values_.end()) throw std::invalid_argument("no tolerance for '" + residual + "'");
  return it->second;
}

}  // namespace tms::cli
