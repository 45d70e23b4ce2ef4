#pragma once

/// Mat2-valued Laurent polynomials sum_k c_k lambda^k in the spectral parameter.

#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "tms/minkowski_algebra.hpp"

namespace tms {

class LaurentLoop {
 public:
  LaurentLoop() = default;
  LaurentLoop(std::initializer_list<std::pair<const int, Mat2>> terms);

  static LaurentLoop identity();
  static LaurentLoop constant(const Mat2& m);
  static LaurentLoop monomial(int k, const Mat2& m);

  /// Coefficient of lambda^k (zero when absent).
  Mat2 coeff(int k) const;
  void set(int k, const Mat2& m);
  void add(int k, const Mat2& m);

  const std::map<int, Mat2>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// Smallest and largest exponent carrying a coefficient (0, 0 for the zero loop).
  int kmin() const;
  int kmax() const;

  Mat2 operator()(double lambda) const;

  LaurentLoop operator+(const LaurentLoop& o) const;
  LaurentLoop operator-(const LaurentLoop& o) const;
  LaurentLoop operator*(const LaurentLoop& o) const;
  LaurentLoop transpose() const;
  LaurentLoop adjugate() const;
  /// Drops coefficients whose largest entry is <= tol.
  LaurentLoop trimmed(double tol = 0.0) const;

  /// Largest coefficient entry.
  double max_abs() const;
  /// Only exponents in [lo, hi].
  LaurentLoop slice(int lo, int hi) const;

 private:
  std::map<int, Mat2> terms_;
};

/// max_k |a_k - b_k| over all exponents.
double coefficient_distance(const LaurentLoop& a, const LaurentLoop& b);

/// Max |det g(lambda) - 1| over the given sample values.
double unimodularity_residual(const LaurentLoop& g, const std::vector<double>& lambdas);

/// Twisted-loop defect: max |Ad(k') g(lambda) - g(-lambda)| over the samples, where
/// Ad(k') flips the off-diagonal entries.
double twist_residual(const LaurentLoop& g, const std::vector<double>& lambdas);

}  // namespace tms
