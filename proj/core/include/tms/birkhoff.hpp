#pragma once

/// Numeric Birkhoff factorization of Mat2-valued Laurent polynomials on the big cell.

#include "tms/laurent_loop.hpp"

namespace tms {

enum class BirkhoffOrder {
  MinusFirst,  // g = gamma_- * l_+  ("mp")
  PlusFirst,   // g = l_+ * gamma_-  ("pm")
};

struct BirkhoffResult {
  LaurentLoop factor1;
  LaurentLoop factor2;
  double residual = 0.0;  // max coefficient norm of g - factor1 * factor2
};

struct BirkhoffOptions {
  /// Accepted residual relative to 1 + max |g|.
  double tolerance = 1e-8;
  /// Coefficients below this size are dropped from the returned factors.
  double trim = 1e-14;
};

/// The minus factor has exponents in [-degree, 0] and constant term 1; the plus factor has
/// exponents >= 0 and carries the constant diagonal freedom. Throws Error(InvalidArgument)
/// for degree < kmax - kmin, Error(NonUnimodular) when g is not unimodular on sample lambdas,
/// and Error(OutsideBigCell) when the linear system is rank deficient or the residual exceeds
/// the tolerance.
BirkhoffResult birkhoff_factorize(const LaurentLoop& g, BirkhoffOrder order, int degree,
                                  const BirkhoffOptions& opts = {});

}  // namespace tms
