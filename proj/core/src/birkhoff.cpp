#include "tms/birkhoff.hpp"

#include <Eigen/Dense>
#include <string>

#include "tms/error.hpp"

namespace tms {

namespace {

double entry(const Mat2& m, int r, int c) {
  if (r == 0) return c == 0 ? m.a11 : m.a12;
  return c == 0 ? m.a21 : m.a22;
}

void set_entry(Mat2& m, int r, int c, double x) {
  if (r == 0) (c == 0 ? m.a11 : m.a12) = x;
  else (c == 0 ? m.a21 : m.a22) = x;
}

// Solves for m_1..m_D in gamma_-^{-1} = 1 + sum m_k lambda^{-k} so that gamma_-^{-1} g has no
// negative exponents. Each row of the m_k decouples into its own least-squares problem.
BirkhoffResult minus_first(const LaurentLoop& g, int degree, const BirkhoffOptions& opts) {
  const int kmin = g.kmin();
  const int kmax = g.kmax();
  BirkhoffResult out;
  LaurentLoop inv = LaurentLoop::identity();

  if (kmin < 0) {
    const int e_lo = kmin - degree;
    const int n_eq = -e_lo;  // exponents e_lo .. -1
    const int n_unk = 2 * degree;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n_eq, n_unk);
    for (int e = e_lo; e <= -1; ++e) {
      const int row = 2 * (e - e_lo);
      for (int k = 1; k <= degree; ++k) {
        const Mat2 c = g.coeff(e + k);
        // (x_0, x_1) * c contributes (x_0 c_00 + x_1 c_10, x_0 c_01 + x_1 c_11).
        for (int col = 0; col < 2; ++col) {
          A(row + col, 2 * (k - 1) + 0) = entry(c, 0, col);
          A(row + col, 2 * (k - 1) + 1) = entry(c, 1, col);
        }
      }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-12);
    if (qr.rank() < n_unk) {
      throw Error(ErrorKind::OutsideBigCell, "rank-deficient Birkhoff system (rank " + std::to_string(qr.rank()) +
                                             " of " + std::to_string(n_unk) + "); loop has a middle term");
    }
    for (int r = 0; r < 2; ++r) {
      Eigen::VectorXd b(2 * n_eq);
      for (int e = e_lo; e <= -1; ++e) {
        const Mat2 c = g.coeff(e);
        for (int col = 0; col < 2; ++col) b(2 * (e - e_lo) + col) = -entry(c, r, col);
      }
      const Eigen::VectorXd x = qr.solve(b);
      for (int k = 1; k <= degree; ++k) {
        Mat2 m = inv.coeff(-k);
        set_entry(m, r, 0, x(2 * (k - 1)));
        set_entry(m, r, 1, x(2 * (k - 1) + 1));
        inv.set(-k, m);
      }
    }
  }

  out.factor2 = (inv * g).slice(0, kmax).trimmed(opts.trim);
  out.factor1 = inv.adjugate().trimmed(opts.trim);
  out.residual = coefficient_distance(g, out.factor1 * out.factor2);
  return out;
}

}  // namespace

BirkhoffResult birkhoff_factorize(const LaurentLoop& g, BirkhoffOrder order, int degree, const BirkhoffOptions& opts) {
  if (g.empty()) throw Error(ErrorKind::InvalidArgument, "cannot factorize the zero loop");
  if (degree < g.kmax() - g.kmin()) {
    throw Error(ErrorKind::InvalidArgument, "degree " + std::to_string(degree) + " < kmax - kmin = " +
                                                std::to_string(g.kmax() - g.kmin()));
  }
  const double det_dev = unimodularity_residual(g, {0.5, 0.75, 1.0, 1.5, 2.0});
  if (det_dev > 1e-8 * (1.0 + g.max_abs())) {
    throw Error(ErrorKind::NonUnimodular, "det g(lambda) deviates from 1 by " + std::to_string(det_dev));
  }

  BirkhoffResult r;
  if (order == BirkhoffOrder::MinusFirst) {
    r = minus_first(g, degree, opts);
  } else {
    // g^T = gamma_-' l_+'  gives  g = (l_+')^T (gamma_-')^T.
    const BirkhoffResult t = minus_first(g.transpose(), degree, opts);
    r.factor1 = t.factor2.transpose();
    r.factor2 = t.factor1.transpose();
    r.residual = coefficient_distance(g, r.factor1 * r.factor2);
  }
  const double tol = opts.tolerance * (1.0 + g.max_abs());
  if (!(r.residual <= tol)) {
    throw Error(ErrorKind::OutsideBigCell,
                "factorization residual " + std::to_string(r.residual) + " exceeds " + std::to_string(tol));
  }
  return r;
}

}  // namespace tms
