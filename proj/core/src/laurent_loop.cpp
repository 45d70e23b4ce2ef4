#include "tms/laurent_loop.hpp"

#include <algorithm>
#include <cmath>

namespace tms {

LaurentLoop::LaurentLoop(std::initializer_list<std::pair<const int, Mat2>> terms) : terms_(terms) {}

LaurentLoop LaurentLoop::identity() { return constant(Mat2::identity()); }

LaurentLoop LaurentLoop::constant(const Mat2& m) { return monomial(0, m); }

LaurentLoop LaurentLoop::monomial(int k, const Mat2& m) {
  LaurentLoop l;
  l.terms_[k] = m;
  return l;
}

Mat2 LaurentLoop::coeff(int k) const {
  const auto it = terms_.find(k);
  return it == terms_.end() ? Mat2::zero() : it->second;
}

void LaurentLoop::set(int k, const Mat2& m) { terms_[k] = m; }

void LaurentLoop::add(int k, const Mat2& m) { terms_[k] += m; }

int LaurentLoop::kmin() const { return terms_.empty() ? 0 : terms_.begin()->first; }

int LaurentLoop::kmax() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

Mat2 LaurentLoop::operator()(double lambda) const {
  Mat2 out = Mat2::zero();
  for (const auto& [k, c] : terms_) out += c * std::pow(lambda, k);
  return out;
}

LaurentLoop LaurentLoop::operator+(const LaurentLoop& o) const {
  LaurentLoop out = *this;
  for (const auto& [k, c] : o.terms_) out.add(k, c);
  return out;
}

LaurentLoop LaurentLoop::operator-(const LaurentLoop& o) const {
  LaurentLoop out = *this;
  for (const auto& [k, c] : o.terms_) out.add(k, -c);
  return out;
}

LaurentLoop LaurentLoop::operator*(const LaurentLoop& o) const {
  LaurentLoop out;
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) out.add(a + b, ca * cb);
  return out;
}

LaurentLoop LaurentLoop::transpose() const {
  LaurentLoop out;
  for (const auto& [k, c] : terms_) out.terms_[k] = c.transpose();
  return out;
}

LaurentLoop LaurentLoop::adjugate() const {
  LaurentLoop out;
  for (const auto& [k, c] : terms_) out.terms_[k] = c.adjugate();
  return out;
}

LaurentLoop LaurentLoop::trimmed(double tol) const {
  LaurentLoop out;
  for (const auto& [k, c] : terms_) {
    if (c.max_abs() > tol) out.terms_[k] = c;
  }
  return out;
}

double LaurentLoop::max_abs() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, c.max_abs());
  return m;
}

LaurentLoop LaurentLoop::slice(int lo, int hi) const {
  LaurentLoop out;
  for (const auto& [k, c] : terms_) {
    if (k >= lo && k <= hi) out.terms_[k] = c;
  }
  return out;
}

double coefficient_distance(const LaurentLoop& a, const LaurentLoop& b) { return (a - b).max_abs(); }

double unimodularity_residual(const LaurentLoop& g, const std::vector<double>& lambdas) {
  double m = 0.0;
  for (double l : lambdas) m = std::max(m, std::fabs(g(l).det() - 1.0));
  return m;
}

double twist_residual(const LaurentLoop& g, const std::vector<double>& lambdas) {
  const Mat2 k = sq_to_mat(SplitQuaternion::k());
  double m = 0.0;
  for (double l : lambdas) m = std::max(m, (k * g(l) * k.inverse() - g(-l)).max_abs());
  return m;
}

}  // namespace tms
