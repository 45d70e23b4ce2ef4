#include <cmath>

#include "doctest.h"
#include "tms/birkhoff.hpp"
#include "tms/error.hpp"
#include "tms/laurent_loop.hpp"

using namespace tms;

namespace {

LaurentLoop frame_loop(double q, double r) {
  const double s = 1.0 / std::sqrt(1.0 + q * r);
  return LaurentLoop{{-1, Mat2{0, -s * r, 0, 0}}, {0, Mat2::diag(s, s)}, {1, Mat2{0, 0, s * q, 0}}};
}

}  // namespace

TEST_CASE("Laurent loop arithmetic") {
  const LaurentLoop a{{-1, Mat2{0, 1, 0, 0}}, {0, Mat2::identity()}};
  const LaurentLoop b{{1, Mat2{0, 0, 2, 0}}};
  const LaurentLoop ab = a * b;
  CHECK(ab.kmin() == 0);
  CHECK(ab.kmax() == 1);
  CHECK(ab.coeff(0) == Mat2{2, 0, 0, 0});
  CHECK(ab.coeff(1) == Mat2{0, 0, 2, 0});
  CHECK(ab.coeff(7) == Mat2::zero());
  const double lam = 1.7;
  CHECK(((a * b)(lam) - a(lam) * b(lam)).max_abs() < 1e-14);
  CHECK((a + b - a).trimmed().terms().size() == 1);
  CHECK(coefficient_distance(a, a) == 0.0);
  CHECK(a.slice(0, 0).terms().size() == 1);
  CHECK((a * a.adjugate())(lam) == Mat2::diag(a(lam).det(), a(lam).det()));
}

TEST_CASE("unimodularity and twist residuals") {
  const LaurentLoop g = frame_loop(0.4, -0.3);
  const std::vector<double> lams{0.5, 1.0, 2.0};
  CHECK(unimodularity_residual(g, lams) < 1e-14);
  CHECK(twist_residual(g, lams) < 1e-14);
  const LaurentLoop odd_diag{{1, Mat2::identity()}};
  CHECK(twist_residual(odd_diag, lams) > 0.5);
}

TEST_CASE("identity and constant loops factor trivially") {
  const BirkhoffResult r = birkhoff_factorize(LaurentLoop::identity(), BirkhoffOrder::MinusFirst, 2);
  CHECK(coefficient_distance(r.factor1, LaurentLoop::identity()) < 1e-12);
  CHECK(coefficient_distance(r.factor2, LaurentLoop::identity()) < 1e-12);
  const LaurentLoop d = LaurentLoop::constant(Mat2::diag(2.0, 0.5));
  const BirkhoffResult rd = birkhoff_factorize(d, BirkhoffOrder::MinusFirst, 2);
  CHECK(coefficient_distance(rd.factor1, LaurentLoop::identity()) < 1e-12);
  CHECK(coefficient_distance(rd.factor2, d) < 1e-12);
}

TEST_CASE("frame loop factors match the closed form") {
  const double q = 0.6, r = 0.5, s = 1.0 / std::sqrt(1.0 + q * r);
  const LaurentLoop g = frame_loop(q, r);
  const BirkhoffResult mp = birkhoff_factorize(g, BirkhoffOrder::MinusFirst, 4);
  CHECK(mp.residual < 1e-10);
  // In mp order the minus factor is normalized: gamma_- = [[1, -r/lambda], [0, 1]].
  const LaurentLoop minus{{-1, Mat2{0, -r, 0, 0}}, {0, Mat2::identity()}};
  CHECK(coefficient_distance(mp.factor1, minus) < 1e-10);
  const LaurentLoop plus{{0, Mat2::diag(s * (1 + q * r), s)}, {1, Mat2{0, 0, s * q, 0}}};
  CHECK(coefficient_distance(mp.factor2, plus) < 1e-10);
  CHECK(coefficient_distance(mp.factor1 * mp.factor2, g) < 1e-10);

  const BirkhoffResult pm = birkhoff_factorize(g, BirkhoffOrder::PlusFirst, 4);
  CHECK(pm.residual < 1e-10);
  CHECK(pm.factor1.kmin() >= 0);
  CHECK(pm.factor2.kmax() <= 0);
  CHECK((pm.factor2.coeff(0) - Mat2::identity()).max_abs() < 1e-10);
  CHECK(coefficient_distance(pm.factor1 * pm.factor2, g) < 1e-10);
}

TEST_CASE("factorization errors") {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind([] { birkhoff_factorize(LaurentLoop::constant(Mat2::diag(2, 1)), BirkhoffOrder::MinusFirst, 2); }) ==
        ErrorKind::NonUnimodular);
  // Outside the big cell: 1 + q r = 0 in the limit, use the loop [[0, -1/lambda], [lambda, 0]].
  const LaurentLoop w{{-1, Mat2{0, -1, 0, 0}}, {1, Mat2{0, 0, 1, 0}}};
  CHECK(kind([&] { birkhoff_factorize(w, BirkhoffOrder::MinusFirst, 4); }) == ErrorKind::OutsideBigCell);
  CHECK_THROWS_AS(birkhoff_factorize(frame_loop(0.1, 0.1), BirkhoffOrder::MinusFirst, 1), Error);
}
