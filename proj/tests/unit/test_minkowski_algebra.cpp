#include <cmath>
#include <random>

#include "doctest.h"
#include "tms/error.hpp"
#include "tms/minkowski_algebra.hpp"

using namespace tms;

namespace {

bool near(const Mat2& a, const Mat2& b, double tol) { return (a - b).max_abs() <= tol; }
bool near(const Vec3M& a, const Vec3M& b, double tol) { return (a - b).max_abs() <= tol; }

SplitQuaternion random_sq(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  return {d(rng), d(rng), d(rng), d(rng)};
}

}  // namespace

TEST_CASE("split-complex multiplication") {
  CHECK(sc_mul({1, 2}, {3, 4}) == SplitComplex{11, 10});
  CHECK(sc_mul({1, 1}, {1, -1}) == SplitComplex{0, 0});
  const SplitComplex z{0.3, -1.7};
  CHECK(sc_mul(z, {1, 0}) == z);
  CHECK(z.minkowski_norm_sq() == doctest::Approx(-0.09 + 2.89));
  CHECK(sc_mul({0, 1}, {0, 1}) == SplitComplex{1, 0});
}

TEST_CASE("split-quaternion basis table") {
  const auto one = SplitQuaternion::one(), i = SplitQuaternion::i(), j = SplitQuaternion::j(),
             k = SplitQuaternion::k();
  CHECK(sq_mul(i, j) == k);
  CHECK(sq_mul(j, i) == k * -1.0);
  CHECK(sq_mul(j, k) == i * -1.0);
  CHECK(sq_mul(k, j) == i);
  CHECK(sq_mul(i, i) == one * -1.0);
  CHECK(sq_mul(j, j) == one);
  CHECK(sq_mul(k, k) == one);
}

TEST_CASE("matrix model") {
  CHECK(sq_to_mat(SplitQuaternion::i()) == Mat2{0, -1, 1, 0});
  CHECK(sq_to_mat(SplitQuaternion::k()) == Mat2{-1, 0, 0, 1});
  CHECK(sq_to_mat(SplitQuaternion::j()) == Mat2{0, 1, 1, 0});
  CHECK(sq_to_mat(SplitQuaternion::one()) == Mat2::identity());

  std::mt19937_64 rng(7);
  for (int t = 0; t < 1000; ++t) {
    const SplitQuaternion a = random_sq(rng), b = random_sq(rng);
    CHECK(near(sq_to_mat(sq_mul(a, b)), sq_to_mat(a) * sq_to_mat(b), 1e-12));
    CHECK(sq_to_mat(a).det() == doctest::Approx(a.norm_product()).epsilon(1e-12));
    const SplitQuaternion back = mat_to_sq(sq_to_mat(a));
    CHECK(std::fabs(back.s0 - a.s0) + std::fabs(back.s1 - a.s1) + std::fabs(back.s2 - a.s2) +
              std::fabs(back.s3 - a.s3) <=
          1e-15 * 16);
    const SplitQuaternion c = random_sq(rng);
    const SplitQuaternion l = sq_mul(sq_mul(a, b), c), r = sq_mul(a, sq_mul(b, c));
    CHECK(near(sq_to_mat(l), sq_to_mat(r), 1e-10));
  }
}

TEST_CASE("matrix scalar product") {
  CHECK(mat_scalar_product(Mat2::identity(), Mat2::identity()) == -1.0);
  const Mat2 kp = sq_to_mat(SplitQuaternion::k());
  CHECK(mat_scalar_product(kp, kp) == 1.0);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const SplitQuaternion a = random_sq(rng);
    const Mat2 m = sq_to_mat(a);
    const double form = -a.s0 * a.s0 - a.s1 * a.s1 + a.s2 * a.s2 + a.s3 * a.s3;
    CHECK(mat_scalar_product(m, m) == doctest::Approx(form).epsilon(1e-12));
  }
}

TEST_CASE("Minkowski dot and causal type") {
  CHECK(minkowski_dot(kE1, kE1) == -1.0);
  CHECK(minkowski_dot(kE2, kE2) == 1.0);
  CHECK(minkowski_dot(Vec3M{1, 1, 0}, Vec3M{1, 1, 0}) == 0.0);
  CHECK(causal_type(kE1) == CausalType::Timelike);
  CHECK(causal_type(kE3) == CausalType::Spacelike);
  CHECK(causal_type(Vec3M{1, 1, 0}) == CausalType::Null);
  CHECK(minkowski_dot(Vec2M{2, 1}, Vec2M{2, 1}) == -3.0);
}

TEST_CASE("vector product and bracket identity") {
  CHECK(vector_product(kE1, kE2) == kE3);
  CHECK(vector_product(kE2, kE3) == -kE1);
  const Vec3M a{0.3, -1.2, 2.5};
  CHECK(vector_product(a, a) == Vec3M{});
  for (const Vec3M& x : {kE1, kE2, kE3})
    for (const Vec3M& y : {kE1, kE2, kE3}) {
      const Mat2 X = to_matrix(x), Y = to_matrix(y);
      CHECK(vector_product(x, y) == to_vector(X * Y - Y * X) * 0.5);
    }
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int t = 0; t < 1000; ++t) {
    const Vec3M x{d(rng), d(rng), d(rng)}, y{d(rng), d(rng), d(rng)};
    const Mat2 X = to_matrix(x), Y = to_matrix(y);
    CHECK(near(vector_product(x, y), to_vector(X * Y - Y * X) * 0.5, 1e-12));
    CHECK(minkowski_dot(vector_product(x, y), x) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("adjoint action") {
  CHECK(adjoint_action(Mat2::identity(), kE3) == kE3);
  const double th = 0.8;
  CHECK(near(adjoint_action(Mat2::diag(std::exp(th / 2), std::exp(-th / 2)), kE3), kE3, 1e-15));
  CHECK_THROWS_AS(adjoint_action(Mat2::diag(2.0, 1.0), kE3), Error);
  try {
    adjoint_action(Mat2::diag(2.0, 1.0), kE3);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonUnimodular);
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int t = 0; t < 500; ++t) {
    Mat2 g;
    do g = Mat2{d(rng), d(rng), d(rng), d(rng)};
    while (g.det() < 0.2);
    g = g * (1.0 / std::sqrt(g.det()));
    const Vec3M v{d(rng), d(rng), d(rng)}, w{d(rng), d(rng), d(rng)};
    CHECK(minkowski_dot(adjoint_action(g, v), adjoint_action(g, w)) ==
          doctest::Approx(minkowski_dot(v, w)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("stereographic projection") {
  const Vec2M o = stereo_project(kE3);
  CHECK(o.x == 0.0);
  CHECK(o.y == 0.0);
  const Vec2M p = stereo_project(kE2);
  CHECK(p.x == 0.0);
  CHECK(p.y == 1.0);
  CHECK(near(stereo_unproject(p), kE2, 1e-15));
  CHECK_THROWS_AS(stereo_project(Vec3M{0.2, 0.2, -1.0}), Error);
  try {
    stereo_project(Vec3M{0.0, 0.0, -1.0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleSingular);
  }
  try {
    stereo_unproject(Vec2M{1.0, 0.0});
    FAIL("expected UnprojectSingular");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnprojectSingular);
  }
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(-0.9, 0.9);
  for (int t = 0; t < 1000; ++t) {
    const Vec2M w{d(rng), d(rng)};
    if (std::fabs(-w.x * w.x + w.y * w.y + 1.0) < 0.2) continue;
    const Vec3M x = stereo_unproject(w);
    CHECK(minkowski_dot(x, x) == doctest::Approx(1.0).epsilon(1e-12));
    const Vec2M back = stereo_project(x);
    CHECK(back.x == doctest::Approx(w.x).epsilon(1e-12).scale(1.0));
    CHECK(back.y == doctest::Approx(w.y).epsilon(1e-12).scale(1.0));
  }
}
