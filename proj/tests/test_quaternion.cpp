#include <doctest.h>

#include <cmath>
#include <random>

#include "charvar/errors.hpp"
#include "charvar/quaternion.hpp"
#include "oracles.hpp"

using namespace charvar;

namespace {

UnitQuaternion expk(double theta) { return UnitQuaternion::exp(0.0, 0.0, theta); }

void check_close(const UnitQuaternion& a, const UnitQuaternion& b, double tol) {
  CHECK(distance(a, b) <= tol);
}

}  // namespace

TEST_CASE("i times j is k") {
  check_close(quat_mul(UnitQuaternion::i(), UnitQuaternion::j()), UnitQuaternion::k(),
              1e-15);
}

TEST_CASE("q times its inverse is 1") {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 100; ++n) {
    const auto q = oracle::haar(rng);
    check_close(quat_mul(q, q.inverse()), UnitQuaternion::identity(), 1e-14);
  }
}

TEST_CASE("i anticommutes through rotations about k") {
  // i (cos t + sin t k) = cos t i - sin t j ; (cos t - sin t k) i = cos t i - sin t j.
  const double t = 0.3;
  const auto lhs = quat_mul(UnitQuaternion::i(), expk(t));
  const auto rhs = quat_mul(expk(-t), UnitQuaternion::i());
  CHECK(lhs.w() == doctest::Approx(0.0));
  CHECK(lhs.x() == doctest::Approx(std::cos(t)));
  CHECK(lhs.y() == doctest::Approx(-std::sin(t)));
  CHECK(lhs.z() == doctest::Approx(0.0));
  check_close(lhs, rhs, 1e-15);
}

TEST_CASE("products match the 2x2 complex matrix model") {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 200; ++n) {
    const auto a = oracle::haar(rng), b = oracle::haar(rng);
    const auto m = oracle::Mat2::of(a) * oracle::Mat2::of(b);
    CHECK(m.distance(oracle::Mat2::of(quat_mul(a, b))) <= 1e-14);
    CHECK(std::abs(m.trace().real() - quat_mul(a, b).trace()) <= 1e-14);
  }
}

TEST_CASE("non-unit input is rejected") {
  CHECK_THROWS_AS(UnitQuaternion(1.0, 1.0, 0.0, 0.0), InvalidElementError);
  CHECK_THROWS_AS(quat_mul(Quaternion{2.0, 0, 0, 0}, Quaternion{1.0, 0, 0, 0}),
                  InvalidElementError);
  // Small drift is repaired instead.
  const UnitQuaternion q(1.0 + 1e-8, 0, 0, 0);
  CHECK(std::abs(q.raw().norm() - 1.0) <= 1e-15);
}

TEST_CASE("products stay unit and associative") {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 500; ++n) {
    const auto a = oracle::haar(rng), b = oracle::haar(rng), c = oracle::haar(rng);
    const auto l = quat_mul(quat_mul(a, b), c);
    const auto r = quat_mul(a, quat_mul(b, c));
    CHECK(distance(l, r) <= 1e-12);
    CHECK(std::abs(l.raw().norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("holonomy examples") {
  const std::vector<UnitQuaternion> ij{UnitQuaternion::i(), UnitQuaternion::j()};
  check_close(holonomy(FreeWord::a(1), ij), UnitQuaternion::i(), 0.0);
  check_close(holonomy(FreeWord::parse("a1 b1 a1^-1 b1^-1"), ij),
              -UnitQuaternion::identity(), 1e-15);
  check_close(holonomy(FreeWord{}, ij), UnitQuaternion::identity(), 0.0);
  CHECK_THROWS_AS(holonomy(FreeWord::a(2), ij), MalformedWordError);
}

TEST_CASE("holonomy is multiplicative and matches matrix products") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> gen(1, 4), len(0, 8), sgn(0, 1);
  auto random_word = [&] {
    std::vector<Letter> ls;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) ls.push_back({gen(rng), sgn(rng) ? 1 : -1});
    return FreeWord(ls);
  };
  for (int n = 0; n < 200; ++n) {
    std::vector<UnitQuaternion> assignment;
    for (int s = 0; s < 4; ++s) assignment.push_back(oracle::haar(rng));
    const auto w1 = random_word(), w2 = random_word();
    const auto w = w1 * w2;
    const auto whole = holonomy(w, assignment);
    CHECK(distance(whole, quat_mul(holonomy(w1, assignment), holonomy(w2, assignment))) <=
          1e-10);
    oracle::Mat2 m{1, 0, 0, 1};
    for (const auto& l : w.letters()) {
      const auto g = oracle::Mat2::of(assignment[l.slot()]);
      m = m * (l.sign > 0 ? g : g.inverse());
    }
    CHECK(m.distance(oracle::Mat2::of(whole)) <= 1e-10);
  }
}

TEST_CASE("standardize_triple examples") {
  const auto i = UnitQuaternion::i(), j = UnitQuaternion::j(), k = UnitQuaternion::k();
  check_close(standardize_triple(i, j, -k), UnitQuaternion::identity(), 1e-12);

  // Grid search over axis-angle for the conjugator of (j, k, -i).
  const auto m = standardize_triple(j, k, -i);
  double best = 1e9;
  UnitQuaternion best_q;
  for (int a = 0; a <= 72; ++a)
    for (int b = 0; b <= 36; ++b)
      for (int c = 0; c <= 72; ++c) {
        const double angle = oracle::kPi * c / 36.0;
        const double th = oracle::kPi * b / 36.0, ph = 2 * oracle::kPi * a / 72.0;
        const double ax = std::sin(th) * std::cos(ph), ay = std::sin(th) * std::sin(ph),
                     az = std::cos(th);
        const auto q = UnitQuaternion::exp(angle * ax / 2, angle * ay / 2, angle * az / 2);
        const double err = distance(conjugate_by(q, j), i) +
                           distance(conjugate_by(q, k), j);
        if (err < best) best = err, best_q = canonical_sign(q);
      }
  CHECK(best < 0.3);
  CHECK(distance(m, best_q) < 0.2);
  // Rotation by -120 degrees about (1,1,1) sends j -> i and k -> j.
  check_close(m, UnitQuaternion(0.5, -0.5, -0.5, -0.5), 1e-12);
  check_close(conjugate_by(m, j), i, 1e-9);
  check_close(conjugate_by(m, k), j, 1e-9);
  check_close(conjugate_by(m, -i), -k, 1e-9);

  CHECK_THROWS_AS(standardize_triple(i, -j, -k), NotInStratumError);
  CHECK_THROWS_AS(standardize_triple(UnitQuaternion::identity(), j, -k),
                  NotInStratumError);
}

TEST_CASE("standardize_triple recovers a random conjugator up to sign") {
  std::mt19937_64 rng(23);
  for (int n = 0; n < 200; ++n) {
    const auto m = oracle::haar(rng);
    const auto inv = m.inverse();
    const auto c1 = conjugate_by(inv, UnitQuaternion::i());
    const auto c2 = conjugate_by(inv, UnitQuaternion::j());
    const auto c3 = conjugate_by(inv, -UnitQuaternion::k());
    const auto found = standardize_triple(c1, c2, c3);
    CHECK(std::min(distance(found, m), distance(found, -m)) <= 1e-9);
    CHECK(found.w() >= 0.0);
  }
}

TEST_CASE("trace is conjugation invariant") {
  std::mt19937_64 rng(29);
  for (int n = 0; n < 200; ++n) {
    const auto q = oracle::haar(rng), m = oracle::haar(rng);
    CHECK(std::abs(conjugate_by(m, q).trace() - q.trace()) <= 1e-12);
  }
}

TEST_CASE("random_in_class") {
  for (std::uint64_t seed = 0; seed < 20; ++seed)
    check_close(random_in_class({0.0}, seed), UnitQuaternion::identity(), 1e-15);
  double mx = 0, my = 0, mz = 0;
  const int n = 10000;
  for (int s = 0; s < n; ++s) {
    const auto q = random_in_class(ClassLabel::traceless(), s);
    CHECK(std::abs(q.trace()) <= 1e-12);
    mx += q.x(), my += q.y(), mz += q.z();
  }
  CHECK(std::abs(mx / n) < 0.05);
  CHECK(std::abs(my / n) < 0.05);
  CHECK(std::abs(mz / n) < 0.05);
  const ClassLabel third{1.0 / 3.0};
  const auto q = random_in_class(third, 4);
  CHECK(third.contains(q));
  CHECK(q == random_in_class(third, 4));
}

TEST_CASE("rotation matrices round trip") {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 100; ++n) {
    const auto q = canonical_sign(oracle::haar(rng));
    check_close(from_rotation_matrix(rotation_matrix(q)), q, 1e-12);
  }
}
