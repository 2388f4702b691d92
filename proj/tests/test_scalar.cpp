#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "redten/cyclo.hpp"
#include "redten/linalg.hpp"

using namespace redten;

TEST_CASE("rational basics") {
  Rational a(1, 2), b(1, 3);
  CHECK(a + b == Rational(5, 6));
  CHECK(a * b == Rational(1, 6));
  CHECK(a / b == Rational(3, 2));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK_THROWS_AS(a / Rational(0), Error);
}

TEST_CASE("cyclotomic relations") {
  // 1 + z3 + z3^2 = 0
  Cyclo z3 = Cyclo::zeta(3);
  CHECK((Cyclo(1) + z3 + z3 * z3).is_zero());

  // inv(z5) = z5^4
  Cyclo z5 = Cyclo::zeta(5);
  CHECK(z5.inverse() == Cyclo::zeta(5, 4));

  // (z8 + z8^-1)^2 = 2
  Cyclo s = Cyclo::zeta(8) + Cyclo::zeta(8, 7);
  CHECK(s * s == Cyclo(2));
}

TEST_CASE("euler phi and conductor lift") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(8) == 4);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(24) == 8);

  Cyclo q = Cyclo(Rational(3, 2));
  CHECK(q.lifted(12).rational_value() == Rational(3, 2));

  CHECK(Cyclo::zeta(4).lifted(12) == Cyclo::zeta(12, 3));

  Cyclo z6 = Cyclo::zeta(6);
  CHECK(z6.lifted(24).lifted(24) == z6);
  CHECK_THROWS_AS(z6.lifted(5), Error);
}

TEST_CASE("conjugation") {
  CHECK(Cyclo::zeta(5).conjugated() == Cyclo::zeta(5, 4));
  CHECK(Cyclo(Rational(3, 7)).conjugated() == Cyclo(Rational(3, 7)));
  Cyclo r5 = sqrt_int(5, 20);
  CHECK(r5.conjugated() == r5);
}

TEST_CASE("sqrt_int squares back") {
  CHECK(sqrt_int(1, 12) == Cyclo(1));
  CHECK(sqrt_int(2, 8) == Cyclo::zeta(8) + Cyclo::zeta(8, 7));
  for (long n = 1; n <= 50; ++n) {
    long m = 4 * n;
    Cyclo r = sqrt_int(n, m);
    CHECK(r * r == Cyclo::from_rational(Rational(n), m));
    double rad = 0;
    auto v = r.embed(&rad);
    CHECK(v.real() > 0);
    CHECK(std::abs(v.imag()) < 1e-6);
  }
}

TEST_CASE("sqrt multiplicativity over coprime square-free parts") {
  auto check_pair = [](long a, long b) {
    long m = lcm_long(4 * a, 4 * b);
    m = lcm_long(m, 4 * a * b);
    Cyclo prod = sqrt_int(a, m) * sqrt_int(b, m);
    CHECK(prod == sqrt_int(a * b, m));
  };
  check_pair(2, 3);
  check_pair(3, 5);
  check_pair(2, 15);
  check_pair(5, 7);
}

TEST_CASE("field axioms on seeded random triples") {
  std::mt19937_64 rng(20240817ULL);
  std::uniform_int_distribution<int> num(-6, 6);
  long M = 12;
  int deg = int(euler_phi(M));
  auto rnd = [&]() {
    std::vector<Rational> c;
    for (int i = 0; i < deg; ++i) c.push_back(Rational(num(rng), 1 + std::abs(num(rng))));
    return Cyclo::from_coeffs(M, std::move(c));
  };
  int checked_inverses = 0;
  for (int t = 0; t < 1000; ++t) {
    Cyclo x = rnd(), y = rnd(), z = rnd();
    CHECK((x + y) * z == x * z + y * z);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x + y == y + x);
    if (!x.is_zero()) {
      CHECK(x * x.inverse() == Cyclo::from_rational(Rational(1), M));
      ++checked_inverses;
    }
  }
  CHECK(checked_inverses > 900);
}

TEST_CASE("conjugate times self is nonnegative for radicals") {
  for (long n : {2L, 3L, 5L, 6L, 10L}) {
    Cyclo r = sqrt_int(n, 4 * n);
    Cyclo norm = r.conjugated() * r;
    CHECK(norm.is_rational());
    CHECK(norm.rational_value() == Rational(n));
  }
}

TEST_CASE("exact nullspace and inverse") {
  Mat<Rational> a(2, 3);
  a << Rational(1), Rational(2), Rational(3), Rational(2), Rational(4), Rational(6);
  auto ns = nullspace_basis<Rational>(a);
  CHECK(ns.cols() == 2);
  CHECK(Mat<Rational>(a * ns) == zero_mat<Rational>(2, 2));

  Mat<Rational> b(2, 2);
  b << Rational(1), Rational(1), Rational(0), Rational(2);
  auto binv = invert<Rational>(b);
  CHECK(Mat<Rational>(b * binv) == id_mat<Rational>(2));
}
