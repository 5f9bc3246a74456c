#include "gapscope/poly.hpp"
#include "gapscope/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace gapscope;

namespace {

PolyQ random_poly(Rng& rng, int max_degree) {
  std::vector<Rational> cs;
  const int deg = static_cast<int>(rng.uniform_int(0, max_degree));
  for (int i = 0; i <= deg; ++i) {
    Rational c(rng.uniform_int(-12, 12), rng.uniform_int(1, 6));
    c.canonicalize();
    cs.push_back(c);
  }
  return PolyQ(std::move(cs));
}

} // namespace

TEST_CASE("polynomial products and sums collapse to canonical form") {
  const PolyQ left{-1, 1};  // E - 1
  const PolyQ right{1, 1};  // E + 1
  CHECK(left * right == PolyQ{-1, 0, 1});

  const PolyQ quad{1, 0, 1};
  const PolyQ neg{0, 0, -1};
  const PolyQ sum = quad + neg;
  CHECK(sum.degree() == 0);
  CHECK(sum == PolyQ::one());
}

TEST_CASE("the period-2 monodromy entry assembles from linear factors") {
  const Rational v1(3, 2), v2(-2);
  const PolyQ e = PolyQ::variable();
  const PolyQ built = (e - PolyQ(v1)) * (e - PolyQ(v2)) - PolyQ::one();
  const PolyQ expected{v1 * v2 - 1, -(v1 + v2), 1};
  CHECK(built == expected);
}

TEST_CASE("ring axioms hold exactly on random rational polynomials") {
  Rng rng(2024);
  for (int i = 0; i < 50; ++i) {
    const PolyQ a = random_poly(rng, 5);
    const PolyQ b = random_poly(rng, 5);
    const PolyQ c = random_poly(rng, 5);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == PolyQ::zero());
  }
}

TEST_CASE("float coefficients are stripped only when exactly zero") {
  const PolyD p{1.0, 2.0, 0.0, 0.0};
  CHECK(p.degree() == 1);
  const PolyD tiny{1.0, 2.0, 1e-300};
  CHECK(tiny.degree() == 2);
  CHECK_THROWS_AS(PolyD({1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(PolyD({1.0, INFINITY}), std::invalid_argument);
}

TEST_CASE("evaluation, derivative, and argument transforms agree pointwise") {
  Rng rng(7);
  for (int i = 0; i < 25; ++i) {
    const PolyQ p = random_poly(rng, 6);
    Rational x(rng.uniform_int(-8, 8), rng.uniform_int(1, 4));
    x.canonicalize();
    Rational c(rng.uniform_int(-6, 6), rng.uniform_int(1, 3));
    c.canonicalize();
    CHECK(p.shifted_arg(c)(x) == p(x + c));
    CHECK(p.scaled_arg(c)(x) == p(c * x));
    // (p·q)' = p'q + pq'
    const PolyQ q = random_poly(rng, 4);
    CHECK((p * q).derivative() == p.derivative() * q + p * q.derivative());
  }
}

TEST_CASE("field division satisfies a = q*b + r with deg r < deg b") {
  Rng rng(99);
  for (int i = 0; i < 40; ++i) {
    const PolyQ a = random_poly(rng, 7);
    PolyQ b = random_poly(rng, 4);
    if (b.is_zero()) b = PolyQ::variable();
    const auto [quot, rem] = PolyQ::divmod(a, b);
    CHECK(quot * b + rem == a);
    CHECK(rem.degree() < b.degree());
  }
  CHECK_THROWS_AS(PolyQ::divmod(PolyQ::one(), PolyQ::zero()), std::invalid_argument);
}

TEST_CASE("monic normalization and leading coefficient access") {
  const PolyQ p{2, 0, 4};
  CHECK(p.monic() == PolyQ{Rational(1, 2), 0, 1});
  CHECK(p.leading() == 4);
  CHECK_THROWS_AS(PolyQ::zero().leading(), std::logic_error);
}
