#include "gapscope/exact_roots.hpp"
#include "gapscope/float_roots.hpp"
#include "gapscope/jacobi.hpp"
#include "gapscope/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace gapscope;

namespace {

PolyQ from_int_roots(const std::vector<int>& roots) {
  PolyQ p = PolyQ::one();
  for (int r : roots) p = p * PolyQ{Rational(-r), Rational(1)};
  return p;
}

// Root counting oracle, independent of the Sturm path: a fine sign grid plus
// explicit inspection of the known integer roots.
int grid_count(const std::vector<int>& roots, const Rational& lo, const Rational& hi) {
  std::vector<int> distinct = roots;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  int n = 0;
  for (int r : distinct)
    if (lo < r && Rational(r) <= hi) ++n;
  return n;
}

} // namespace

TEST_CASE("gcd handles the worked examples") {
  const PolyQ e2m1{-1, 0, 1};
  const PolyQ em1{-1, 1};
  CHECK(poly_gcd(e2m1, em1) == em1);

  CHECK(poly_gcd(PolyQ{-2, 0, 1}, PolyQ{1, 0, 1}) == PolyQ::one());

  // Euclid by hand: E^3 - E = E·(E^2 - 1) + 0.
  CHECK(poly_gcd(PolyQ{0, -1, 0, 1}, e2m1) == e2m1);

  CHECK(poly_gcd(PolyQ::zero(), e2m1) == e2m1);
  CHECK_THROWS_AS(poly_gcd(PolyQ::zero(), PolyQ::zero()), std::invalid_argument);
}

TEST_CASE("gcd divides both inputs with exact zero remainder") {
  Rng rng(11);
  for (int i = 0; i < 30; ++i) {
    const PolyQ f = from_int_roots({static_cast<int>(rng.uniform_int(-4, 4)),
                                    static_cast<int>(rng.uniform_int(-4, 4))});
    const PolyQ g = from_int_roots({static_cast<int>(rng.uniform_int(-4, 4))});
    const PolyQ h = from_int_roots({static_cast<int>(rng.uniform_int(-4, 4))});
    const PolyQ p = f * g;
    const PolyQ q = f * h;
    const PolyQ d = poly_gcd(p, q);
    CHECK(PolyQ::divmod(p, d).rem.is_zero());
    CHECK(PolyQ::divmod(q, d).rem.is_zero());
    CHECK(PolyQ::divmod(d, f).rem.is_zero()); // f divides both, so f divides the gcd
  }
}

TEST_CASE("sturm_count matches the worked examples and rejects bad input") {
  const PolyQ p{-2, 0, 1};
  CHECK(sturm_count(p, 0, 2) == 1);
  CHECK(sturm_count(p, -2, 2) == 2);
  // Distinct-root semantics: multiplicity is ignored.
  CHECK(sturm_count(PolyQ{1, -2, 1}, 0, 2) == 1);

  CHECK_THROWS_AS(sturm_count(PolyQ{-1, 1}, 1, 2), std::invalid_argument); // endpoint is a root
  CHECK_THROWS_AS(sturm_count(PolyQ::zero(), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sturm_count(p, 2, 0), std::invalid_argument);
}

TEST_CASE("sturm_count agrees with the explicit-factorization oracle") {
  Rng rng(31);
  for (int i = 0; i < 60; ++i) {
    std::vector<int> roots;
    const int n = static_cast<int>(rng.uniform_int(1, 5));
    for (int k = 0; k < n; ++k) roots.push_back(static_cast<int>(rng.uniform_int(-6, 6)));
    if (rng.unit() < 0.3) roots.push_back(roots.front()); // a repeated factor
    const PolyQ p = from_int_roots(roots);
    Rational lo(rng.uniform_int(-30, 10), 4);
    Rational hi = lo + Rational(rng.uniform_int(1, 40), 4);
    lo.canonicalize();
    hi.canonicalize();
    if (sign_of(p(lo)) == 0 || sign_of(p(hi)) == 0) continue;
    CHECK(sturm_count(p, lo, hi) == grid_count(roots, lo, hi));
  }
}

TEST_CASE("exact isolation brackets every real root once") {
  const PolyQ p{-2, 0, 1};
  const auto brackets = isolate_real_roots(p);
  REQUIRE(brackets.size() == 2);
  const double lo = to_double(refine_root(p, brackets[0], Rational(1, 1000000000000)));
  const double hi = to_double(refine_root(p, brackets[1], Rational(1, 1000000000000)));
  CHECK(std::abs(lo + std::sqrt(2.0)) < 1e-11);
  CHECK(std::abs(hi - std::sqrt(2.0)) < 1e-11);

  // Discriminant roots for the (0,2) potential: E^2 - 2E - 4 has roots 1±sqrt5.
  const PolyQ d{-4, -2, 1};
  const auto db = isolate_real_roots(d);
  REQUIRE(db.size() == 2);

  CHECK(isolate_real_roots(PolyQ(Rational(7))).empty());
  CHECK_THROWS_AS(isolate_real_roots(PolyQ::zero()), std::invalid_argument);
}

TEST_CASE("exact isolation handles rational roots hit by bisection midpoints") {
  // Roots at integers force midpoint hits from the symmetric start interval.
  const PolyQ p = from_int_roots({-2, 0, 1, 3});
  const auto roots = isolate_roots(p);
  REQUIRE(roots.size() == 4);
  const double expected[] = {-2.0, 0.0, 1.0, 3.0};
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(std::abs(refine_root_double(p, roots[i]) - expected[i]) < 1e-12);
}

TEST_CASE("counted brackets are pairwise disjoint and ordered") {
  Rng rng(616);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<int> roots;
    const int n = static_cast<int>(rng.uniform_int(2, 6));
    for (int k = 0; k < n; ++k) roots.push_back(static_cast<int>(rng.uniform_int(-5, 5)));
    const PolyQ p = from_int_roots(roots);
    const auto brackets = isolate_real_roots(p);
    std::vector<int> distinct = roots;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    REQUIRE(brackets.size() == distinct.size());
    for (std::size_t i = 0; i < brackets.size(); ++i) {
      CHECK(brackets[i].lo < brackets[i].hi);
      CHECK(brackets[i].count == 1);
      CHECK(brackets[i].lo < distinct[i]);
      CHECK(Rational(distinct[i]) < brackets[i].hi);
      if (i > 0) CHECK(brackets[i - 1].hi <= brackets[i].lo);
    }
  }
}

TEST_CASE("refinement reaches the requested tolerance") {
  const PolyQ sqrt2{-2, 0, 1};
  const Rational tol(1, 1000000000000);
  const auto b = isolate_real_roots(sqrt2)[1];
  CHECK(std::abs(to_double(refine_root(sqrt2, b, tol)) - 1.4142135623730951) < 1e-12);

  // Exact hit: E - 3 on [2, 4] lands on 3 at the first midpoint.
  const PolyQ line{-3, 1};
  CHECK(refine_root(line, RootBracket<Rational>{2, 4, 1}, tol) == 3);

  // Bisection oracle for the cubic E^3 - E - 1.
  double lo = 1.0, hi = 2.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((mid * mid * mid - mid - 1.0 < 0.0) ? lo : hi) = mid;
  }
  const PolyQ cubic{-1, -1, 0, 1};
  const auto cb = isolate_real_roots(cubic);
  REQUIRE(cb.size() == 1);
  CHECK(std::abs(to_double(refine_root(cubic, cb[0], Rational(1, 10000000000))) -
                 0.5 * (lo + hi)) < 1e-10);

  CHECK_THROWS_AS(refine_root(cubic, RootBracket<Rational>{1, 2, 2}, tol),
                  std::invalid_argument);
}

TEST_CASE("float isolation finds simple and tangential roots") {
  CHECK(all_real_roots(PolyD{-2.0, 0.0, 1.0}).size() == 2);

  // (E-1)^2 (E+2): double root at 1.
  const PolyD tangent = PolyD{-1.0, 1.0} * PolyD{-1.0, 1.0} * PolyD{2.0, 1.0};
  const auto roots = all_real_roots(tangent);
  REQUIRE(roots.size() == 2);
  CHECK(std::abs(roots[0] + 2.0) < 1e-10);
  CHECK(std::abs(roots[1] - 1.0) < 1e-8);

  const auto brackets = isolate_real_roots(PolyD{-2.0, 0.0, 1.0});
  REQUIRE(brackets.size() == 2);
  CHECK(std::abs(refine_root(PolyD{-2.0, 0.0, 1.0}, brackets[1], 1e-12) - std::sqrt(2.0)) <
        1e-12);
}

TEST_CASE("float and exact isolation agree on discriminant root counts") {
  Rng rng(5150);
  for (int i = 0; i < 30; ++i) {
    const int p = static_cast<int>(rng.uniform_int(1, 8));
    std::vector<Rational> a, v;
    const Model model = i % 3 == 0 ? Model::dso : (i % 3 == 1 ? Model::odjm : Model::jac);
    for (int j = 0; j < p; ++j) {
      Rational x(rng.uniform_int(-12, 12), 4);
      x.canonicalize();
      v.push_back(model == Model::odjm ? Rational(0) : x);
      Rational y(rng.uniform_int(1, 16), rng.uniform_int(1, 16));
      y.canonicalize();
      a.push_back(model == Model::dso ? Rational(1) : y);
    }
    const VectorQ vec = make_vector(model, std::move(a), std::move(v));
    const PolyQ d = discriminant(vec).poly;
    int exact_total = 0;
    std::size_t float_total = 0;
    for (int sigma : {+1, -1}) {
      const PolyQ q = d - PolyQ(Rational(2 * sigma));
      exact_total += static_cast<int>(isolate_roots(q).size());
      float_total += all_real_roots(to_float(q)).size();
    }
    CHECK(exact_total <= 2 * p);
    CHECK(static_cast<std::size_t>(exact_total) == float_total);
  }
}
