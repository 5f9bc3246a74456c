#include "gapscope/jacobi.hpp"
#include "gapscope/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace gapscope;

namespace {

template <class S>
bool transfer_equals(const Transfer<S>& m, const Transfer<S>& n, double tol) {
  return std::abs(to_double(m.m11 - n.m11)) <= tol && std::abs(to_double(m.m12 - n.m12)) <= tol &&
         std::abs(to_double(m.m21 - n.m21)) <= tol && std::abs(to_double(m.m22 - n.m22)) <= tol;
}

VectorQ random_vector(Model model, int p, Rng& rng) {
  std::vector<Rational> a, v;
  for (int j = 0; j < p; ++j) {
    Rational x(rng.uniform_int(-12, 12), 4);
    x.canonicalize();
    v.push_back(model == Model::odjm ? Rational(0) : x);
    Rational y(rng.uniform_int(1, 16), rng.uniform_int(1, 16));
    y.canonicalize();
    a.push_back(model == Model::dso ? Rational(1) : y);
  }
  return make_vector(model, std::move(a), std::move(v));
}

} // namespace

TEST_CASE("make_vector validates shapes, positivity, and model constraints") {
  CHECK_NOTHROW(make_dso<Rational>({0, 5, 0, -5}));
  const VectorQ odjm = make_odjm<Rational>({1, 2, 2, 1});
  CHECK(odjm.a[0] * odjm.a[2] == odjm.a[1] * odjm.a[3]);

  CHECK_THROWS_AS(make_odjm<Rational>({1, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_odjm<double>({1.0, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(make_jac<Rational>({1, 1}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(make_vector<Rational>(Model::dso, {1, 2}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_vector<Rational>(Model::odjm, {1, 2}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_dso<Rational>({}), std::invalid_argument);
}

TEST_CASE("cyclic shifts rotate both sequences") {
  const VectorQ v = make_dso<Rational>({0, 5, 0, -5});
  CHECK(cyclic_shift(v, 1).v == std::vector<Rational>{5, 0, -5, 0});
  CHECK(cyclic_shift(v, 4).v == v.v);
  const VectorQ a = make_odjm<Rational>({1, 2, 2, 1});
  CHECK(cyclic_shift(a, 1).a == std::vector<Rational>{2, 2, 1, 1});
  CHECK(cyclic_shift(a, -1).a == std::vector<Rational>{1, 1, 2, 2});
}

TEST_CASE("irreducibility means p distinct cyclic shifts") {
  CHECK_FALSE(is_irreducible(make_dso<Rational>({1, 2, 1, 2})));
  CHECK(is_irreducible(make_dso<Rational>({0, 5, 0, -5})));
  CHECK_FALSE(is_irreducible(make_dso<Rational>({3, 3, 3})));
  CHECK(is_irreducible(make_dso<Rational>({7})));
  // Float irreducibility is bit-level.
  CHECK_FALSE(is_irreducible(make_dso<double>({0.1, 0.1})));
  CHECK(is_irreducible(make_dso<double>({0.1, 0.1 + 1e-16})));
}

TEST_CASE("shift and scale transforms re-derive the model tag") {
  const VectorQ v = make_dso<Rational>({0, 3, 0, -3});
  const VectorQ shifted = shift_potential(v, Rational(1));
  CHECK(shifted.v == std::vector<Rational>{1, 4, 1, -2});
  CHECK(shifted.model == Model::dso);
  CHECK(shift_potential(shifted, Rational(-1)).v == v.v);

  const VectorQ ones = make_dso<Rational>({1, 1, 1});
  const VectorQ scaled = scale_offdiag(ones, Rational(2));
  CHECK(scaled.a == std::vector<Rational>{2, 2, 2});
  CHECK(scaled.model == Model::jac); // no longer a discrete Schrödinger vector
  CHECK_THROWS_AS(scale_offdiag(ones, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(scale_offdiag(ones, Rational(-2)), std::invalid_argument);

  const VectorQ odjm = make_odjm<Rational>({1, 2, 3});
  CHECK(shift_potential(odjm, Rational(2)).model == Model::jac);
  CHECK(scale_offdiag(odjm, Rational(3)).model == Model::odjm);
}

TEST_CASE("one-step transfer matrices follow the defining formula") {
  const TransferQ m = transfer_matrix<Rational>(1, Rational(7));
  CHECK(m.m11 == 7);
  CHECK(m.m12 == -1);
  CHECK(m.m21 == 1);
  CHECK(m.m22 == 0);

  // M(0)^2 = -1 and M(-1)^3 = 1, exactly.
  const TransferQ m0 = transfer_matrix<Rational>(1, 0);
  const TransferQ sq = m0 * m0;
  CHECK(sq.m11 == -1);
  CHECK(sq.m22 == -1);
  CHECK(sq.m12 == 0);
  const TransferQ mm1 = transfer_matrix<Rational>(1, -1);
  const TransferQ cube = mm1 * mm1 * mm1;
  CHECK(cube.m11 == 1);
  CHECK(cube.m12 == 0);
  CHECK(cube.m21 == 0);
  CHECK(cube.m22 == 1);

  // B(1/sqrt2, 1)^4 = -1 to machine precision.
  const TransferD b = transfer_matrix(1.0 / std::sqrt(2.0), 1.0);
  const TransferD b4 = b * b * b * b;
  CHECK(transfer_equals(b4, TransferD{-1.0, 0.0, 0.0, -1.0}, 1e-14));

  CHECK_THROWS_AS(transfer_matrix(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(transfer_matrix(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("unimodularity survives products on both backends") {
  Rng rng(404);
  for (int i = 0; i < 40; ++i) {
    const double s = std::exp(rng.uniform(-1.5, 1.5));
    const double t = rng.uniform(-4.0, 4.0);
    CHECK(std::abs(transfer_matrix(s, t).det() - 1.0) <= 1e-14 * (1.0 + std::abs(t) / s));
  }
  for (int i = 0; i < 10; ++i) {
    const VectorQ vec = random_vector(Model::jac, 1 + static_cast<int>(rng.uniform_int(0, 5)),
                                      rng);
    CHECK(monodromy_numeric(vec, Rational(rng.uniform_int(-3, 3))).det() == 1);
    const VectorD fvec = to_float(vec);
    const double e = rng.uniform(-3.0, 3.0);
    CHECK(std::abs(monodromy_numeric(fvec, e).det() - 1.0) <= 1e-12);
  }
}

TEST_CASE("numeric monodromy reproduces the small worked products") {
  const TransferQ free2 = monodromy_numeric(make_dso<Rational>({0, 0}), Rational(0));
  CHECK(free2.m11 == -1);
  CHECK(free2.m12 == 0);
  CHECK(free2.m21 == 0);
  CHECK(free2.m22 == -1);

  const TransferQ one = monodromy_numeric(make_dso<Rational>({0}), Rational(2));
  CHECK(one.m11 == 2);
  CHECK(one.m12 == -1);
  CHECK(one.m21 == 1);
  CHECK(one.m22 == 0);

  // Entries match the explicit period-2 formula at random energies.
  Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    Rational v1(rng.uniform_int(-8, 8), 2), v2(rng.uniform_int(-8, 8), 2);
    v1.canonicalize();
    v2.canonicalize();
    Rational e(rng.uniform_int(-12, 12), 4);
    e.canonicalize();
    const TransferQ m = monodromy_numeric(make_dso<Rational>({v1, v2}), e);
    CHECK(m.m11 == (e - v1) * (e - v2) - 1);
    CHECK(m.m12 == -(e - v2));
    CHECK(m.m21 == e - v1);
    CHECK(m.m22 == -1);
  }
}

TEST_CASE("polynomial monodromy matches its numeric evaluation") {
  const auto dso = monodromy_poly(make_dso<Rational>({Rational(3, 2), Rational(-1)}));
  CHECK(dso.p21 == PolyQ{Rational(-3, 2), 1});
  CHECK(dso.p12 == PolyQ{Rational(-1), Rational(-1)});

  const auto odjm = monodromy_poly(make_odjm<Rational>({2, 3}));
  CHECK(odjm.p11 == PolyQ{-4, 0, 1});
  CHECK(odjm.p12 == PolyQ{0, -1});
  CHECK(odjm.p21 == PolyQ{0, 9});
  CHECK(odjm.p22 == PolyQ(Rational(-9)));
  CHECK(odjm.denom == 6);

  Rng rng(77);
  for (int i = 0; i < 5; ++i) {
    const VectorQ vec = random_vector(Model::jac, 2 + static_cast<int>(rng.uniform_int(0, 4)),
                                      rng);
    const auto mp = monodromy_poly(vec);
    const VectorD fvec = to_float(vec);
    for (int k = 0; k < 20; ++k) {
      const double e = rng.uniform(-4.0, 4.0);
      const TransferD num = monodromy_numeric(fvec, e);
      const double s = to_double(mp.denom);
      const PolyD p11 = to_float(mp.p11);
      const double scale = 1.0 + std::abs(p11(e));
      CHECK(std::abs(p11(e) - s * num.m11) <= 1e-10 * scale);
      CHECK(std::abs(to_float(mp.p12)(e) - s * num.m12) <= 1e-10 * scale);
      CHECK(std::abs(to_float(mp.p21)(e) - s * num.m21) <= 1e-10 * scale);
      CHECK(std::abs(to_float(mp.p22)(e) - s * num.m22) <= 1e-10 * scale);
    }
    // det P(E) = denom^2, as polynomials.
    CHECK(mp.det() == PolyQ(mp.denom * mp.denom));
    // Tr P is monic of degree p with subleading coefficient -sum v.
    const PolyQ tr = mp.trace();
    CHECK(tr.degree() == vec.period());
    CHECK(tr.leading() == 1);
    Rational sum(0);
    for (const Rational& x : vec.v) sum += x;
    CHECK(tr.coeff(vec.period() - 1) == -sum);
  }
}

TEST_CASE("discriminants of the small examples") {
  CHECK(discriminant(make_dso<Rational>({0, 0})).poly == PolyQ{-2, 0, 1});
  CHECK(discriminant(make_dso<Rational>({0, 2})).poly == PolyQ{-2, -2, 1});
  CHECK(discriminant(make_dso<Rational>({0})).poly == PolyQ{0, 1});

  // Leading coefficient is 1/denom.
  const VectorQ a = make_odjm<Rational>({2, 3});
  const auto d = discriminant(a);
  CHECK(d.poly.leading() == Rational(1) / d.denom);
}

TEST_CASE("discriminant is invariant under cyclic shifts") {
  Rng rng(55);
  for (int i = 0; i < 12; ++i) {
    const VectorQ vec = random_vector(i % 2 ? Model::dso : Model::jac,
                                      2 + static_cast<int>(rng.uniform_int(0, 5)), rng);
    for (int k = 1; k < vec.period(); ++k)
      CHECK(discriminant(cyclic_shift(vec, k)).poly == discriminant(vec).poly);
  }
}

TEST_CASE("monodromy of a concatenation is the reversed product") {
  Rng rng(66);
  for (int i = 0; i < 15; ++i) {
    const VectorQ x = random_vector(Model::jac, 1 + static_cast<int>(rng.uniform_int(0, 3)), rng);
    const VectorQ y = random_vector(Model::jac, 1 + static_cast<int>(rng.uniform_int(0, 3)), rng);
    Rational e(rng.uniform_int(-8, 8), 4);
    e.canonicalize();
    const TransferQ joint = monodromy_numeric(concat(x, y), e);
    const TransferQ split = monodromy_numeric(y, e) * monodromy_numeric(x, e);
    CHECK(joint.m11 == split.m11);
    CHECK(joint.m12 == split.m12);
    CHECK(joint.m21 == split.m21);
    CHECK(joint.m22 == split.m22);
  }
}

TEST_CASE("shift and scale covariance of the discriminant, by evaluation") {
  Rng rng(88);
  for (int i = 0; i < 10; ++i) {
    const VectorQ v = random_vector(Model::dso, 2 + static_cast<int>(rng.uniform_int(0, 4)), rng);
    Rational c(rng.uniform_int(-8, 8), 4);
    c.canonicalize();
    const PolyQ d0 = discriminant(v).poly;
    const PolyQ d1 = discriminant(shift_potential(v, c)).poly;
    for (int k = 0; k < 20; ++k) {
      Rational e(rng.uniform_int(-16, 16), 4);
      e.canonicalize();
      CHECK(d1(e + c) == d0(e));
    }

    const VectorQ a = random_vector(Model::odjm, 2 + static_cast<int>(rng.uniform_int(0, 4)),
                                    rng);
    Rational s(rng.uniform_int(1, 12), rng.uniform_int(1, 12));
    s.canonicalize();
    const PolyQ b0 = discriminant(a).poly;
    const PolyQ b1 = discriminant(scale_offdiag(a, s)).poly;
    for (int k = 0; k < 20; ++k) {
      Rational e(rng.uniform_int(-16, 16), 4);
      e.canonicalize();
      CHECK(b1(s * e) == b0(e));
    }
  }
}

TEST_CASE("odjm reflection identity holds as a polynomial identity") {
  Rng rng(99);
  for (int i = 0; i < 10; ++i) {
    const int p = 1 + static_cast<int>(rng.uniform_int(0, 6));
    const VectorQ a = random_vector(Model::odjm, p, rng);
    const PolyQ d = discriminant(a).poly;
    const PolyQ mirrored = d.scaled_arg(Rational(-1));
    CHECK(mirrored == (p % 2 == 0 ? d : -d));
  }
}
