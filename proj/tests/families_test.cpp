#include "gapscope/families.hpp"

#include "gapscope/rng.hpp"
#include "gapscope/spectrum.hpp"

#include <doctest.h>

#include <cmath>

using namespace gapscope;

namespace {

bool certified(const FamilyInstance<Rational>& inst) {
  const auto certs = closed_gaps_exact(inst.vec);
  for (const Prediction& pr : inst.predicted) {
    bool found = false;
    for (const auto& c : certs)
      found = found || (std::abs(c.energy - pr.energy) <= 1e-8 && c.sign == pr.sign);
    if (!found) return false;
  }
  return true;
}

bool certified(const FamilyInstance<double>& inst, double tol = 1e-8) {
  const auto certs = closed_gaps_float(inst.vec, tol);
  for (const Prediction& pr : inst.predicted) {
    bool found = false;
    for (const auto& c : certs)
      found = found || (std::abs(c.energy - pr.energy) <= 1e-8 && c.sign == pr.sign);
    if (!found) return false;
  }
  return true;
}

} // namespace

TEST_CASE("the worked family instances") {
  const auto p4 = make_family<Rational>("dso-p4", {{"lambda", 5}});
  CHECK(p4.vec.v == std::vector<Rational>{0, 5, 0, -5});
  REQUIRE(p4.predicted.size() == 1);
  CHECK(p4.predicted[0].energy == 0.0);
  CHECK(p4.predicted[0].sign == +1);

  const auto p5 = make_family<Rational>("dso-p5-plus", {{"lambda", 2}, {"eta", 3}});
  CHECK(p5.vec.v == std::vector<Rational>{2, 3, Rational(3, 5), 5, Rational(4, 5)});
  CHECK(certified(p5));

  const auto op5 = make_family<double>("odjm-p5", {{"alpha", 2.0}, {"beta", 2.0}});
  const double a3 = std::sqrt(7.0 / 3.0);
  REQUIRE(op5.vec.a.size() == 5);
  CHECK(op5.vec.a[0] == 2.0);
  CHECK(op5.vec.a[1] == 2.0);
  CHECK(std::abs(op5.vec.a[2] - a3) < 1e-15);
  CHECK(std::abs(op5.vec.a[3] - 4.0 / 3.0) < 1e-15);
  CHECK(std::abs(op5.vec.a[4] - a3) < 1e-15);
  REQUIRE(op5.predicted.size() == 2);
  CHECK(op5.predicted[0].sign == -1); // at -1
  CHECK(op5.predicted[1].sign == +1); // at +1
  CHECK(certified(op5, 1e-10));
}

TEST_CASE("family domain errors") {
  CHECK_THROWS_AS(make_family<Rational>("dso-p4", {{"lambda", 0}}), std::domain_error);
  CHECK_THROWS_AS(make_family<Rational>("dso-p5-plus", {{"lambda", 1}, {"eta", 1}}),
                  std::domain_error);
  CHECK_THROWS_AS(make_family<double>("odjm-p5", {{"alpha", 1.0}, {"beta", 0.5}}),
                  std::domain_error);
  CHECK_THROWS_AS(make_family<double>("odjm-p6", {{"alpha", 0.5}, {"beta", 2.0}}),
                  std::domain_error);
  CHECK_THROWS_AS(make_family<Rational>("dso-odd-spike", {{"p", 8}}), std::domain_error);
  CHECK_THROWS_AS(make_family<Rational>("dso-odd-spike", {{"p", 5}}), std::domain_error);
  CHECK_THROWS_AS(make_family<Rational>("dso-even-spike", {{"p", 9}}), std::domain_error);
  CHECK_THROWS_AS(make_family<Rational>("nope", {}), std::invalid_argument);
  CHECK_THROWS_AS(make_family<Rational>("dso-p4", {{"lambda", 5}, {"bogus", 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_family<Rational>("odjm-p5", {{"alpha", 2}, {"beta", 2}}),
                  irrational_family_error);
  // Reducible instances are rejected: a = (1,1,1,1).
  CHECK_THROWS_AS(make_family<Rational>("odjm-p4", {{"a1", 1}, {"a2", 1}, {"a3", 1}}),
                  std::domain_error);
}

TEST_CASE("the golden-ratio parameters give a constant potential and are rejected") {
  const double phi = (std::sqrt(5.0) + 1.0) / 2.0;
  CHECK_THROWS_AS(make_family<double>("dso-p5-plus", {{"lambda", phi}, {"eta", phi}}),
                  std::domain_error);
}

TEST_CASE("the period-5 entries obey the forward recurrence") {
  Rng rng(808);
  for (int i = 0; i < 25; ++i) {
    Rational l(rng.uniform_int(-12, 12), 4), e(rng.uniform_int(-12, 12), 4);
    l.canonicalize();
    e.canonicalize();
    if (l * e == 1) continue;
    FamilyInstance<Rational> inst;
    try {
      inst = make_family<Rational>("dso-p5-plus", {{"lambda", l}, {"eta", e}});
    } catch (const std::domain_error&) {
      continue; // reducible draw
    }
    const auto& v = inst.vec.v;
    for (int j = 0; j < 5; ++j) {
      const Rational x = v[static_cast<std::size_t>(j)];
      const Rational y = v[static_cast<std::size_t>((j + 1) % 5)];
      const Rational z = v[static_cast<std::size_t>((j + 2) % 5)];
      if (sign_of(x * y - 1) == 0) continue;
      CHECK(z == (x + 1) / (x * y - 1));
    }
  }
}

TEST_CASE("every family certifies its predictions over random in-domain draws") {
  Rng rng(909);
  int checked = 0;
  for (int i = 0; i < 25; ++i) {
    {
      Rational l(rng.uniform_int(1, 24), 4);
      l.canonicalize();
      CHECK(certified(make_family<Rational>("dso-p4", {{"lambda", l}})));
      ++checked;
    }
    {
      Rational a1(rng.uniform_int(1, 12), 3), a2(rng.uniform_int(1, 12), 3),
          a3(rng.uniform_int(1, 12), 3);
      a1.canonicalize();
      a2.canonicalize();
      a3.canonicalize();
      try {
        CHECK(certified(make_family<Rational>("odjm-p4", {{"a1", a1}, {"a2", a2}, {"a3", a3}})));
        ++checked;
      } catch (const std::domain_error&) {
      }
    }
    {
      Rational l(rng.uniform_int(-10, 10), 4), e(rng.uniform_int(-10, 10), 4);
      l.canonicalize();
      e.canonicalize();
      for (const char* name : {"dso-p5-plus", "dso-p5-minus"}) {
        if (l * e == 1) continue;
        try {
          CHECK(certified(make_family<Rational>(name, {{"lambda", l}, {"eta", e}})));
          ++checked;
        } catch (const std::domain_error&) {
        }
      }
    }
    {
      const bool inner = rng.unit() < 0.5;
      double alpha, beta;
      if (inner) {
        alpha = rng.uniform(1.1, 3.0);
        beta = rng.uniform(1.1, 3.0);
      } else {
        do {
          alpha = rng.uniform(0.1, 0.65);
          beta = rng.uniform(0.1, 0.65);
        } while (alpha * alpha + beta * beta >= 0.95);
      }
      CHECK(certified(make_family<double>("odjm-p5", {{"alpha", alpha}, {"beta", beta}})));
      ++checked;
    }
    {
      Rational amp(rng.uniform_int(1, 16), 4);
      amp.canonicalize();
      CHECK(certified(make_family<Rational>("dso-p6", {{"a", amp}})));
      ++checked;
    }
    {
      const double alpha = rng.uniform(0.72, 2.5), beta = rng.uniform(0.72, 2.5);
      CHECK(certified(make_family<double>("odjm-p6", {{"alpha", alpha}, {"beta", beta}})));
      ++checked;
    }
    {
      const int podd = 7 + 2 * static_cast<int>(rng.uniform_int(0, 2));
      CHECK(certified(make_family<Rational>("dso-odd-spike", {{"p", podd}})));
      const int peven = 8 + 2 * static_cast<int>(rng.uniform_int(0, 2));
      CHECK(certified(make_family<Rational>("dso-even-spike", {{"p", peven}})));
      checked += 2;
    }
    {
      const int p = 4 + 2 * static_cast<int>(rng.uniform_int(0, 3));
      std::map<std::string, Rational> params{{"p", p}};
      for (int j = 1; j < p; ++j) {
        Rational x(rng.uniform_int(2, 16), rng.uniform_int(2, 8));
        x.canonicalize();
        params["a" + std::to_string(j)] = x;
      }
      try {
        CHECK(certified(make_family<Rational>("odjm-even-balanced", params)));
        ++checked;
      } catch (const std::domain_error&) {
      }
    }
    {
      const int p3 = (rng.unit() < 0.5) ? 7 : 11;
      CHECK(certified(make_family<double>("odjm-3mod4", {{"p", static_cast<double>(p3)}})));
      const int p1 = (rng.unit() < 0.5) ? 9 : 13;
      CHECK(certified(make_family<double>("odjm-1mod4", {{"p", static_cast<double>(p1)}})));
      checked += 2;
    }
    {
      Rational l(rng.uniform_int(1, 16), 4);
      l.canonicalize();
      CHECK(certified(make_family<Rational>("dso-p8", {{"lambda", l}})));
      ++checked;
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("doubling construction: worked example and the counting bound") {
  const VectorQ base = make_dso<Rational>({0, 2});
  const auto inst = double_construct(base, 2);
  CHECK(inst.vec.v == std::vector<Rational>{0, 2, 0, 2, 2, 0, 2, 0});
  CHECK(is_irreducible(inst.vec));
  REQUIRE(inst.predicted.size() == 2);
  const double r3 = std::sqrt(3.0);
  CHECK(std::abs(inst.predicted[0].energy - (1.0 - r3)) < 1e-10);
  CHECK(std::abs(inst.predicted[1].energy - (1.0 + r3)) < 1e-10);
  CHECK(closed_gaps_exact(inst.vec).size() >= 2);

  // Monodromy at the predicted energies is the identity.
  const VectorD w = to_float(inst.vec);
  for (const Prediction& pr : inst.predicted)
    CHECK(identity_residual(monodromy_numeric(w, pr.energy), +1) < 1e-9);

  Rng rng(117);
  for (int i = 0; i < 6; ++i) {
    const int p = 2 + static_cast<int>(rng.uniform_int(0, 1));
    const int k = 2 + static_cast<int>(rng.uniform_int(0, 1));
    std::vector<Rational> v;
    for (int j = 0; j < p; ++j) {
      Rational x(rng.uniform_int(-8, 8), 2);
      x.canonicalize();
      v.push_back(x);
    }
    VectorQ b = make_dso<Rational>(v);
    if (!is_irreducible(b)) continue;
    const auto out = double_construct(b, k);
    const int base_count = static_cast<int>(closed_gaps_exact(b).size());
    CHECK(out.vec.period() == 2 * k * p);
    CHECK(is_irreducible(out.vec));
    CHECK(static_cast<int>(closed_gaps_exact(out.vec).size()) >= base_count + (k - 1) * p);
  }
}

TEST_CASE("doubling rejects bad input") {
  CHECK_THROWS_AS(double_construct(make_dso<Rational>({1, 1}), 2), std::domain_error);
  CHECK_THROWS_AS(double_construct(make_dso<Rational>({0, 2}), 1), std::invalid_argument);
}

TEST_CASE("the registry names every constructor exactly once") {
  const auto& reg = family_registry();
  CHECK(reg.size() == 13);
  for (const FamilyInfo& info : reg) {
    CHECK(!info.name.empty());
    CHECK(!info.summary.empty());
    CHECK(!info.domain.empty());
  }
}
