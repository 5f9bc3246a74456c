#include "gapscope/families.hpp"

#include "gapscope/float_roots.hpp"
#include "gapscope/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gapscope {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

template <class S>
S get_param(const std::map<std::string, S>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw std::invalid_argument("missing parameter: " + key);
  return it->second;
}

template <class S>
int get_int_param(const std::map<std::string, S>& params, const std::string& key) {
  const S value = get_param(params, key);
  const double d = to_double(value);
  const int n = static_cast<int>(std::llround(d));
  if (std::abs(d - n) != 0.0) throw std::invalid_argument("parameter must be an integer: " + key);
  return n;
}

void check_param_names(const std::vector<std::string>& expected, const auto& params,
                       const std::string& family) {
  for (const auto& [key, value] : params)
    if (std::find(expected.begin(), expected.end(), key) == expected.end())
      throw std::invalid_argument("unknown parameter '" + key + "' for family " + family);
}

/// Sign σ with Φ(E) = σ·1; exact matrix identity on the exact backend,
/// smaller residual on floats (certification happens later either way).
template <class S>
int closed_gap_sign(const CoefficientVector<S>& c, const S& energy) {
  if constexpr (is_exact_backend<S>) {
    const TransferQ m = monodromy_numeric(c, energy);
    for (int sigma : {+1, -1}) {
      const Rational s{sigma};
      if (m.m11 == s && m.m22 == s && sign_of(m.m12) == 0 && sign_of(m.m21) == 0) return sigma;
    }
    throw std::logic_error("constructed family has no closed gap at the predicted energy");
  } else {
    const TransferD m = monodromy_numeric(c, energy);
    return identity_residual(m, +1) <= identity_residual(m, -1) ? +1 : -1;
  }
}

template <class S>
int float_sign_at(const CoefficientVector<S>& c, double energy) {
  if constexpr (is_exact_backend<S>) {
    return closed_gap_sign(to_float(c), energy);
  } else {
    return closed_gap_sign(c, energy);
  }
}

template <class S>
FamilyInstance<S> finish(CoefficientVector<S> vec, std::vector<Prediction> predicted) {
  if (!is_irreducible(vec)) throw std::domain_error("parameters produce a reducible vector");
  std::sort(predicted.begin(), predicted.end(),
            [](const Prediction& x, const Prediction& y) { return x.energy < y.energy; });
  return {std::move(vec), std::move(predicted)};
}

template <class S>
FamilyInstance<S> family_dso_p4(const S& lambda) {
  if (scalar_is_zero(lambda)) throw std::domain_error("dso-p4 requires lambda != 0");
  auto vec = make_dso<S>({S(0), lambda, S(0), -lambda});
  return finish(std::move(vec), {{0.0, +1}});
}

template <class S>
FamilyInstance<S> family_odjm_p4(const S& a1, const S& a2, const S& a3) {
  for (const S* x : {&a1, &a2, &a3})
    if (sign_of(*x) <= 0) throw std::domain_error("odjm-p4 requires positive entries");
  const S a4 = a1 * a3 / a2;
  auto vec = make_odjm<S>({a1, a2, a3, a4});
  return finish(std::move(vec), {{0.0, +1}});
}

template <class S>
FamilyInstance<S> family_dso_p5(const S& lambda, const S& eta, int branch) {
  const S prod = lambda * eta - S(1);
  if (scalar_is_zero(prod)) throw std::domain_error("dso-p5 requires lambda*eta != 1");
  std::vector<S> v;
  if (branch > 0) {
    v = {lambda, eta, (lambda + S(1)) / prod, prod, (eta + S(1)) / prod};
  } else {
    v = {lambda, eta, (lambda - S(1)) / prod, -prod, (eta - S(1)) / prod};
  }
  auto vec = make_dso<S>(std::move(v));
  return finish(std::move(vec), {{0.0, branch}});
}

FamilyInstance<double> family_odjm_p5(double alpha, double beta) {
  const bool inner = alpha > 1.0 && beta > 1.0;
  const bool outer = alpha > 0.0 && beta > 0.0 && alpha * alpha + beta * beta < 1.0;
  if (!inner && !outer)
    throw std::domain_error("odjm-p5 requires alpha,beta > 1 or alpha^2 + beta^2 < 1");
  const double a2 = alpha * alpha, b2 = beta * beta;
  std::vector<double> a = {alpha, beta, std::sqrt((a2 + b2 - 1.0) / (a2 - 1.0)),
                           alpha * beta / std::sqrt((a2 - 1.0) * (b2 - 1.0)),
                           std::sqrt((a2 + b2 - 1.0) / (b2 - 1.0))};
  auto vec = make_odjm<double>(std::move(a));
  // Inner pair: Φ(1) = 1, Φ(-1) = -1; outer pair swaps the signs.
  std::vector<Prediction> pred =
      inner ? std::vector<Prediction>{{1.0, +1}, {-1.0, -1}}
            : std::vector<Prediction>{{1.0, -1}, {-1.0, +1}};
  return finish(std::move(vec), std::move(pred));
}

template <class S>
FamilyInstance<S> family_dso_p6(const S& amp) {
  if (scalar_is_zero(amp)) throw std::domain_error("dso-p6 requires a != 0");
  auto vec = make_dso<S>({amp, S(0), S(0), -amp, S(0), S(0)});
  return finish(std::move(vec), {{1.0, +1}, {-1.0, +1}});
}

FamilyInstance<double> family_odjm_p6(double alpha, double beta) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (!(alpha > inv_sqrt2 && beta > inv_sqrt2))
    throw std::domain_error("odjm-p6 requires alpha,beta > 1/sqrt(2)");
  const double a2 = alpha * alpha, b2 = beta * beta;
  std::vector<double> a = {alpha,
                           beta,
                           std::sqrt((a2 + b2 - 1.0) / (2.0 * a2 - 1.0)),
                           alpha / std::sqrt(2.0 * a2 - 1.0),
                           beta / std::sqrt(2.0 * b2 - 1.0),
                           std::sqrt((a2 + b2 - 1.0) / (2.0 * b2 - 1.0))};
  auto vec = make_odjm<double>(std::move(a));
  return finish(std::move(vec), {{0.0, -1}, {1.0, +1}, {-1.0, +1}});
}

template <class S>
FamilyInstance<S> family_dso_spike(int p, bool odd) {
  if (odd && (p < 7 || p % 2 == 0))
    throw std::domain_error("dso-odd-spike requires odd p >= 7");
  if (!odd && (p < 8 || p % 2 == 1))
    throw std::domain_error("dso-even-spike requires even p >= 8");
  std::vector<S> v(static_cast<std::size_t>(p), S(0));
  v[0] = v[1] = v[2] = S(1);
  if (!odd) v[3] = v[4] = v[5] = S(-1);
  auto vec = make_dso<S>(std::move(v));
  const int sigma = closed_gap_sign(vec, S(0));
  return finish(std::move(vec), {{0.0, sigma}});
}

template <class S>
FamilyInstance<S> family_odjm_even_balanced(int p, std::vector<S> head) {
  if (p < 4 || p % 2 == 1) throw std::domain_error("odjm-even-balanced requires even p >= 4");
  if (head.empty()) {
    for (int j = 1; j < p; ++j) head.push_back(S(1) + S(j) / S(8));
  }
  if (static_cast<int>(head.size()) != p - 1)
    throw std::invalid_argument("odjm-even-balanced needs p-1 leading entries");
  S odd_prod(1), even_prod(1);
  for (int j = 0; j < p - 1; ++j) {
    if (sign_of(head[static_cast<std::size_t>(j)]) <= 0)
      throw std::domain_error("entries must be positive");
    (j % 2 == 0 ? odd_prod : even_prod) *= head[static_cast<std::size_t>(j)];
  }
  head.push_back(odd_prod / even_prod); // a_p balances a1·a3···a_{p-1} = a2·a4···a_p
  auto vec = make_odjm<S>(std::move(head));
  const int sigma = closed_gap_sign(vec, S(0));
  return finish(std::move(vec), {{0.0, sigma}});
}

FamilyInstance<double> family_odjm_mod4(int p, int residue) {
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<double> a;
  if (residue == 3) {
    if (p < 7 || p % 4 != 3) throw std::domain_error("odjm-3mod4 requires p = 3 (mod 4), p >= 7");
    a = {1.0, 1.0, 1.0};
    a.resize(static_cast<std::size_t>(p), r);
  } else {
    if (p < 9 || p % 4 != 1) throw std::domain_error("odjm-1mod4 requires p = 1 (mod 4), p >= 9");
    a = {2.0, 3.0, 2.0, std::sqrt(1.5), std::sqrt(1.5)};
    a.resize(static_cast<std::size_t>(p), r);
  }
  auto vec = make_odjm<double>(std::move(a));
  const int sp = float_sign_at(vec, +1.0);
  const int sm = float_sign_at(vec, -1.0);
  return finish(std::move(vec), {{1.0, sp}, {-1.0, sm}});
}

template <class S>
FamilyInstance<S> family_dso_p8(const S& lambda) {
  if (scalar_is_zero(lambda)) throw std::domain_error("dso-p8 requires lambda != 0");
  auto vec = make_dso<S>({S(0), S(0), S(0), lambda, S(0), S(0), S(0), -lambda});
  const double root2 = std::sqrt(2.0);
  std::vector<Prediction> pred = {{0.0, closed_gap_sign(vec, S(0))},
                                  {root2, float_sign_at(vec, root2)},
                                  {-root2, float_sign_at(vec, -root2)}};
  return finish(std::move(vec), std::move(pred));
}

} // namespace

const std::vector<FamilyInfo>& family_registry() {
  static const std::vector<FamilyInfo> registry = {
      {"dso-p4", {"lambda"}, "lambda != 0",
       "period-4 potential (0, l, 0, -l); one closed gap at E = 0", false},
      {"odjm-p4", {"a1", "a2", "a3"}, "a1, a2, a3 > 0",
       "period-4 off-diagonals with a4 = a1*a3/a2; one closed gap at E = 0", false},
      {"dso-p5-plus", {"lambda", "eta"}, "lambda*eta != 1",
       "period-5 potential closing a periodic gap at E = 0", false},
      {"dso-p5-minus", {"lambda", "eta"}, "lambda*eta != 1",
       "period-5 potential closing an antiperiodic gap at E = 0", false},
      {"odjm-p5", {"alpha", "beta"}, "alpha, beta > 1 or alpha^2 + beta^2 < 1",
       "period-5 off-diagonals with closed gaps at E = +1 and E = -1", true},
      {"dso-p6", {"a"}, "a != 0",
       "period-6 potential (a, 0, 0, -a, 0, 0); closed gaps at E = +1 and E = -1", false},
      {"odjm-p6", {"alpha", "beta"}, "alpha, beta > 1/sqrt(2)",
       "period-6 off-diagonals with closed gaps at E = 0, +1, -1", true},
      {"dso-odd-spike", {"p"}, "odd p >= 7",
       "potential (1,1,1,0,...,0); one closed gap at E = 0", false},
      {"dso-even-spike", {"p"}, "even p >= 8",
       "potential (1,1,1,-1,-1,-1,0,...,0); one closed gap at E = 0", false},
      {"odjm-even-balanced", {"p", "a1..a(p-1) (optional)"}, "even p >= 4, entries > 0",
       "off-diagonals balancing a1*a3*...*a(p-1) = a2*a4*...*ap; closed gap at E = 0", false},
      {"odjm-3mod4", {"p"}, "p = 3 (mod 4), p >= 7",
       "off-diagonals (1,1,1,1/sqrt2,...); closed gaps at E = +1 and E = -1", true},
      {"odjm-1mod4", {"p"}, "p = 1 (mod 4), p >= 9",
       "off-diagonals (2,3,2,sqrt(3/2),sqrt(3/2),1/sqrt2,...); closed gaps at E = +1 and E = -1",
       true},
      {"dso-p8", {"lambda"}, "lambda != 0",
       "period-8 potential (0,0,0,l,0,0,0,-l); closed gaps at E = 0 and E = +-sqrt(2)", false},
  };
  return registry;
}

template <class S>
FamilyInstance<S> make_family(const std::string& name, const std::map<std::string, S>& params) {
  const auto expect_sqrt_free = [&] {
    if constexpr (is_exact_backend<S>)
      throw irrational_family_error("family '" + name +
                                    "' has irrational entries; use the float backend");
  };
  if (name == "dso-p4") {
    check_param_names({"lambda"}, params, name);
    return family_dso_p4(get_param(params, "lambda"));
  }
  if (name == "odjm-p4") {
    check_param_names({"a1", "a2", "a3"}, params, name);
    return family_odjm_p4(get_param(params, "a1"), get_param(params, "a2"),
                          get_param(params, "a3"));
  }
  if (name == "dso-p5-plus" || name == "dso-p5-minus") {
    check_param_names({"lambda", "eta"}, params, name);
    return family_dso_p5(get_param(params, "lambda"), get_param(params, "eta"),
                         name == "dso-p5-plus" ? +1 : -1);
  }
  if (name == "odjm-p5") {
    expect_sqrt_free();
    if constexpr (!is_exact_backend<S>) {
      check_param_names({"alpha", "beta"}, params, name);
      return family_odjm_p5(get_param(params, "alpha"), get_param(params, "beta"));
    }
  }
  if (name == "dso-p6") {
    check_param_names({"a"}, params, name);
    return family_dso_p6(get_param(params, "a"));
  }
  if (name == "odjm-p6") {
    expect_sqrt_free();
    if constexpr (!is_exact_backend<S>) {
      check_param_names({"alpha", "beta"}, params, name);
      return family_odjm_p6(get_param(params, "alpha"), get_param(params, "beta"));
    }
  }
  if (name == "dso-odd-spike" || name == "dso-even-spike") {
    check_param_names({"p"}, params, name);
    return family_dso_spike<S>(get_int_param(params, "p"), name == "dso-odd-spike");
  }
  if (name == "odjm-even-balanced") {
    const int p = get_int_param(params, "p");
    std::vector<S> head;
    for (int j = 1; j < p; ++j) {
      auto it = params.find("a" + std::to_string(j));
      if (it == params.end()) break;
      head.push_back(it->second);
    }
    return family_odjm_even_balanced<S>(p, std::move(head));
  }
  if (name == "odjm-3mod4" || name == "odjm-1mod4") {
    expect_sqrt_free();
    if constexpr (!is_exact_backend<S>) {
      check_param_names({"p"}, params, name);
      return family_odjm_mod4(get_int_param(params, "p"), name == "odjm-3mod4" ? 3 : 1);
    }
  }
  if (name == "dso-p8") {
    check_param_names({"lambda"}, params, name);
    return family_dso_p8(get_param(params, "lambda"));
  }
  throw std::invalid_argument("unknown family: " + name);
}

template <class S>
FamilyInstance<S> double_construct(const CoefficientVector<S>& base, int k) {
  if (k < 2) throw std::invalid_argument("doubling requires k >= 2");
  if (!is_irreducible(base)) throw std::domain_error("base vector must be irreducible");
  const int p = base.period();

  const CoefficientVector<S> rotated = cyclic_shift(base, 1);
  CoefficientVector<S> w = base;
  for (int i = 1; i < k; ++i) w = concat(w, base);
  for (int i = 0; i < k; ++i) w = concat(w, rotated);
  if (!is_irreducible(w)) throw std::domain_error("doubling produced a reducible vector");

  std::vector<Prediction> pred;
  if constexpr (is_exact_backend<S>) {
    for (const ClosedGapCertificate& cert : closed_gaps_exact(base))
      pred.push_back({cert.energy, +1});
  } else {
    for (const ClosedGapCertificate& cert : closed_gaps_float(base))
      pred.push_back({cert.energy, +1});
  }

  VectorD fbase;
  if constexpr (is_exact_backend<S>) {
    fbase = to_float(base);
  } else {
    fbase = base;
  }
  const PolyD d = discriminant(fbase).poly;
  for (int j = 1; j < k; ++j) {
    const double target = 2.0 * std::cos(kPi * j / k);
    const PolyD q = d - PolyD(target);
    const std::vector<double> roots = sign_change_roots(q, critical_points(q));
    if (static_cast<int>(roots.size()) != p)
      throw std::runtime_error("doubling: trace equation lost real solutions");
    for (double r : roots) pred.push_back({r, +1});
  }
  std::sort(pred.begin(), pred.end(),
            [](const Prediction& x, const Prediction& y) { return x.energy < y.energy; });
  return {std::move(w), std::move(pred)};
}

template FamilyInstance<Rational> make_family<Rational>(const std::string&,
                                                        const std::map<std::string, Rational>&);
template FamilyInstance<double> make_family<double>(const std::string&,
                                                    const std::map<std::string, double>&);
template FamilyInstance<Rational> double_construct<Rational>(const VectorQ&, int);
template FamilyInstance<double> double_construct<double>(const VectorD&, int);

} // namespace gapscope
