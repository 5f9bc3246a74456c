#pragma once

#include "gapscope/poly.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gapscope {

/// Operator class: general Jacobi, discrete Schrödinger (a ≡ 1), or
/// off-diagonal (v ≡ 0).
enum class Model { jac, dso, odjm };

inline std::string to_string(Model m) {
  switch (m) {
    case Model::jac: return "jac";
    case Model::dso: return "dso";
    case Model::odjm: return "odjm";
  }
  return "jac";
}

inline Model model_from_string(const std::string& s) {
  if (s == "jac") return Model::jac;
  if (s == "dso") return Model::dso;
  if (s == "odjm") return Model::odjm;
  throw std::invalid_argument("unknown model: " + s);
}

/// Periodic coefficient pair (a, v), period p = a.size() = v.size() ≥ 1,
/// every a_n > 0. DSO forces a ≡ 1, ODJM forces v ≡ 0.
template <class S>
struct CoefficientVector {
  Model model = Model::jac;
  std::vector<S> a, v;

  int period() const { return static_cast<int>(v.size()); }
};

using VectorQ = CoefficientVector<Rational>;
using VectorD = CoefficientVector<double>;

namespace detail {

template <class S>
Model derive_model(const std::vector<S>& a, const std::vector<S>& v) {
  bool ones = true, zeros = true;
  for (const S& x : a) ones = ones && same_scalar(x, S(1));
  for (const S& x : v) zeros = zeros && same_scalar(x, S(0));
  if (ones) return Model::dso;
  if (zeros) return Model::odjm;
  return Model::jac;
}

} // namespace detail

template <class S>
CoefficientVector<S> make_vector(Model model, std::vector<S> a, std::vector<S> v) {
  if (a.empty() && model == Model::dso) a.assign(v.size(), S(1));
  if (v.empty() && model == Model::odjm) v.assign(a.size(), S(0));
  if (a.size() != v.size()) throw std::invalid_argument("coefficient length mismatch");
  if (a.empty()) throw std::invalid_argument("period must be at least 1");
  for (const S& x : a) {
    require_finite(x);
    if (sign_of(x) <= 0) throw std::invalid_argument("off-diagonal entries must be positive");
  }
  for (const S& x : v) require_finite(x);
  if (model == Model::dso)
    for (const S& x : a)
      if (!same_scalar(x, S(1)))
        throw std::invalid_argument("dso model requires all off-diagonals equal to 1");
  if (model == Model::odjm)
    for (const S& x : v)
      if (!same_scalar(x, S(0)))
        throw std::invalid_argument("odjm model requires zero diagonal");
  return CoefficientVector<S>{model, std::move(a), std::move(v)};
}

template <class S>
CoefficientVector<S> make_dso(std::vector<S> v) {
  return make_vector<S>(Model::dso, {}, std::move(v));
}

template <class S>
CoefficientVector<S> make_odjm(std::vector<S> a) {
  return make_vector<S>(Model::odjm, std::move(a), {});
}

template <class S>
CoefficientVector<S> make_jac(std::vector<S> a, std::vector<S> v) {
  return make_vector<S>(Model::jac, std::move(a), std::move(v));
}

/// Left rotation of both sequences by k (mod p).
template <class S>
CoefficientVector<S> cyclic_shift(const CoefficientVector<S>& c, int k) {
  const int p = c.period();
  const int r = ((k % p) + p) % p;
  CoefficientVector<S> out{c.model, {}, {}};
  out.a.reserve(c.a.size());
  out.v.reserve(c.v.size());
  for (int i = 0; i < p; ++i) {
    out.a.push_back(c.a[static_cast<std::size_t>((i + r) % p)]);
    out.v.push_back(c.v[static_cast<std::size_t>((i + r) % p)]);
  }
  return out;
}

/// True iff the p cyclic shifts of (a, v) are pairwise distinct. Equality is
/// exact on the exact backend and bit-level on floats; callers wanting fuzzy
/// matching should round first.
template <class S>
bool is_irreducible(const CoefficientVector<S>& c) {
  const int p = c.period();
  for (int k = 1; k < p; ++k) {
    bool equal = true;
    for (int i = 0; i < p && equal; ++i) {
      const std::size_t j = static_cast<std::size_t>((i + k) % p);
      const std::size_t ii = static_cast<std::size_t>(i);
      equal = same_scalar(c.a[ii], c.a[j]) && same_scalar(c.v[ii], c.v[j]);
    }
    if (equal) return false;
  }
  return true;
}

/// v ↦ v + cst·1; the model tag is re-derived from the result.
template <class S>
CoefficientVector<S> shift_potential(const CoefficientVector<S>& c, const S& cst) {
  std::vector<S> v = c.v;
  for (S& x : v) x += cst;
  std::vector<S> a = c.a;
  const Model m = detail::derive_model(a, v);
  return CoefficientVector<S>{m, std::move(a), std::move(v)};
}

/// a ↦ cst·a with cst > 0; the model tag is re-derived (scaling a DSO yields
/// a JAC vector).
template <class S>
CoefficientVector<S> scale_offdiag(const CoefficientVector<S>& c, const S& cst) {
  if (sign_of(cst) <= 0) throw std::invalid_argument("scale factor must be positive");
  std::vector<S> a = c.a;
  for (S& x : a) x *= cst;
  std::vector<S> v = c.v;
  const Model m = detail::derive_model(a, v);
  return CoefficientVector<S>{m, std::move(a), std::move(v)};
}

/// Concatenation of coefficient words; the monodromy of the result is the
/// product in reverse order (tested as the anti-homomorphism property).
template <class S>
CoefficientVector<S> concat(const CoefficientVector<S>& x, const CoefficientVector<S>& y) {
  std::vector<S> a = x.a, v = x.v;
  a.insert(a.end(), y.a.begin(), y.a.end());
  v.insert(v.end(), y.v.begin(), y.v.end());
  const Model m = detail::derive_model(a, v);
  return CoefficientVector<S>{m, std::move(a), std::move(v)};
}

inline VectorD to_float(const VectorQ& c) {
  VectorD out{c.model, {}, {}};
  out.a.reserve(c.a.size());
  out.v.reserve(c.v.size());
  for (const Rational& x : c.a) out.a.push_back(to_double(x));
  for (const Rational& x : c.v) out.v.push_back(to_double(x));
  return out;
}

/// 2×2 unimodular one-step transfer matrix.
template <class S>
struct Transfer {
  S m11, m12, m21, m22;

  static Transfer identity() { return {S(1), S(0), S(0), S(1)}; }

  friend Transfer operator*(const Transfer& x, const Transfer& y) {
    return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
            x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
  }

  S det() const { return m11 * m22 - m12 * m21; }

  /// Inverse of a determinant-one matrix.
  Transfer inverse() const { return {m22, -m12, -m21, m11}; }
};

using TransferQ = Transfer<Rational>;
using TransferD = Transfer<double>;

/// B(s, t) = (1/s) [[t, -1], [s², 0]], s > 0.
template <class S>
Transfer<S> transfer_matrix(const S& s, const S& t) {
  if (sign_of(s) <= 0) throw std::invalid_argument("transfer matrix requires s > 0");
  return {t / s, S(-1) / s, s, S(0)};
}

/// Ordered product B(a_p, E - v_p) ··· B(a_1, E - v_1).
template <class S>
Transfer<S> monodromy_numeric(const CoefficientVector<S>& c, const S& energy) {
  Transfer<S> acc = Transfer<S>::identity();
  for (int j = 0; j < c.period(); ++j) {
    const std::size_t jj = static_cast<std::size_t>(j);
    const S t = energy - c.v[jj];
    acc = transfer_matrix(c.a[jj], t) * acc;
  }
  return acc;
}

/// Largest entry of |Φ - σ1|; the closed-gap residual.
inline double identity_residual(const TransferD& m, int sigma) {
  const double s = static_cast<double>(sigma);
  double r = std::abs(m.m11 - s);
  r = std::max(r, std::abs(m.m12));
  r = std::max(r, std::abs(m.m21));
  r = std::max(r, std::abs(m.m22 - s));
  return r;
}

/// Polynomial-valued monodromy cleared of its denominator:
/// entries are (∏ a_j)·Φ(E), with denom = ∏ a_j.
template <class S>
struct MonodromyPoly {
  Poly<S> p11, p12, p21, p22;
  S denom;

  Poly<S> trace() const { return p11 + p22; }
  Poly<S> det() const { return p11 * p22 - p12 * p21; }
};

template <class S>
MonodromyPoly<S> monodromy_poly(const CoefficientVector<S>& c) {
  using P = Poly<S>;
  MonodromyPoly<S> acc{P::one(), P::zero(), P::zero(), P::one(), S(1)};
  for (int j = 0; j < c.period(); ++j) {
    const std::size_t jj = static_cast<std::size_t>(j);
    // s_j·B(a_j, E - v_j) = [[E - v_j, -1], [a_j², 0]]
    const P b11{-c.v[jj], S(1)};
    const P b12{S(-1)};
    const P b21{c.a[jj] * c.a[jj]};
    MonodromyPoly<S> next;
    next.p11 = b11 * acc.p11 + b12 * acc.p21;
    next.p12 = b11 * acc.p12 + b12 * acc.p22;
    next.p21 = b21 * acc.p11;
    next.p22 = b21 * acc.p12;
    next.denom = acc.denom * c.a[jj];
    acc = std::move(next);
  }
  return acc;
}

/// D(E) = Tr Φ(E); degree p with leading coefficient 1/denom.
template <class S>
struct Discriminant {
  Poly<S> poly;
  S denom;
};

template <class S>
Discriminant<S> discriminant(const CoefficientVector<S>& c) {
  MonodromyPoly<S> m = monodromy_poly(c);
  return {m.trace().scaled(S(1) / m.denom), m.denom};
}

} // namespace gapscope
