#pragma once

#include "gapscope/scalar.hpp"

#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gapscope {

/// Dense univariate polynomial in E, coefficients low degree first.
///
/// The zero polynomial is the empty list; otherwise the leading coefficient
/// is nonzero. Canonicalization drops only coefficients that are exactly
/// zero, on both backends — degree is never changed by a tolerance.
template <class S>
class Poly {
public:
  Poly() = default;
  explicit Poly(S constant) {
    coeffs_.push_back(std::move(constant));
    canonicalize();
  }
  Poly(std::initializer_list<S> low_first) : coeffs_(low_first) {
    validate();
    canonicalize();
  }
  explicit Poly(std::vector<S> low_first) : coeffs_(std::move(low_first)) {
    validate();
    canonicalize();
  }

  static Poly zero() { return Poly{}; }
  static Poly one() { return Poly{S(1)}; }
  static Poly variable() { return Poly{S(0), S(1)}; }
  static Poly monomial(S c, int k) {
    std::vector<S> cs(static_cast<std::size_t>(k) + 1, S(0));
    cs.back() = std::move(c);
    return Poly(std::move(cs));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  S coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(k)]
                                                            : S(0);
  }
  const S& leading() const {
    if (is_zero()) throw std::logic_error("zero polynomial has no leading coefficient");
    return coeffs_.back();
  }
  const std::vector<S>& coeffs() const { return coeffs_; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<S> out(std::max(a.coeffs_.size(), b.coeffs_.size()), S(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<S> out(std::max(a.coeffs_.size(), b.coeffs_.size()), S(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] -= b.coeffs_[i];
    return Poly(std::move(out));
  }
  Poly operator-() const {
    std::vector<S> out = coeffs_;
    for (S& c : out) c = -c;
    return Poly(std::move(out));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly{};
    std::vector<S> out(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(out));
  }
  Poly scaled(const S& c) const {
    std::vector<S> out = coeffs_;
    for (S& x : out) x *= c;
    return Poly(std::move(out));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Horner evaluation.
  S operator()(const S& x) const {
    S acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  Poly derivative() const {
    if (coeffs_.size() <= 1) return Poly{};
    std::vector<S> out(coeffs_.size() - 1, S(0));
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      out[i - 1] = coeffs_[i] * S(static_cast<int>(i));
    return Poly(std::move(out));
  }

  /// p(E + c).
  Poly shifted_arg(const S& c) const {
    Poly acc;
    const Poly lin{c, S(1)};
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * lin + Poly(coeffs_[i]);
    return acc;
  }

  /// p(c·E).
  Poly scaled_arg(const S& c) const {
    std::vector<S> out = coeffs_;
    S f(1);
    for (std::size_t i = 1; i < out.size(); ++i) {
      f *= c;
      out[i] *= f;
    }
    return Poly(std::move(out));
  }

  struct DivMod {
    Poly quot, rem;
  };
  /// Euclidean division over the coefficient field; b must be nonzero.
  static DivMod divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<S> rem = a.coeffs_;
    const int db = b.degree();
    if (a.degree() < db) return {Poly{}, a};
    std::vector<S> quot(static_cast<std::size_t>(a.degree() - db) + 1, S(0));
    for (int k = a.degree(); k >= db; --k) {
      const std::size_t kk = static_cast<std::size_t>(k);
      if (scalar_is_zero(rem[kk])) continue;
      const S q = rem[kk] / b.leading();
      quot[static_cast<std::size_t>(k - db)] = q;
      for (int j = 0; j <= db; ++j)
        rem[static_cast<std::size_t>(k - db + j)] -= q * b.coeffs_[static_cast<std::size_t>(j)];
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(S(1) / leading());
  }

private:
  void validate() const {
    for (const S& c : coeffs_) require_finite(c);
  }
  void canonicalize() {
    while (!coeffs_.empty() && scalar_is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<S> coeffs_;
};

using PolyQ = Poly<Rational>;
using PolyD = Poly<double>;

inline PolyD to_float(const PolyQ& p) {
  std::vector<double> cs;
  cs.reserve(p.coeffs().size());
  for (const Rational& c : p.coeffs()) cs.push_back(to_double(c));
  return PolyD(std::move(cs));
}

} // namespace gapscope
