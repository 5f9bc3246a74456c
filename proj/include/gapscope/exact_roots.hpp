#pragma once

#include "gapscope/poly.hpp"

#include <vector>

namespace gapscope {

/// Monic gcd over the rationals, computed with the subresultant remainder
/// sequence on the primitive integer parts. Exactly one argument may be zero.
PolyQ poly_gcd(const PolyQ& p, const PolyQ& q);

/// Monic p / gcd(p, p'); same distinct roots as p, all simple.
PolyQ squarefree_part(const PolyQ& p);

/// Distinct real roots of p in (lo, hi]. Neither endpoint may be a root.
int sturm_count(const PolyQ& p, const Rational& lo, const Rational& hi);

/// One real root, either exactly (lo == hi) or as an open interval (lo, hi)
/// whose endpoints are not roots and which contains exactly one distinct root.
struct IsolatedRootQ {
  Rational lo, hi;
  bool is_point() const { return lo == hi; }
  Rational midpoint() const { return (lo + hi) / 2; }
};

/// Counted bracket as handed to callers; count is the number of distinct
/// roots in (lo, hi], 1 for isolating brackets.
template <class S>
struct RootBracket {
  S lo, hi;
  int count = 1;
};

/// Sturm chain of the squarefree part, with primitive integer coefficients.
class SturmSequence {
public:
  explicit SturmSequence(const PolyQ& p);

  const PolyQ& squarefree() const { return chain_.front(); }
  int variations_at(const Rational& x) const;
  /// Distinct roots in the open interval (lo, hi); endpoints must not be roots.
  int count_open(const Rational& lo, const Rational& hi) const;
  /// All real roots lie strictly inside (-bound, bound).
  Rational root_bound() const;
  /// Sorted isolating intervals for every distinct real root.
  std::vector<IsolatedRootQ> isolate() const;
  /// One bisection step; points are left unchanged.
  void shrink(IsolatedRootQ& r) const;

private:
  std::vector<PolyQ> chain_;
};

std::vector<IsolatedRootQ> isolate_roots(const PolyQ& p);

/// Does g vanish somewhere inside r? Endpoints of r must not be roots of g
/// (holds whenever g divides the polynomial r was isolated from).
bool vanishes_inside(const PolyQ& g, const IsolatedRootQ& r);

/// Shrinks x and y until their ranges are disjoint; -1 if x's root is the
/// smaller one, +1 otherwise. The two roots must be distinct reals.
int order_disjoint(IsolatedRootQ& x, const SturmSequence& sx, IsolatedRootQ& y,
                   const SturmSequence& sy);

Rational refine_root(const PolyQ& p, const IsolatedRootQ& r, const Rational& tol);
double refine_root_double(const PolyQ& p, const IsolatedRootQ& r, double tol = 1e-12);

/// Counted-bracket form: exact roots are widened into strict brackets.
std::vector<RootBracket<Rational>> isolate_real_roots(const PolyQ& p);
Rational refine_root(const PolyQ& p, const RootBracket<Rational>& b, const Rational& tol);

} // namespace gapscope
