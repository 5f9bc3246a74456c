#include "gapscope/exact_roots.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace gapscope {

namespace {

// Primitive integer polynomials, low degree first, for the subresultant PRS
// and for Sturm chains (integer coefficients keep gmp arithmetic cheap).
using ZPoly = std::vector<mpz_class>;

void z_canonicalize(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class z_content(const ZPoly& p) {
  mpz_class g = 0;
  for (const mpz_class& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g; // 0 for the zero polynomial
}

ZPoly to_primitive_int(const PolyQ& p) {
  if (p.is_zero()) return {};
  mpz_class den_lcm = 1;
  for (const Rational& c : p.coeffs())
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  ZPoly out;
  out.reserve(p.coeffs().size());
  for (const Rational& c : p.coeffs()) {
    mpz_class num = c.get_num() * (den_lcm / c.get_den());
    out.push_back(std::move(num));
  }
  mpz_class cont = z_content(out);
  if (sgn(out.back()) < 0) cont = -cont;
  for (mpz_class& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), cont.get_mpz_t());
  return out;
}

PolyQ from_int(const ZPoly& p) {
  std::vector<Rational> cs;
  cs.reserve(p.size());
  for (const mpz_class& c : p) cs.emplace_back(c);
  return PolyQ(std::move(cs));
}

mpz_class z_pow(const mpz_class& x, unsigned e);

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed in Z.
ZPoly z_prem(ZPoly a, const ZPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const mpz_class& lb = b.back();
  int da = static_cast<int>(a.size()) - 1;
  int e = da - db + 1;
  while (da >= db) {
    const mpz_class top = a.back();
    for (mpz_class& c : a) c *= lb;
    for (int j = 0; j <= db; ++j)
      a[static_cast<std::size_t>(da - db + j)] -= top * b[static_cast<std::size_t>(j)];
    a.pop_back();
    z_canonicalize(a);
    da = static_cast<int>(a.size()) - 1;
    --e;
  }
  if (e > 0 && !a.empty()) {
    const mpz_class f = z_pow(lb, static_cast<unsigned>(e));
    for (mpz_class& c : a) c *= f;
  }
  return a;
}

mpz_class z_pow(const mpz_class& x, unsigned e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
  return r;
}

// Subresultant PRS; returns the primitive integer gcd of primitive a, b.
ZPoly z_gcd_subresultant(ZPoly a, ZPoly b) {
  if (a.size() < b.size()) std::swap(a, b);
  mpz_class g = 1, h = 1;
  for (;;) {
    const int delta = static_cast<int>(a.size()) - static_cast<int>(b.size());
    ZPoly r = z_prem(a, b);
    if (r.empty()) break;
    if (r.size() == 1) return {mpz_class(1)};
    a = std::move(b);
    mpz_class div = g * z_pow(h, static_cast<unsigned>(delta));
    for (mpz_class& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), div.get_mpz_t());
    b = std::move(r);
    g = a.back();
    if (delta >= 1) {
      mpz_class gd = z_pow(g, static_cast<unsigned>(delta));
      if (delta == 1) {
        h = gd;
      } else {
        mpz_class hd = z_pow(h, static_cast<unsigned>(delta - 1));
        mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hd.get_mpz_t());
      }
    }
  }
  mpz_class cont = z_content(b);
  if (sgn(b.back()) < 0) cont = -cont;
  for (mpz_class& c : b) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), cont.get_mpz_t());
  return b;
}

// Scales to primitive integer coefficients by a positive rational; the sign
// pattern is untouched, which is what the Sturm chain needs.
PolyQ primitive_scaled(const PolyQ& p) {
  if (p.is_zero()) return p;
  return from_int([&] {
    ZPoly z = to_primitive_int(p);
    if (sign_of(p.leading()) < 0 && sgn(z.back()) > 0)
      for (mpz_class& c : z) c = -c;
    return z;
  }());
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

} // namespace

PolyQ poly_gcd(const PolyQ& p, const PolyQ& q) {
  if (p.is_zero() && q.is_zero())
    throw std::invalid_argument("gcd of two zero polynomials is undefined");
  if (p.is_zero()) return q.monic();
  if (q.is_zero()) return p.monic();
  if (p.degree() == 0 || q.degree() == 0) return PolyQ::one();
  ZPoly g = z_gcd_subresultant(to_primitive_int(p), to_primitive_int(q));
  return from_int(g).monic();
}

PolyQ squarefree_part(const PolyQ& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial");
  if (p.degree() == 0) return PolyQ::one();
  const PolyQ g = poly_gcd(p, p.derivative());
  if (g.degree() == 0) return p.monic();
  auto [quot, rem] = PolyQ::divmod(p, g);
  assert(rem.is_zero());
  return quot.monic();
}

SturmSequence::SturmSequence(const PolyQ& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial");
  PolyQ cur = primitive_scaled(squarefree_part(p));
  chain_.push_back(cur);
  if (cur.degree() == 0) return;
  PolyQ prev = cur;
  cur = primitive_scaled(cur.derivative());
  chain_.push_back(cur);
  while (cur.degree() > 0) {
    PolyQ rem = PolyQ::divmod(prev, cur).rem;
    if (rem.is_zero()) break; // cannot happen for a squarefree start
    prev = cur;
    cur = primitive_scaled(-rem);
    chain_.push_back(cur);
  }
}

int SturmSequence::variations_at(const Rational& x) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const PolyQ& f : chain_) signs.push_back(sign_of(f(x)));
  return sign_changes(signs);
}

int SturmSequence::count_open(const Rational& lo, const Rational& hi) const {
  return variations_at(lo) - variations_at(hi);
}

Rational SturmSequence::root_bound() const {
  const PolyQ& p = chain_.front();
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) {
    Rational c = abs(p.coeff(k) / p.leading());
    if (c > m) m = c;
  }
  return m + 2;
}

void SturmSequence::shrink(IsolatedRootQ& r) const {
  if (r.is_point()) return;
  const Rational mid = r.midpoint();
  const int s = sign_of(squarefree()(mid));
  if (s == 0) {
    r.lo = r.hi = mid;
  } else if (count_open(r.lo, mid) == 1) {
    r.hi = mid;
  } else {
    r.lo = mid;
  }
}

std::vector<IsolatedRootQ> SturmSequence::isolate() const {
  std::vector<IsolatedRootQ> out;
  if (squarefree().degree() <= 0) return out;
  const Rational bound = root_bound();

  // Depth-first, left interval first, so output is sorted.
  struct Range {
    Rational lo, hi;
    int count;
  };
  std::vector<Range> stack;
  stack.push_back({-bound, bound, count_open(-bound, bound)});
  while (!stack.empty()) {
    Range cur = stack.back();
    stack.pop_back();
    if (cur.count == 0) continue;
    if (cur.count == 1) {
      out.push_back({cur.lo, cur.hi});
      continue;
    }
    const Rational mid = (cur.lo + cur.hi) / 2;
    if (sign_of(squarefree()(mid)) == 0) {
      // Exact root at the split point; fence it off before recursing.
      Rational delta = (cur.hi - cur.lo) / 4;
      while (sign_of(squarefree()(mid - delta)) == 0 ||
             sign_of(squarefree()(mid + delta)) == 0 ||
             count_open(mid - delta, mid + delta) != 1)
        delta /= 2;
      const int left = count_open(cur.lo, mid - delta);
      const int right = cur.count - 1 - left;
      stack.push_back({mid + delta, cur.hi, right});
      stack.push_back({mid, mid, 1}); // emitted as a point below
      stack.push_back({cur.lo, mid - delta, left});
    } else {
      const int left = count_open(cur.lo, mid);
      stack.push_back({mid, cur.hi, cur.count - left});
      stack.push_back({cur.lo, mid, left});
    }
  }
  return out;
}

std::vector<IsolatedRootQ> isolate_roots(const PolyQ& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial");
  if (p.degree() == 0) return {};
  return SturmSequence(p).isolate();
}

int sturm_count(const PolyQ& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("empty interval");
  if (sign_of(p(lo)) == 0 || sign_of(p(hi)) == 0)
    throw std::invalid_argument("interval endpoint is a root");
  if (p.degree() == 0) return 0;
  return SturmSequence(p).count_open(lo, hi);
}

bool vanishes_inside(const PolyQ& g, const IsolatedRootQ& r) {
  if (g.is_zero()) return true;
  if (r.is_point()) return sign_of(g(r.lo)) == 0;
  if (g.degree() == 0) return false;
  if (sign_of(g(r.lo)) == 0 || sign_of(g(r.hi)) == 0)
    throw std::invalid_argument("bracket endpoint is a root of the divisor");
  return SturmSequence(g).count_open(r.lo, r.hi) > 0;
}

int order_disjoint(IsolatedRootQ& x, const SturmSequence& sx, IsolatedRootQ& y,
                   const SturmSequence& sy) {
  for (;;) {
    const bool both_points = x.is_point() && y.is_point();
    if (x.hi < y.lo || (x.hi == y.lo && !both_points)) return -1;
    if (y.hi < x.lo || (y.hi == x.lo && !both_points)) return 1;
    if (both_points) {
      if (x.lo < y.lo) return -1;
      if (y.lo < x.lo) return 1;
      throw std::logic_error("order_disjoint: identical roots");
    }
    if (y.is_point() || (!x.is_point() && x.hi - x.lo >= y.hi - y.lo))
      sx.shrink(x);
    else
      sy.shrink(y);
  }
}

Rational refine_root(const PolyQ& p, const IsolatedRootQ& r, const Rational& tol) {
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  if (r.is_point()) return r.lo;
  const PolyQ sq = squarefree_part(p);
  Rational lo = r.lo, hi = r.hi;
  int slo = sign_of(sq(lo));
  while (hi - lo > tol) {
    const Rational mid = (lo + hi) / 2;
    const int sm = sign_of(sq(mid));
    if (sm == 0) return mid;
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

double refine_root_double(const PolyQ& p, const IsolatedRootQ& r, double tol) {
  const Rational rt{tol};
  return to_double(refine_root(p, r, rt));
}

std::vector<RootBracket<Rational>> isolate_real_roots(const PolyQ& p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial");
  if (p.degree() == 0) return {};
  SturmSequence seq(p);
  const std::vector<IsolatedRootQ> roots = seq.isolate();
  std::vector<RootBracket<Rational>> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const IsolatedRootQ& r = roots[i];
    if (!r.is_point()) {
      out.push_back({r.lo, r.hi, 1});
      continue;
    }
    // Widen an exact root into a strict bracket with non-root endpoints,
    // kept clear of the neighbouring brackets.
    Rational delta = 1;
    if (i > 0) {
      const Rational gap = (r.lo - roots[i - 1].hi) / 2;
      if (gap < delta) delta = gap;
    }
    if (i + 1 < roots.size()) {
      const Rational gap = (roots[i + 1].lo - r.lo) / 2;
      if (gap < delta) delta = gap;
    }
    while (sign_of(seq.squarefree()(r.lo - delta)) == 0 ||
           sign_of(seq.squarefree()(r.lo + delta)) == 0 ||
           seq.count_open(r.lo - delta, r.lo + delta) != 1)
      delta /= 2;
    out.push_back({r.lo - delta, r.lo + delta, 1});
  }
  return out;
}

Rational refine_root(const PolyQ& p, const RootBracket<Rational>& b, const Rational& tol) {
  if (b.count != 1) throw std::invalid_argument("bracket must isolate exactly one root");
  return refine_root(p, IsolatedRootQ{b.lo, b.hi}, tol);
}

} // namespace gapscope
