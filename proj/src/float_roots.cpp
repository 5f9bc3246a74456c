#include "gapscope/float_roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gapscope {

double root_bound(const PolyD& p) {
  double m = 0.0;
  for (int k = 0; k < p.degree(); ++k)
    m = std::max(m, std::abs(p.coeff(k) / p.leading()));
  return m + 2.0;
}

double eval_scale(const PolyD& p, double x) {
  const double ax = std::max(1.0, std::abs(x));
  double s = 0.0, pw = 1.0;
  for (int k = 0; k <= p.degree(); ++k) {
    s += std::abs(p.coeff(k)) * pw;
    pw *= ax;
  }
  return s;
}

double bisect_root(const PolyD& p, double lo, double hi) {
  double flo = p(lo);
  if (flo == 0.0) return lo;
  if (p(hi) == 0.0) return hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break; // interval exhausted in binary64
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  // Newton polish, clipped to the bracket.
  const PolyD dp = p.derivative();
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double nx = x - p(x) / d;
    if (nx < lo || nx > hi) break;
    x = nx;
  }
  return x;
}

std::vector<double> sign_change_roots(const PolyD& p, const std::vector<double>& cuts) {
  std::vector<double> grid;
  const double bound = root_bound(p);
  grid.push_back(-bound);
  for (double c : cuts)
    if (c > -bound && c < bound) grid.push_back(c);
  grid.push_back(bound);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double f0 = p(grid[i]);
    const double f1 = p(grid[i + 1]);
    if (f0 == 0.0) {
      if (i == 0) roots.push_back(grid[i]); // interior cuts are handled as tangencies
      continue;
    }
    if (f1 == 0.0) continue;
    if ((f0 > 0.0) != (f1 > 0.0)) roots.push_back(bisect_root(p, grid[i], grid[i + 1]));
  }
  return roots;
}

std::vector<double> all_real_roots(const PolyD& p, const FloatRootOptions& opts) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial");
  const int n = p.degree();
  if (n == 0) return {};
  if (n == 1) return {-p.coeff(0) / p.coeff(1)};

  const std::vector<double> crit = all_real_roots(p.derivative(), opts);
  std::vector<double> roots = sign_change_roots(p, crit);
  for (double c : crit) {
    if (std::abs(p(c)) <= opts.tangency_tol * eval_scale(p, c)) roots.push_back(c);
  }
  std::sort(roots.begin(), roots.end());
  // Collapse duplicates produced by a tangency sitting next to a sign change.
  std::vector<double> out;
  for (double r : roots) {
    if (!out.empty() && std::abs(r - out.back()) <= 1e-12 * (1.0 + std::abs(r))) continue;
    out.push_back(r);
  }
  return out;
}

std::vector<double> critical_points(const PolyD& p, const FloatRootOptions& opts) {
  if (p.degree() <= 1) return {};
  return all_real_roots(p.derivative(), opts);
}

std::vector<RootBracket<double>> isolate_real_roots(const PolyD& p) {
  const std::vector<double> roots = all_real_roots(p);
  std::vector<RootBracket<double>> out;
  if (roots.empty()) return out;
  const double bound = root_bound(p);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double lo = (i == 0) ? -bound : 0.5 * (roots[i - 1] + roots[i]);
    const double hi = (i + 1 == roots.size()) ? bound : 0.5 * (roots[i] + roots[i + 1]);
    out.push_back({lo, hi, 1});
  }
  return out;
}

double refine_root(const PolyD& p, const RootBracket<double>& b, double tol) {
  if (b.count != 1) throw std::invalid_argument("bracket must isolate exactly one root");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double f0 = p(b.lo), f1 = p(b.hi);
  if (f0 == 0.0) return b.lo;
  if (f1 == 0.0) return b.hi;
  if ((f0 > 0.0) != (f1 > 0.0)) return bisect_root(p, b.lo, b.hi);
  // No sign change: the bracketed root has even multiplicity; chase p'.
  const PolyD dp = p.derivative();
  const double d0 = dp(b.lo), d1 = dp(b.hi);
  if ((d0 > 0.0) != (d1 > 0.0)) return bisect_root(dp, b.lo, b.hi);
  throw std::invalid_argument("bracket does not contain a detectable root");
}

} // namespace gapscope
