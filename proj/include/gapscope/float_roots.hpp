#pragma once

#include "gapscope/exact_roots.hpp"
#include "gapscope/poly.hpp"

#include <vector>

namespace gapscope {

/// All real roots lie strictly inside (-bound, bound).
double root_bound(const PolyD& p);

/// Magnitude scale of p near x: sum |c_k| max(1,|x|)^k.
double eval_scale(const PolyD& p, double x);

/// Distinct real roots, ascending, for a polynomial all of whose roots are
/// real (the only class this artifact isolates). Simple roots come from sign
/// changes between consecutive critical points; roots of even local
/// multiplicity are recovered at critical points where |p| drops below the
/// relative tangency threshold.
struct FloatRootOptions {
  double tangency_tol = 1e-11;
};
std::vector<double> all_real_roots(const PolyD& p, const FloatRootOptions& opts = {});

/// Roots of p' (same all-real assumption applies to p).
std::vector<double> critical_points(const PolyD& p, const FloatRootOptions& opts = {});

/// Sign-change roots of p over the cells cut by `cuts` (ascending), extended
/// by the outer root bounds. No tangency detection.
std::vector<double> sign_change_roots(const PolyD& p, const std::vector<double>& cuts);

/// Bisection to machine precision inside [lo, hi]; requires a sign change.
double bisect_root(const PolyD& p, double lo, double hi);

std::vector<RootBracket<double>> isolate_real_roots(const PolyD& p);
double refine_root(const PolyD& p, const RootBracket<double>& b, double tol);

} // namespace gapscope
