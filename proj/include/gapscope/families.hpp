#pragma once

#include "gapscope/jacobi.hpp"

#include <map>
#include <string>
#include <vector>

namespace gapscope {

/// Closed gap announced by a constructor, certified downstream by the
/// spectrum module.
struct Prediction {
  double energy;
  int sign;
};

template <class S>
struct FamilyInstance {
  CoefficientVector<S> vec;
  std::vector<Prediction> predicted;
};

struct FamilyInfo {
  std::string name;
  std::vector<std::string> params; // ordered parameter names ("p" is an integer)
  std::string domain;
  std::string summary;
  bool needs_sqrt; // true: constructible on the float backend only
};

/// Registry of every named family constructor, for the CLI surface.
const std::vector<FamilyInfo>& family_registry();

/// Builds the named family. Throws std::domain_error for out-of-domain
/// parameters or a reducible instance, std::invalid_argument for unknown
/// names or parameter sets, and irrational_family_error when an exact-backend
/// build would need square roots.
template <class S>
FamilyInstance<S> make_family(const std::string& name, const std::map<std::string, S>& params);

class irrational_family_error : public std::domain_error {
public:
  explicit irrational_family_error(const std::string& what) : std::domain_error(what) {}
};

/// Period-2kp vector w = base^k · cyc(base)^k. Predicts the base's closed
/// gaps plus, for each j = 1..k-1, the p real solutions of
/// D_base(E) = 2cos(πj/k); all predictions carry sign +1.
template <class S>
FamilyInstance<S> double_construct(const CoefficientVector<S>& base, int k);

extern template FamilyInstance<Rational> make_family<Rational>(
    const std::string&, const std::map<std::string, Rational>&);
extern template FamilyInstance<double> make_family<double>(const std::string&,
                                                           const std::map<std::string, double>&);
extern template FamilyInstance<Rational> double_construct<Rational>(const VectorQ&, int);
extern template FamilyInstance<double> double_construct<double>(const VectorD&, int);

} // namespace gapscope
