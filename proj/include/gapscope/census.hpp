#pragma once

#include "gapscope/families.hpp"
#include "gapscope/jacobi.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace gapscope {

enum class Backend { exact, floating };

inline std::string to_string(Backend b) { return b == Backend::exact ? "exact" : "float"; }

struct CensusConfig {
  Model model = Model::dso;
  int period = 4;
  int samples = 1000;
  std::uint64_t seed = 0;
  double box_radius = 3.0; // |v| box; off-diagonals are log-uniform on [1/4, 4]
  Backend backend = Backend::floating;
  double tol = 1e-8;
  int threads = 0; // 0: decide from GAPSCOPE_THREADS / hardware
};

using AnyVector = std::variant<VectorQ, VectorD>;

struct CensusResult {
  CensusConfig config;
  std::map<int, long> histogram;
  int max_found = 0;
  std::map<int, std::vector<AnyVector>> witnesses; // counts >= 1, at most 10 each
  bool bound_check_pass = true;
  std::vector<std::string> bound_failures;
};

/// Draws irreducible samples (rejection), analyses each with the spectrum
/// module, and tallies closed-gap counts. Deterministic in the seed, over
/// any thread count.
CensusResult run_census(const CensusConfig& cfg);

/// Known maxima for p ≤ 6 plus the general bounds. Returns 0 when the value
/// is open (p ≥ 7).
int known_max_closed_gaps(Model model, int period, bool* known = nullptr);

using AnyFamilyInstance = std::variant<FamilyInstance<Rational>, FamilyInstance<double>>;

struct TableReport {
  bool pass = true;
  std::vector<std::string> lines;
  std::vector<std::string> failures;
};

/// Checks censuses and injected witnesses against the small-period table and
/// the general upper bounds; failures are reported, never thrown. The table
/// override hook exists for negative-control tests.
TableReport verify_known_table(const std::vector<CensusResult>& results,
                               const std::vector<AnyFamilyInstance>& injected,
                               const std::map<std::pair<Model, int>, int>* table_override = nullptr);

struct CharacterizationReport {
  bool pass = true;
  int forward_checked = 0;
  int recovered = 0;
  std::vector<std::string> mismatches;
};

/// Two-sided check of the p = 4, 5 characterizations: in-domain instances
/// exhibit their predicted gaps, and perturbed witnesses with a re-certified
/// gap are matched back to the closed form after shift/scale and cyclic
/// alignment.
CharacterizationReport characterization_check(Model model, int period, int samples,
                                              std::uint64_t seed);

/// Thread budget: GAPSCOPE_THREADS when set, else hardware concurrency.
int census_thread_budget();

} // namespace gapscope
