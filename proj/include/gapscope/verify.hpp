#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gapscope::verify {

struct CriterionResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct Options {
  std::uint64_t seed = 0;
  bool corrupt_table = false; // negative control: falsifies one table constant
};

/// Runs the full acceptance suite; deterministic in the seed.
std::vector<CriterionResult> run_acceptance(const Options& opts = {});

/// One pass/fail line per criterion plus a summary; returns true iff all pass.
bool print_acceptance(const std::vector<CriterionResult>& results, std::ostream& os);

} // namespace gapscope::verify
