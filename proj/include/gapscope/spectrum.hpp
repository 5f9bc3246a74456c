#pragma once

#include "gapscope/exact_roots.hpp"
#include "gapscope/jacobi.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gapscope {

struct Band {
  double lo, hi;
};

enum class GapStatus { open, closed };

struct GapRecord {
  double lo, hi;
  GapStatus status;
};

/// Exact evidence carried by certificates from the exact path: an isolating
/// interval (a point when the energy is rational) together with the
/// squarefree factor whose root the energy is.
struct ExactGapData {
  IsolatedRootQ bracket;
  PolyQ factor;
};

/// Energy where the monodromy equals sign·1. `residual` is the float-path
/// evidence (largest entry of |Φ - σ1|); the exact path sets it to 0 and
/// flags `exact`.
struct ClosedGapCertificate {
  double energy;
  int sign;
  double residual;
  bool exact;
  std::optional<ExactGapData> data;
};

struct SpectrumReport {
  int period = 0;
  std::vector<Band> bands;
  std::vector<GapRecord> gaps;
  std::vector<ClosedGapCertificate> closed_gaps;
  int closed_count = 0;
};

struct SpectrumOptions {
  double closed_gap_tol = 1e-8; // residual acceptance for the float path
  double edge_tol = 1e-12;      // band-edge refinement target
};

std::vector<ClosedGapCertificate> closed_gaps_exact(const VectorQ& c);
std::vector<ClosedGapCertificate> closed_gaps_float(const VectorD& c, double tol = 1e-8);

SpectrumReport band_structure(const VectorQ& c, const SpectrumOptions& opts = {});
SpectrumReport band_structure(const VectorD& c, const SpectrumOptions& opts = {});

/// Sorted Floquet eigenvalues at phase theta ∈ [0, 1]: the p real solutions
/// of D(E) = 2cos(2π·theta), doubled at closed gaps.
std::vector<double> band_function(const VectorD& c, double theta);
std::vector<double> band_function(const VectorQ& c, double theta);

/// Eigenvalues of the p×p Floquet matrix, via the 2p×2p real symmetric
/// embedding of the complex Hermitian form.
std::vector<double> floquet_eigenvalues(const VectorD& c, double theta);

/// Max |band_function - eigensolver| over the grid; the two routes are
/// independent, so this bounds the error of either.
double floquet_crosscheck(const VectorD& c, std::span<const double> theta_grid);

enum class ZeroStatus { band_interior, open_gap, closed_gap };

inline std::string to_string(ZeroStatus s) {
  switch (s) {
    case ZeroStatus::band_interior: return "band-interior";
    case ZeroStatus::open_gap: return "open-gap";
    case ZeroStatus::closed_gap: return "closed-gap";
  }
  return "band-interior";
}

struct ReflectionReport {
  bool symmetric;
  ZeroStatus zero_status;
};

/// ODJM only: checks the spectrum's symmetry under E ↦ -E and classifies
/// the position of E = 0.
ReflectionReport reflection_report(const VectorQ& c);
ReflectionReport reflection_report(const VectorD& c);

} // namespace gapscope
