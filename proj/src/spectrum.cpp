#include "gapscope/spectrum.hpp"

#include "gapscope/float_roots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gapscope {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Bisection on a squarefree polynomial with exact sign evaluation.
double refine_on_squarefree(const PolyQ& sqf, const IsolatedRootQ& r, double tol) {
  if (r.is_point()) return to_double(r.lo);
  const Rational rt{tol};
  Rational lo = r.lo, hi = r.hi;
  const int slo = sign_of(sqf(lo));
  while (hi - lo > rt) {
    const Rational mid = (lo + hi) / 2;
    const int sm = sign_of(sqf(mid));
    if (sm == 0) return to_double(mid);
    (sm == slo ? lo : hi) = mid;
  }
  return to_double((lo + hi) / 2);
}

struct EdgeQ {
  IsolatedRootQ root;
  int sigma;
  int mult;
  double refined;
  const ClosedGapCertificate* cert; // set when mult == 2
};

// An edge is a closed gap iff the certificate factor for its sign vanishes
// inside its bracket; the owning certificate is the one whose bracket shares
// that root (checked on the intersection, not mere overlap).
const ClosedGapCertificate* match_cert(const std::vector<ClosedGapCertificate>& certs,
                                       const PolyQ& factor_plus, const PolyQ& factor_minus,
                                       int sigma, const IsolatedRootQ& r) {
  const PolyQ& factor = sigma > 0 ? factor_plus : factor_minus;
  if (factor.degree() < 1) return nullptr;
  if (!vanishes_inside(factor, r)) return nullptr;
  for (const ClosedGapCertificate& cert : certs) {
    if (cert.sign != sigma || !cert.data) continue;
    const IsolatedRootQ& b = cert.data->bracket;
    if (r.is_point() && b.is_point()) {
      if (r.lo == b.lo) return &cert;
    } else if (r.is_point()) {
      if (b.lo < r.lo && r.lo < b.hi) return &cert;
    } else if (b.is_point()) {
      if (r.lo < b.lo && b.lo < r.hi) return &cert;
    } else {
      const Rational lo = std::max(b.lo, r.lo);
      const Rational hi = std::min(b.hi, r.hi);
      if (lo < hi && vanishes_inside(factor, IsolatedRootQ{lo, hi})) return &cert;
    }
  }
  return nullptr;
}

SpectrumReport assemble(int period, std::vector<double> edges,
                        const std::vector<const ClosedGapCertificate*>& edge_cert,
                        std::vector<ClosedGapCertificate> certs) {
  SpectrumReport rep;
  rep.period = period;
  const std::size_t n = edges.size();
  if (n != static_cast<std::size_t>(2 * period))
    throw std::runtime_error("root count inconsistency while assembling bands");
  for (int j = 0; j < period; ++j) {
    const std::size_t k = static_cast<std::size_t>(2 * j);
    rep.bands.push_back({edges[k], edges[k + 1]});
    if (j > 0) {
      const ClosedGapCertificate* cert = edge_cert[k];
      if (cert != nullptr && cert == edge_cert[k - 1]) {
        rep.gaps.push_back({cert->energy, cert->energy, GapStatus::closed});
      } else {
        rep.gaps.push_back({edges[k - 1], edges[k], GapStatus::open});
      }
    }
  }
  rep.closed_gaps = std::move(certs);
  rep.closed_count = static_cast<int>(rep.closed_gaps.size());
  return rep;
}

} // namespace

std::vector<ClosedGapCertificate> closed_gaps_exact(const VectorQ& c) {
  const MonodromyPoly<Rational> m = monodromy_poly(c);
  std::vector<ClosedGapCertificate> out;
  for (int sigma : {+1, -1}) {
    const Rational target = Rational(sigma) * m.denom;
    PolyQ g = poly_gcd(m.p12, m.p21);
    if (g.degree() >= 1) g = poly_gcd(g, m.p11 - PolyQ(target));
    if (g.degree() >= 1) g = poly_gcd(g, m.p22 - PolyQ(target));
    if (g.degree() < 1) continue;
    const PolyQ factor = squarefree_part(g);
    for (const IsolatedRootQ& r : isolate_roots(factor)) {
      ClosedGapCertificate cert;
      cert.energy = refine_on_squarefree(factor, r, 1e-13);
      cert.sign = sigma;
      cert.residual = 0.0;
      cert.exact = true;
      cert.data = ExactGapData{r, factor};
      out.push_back(std::move(cert));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ClosedGapCertificate& x, const ClosedGapCertificate& y) {
              return x.energy < y.energy;
            });
  return out;
}

namespace {

// Extended-precision transfer product; a plain double product loses about
// ‖Φ‖² ulps to cancellation, which would drown the residual of a genuine
// closed gap once periods and coefficients grow.
double identity_residual_accurate(const VectorD& c, double e, int sigma) {
  long double m11 = 1, m12 = 0, m21 = 0, m22 = 1;
  for (int j = 0; j < c.period(); ++j) {
    const std::size_t jj = static_cast<std::size_t>(j);
    const long double s = c.a[jj];
    const long double t = static_cast<long double>(e) - c.v[jj];
    const long double b11 = t / s, b12 = -1.0L / s;
    const long double n11 = b11 * m11 + b12 * m21;
    const long double n12 = b11 * m12 + b12 * m22;
    const long double n21 = s * m11;
    const long double n22 = s * m12;
    m11 = n11;
    m12 = n12;
    m21 = n21;
    m22 = n22;
  }
  const long double sg = sigma;
  long double r = std::abs(m11 - sg);
  r = std::max(r, std::abs(m12));
  r = std::max(r, std::abs(m21));
  r = std::max(r, std::abs(m22 - sg));
  return static_cast<double>(r);
}

// Golden-section descent on the residual; it is V-shaped around a closed
// gap, so this recovers the energy to machine precision even when the
// critical point of D was dulled by coefficient growth.
double residual_minimizer(const VectorD& c, int sigma, double lo, double hi) {
  constexpr double kGolden = 0.6180339887498949;
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = identity_residual_accurate(c, x1, sigma);
  double f2 = identity_residual_accurate(c, x2, sigma);
  for (int i = 0; i < 70 && hi - lo > 1e-17 * (1.0 + std::abs(lo)); ++i) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = identity_residual_accurate(c, x1, sigma);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = identity_residual_accurate(c, x2, sigma);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

} // namespace

std::vector<ClosedGapCertificate> closed_gaps_float(const VectorD& c, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const Discriminant<double> disc = discriminant(c);
  std::vector<ClosedGapCertificate> out;
  if (disc.poly.degree() < 2) return out;
  const PolyD dprime = disc.poly.derivative();
  const std::vector<double> crit = all_real_roots(dprime);
  for (std::size_t i = 0; i < crit.size(); ++i) {
    const double e = crit[i];
    const double rp = identity_residual_accurate(c, e, +1);
    const double rm = identity_residual_accurate(c, e, -1);
    const int sigma = rp <= rm ? +1 : -1;
    double energy = e;
    double residual = std::min(rp, rm);
    if (residual > 1e-2) continue;
    if (residual > 0.0) {
      double window = 1e-5 * (1.0 + std::abs(e));
      if (i > 0) window = std::min(window, 0.5 * (e - crit[i - 1]));
      if (i + 1 < crit.size()) window = std::min(window, 0.5 * (crit[i + 1] - e));
      const double better = residual_minimizer(c, sigma, e - window, e + window);
      const double refined = identity_residual_accurate(c, better, sigma);
      if (refined < residual) {
        energy = better;
        residual = refined;
      }
    }
    if (residual > tol) continue;
    const double merge = 1e-9 * (1.0 + std::abs(energy));
    if (!out.empty() && std::abs(out.back().energy - energy) <= merge) {
      if (residual < out.back().residual) {
        out.back().energy = energy;
        out.back().sign = sigma;
        out.back().residual = residual;
      }
      continue;
    }
    out.push_back({energy, sigma, residual, false, std::nullopt});
  }
  std::sort(out.begin(), out.end(),
            [](const ClosedGapCertificate& x, const ClosedGapCertificate& y) {
              return x.energy < y.energy;
            });
  return out;
}

SpectrumReport band_structure(const VectorQ& c, const SpectrumOptions& opts) {
  const int p = c.period();
  const MonodromyPoly<Rational> m = monodromy_poly(c);
  std::vector<ClosedGapCertificate> certs = closed_gaps_exact(c);

  // Squarefree factors of the closed-gap loci, used to read off edge
  // multiplicity: an edge is doubled exactly when Φ(E) = σ·1 there.
  PolyQ factor_plus = PolyQ::zero(), factor_minus = PolyQ::zero();
  for (const ClosedGapCertificate& cert : certs)
    (cert.sign > 0 ? factor_plus : factor_minus) = cert.data->factor;

  struct SidedRoots {
    PolyQ q;
    SturmSequence seq;
    std::vector<IsolatedRootQ> roots;
    explicit SidedRoots(PolyQ poly) : q(std::move(poly)), seq(q), roots(seq.isolate()) {}
  };
  SidedRoots plus(m.trace() - PolyQ(Rational(2) * m.denom));
  SidedRoots minus(m.trace() + PolyQ(Rational(2) * m.denom));

  std::vector<EdgeQ> merged;
  std::size_t i = 0, j = 0;
  while (i < plus.roots.size() || j < minus.roots.size()) {
    int take_plus;
    if (i == plus.roots.size()) {
      take_plus = 0;
    } else if (j == minus.roots.size()) {
      take_plus = 1;
    } else {
      take_plus = order_disjoint(plus.roots[i], plus.seq, minus.roots[j], minus.seq) < 0 ? 1 : 0;
    }
    SidedRoots& side = take_plus ? plus : minus;
    std::size_t& idx = take_plus ? i : j;
    const int sigma = take_plus ? +1 : -1;
    EdgeQ edge{side.roots[idx], sigma, 1, 0.0, nullptr};
    edge.cert = match_cert(certs, factor_plus, factor_minus, sigma, edge.root);
    if (edge.cert != nullptr) {
      edge.mult = 2;
      edge.refined = edge.cert->energy;
    } else {
      edge.refined = refine_on_squarefree(side.seq.squarefree(), edge.root, opts.edge_tol);
    }
    merged.push_back(edge);
    ++idx;
  }

  std::vector<double> edges;
  std::vector<const ClosedGapCertificate*> edge_cert;
  for (const EdgeQ& e : merged)
    for (int k = 0; k < e.mult; ++k) {
      edges.push_back(e.refined);
      edge_cert.push_back(e.cert);
    }
  if (edges.size() != static_cast<std::size_t>(2 * p))
    throw std::logic_error("exact band structure lost an edge");
  return assemble(p, std::move(edges), edge_cert, std::move(certs));
}

namespace {

// D - 2σ has exactly p real roots with multiplicity, so once the closed
// gaps are certified the number of simple edges per sign is pinned. Excess
// sign changes are tangencies split by rounding; they straddle their
// certificate in pairs, and the tightest straddling pairs are dropped until
// the count is consistent.
std::vector<double> reconcile_simple_roots(std::vector<double> roots,
                                           const std::vector<double>& cert_energies,
                                           std::size_t expected) {
  while (roots.size() > expected) {
    std::size_t best_idx = 0;
    double best_span = std::numeric_limits<double>::infinity();
    for (double e : cert_energies) {
      for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        const double span = std::max(std::abs(roots[i] - e), std::abs(roots[i + 1] - e));
        if (span < best_span) {
          best_span = span;
          best_idx = i;
        }
      }
    }
    // A split tangency sits within rounding distance of its certificate;
    // anything farther means an edge was genuinely lost or found twice.
    bool plausible = false;
    for (double e : cert_energies)
      plausible = plausible || best_span <= 1e-4 * (1.0 + std::abs(e));
    if (!plausible) throw std::runtime_error("root count inconsistency in float band structure");
    roots.erase(roots.begin() + static_cast<std::ptrdiff_t>(best_idx),
                roots.begin() + static_cast<std::ptrdiff_t>(best_idx) + 2);
  }
  if (roots.size() != expected)
    throw std::runtime_error("root count inconsistency in float band structure");
  return roots;
}

} // namespace

SpectrumReport band_structure(const VectorD& c, const SpectrumOptions& opts) {
  const int p = c.period();
  const Discriminant<double> disc = discriminant(c);
  std::vector<ClosedGapCertificate> certs = closed_gaps_float(c, opts.closed_gap_tol);

  struct EdgeD {
    double value;
    const ClosedGapCertificate* cert;
  };
  std::vector<EdgeD> edges;
  for (int sigma : {+1, -1}) {
    const PolyD q = disc.poly - PolyD(2.0 * sigma);
    std::vector<double> cert_energies;
    for (const ClosedGapCertificate& cert : certs)
      if (cert.sign == sigma) cert_energies.push_back(cert.energy);
    if (static_cast<std::size_t>(p) < 2 * cert_energies.size())
      throw std::runtime_error("root count inconsistency in float band structure");
    const std::size_t expected = static_cast<std::size_t>(p) - 2 * cert_energies.size();
    std::vector<double> simple = reconcile_simple_roots(
        sign_change_roots(q, critical_points(q)), cert_energies, expected);
    for (double r : simple) edges.push_back({r, nullptr});
    for (const ClosedGapCertificate& cert : certs)
      if (cert.sign == sigma) {
        edges.push_back({cert.energy, &cert});
        edges.push_back({cert.energy, &cert});
      }
  }
  std::sort(edges.begin(), edges.end(),
            [](const EdgeD& x, const EdgeD& y) { return x.value < y.value; });
  if (edges.size() != static_cast<std::size_t>(2 * p))
    throw std::runtime_error("root count inconsistency in float band structure");

  std::vector<double> values;
  std::vector<const ClosedGapCertificate*> edge_cert;
  for (const EdgeD& e : edges) {
    values.push_back(e.value);
    edge_cert.push_back(e.cert);
  }
  return assemble(p, std::move(values), edge_cert, std::move(certs));
}

std::vector<double> band_function(const VectorD& c, double theta) {
  const int p = c.period();
  const double target = 2.0 * std::cos(2.0 * kPi * theta);
  const Discriminant<double> disc = discriminant(c);
  const PolyD q = disc.poly - PolyD(target);
  std::vector<double> roots = sign_change_roots(q, critical_points(q));
  if (std::abs(target) == 2.0) {
    // Band edges that carry multiplicity two are the closed gaps.
    const int sigma = target > 0 ? +1 : -1;
    std::vector<double> cert_energies;
    for (const ClosedGapCertificate& cert : closed_gaps_float(c))
      if (cert.sign == sigma) cert_energies.push_back(cert.energy);
    if (static_cast<std::size_t>(p) >= 2 * cert_energies.size()) {
      try {
        roots = reconcile_simple_roots(std::move(roots), cert_energies,
                                       static_cast<std::size_t>(p) - 2 * cert_energies.size());
      } catch (const std::runtime_error&) {
        throw std::runtime_error("band function: fewer real solutions than the period");
      }
      for (double e : cert_energies) {
        roots.push_back(e);
        roots.push_back(e);
      }
    }
  }
  if (static_cast<int>(roots.size()) != p)
    throw std::runtime_error("band function: fewer real solutions than the period");
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> band_function(const VectorQ& c, double theta) {
  return band_function(to_float(c), theta);
}

std::vector<double> floquet_eigenvalues(const VectorD& c, double theta) {
  const int p = c.period();
  const double phase = 2.0 * kPi * theta;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(p, p);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(p, p);
  for (int i = 0; i < p; ++i) x(i, i) = c.v[static_cast<std::size_t>(i)];
  for (int i = 0; i + 1 < p; ++i) {
    x(i, i + 1) += c.a[static_cast<std::size_t>(i)];
    x(i + 1, i) += c.a[static_cast<std::size_t>(i)];
  }
  const double ap = c.a.back();
  // Corner entries e^{∓iφ}·a_p (top-right gets the conjugate phase).
  x(0, p - 1) += ap * std::cos(phase);
  y(0, p - 1) += -ap * std::sin(phase);
  x(p - 1, 0) += ap * std::cos(phase);
  y(p - 1, 0) += ap * std::sin(phase);

  Eigen::MatrixXd z(2 * p, 2 * p);
  z << x, -y, y, x;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(z);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("floquet eigensolve failed to converge");
  std::vector<double> eigs;
  eigs.reserve(static_cast<std::size_t>(p));
  for (int i = 0; i < 2 * p; i += 2) eigs.push_back(solver.eigenvalues()(i));
  return eigs;
}

double floquet_crosscheck(const VectorD& c, std::span<const double> theta_grid) {
  double dev = 0.0;
  for (double theta : theta_grid) {
    const std::vector<double> from_disc = band_function(c, theta);
    const std::vector<double> from_matrix = floquet_eigenvalues(c, theta);
    for (std::size_t i = 0; i < from_disc.size(); ++i)
      dev = std::max(dev, std::abs(from_disc[i] - from_matrix[i]));
  }
  return dev;
}

namespace {

ZeroStatus classify_zero(const SpectrumReport& rep, double merge) {
  for (const ClosedGapCertificate& cert : rep.closed_gaps)
    if (std::abs(cert.energy) <= merge) return ZeroStatus::closed_gap;
  for (const GapRecord& gap : rep.gaps)
    if (gap.status == GapStatus::open && gap.lo < 0.0 && 0.0 < gap.hi)
      return ZeroStatus::open_gap;
  return ZeroStatus::band_interior;
}

} // namespace

ReflectionReport reflection_report(const VectorQ& c) {
  if (c.model != Model::odjm)
    throw std::invalid_argument("reflection report requires the odjm model");
  const Discriminant<Rational> disc = discriminant(c);
  const PolyQ mirrored = disc.poly.scaled_arg(Rational(-1));
  const PolyQ expected = (c.period() % 2 == 0) ? disc.poly : -disc.poly;
  ReflectionReport rep;
  rep.symmetric = (mirrored == expected);
  const Rational d0 = disc.poly(Rational(0));
  if (abs(d0) < 2) {
    rep.zero_status = ZeroStatus::band_interior;
  } else if (abs(d0) > 2) {
    rep.zero_status = ZeroStatus::open_gap;
  } else {
    rep.zero_status = ZeroStatus::closed_gap;
  }
  return rep;
}

ReflectionReport reflection_report(const VectorD& c) {
  if (c.model != Model::odjm)
    throw std::invalid_argument("reflection report requires the odjm model");
  const SpectrumReport rep = band_structure(c);
  double radius = 0.0;
  for (const Band& b : rep.bands) radius = std::max({radius, std::abs(b.lo), std::abs(b.hi)});
  const double tol = 1e-8 * (1.0 + radius);
  bool symmetric = true;
  for (std::size_t j = 0; j < rep.bands.size() && symmetric; ++j) {
    const Band& b = rep.bands[j];
    const Band& mirror = rep.bands[rep.bands.size() - 1 - j];
    symmetric = std::abs(b.lo + mirror.hi) <= tol && std::abs(b.hi + mirror.lo) <= tol;
  }
  return {symmetric, classify_zero(rep, tol)};
}

} // namespace gapscope
