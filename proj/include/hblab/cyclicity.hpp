#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hblab/boundary.hpp"
#include "hblab/error.hpp"
#include "hblab/hb.hpp"

namespace hblab {

enum class Verdict { Cyclic, NotCyclic, LikelyCyclic, LikelyNotCyclic, Undetermined };

std::string_view to_string(Verdict v);
bool is_theorem_grade(Verdict v);
/// A theorem-grade verdict and a heuristic one pointing the other way.
bool contradicts(Verdict a, Verdict b);

struct Evidence {
  std::string rule;
  std::string anchor;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, double>> numbers;
  Verdict verdict = Verdict::Undetermined;
};

/// d_N^2 = dist^2(1, span{f, zf, ..., z^{N-1} f}) in H(b).
struct DecayEntry {
  std::size_t N = 0;
  double d2 = 0.0;
  bool ridge = false;  // pivot regularized at this step
};

struct DecayTable {
  std::vector<DecayEntry> entries;
  double norm_one_sq = 0.0;
  bool truncated = false;              // negative pivot: table cut short
  std::vector<mpq_class> exact_d2;     // exact backend only
};

struct CyclicityReport {
  Verdict verdict = Verdict::Undetermined;
  std::vector<Evidence> evidence;
  std::optional<DecayTable> decay;
};

/// Cyclic iff f is outer and nonzero at every unimodular zero of a.
CyclicityReport classify_finite_defect(const HbSpace& space, const Poly& f);

/// Gram of the shifts of f through mates, incremental LDL^H. A pivot below
/// 1e-12 * trace gets that ridge added and is flagged; a clearly negative
/// pivot truncates the table.
DecayTable decay_table(const HbSpace& space, const Poly& f, std::size_t n_max);
/// Exact LDL^H in rational arithmetic; requires the exact backend.
DecayTable decay_table_exact(const HbSpace& space, const QPoly& f, std::size_t n_max);

struct DecayThresholds {
  double cyclic_level = 1e-3;    // last d^2 below this: likely cyclic
  double trend_target = 1e-4;    // fitted limit of d^2 below this: likely cyclic
  double plateau_level = 1e-2;   // plateau above this: likely not cyclic
  double plateau_change = 1e-4;  // relative change over the window
  std::size_t window = 10;
  double min_power = 0.5;        // exponent range for the fit L + C N^{-s}
  double max_power = 4.0;
  double fit_tolerance = 1e-3;   // relative rms misfit accepted for a trend
  std::size_t min_length = 20;
};

Verdict estimate_from_decay(const DecayTable& table, const DecayThresholds& th = {});

struct CertificateResult {
  bool success = false;
  ErrorKind failure = ErrorKind::BoundFailure;
  std::string reason;
  CyclicityReport report;
};

struct TheoremACertificate : CertificateResult {
  std::vector<Arc> E;
  std::vector<Arc> F;
  double a_inverse_sq_on_E = 0.0;  // quadrature of |a|^{-2} over E
  double f_min_on_F = 0.0;         // grid minimum (diagnostic)
};

/// Arc test: E and F cover the circle, no unimodular zero of a in closure(E),
/// no unimodular zero of f in closure(F). Throws NotOuter for non-outer f.
TheoremACertificate theorem_a_check(const HbSpace& space, const Poly& f, const std::vector<Arc>& E,
                                    const std::vector<Arc>& F);

struct CoverArc {
  Arc arc;
  double eta;
};

struct TheoremBCertificate : CertificateResult {
  std::vector<CoverArc> cover;
  std::vector<cplx> sigma_upper;
  std::vector<double> grid_min;  // per arc
};

/// Throws NotNormalized unless b(0) = 0, mu_1 has no atoms and
/// ||phi_1||^2 = 1 within 1e-6.
void require_normalized(const HbSpace& space);

/// Local bound test: the arc interiors cover the upper bound of sigma(phi_1);
/// on each arc f has no unimodular zero and its grid minimum exceeds eta.
TheoremBCertificate theorem_b_check(const HbSpace& space, const Poly& f, const std::vector<CoverArc>& cover);

struct TheoremCCertificate : CertificateResult {
  Function f;      // V_1 g
  Function F;      // outer part of f
  Function theta;  // inner part of f
  std::vector<cplx> sigma_F;
  std::vector<cplx> sigma_phi;
  double refit_residual = 0.0;
  double F_norm_sq = 0.0;
};

/// f = V_1 g, F its outer part; success iff the upper bounds of sigma(F) and
/// sigma(phi_1) are disjoint. F is run through the mate to confirm F in H(b).
TheoremCCertificate theorem_c_check(const HbSpace& space, const Poly& g);

struct NecessityResult {
  bool pass = true;
  cplx alpha{};
  cplx zeta{};
  CyclicityReport report;
};

/// Not cyclic when f is not outer or vanishes at a Clark atom on the alpha grid.
NecessityResult necessity_check(const HbSpace& space, const Poly& f);

/// Classifier, necessity and decay table merged into one report.
CyclicityReport analyze(const HbSpace& space, const Poly& f, std::size_t n_max = 60);

std::string to_json(const CyclicityReport& report);
void write_decay_csv(std::ostream& os, const DecayTable& table);

}  // namespace hblab
