#include "hblab/cyclicity.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <exception>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "hblab/clark.hpp"
#include "hblab/kernels.hpp"
#include "hblab/sigma.hpp"

namespace hblab {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::string fmt(cplx z) { return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i"; }

std::string fmt(const Poly& p) {
  std::string s = "[";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + fmt(p.coeffs()[k]);
  return s + "]";
}

std::vector<cplx> unimodular_zeros(const Poly& f) {
  std::vector<cplx> out;
  if (f.degree() < 1) return out;
  for (const auto& r : roots(f))
    if (std::abs(std::abs(r.root) - 1.0) <= 1e-6) out.push_back(r.root / std::abs(r.root));
  return out;
}

std::vector<std::vector<Atom>> sweep_atoms(const HbSpace& s, const std::vector<cplx>& alphas) {
  std::vector<std::vector<Atom>> found(alphas.size());
  std::exception_ptr failure;
  kernels::apply_thread_cap();
  const auto count = static_cast<std::ptrdiff_t>(alphas.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      found[static_cast<std::size_t>(i)] = clark_measure(s, alphas[static_cast<std::size_t>(i)]).atoms;
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return found;
}

double arc_min(const Poly& f, const Arc& arc, std::size_t samples = 2048) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= samples; ++k) {
    const double t = arc.start() + arc.extent() * static_cast<double>(k) / static_cast<double>(samples);
    m = std::min(m, std::abs(f(std::polar(1.0, t))));
  }
  return m;
}

template <class Cert>
Cert& fail(Cert& c, ErrorKind kind, std::string reason) {
  c.success = false;
  c.failure = kind;
  c.reason = std::move(reason);
  c.report.verdict = Verdict::Undetermined;
  return c;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Cyclic: return "cyclic";
    case Verdict::NotCyclic: return "not_cyclic";
    case Verdict::LikelyCyclic: return "likely_cyclic";
    case Verdict::LikelyNotCyclic: return "likely_not_cyclic";
    case Verdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

bool is_theorem_grade(Verdict v) { return v == Verdict::Cyclic || v == Verdict::NotCyclic; }

bool contradicts(Verdict a, Verdict b) {
  const auto positive = [](Verdict v) { return v == Verdict::Cyclic || v == Verdict::LikelyCyclic; };
  const auto negative = [](Verdict v) { return v == Verdict::NotCyclic || v == Verdict::LikelyNotCyclic; };
  return (positive(a) && negative(b)) || (negative(a) && positive(b));
}

CyclicityReport classify_finite_defect(const HbSpace& s, const Poly& f) {
  CyclicityReport r;
  Evidence e;
  e.rule = "finite_defect_classifier";
  e.anchor = "cyclic iff f is outer and nonzero at each unimodular zero of a";
  e.inputs.push_back({"f", fmt(f)});
  if (f.is_zero()) {
    e.verdict = Verdict::NotCyclic;
    e.inputs.push_back({"note", "zero function"});
    r.verdict = e.verdict;
    r.evidence.push_back(std::move(e));
    return r;
  }
  const bool outer = is_outer(f, s.tol);
  e.numbers.push_back({"outer", outer ? 1.0 : 0.0});
  bool nonzero = true;
  std::size_t j = 0;
  for (const cplx& lam : s.circle_zeros_of_a()) {
    const double v = std::abs(f(lam));
    e.numbers.push_back({"lambda_" + std::to_string(j) + "_angle", normalize_angle(std::arg(lam))});
    e.numbers.push_back({"abs_f_lambda_" + std::to_string(j), v});
    nonzero = nonzero && v > s.tol.nonzero;
    ++j;
  }
  e.verdict = outer && nonzero ? Verdict::Cyclic : Verdict::NotCyclic;
  r.verdict = e.verdict;
  r.evidence.push_back(std::move(e));
  return r;
}

DecayTable decay_table(const HbSpace& s, const Poly& f, std::size_t n_max) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "decay_table: f is zero");
  if (n_max == 0 || n_max > 256) throw Error(ErrorKind::InvalidArgument, "decay_table: N_max must be in 1..256");
  std::vector<HbElement> g;
  for (std::size_t k = 0; k < n_max; ++k) g.push_back(element(s, f.shifted(static_cast<int>(k))));
  const HbElement one = element(s, Poly::constant(1.0));
  const Eigen::MatrixXcd G = gram(g);

  DecayTable t;
  t.norm_one_sq = one.norm_sq;
  const auto n = static_cast<Eigen::Index>(n_max);
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n, n);
  std::vector<double> D(n_max);
  std::vector<cplx> y(n_max);
  double trace = 0.0, captured = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    trace += G(m, m).real();
    for (Eigen::Index j = 0; j < m; ++j) {
      cplx acc = G(m, j);
      for (Eigen::Index k = 0; k < j; ++k) acc -= L(m, k) * D[static_cast<std::size_t>(k)] * std::conj(L(j, k));
      L(m, j) = acc / D[static_cast<std::size_t>(j)];
    }
    double d = G(m, m).real();
    for (Eigen::Index k = 0; k < m; ++k) d -= std::norm(L(m, k)) * D[static_cast<std::size_t>(k)];
    DecayEntry entry;
    entry.N = static_cast<std::size_t>(m) + 1;
    const double ridge = 1e-12 * trace;
    if (d < -1e-8 * trace) {
      t.truncated = true;
      break;
    }
    if (d < ridge) {
      d = std::max(d, 0.0) + ridge;
      entry.ridge = true;
    }
    D[static_cast<std::size_t>(m)] = d;
    L(m, m) = 1.0;
    cplx ym = inner_product(one, g[static_cast<std::size_t>(m)]);
    for (Eigen::Index k = 0; k < m; ++k) ym -= L(m, k) * y[static_cast<std::size_t>(k)];
    y[static_cast<std::size_t>(m)] = ym;
    captured += std::norm(ym) / d;
    entry.d2 = std::max(0.0, t.norm_one_sq - captured);
    t.entries.push_back(entry);
  }
  return t;
}

DecayTable decay_table_exact(const HbSpace& s, const QPoly& f, std::size_t n_max) {
  if (!s.exact) throw Error(ErrorKind::ExactUnavailable, "space was built without the exact backend");
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "decay_table: f is zero");
  if (n_max == 0 || n_max > 256) throw Error(ErrorKind::InvalidArgument, "decay_table: N_max must be in 1..256");
  std::vector<HbElement> g;
  for (std::size_t k = 0; k < n_max; ++k) g.push_back(element_exact(s, f.shifted(static_cast<int>(k))));
  const HbElement one = element_exact(s, QPoly::constant(QComplex(1L)));

  DecayTable t;
  const mpq_class norm_one = *one.exact_norm_sq;
  t.norm_one_sq = norm_one.get_d();
  std::vector<std::vector<QComplex>> L(n_max, std::vector<QComplex>(n_max));
  std::vector<mpq_class> D(n_max);
  std::vector<QComplex> y(n_max);
  mpq_class captured = 0;
  for (std::size_t m = 0; m < n_max; ++m) {
    for (std::size_t j = 0; j < m; ++j) {
      QComplex acc = inner_product_exact(s, g[j], g[m]);
      for (std::size_t k = 0; k < j; ++k) acc -= L[m][k] * QComplex(D[k]) * conj(L[j][k]);
      L[m][j] = sgn(D[j]) == 0 ? QComplex() : acc / QComplex(D[j]);
    }
    mpq_class d = inner_product_exact(s, g[m], g[m]).re;
    for (std::size_t k = 0; k < m; ++k) d -= L[m][k].norm() * D[k];
    D[m] = d;
    L[m][m] = QComplex(1L);
    DecayEntry entry;
    entry.N = m + 1;
    if (sgn(d) < 0) {
      t.truncated = true;
      break;
    }
    QComplex ym = inner_product_exact(s, one, g[m]);
    for (std::size_t k = 0; k < m; ++k) ym -= L[m][k] * y[k];
    y[m] = ym;
    if (sgn(d) == 0) entry.ridge = true;  // dependent column: nothing new is captured
    else captured += ym.norm() / d;
    const mpq_class d2 = norm_one - captured;
    t.exact_d2.push_back(d2);
    entry.d2 = d2.get_d();
    t.entries.push_back(entry);
  }
  return t;
}

Verdict estimate_from_decay(const DecayTable& t, const DecayThresholds& th) {
  if (t.entries.empty()) return Verdict::Undetermined;
  const std::size_t n = t.entries.size();
  const double last = t.entries.back().d2;
  if (last < th.cyclic_level) return Verdict::LikelyCyclic;
  if (n < th.min_length || n <= th.window) return Verdict::Undetermined;

  const double old = t.entries[n - 1 - th.window].d2;
  const double change = std::abs(old - last) / std::max(old, 1e-300);
  if (last > th.plateau_level && change < th.plateau_change) return Verdict::LikelyNotCyclic;

  // fit d^2 ~ L + C N^{-s} + D N^{-s-1} and d^2 ~ L + C rho^N on the second
  // half; the trend points to cyclicity when the fitted limit L is below the target
  const std::size_t first = n / 2;
  const auto m = static_cast<Eigen::Index>(n - first);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) y(i) = t.entries[first + static_cast<std::size_t>(i)].d2;
  const double scale_sq = y.squaredNorm();
  struct Fit {
    double limit = 0.0, scale = 0.0, rel_rms = std::numeric_limits<double>::infinity();
  };
  const auto limit_of = [&](auto columns, double lo, double hi, double step) {
    Fit best;
    double best_sse = std::numeric_limits<double>::infinity();
    for (double par = lo; par <= hi + 1e-12; par += step) {
      Eigen::MatrixXd X = columns(par);
      const Eigen::VectorXd c = X.colPivHouseholderQr().solve(y);
      const double sse = (y - X * c).squaredNorm();
      if (sse < best_sse) {
        best_sse = sse;
        best = {c(0), c(1), std::sqrt(sse / std::max(scale_sq, 1e-300))};
      }
    }
    return best;
  };
  const auto Nof = [&](Eigen::Index i) { return static_cast<double>(t.entries[first + static_cast<std::size_t>(i)].N); };
  const Fit pw = limit_of(
      [&](double sp) {
        Eigen::MatrixXd X(m, 3);
        for (Eigen::Index i = 0; i < m; ++i) X.row(i) << 1.0, std::pow(Nof(i), -sp), std::pow(Nof(i), -sp - 1.0);
        return X;
      },
      th.min_power, th.max_power, 0.01);
  const Fit ex = limit_of(
      [&](double rho) {
        Eigen::MatrixXd X(m, 2);
        for (Eigen::Index i = 0; i < m; ++i) X.row(i) << 1.0, std::pow(rho, Nof(i));
        return X;
      },
      0.5, 0.995, 0.005);
  const auto to_zero = [&](const Fit& f) {
    return f.scale > 0 && std::abs(f.limit) < th.trend_target && f.rel_rms < th.fit_tolerance;
  };
  if (to_zero(pw) || to_zero(ex)) return Verdict::LikelyCyclic;
  return Verdict::Undetermined;
}

TheoremACertificate theorem_a_check(const HbSpace& s, const Poly& f, const std::vector<Arc>& E,
                                    const std::vector<Arc>& F) {
  if (f.is_zero() || !is_outer(f, s.tol)) throw Error(ErrorKind::NotOuter, "theorem A check needs an outer f");
  TheoremACertificate c;
  c.E = E;
  c.F = F;
  Evidence e;
  e.rule = "arc_cover_certificate";
  e.anchor = "a^{-1} square integrable on E, f^{-1} bounded on F, E and F cover the circle";
  e.inputs.push_back({"f", fmt(f)});

  std::vector<Arc> all = E;
  all.insert(all.end(), F.begin(), F.end());
  std::vector<Arc> gaps;
  if (!covers_circle(all, 1e-12, &gaps))
    return fail(c, ErrorKind::CoverageGap, "E and F leave " + std::to_string(gaps.size()) + " uncovered arc(s)");
  for (const cplx& z : s.circle_zeros_of_a())
    for (const Arc& arc : E)
      if (arc.contains(std::arg(z), true, 1e-9))
        return fail(c, ErrorKind::BoundFailure, "unimodular zero of a at angle " + fmt(normalize_angle(std::arg(z))) + " lies in closure(E)");
  for (const cplx& z : unimodular_zeros(f))
    for (const Arc& arc : F)
      if (arc.contains(std::arg(z), true, 1e-9))
        return fail(c, ErrorKind::BoundFailure, "unimodular zero of f at angle " + fmt(normalize_angle(std::arg(z))) + " lies in closure(F)");

  const std::size_t n = s.grid.n;
  double integral = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx z = kernels::node(k, n, 1.0);
    bool inside = false;
    for (const Arc& arc : E) inside = inside || arc.contains(std::arg(z));
    if (inside) integral += std::norm(s.q(z)) / std::norm(s.A(z));
  }
  c.a_inverse_sq_on_E = integral / static_cast<double>(n);
  c.f_min_on_F = std::numeric_limits<double>::infinity();
  for (const Arc& arc : F) c.f_min_on_F = std::min(c.f_min_on_F, arc_min(f, arc));
  e.numbers.push_back({"int_E_abs_a_inv_sq", c.a_inverse_sq_on_E});
  if (!F.empty()) e.numbers.push_back({"grid_min_abs_f_on_F", c.f_min_on_F});
  e.verdict = Verdict::Cyclic;
  c.success = true;
  c.report.verdict = Verdict::Cyclic;
  c.report.evidence.push_back(std::move(e));
  return c;
}

void require_normalized(const HbSpace& s) {
  if (std::abs(s.b(0.0)) > 1e-9) throw Error(ErrorKind::NotNormalized, "b(0) != 0");
  const ClarkMeasure mu = clark_measure(s, 1.0);
  if (!mu.atoms.empty()) throw Error(ErrorKind::NotNormalized, "mu_1 has atoms");
  if (std::abs(mu.ac_mass - 1.0) > 1e-6) throw Error(ErrorKind::NotNormalized, "||phi_1||^2 != 1");
}

TheoremBCertificate theorem_b_check(const HbSpace& s, const Poly& f, const std::vector<CoverArc>& cover) {
  require_normalized(s);
  if (f.is_zero() || !is_outer(f, s.tol)) throw Error(ErrorKind::NotOuter, "theorem B check needs an outer f");
  TheoremBCertificate c;
  c.cover = cover;
  c.sigma_upper = sigma_upper(phi_alpha(s, 1.0), s.tol);
  Evidence e;
  e.rule = "local_bound_certificate";
  e.anchor = "|f| > eta on an arc around every point of the upper bound for sigma(phi)";
  e.inputs.push_back({"f", fmt(f)});
  e.numbers.push_back({"sigma_upper_count", static_cast<double>(c.sigma_upper.size())});

  for (const cplx& z : c.sigma_upper) {
    bool covered = false;
    for (const auto& ca : cover) covered = covered || ca.arc.contains(std::arg(z), false, 1e-12);
    if (!covered)
      return fail(c, ErrorKind::CoverageGap, "point at angle " + fmt(normalize_angle(std::arg(z))) + " is not inside any cover arc");
  }
  const auto fz = unimodular_zeros(f);
  for (const auto& ca : cover) {
    if (!(ca.eta > 0)) return fail(c, ErrorKind::BoundFailure, "cover bound eta must be positive");
    for (const cplx& z : fz)
      if (ca.arc.contains(std::arg(z), true, 1e-9))
        return fail(c, ErrorKind::BoundFailure, "f vanishes at angle " + fmt(normalize_angle(std::arg(z))) + " inside a cover arc");
    const double m = arc_min(f, ca.arc);
    c.grid_min.push_back(m);
    if (!(m > ca.eta)) return fail(c, ErrorKind::BoundFailure, "grid minimum " + fmt(m) + " does not exceed eta " + fmt(ca.eta));
    e.numbers.push_back({"grid_min_arc_" + std::to_string(c.grid_min.size() - 1), m});
  }
  e.verdict = Verdict::Cyclic;
  c.success = true;
  c.report.verdict = Verdict::Cyclic;
  c.report.evidence.push_back(std::move(e));
  return c;
}

TheoremCCertificate theorem_c_check(const HbSpace& s, const Poly& g) {
  require_normalized(s);
  TheoremCCertificate c;
  const ClarkMeasure mu = clark_measure(s, 1.0);
  const CauchyRefit fit = normalized_cauchy_refit(s, mu, g);
  c.refit_residual = fit.residual;
  if (fit.residual > 1e-8) throw Error(ErrorKind::RefitResidual, "refit residual " + fmt(fit.residual) + " exceeds 1e-8");
  c.f = fit.value;
  if (c.f.numerator().is_zero()) throw Error(ErrorKind::ZeroPolynomial, "V g vanishes identically");
  const InnerOuter io = inner_outer(c.f.numerator(), s.tol);
  c.theta = io.inner;
  c.F = c.f.is_polynomial() ? Function::polynomial(io.outer) : Function::rational(io.outer, c.f.denominator());
  c.sigma_F = unimodular_zeros(io.outer);
  c.sigma_phi = sigma_upper(phi_alpha(s, 1.0), s.tol);

  Evidence e;
  e.rule = "disjoint_sigma_certificate";
  e.anchor = "the outer part F of V g is cyclic when sigma(F) and sigma(phi) are disjoint";
  e.inputs.push_back({"g", fmt(g)});
  e.inputs.push_back({"F_numerator", fmt(c.F.numerator())});
  e.numbers.push_back({"refit_residual", c.refit_residual});
  for (const cplx& x : c.sigma_F)
    for (const cplx& y : c.sigma_phi)
      if (std::abs(x - y) < 1e-6)
        return fail(c, ErrorKind::BoundFailure, "sigma(F) and sigma(phi) share the point at angle " + fmt(normalize_angle(std::arg(x))));

  const HbElement el = element(s, c.F);
  c.F_norm_sq = el.norm_sq;
  e.numbers.push_back({"F_norm_sq", c.F_norm_sq});
  e.numbers.push_back({"F_mate_residual", mate_residual(s, el.f, el.f1)});
  if (!std::isfinite(c.F_norm_sq)) return fail(c, ErrorKind::BoundFailure, "F has no finite H(b) norm");
  e.verdict = Verdict::Cyclic;
  c.success = true;
  c.report.verdict = Verdict::Cyclic;
  c.report.evidence.push_back(std::move(e));
  return c;
}

NecessityResult necessity_check(const HbSpace& s, const Poly& f) {
  NecessityResult out;
  Evidence e;
  e.rule = "clark_atom_necessity";
  e.anchor = "a cyclic f is outer and nonzero at every atom of every Clark measure";
  e.inputs.push_back({"f", fmt(f)});
  if (f.is_zero() || !is_outer(f, s.tol)) {
    out.pass = false;
    e.inputs.push_back({"failure", "f is not outer"});
    e.verdict = Verdict::NotCyclic;
    out.report.verdict = Verdict::NotCyclic;
    out.report.evidence.push_back(std::move(e));
    return out;
  }
  const auto alphas = alpha_grid(s);
  const auto atoms = sweep_atoms(s, alphas);
  std::size_t count = 0;
  for (std::size_t i = 0; i < alphas.size() && out.pass; ++i)
    for (const Atom& a : atoms[i]) {
      ++count;
      if (std::abs(f(a.point)) < s.tol.nonzero) {
        out.pass = false;
        out.alpha = alphas[i];
        out.zeta = a.point;
        break;
      }
    }
  e.numbers.push_back({"atoms_checked", static_cast<double>(count)});
  if (!out.pass) {
    e.numbers.push_back({"alpha_angle", normalize_angle(std::arg(out.alpha))});
    e.numbers.push_back({"atom_angle", normalize_angle(std::arg(out.zeta))});
    e.verdict = Verdict::NotCyclic;
  }
  out.report.verdict = e.verdict;
  out.report.evidence.push_back(std::move(e));
  return out;
}

CyclicityReport analyze(const HbSpace& s, const Poly& f, std::size_t n_max) {
  CyclicityReport r = classify_finite_defect(s, f);
  if (!f.is_zero()) {
    const NecessityResult nec = necessity_check(s, f);
    r.evidence.push_back(nec.report.evidence.front());
    DecayTable t = decay_table(s, f, n_max);
    Evidence e;
    e.rule = "distance_decay";
    e.anchor = "f is cyclic iff 1 lies in the closed span of its shifts";
    e.inputs.push_back({"N_max", std::to_string(n_max)});
    e.numbers.push_back({"d2_last", t.entries.empty() ? 0.0 : t.entries.back().d2});
    e.verdict = estimate_from_decay(t);
    r.evidence.push_back(std::move(e));
    r.decay = std::move(t);
  }
  return r;
}

std::string to_json(const CyclicityReport& r) {
  nlohmann::ordered_json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["evidence"] = nlohmann::ordered_json::array();
  for (const auto& e : r.evidence) {
    nlohmann::ordered_json item;
    item["rule"] = e.rule;
    item["anchor"] = e.anchor;
    item["verdict"] = std::string(to_string(e.verdict));
    item["inputs"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : e.inputs) item["inputs"][k] = v;
    item["numbers"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : e.numbers) item["numbers"][k] = v;
    j["evidence"].push_back(std::move(item));
  }
  if (r.decay) {
    j["decay"]["norm_one_sq"] = r.decay->norm_one_sq;
    j["decay"]["truncated"] = r.decay->truncated;
    j["decay"]["entries"] = nlohmann::ordered_json::array();
    for (const auto& d : r.decay->entries) j["decay"]["entries"].push_back({{"N", d.N}, {"d2", d.d2}, {"ridge", d.ridge}});
  }
  return j.dump(2);
}

void write_decay_csv(std::ostream& os, const DecayTable& t) {
  os << "N,d2,ridge\n";
  os.precision(17);
  for (const auto& e : t.entries) os << e.N << ',' << e.d2 << ',' << (e.ridge ? 1 : 0) << '\n';
}

}  // namespace hblab
