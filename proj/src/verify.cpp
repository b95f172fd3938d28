#include "hblab/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "hblab/clark.hpp"
#include "hblab/cyclicity.hpp"
#include "hblab/error.hpp"
#include "hblab/factor.hpp"
#include "hblab/kernels.hpp"
#include "hblab/models.hpp"
#include "hblab/sigma.hpp"

namespace hblab {

namespace {

using Rng = std::mt19937_64;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << x;
  return os.str();
}

Outcome bound(const char* what, double value, double limit) {
  return {value < limit, std::string(what) + " " + num(value) + " (limit " + num(limit) + ")"};
}

Poly random_poly(Rng& rng, int degree) {
  std::normal_distribution<double> g;
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = {g(rng), g(rng)};
  return Poly(std::move(c));
}

// Coefficients k/8 with |k| <= 16: exactly representable in both backends.
Poly dyadic_poly(Rng& rng, int degree) {
  std::uniform_int_distribution<int> k(-16, 16);
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = {k(rng) / 8.0, k(rng) / 8.0};
  if (c.back() == cplx{}) c.back() = 1.0;
  return Poly(std::move(c));
}

cplx random_disk(Rng& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmax * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

cplx random_unimodular(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, u(rng));
}

std::vector<HbSpace> test_spaces() {
  std::vector<HbSpace> out;
  for (const Poly& p : {Poly{0.5, 0.5}, Poly{0.0, 0.5}, Poly{0.0, 0.5, 0.5}, Poly{0.0, 0.75, 0.25}})
    out.push_back(make_space(Function::polynomial(p), {}, Backend::Exact));
  return out;
}

HbSpace half_shift_space() { return make_space(Function::polynomial(Poly{0.5, 0.5})); }

Poly poly_of(std::vector<cplx> c) { return Poly(std::move(c)); }

Outcome fourier_roundtrip(Rng& rng) {
  double worst = 0.0;
  for (int t = 0; t < 8; ++t) {
    const Poly p = random_poly(rng, 8);
    const Poly rebuilt = poly_of(fourier_coeffs(Function::polynomial(p), 0, 8).values);
    for (int k = 0; k < 64; ++k) {
      const cplx z = random_disk(rng, 1.0);
      worst = std::max(worst, std::abs(rebuilt(z) - p(z)));
    }
  }
  return bound("max eval mismatch", worst, 1e-10);
}

Outcome roots_reexpand(Rng& rng) {
  double worst = 0.0;
  std::vector<Poly> cases;
  for (int t = 0; t < 8; ++t) cases.push_back(random_poly(rng, 10));
  cases.push_back(Poly{1.0, -1.0} * Poly{1.0, -1.0} * Poly{0.5, 1.0});
  cases.push_back(Poly{1.0, 0.0, 1.0} * Poly{1.0, 0.0, 1.0} * Poly{0.0, 1.0});
  for (const Poly& p : cases) {
    const auto r = roots_flat(p);
    const Poly q = from_roots(r, p.leading());
    double scale = 0.0;
    for (const auto& c : p.coeffs()) scale = std::max(scale, std::abs(c));
    worst = std::max(worst, max_coeff_diff(p, q) / scale);
  }
  return bound("relative coefficient error", worst, 1e-8);
}

Outcome herglotz_positivity(Rng& rng) {
  const Poly w = random_poly(rng, 3);
  Measure mu = Measure::from_density([w](cplx z) { return std::norm(w(z)); });
  mu.atoms.push_back({random_unimodular(rng), 0.7});
  double worst = 0.0;
  for (double r : {0.3, 0.6, 0.9, 0.99})
    for (int k = 0; k < 16; ++k) worst = std::min(worst, herglotz(mu, r * kernels::node(static_cast<std::size_t>(k), 16)).real());
  return {worst >= -1e-12, "min real part " + num(worst)};
}

Outcome cauchy_projection(Rng& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> c(7);
  for (auto& x : c) x = {g(rng), g(rng)};
  const auto h = [&](cplx z) {
    cplx s{};
    for (int k = -3; k <= 3; ++k) s += c[static_cast<std::size_t>(k + 3)] * std::pow(z, k);
    return s;
  };
  const Poly plus{c[3], c[4], c[5], c[6]};
  double worst = 0.0;
  for (int t = 0; t < 16; ++t) {
    const cplx z = random_disk(rng, 0.9);
    worst = std::max(worst, std::abs(cauchy(Measure::lebesgue(), h, z) - plus(z)));
  }
  return bound("max mismatch", worst, 1e-10);
}

Outcome pythagorean() {
  double worst = 0.0;
  bool exact = true;
  for (const auto& s : test_spaces()) {
    worst = std::max(worst, s.pythagorean_error());
    const auto& e = *s.exact;
    exact = exact && is_identically_zero(defect_weight(e.p, e.q) - e.A.scale_sq * abs2(e.A.shape));
  }
  return {worst < 1e-10 && exact, "float error " + num(worst) + (exact ? ", exact identity holds" : ", exact identity FAILS")};
}

Outcome factor_output() {
  bool ok = true;
  std::string note;
  for (const auto& s : test_spaces()) {
    const bool a0 = s.A[0].real() > 0 && s.A[0].imag() == 0.0;
    bool roots_ok = true;
    if (s.A.degree() > 0)
      for (const auto& r : roots(s.A)) roots_ok = roots_ok && std::abs(r.root) >= 1.0 - 1e-10;
    ok = ok && a0 && roots_ok;
  }
  note = ok ? "a(0) > 0 and no interior roots on all spaces" : "factor with interior root or a(0) <= 0";
  return {ok, note};
}

Outcome inner_outer_check(Rng& rng) {
  double modulus = 0.0, unimodular = 0.0;
  bool outer = true;
  for (int t = 0; t < 20; ++t) {
    const Poly f = random_poly(rng, 6);
    const InnerOuter io = inner_outer(f);
    double scale = 0.0;
    for (std::size_t k = 0; k < 512; ++k) scale = std::max(scale, std::abs(f(kernels::node(k, 512))));
    for (std::size_t k = 0; k < 512; ++k) {
      const cplx z = kernels::node(k, 512, 1.0);
      modulus = std::max(modulus, std::abs(std::abs(io.outer(z)) - std::abs(f(z))) / scale);
      unimodular = std::max(unimodular, std::abs(std::abs(io.inner(z)) - 1.0));
    }
    outer = outer && is_outer(io.outer);
  }
  return {modulus < 1e-9 && unimodular < 1e-10 && outer,
          "| |F|-|f| | " + num(modulus) + ", | |theta|-1 | " + num(unimodular) + (outer ? "" : ", F not outer")};
}

Outcome mate_residuals(Rng& rng) {
  double worst = 0.0;
  bool exact = true;
  for (const auto& s : test_spaces()) {
    std::uniform_int_distribution<int> deg(0, 16);
    for (int t = 0; t < 200; ++t) {
      const Poly f = random_poly(rng, deg(rng));
      worst = std::max(worst, mate_residual(s, f, mate(s, f)));
    }
    for (int t = 0; t < 20; ++t) {
      const QPoly f = to_exact(dyadic_poly(rng, deg(rng)));
      exact = exact && mate_residual_is_zero(*s.exact, f, mate_exact_scaled(*s.exact, f));
    }
  }
  return {worst < 1e-10 && exact, "float residual " + num(worst) + (exact ? ", exact residual 0" : ", exact residual nonzero")};
}

Outcome contractive_embedding(Rng& rng) {
  bool ok = true;
  for (const auto& s : test_spaces())
    for (int t = 0; t < 50; ++t) {
      const Poly f = random_poly(rng, 8);
      ok = ok && element(s, f).norm_sq >= l2_norm_sq(f);
    }
  return {ok, ok ? "||f||_b >= ||f||_2 on all samples" : "embedding norm inequality violated"};
}

Outcome reproducing_property(Rng& rng) {
  double worst = 0.0;
  for (const auto& s : test_spaces())
    for (int t = 0; t < 10; ++t) {
      const Poly f = random_poly(rng, 8);
      const cplx lam = random_disk(rng, 0.6);
      const Poly k = poly_of(taylor_coeffs(kernel(s, lam), 65));
      worst = std::max(worst, std::abs(inner_product(element(s, f), element(s, k)) - f(lam)) / std::max(1.0, std::abs(f(lam))));
    }
  return bound("max |<f,k> - f(lambda)|", worst, 1e-8);
}

Outcome clark_mass(Rng& rng) {
  double worst = 0.0;
  for (const auto& s : test_spaces())
    for (int t = 0; t < 16; ++t) {
      const ClarkMeasure mu = clark_measure(s, random_unimodular(rng));
      worst = std::max(worst, mu.mass_defect() / mu.total_mass);
    }
  return bound("relative mass defect", worst, 1e-6);
}

Outcome generic_alpha_no_atoms(Rng& rng) {
  const HbSpace s = make_space(Function::polynomial(Poly{0.0, 0.5}));
  std::size_t atoms = 0;
  for (int t = 0; t < 32; ++t) atoms += clark_measure(s, random_unimodular(rng)).atoms.size();
  return {atoms == 0, std::to_string(atoms) + " atoms for b = z/2"};
}

Outcome clark_kernel_identity(Rng& rng) {
  double worst = 0.0;
  const auto spaces = test_spaces();
  for (int t = 0; t < 10; ++t) {
    const HbSpace& s = spaces[static_cast<std::size_t>(t) % spaces.size()];
    const cplx lam = random_disk(rng, 0.7);
    const cplx alpha = random_unimodular(rng);
    const ClarkMeasure mu = clark_measure(s, alpha);
    const cplx c = std::conj(1.0 - std::conj(alpha) * s.b(lam));
    const auto h = [&](cplx zeta) { return c / (1.0 - std::conj(lam) * zeta); };
    const Function k = kernel(s, lam);
    for (std::size_t j = 0; j < 32; ++j) {
      const cplx z = 0.9 * kernels::node(j, 32);
      worst = std::max(worst, std::abs(normalized_cauchy(s, mu, h, z) - k(z)));
    }
  }
  return bound("sup error on |z| = 0.9", worst, 1e-6);
}

Outcome unitarity() {
  double worst = 0.0;
  for (const Poly& p : {Poly{0.0, 0.5}, Poly{0.0, 0.5, 0.5}}) {
    const HbSpace s = make_space(Function::polynomial(p));
    const ClarkMeasure mu = clark_measure(s, 1.0);
    std::vector<HbElement> v;
    for (int k = 0; k <= 6; ++k) v.push_back(element(s, normalized_cauchy_refit(s, mu, Poly::monomial(k)).value));
    for (int j = 0; j <= 6; ++j)
      for (int k = 0; k <= 6; ++k) {
        cplx l2 = kernels::mean([&](cplx z) { return mu.density(z) * std::pow(z, j - k); }, 4096, 1.0);
        for (const auto& a : mu.atoms) l2 += a.mass * std::pow(a.point, j - k);
        worst = std::max(worst, std::abs(inner_product(v[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(k)]) - l2));
      }
  }
  return bound("max Gram entry mismatch", worst, 1e-6);
}

std::vector<HbSpace> sigma_spaces() {
  auto out = test_spaces();
  out.push_back(space_from_phi(Poly{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}));
  return out;
}

Outcome sigma_inclusion() {
  std::size_t lower = 0;
  for (const auto& s : sigma_spaces()) {
    const SigmaBounds sb = sigma_bounds(s);
    for (const auto& l : sb.lower) {
      bool found = false;
      for (const auto& u : sb.upper) found = found || std::abs(l.point - u.point) < 1e-8;
      if (!found) return {false, "lower point outside upper bound"};
      ++lower;
    }
  }
  return {true, std::to_string(lower) + " lower points, all inside the upper bounds"};
}

Outcome toeplitz_counts() {
  const Function e = Function::polynomial(Poly{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)});
  const Function x = Function::rational(Poly::constant(std::sqrt(3.0)), Poly{2.0, 1.0});
  const ToeplitzTrend te = toeplitz_kernel_sections(e, 64);
  const ToeplitzTrend tx = toeplitz_kernel_sections(x, 64);
  bool ok = true;
  for (const auto& s : te.sections) ok = ok && s.near_kernel == 1;
  for (const auto& s : tx.sections) ok = ok && s.near_kernel == 0;
  return {ok, "(1-z)/sqrt2 counts " + std::to_string(te.sections.front().near_kernel) + ", sqrt3/(2+z) sigma_min " +
                  num(tx.sections.back().sigma_min)};
}

Outcome pseudocontinuation(Rng& rng) {
  const Function phi = Function::polynomial(Poly{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)});
  const auto h = [](cplx z) { return 1.0 / (1.0 - z); };
  double worst = 0.0;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 40; ++t) {
    const double r = t % 2 == 0 ? 0.1 + 0.8 * u(rng) : 1.12 + 3.0 * u(rng);
    const cplx z = r * random_unimodular(rng);
    worst = std::max(worst, std::abs(pseudocontinuation_eval(phi, h, z) - h(z)));
  }
  return bound("max error against 1/(1-z)", worst, 1e-6);
}

Outcome boundary_agreement() {
  const Function phi = Function::polynomial(Poly{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)});
  const auto h = [](cplx z) { return 1.0 / (1.0 - z); };
  const double r = 1.0 - std::ldexp(1.0, -10);
  double worst = 0.0;
  // the exact gap is about 2^-9 / |1 - zeta|^2, so stay away from the pole at 1
  for (double angle : {std::numbers::pi, 2.5, -2.5}) {
    const cplx zeta = std::polar(1.0, angle);
    worst = std::max(worst, std::abs(pseudocontinuation_eval(phi, h, r * zeta) - pseudocontinuation_eval(phi, h, zeta / r)));
  }
  return bound("interior/exterior gap", worst, 1e-3);
}

Outcome classifier_agreement(Rng& rng, bool check_tables) {
  const HbSpace s = half_shift_space();
  std::uniform_int_distribution<int> deg(1, 6);
  std::size_t contradictions = 0, bad_tables = 0;
  for (int t = 0; t < 50; ++t) {
    const Poly f = random_poly(rng, deg(rng));
    const Verdict v = classify_finite_defect(s, f).verdict;
    const DecayTable table = decay_table(s, f, 60);
    if (contradicts(v, estimate_from_decay(table))) ++contradictions;
    double prev = table.norm_one_sq;
    for (const auto& e : table.entries) {
      if (e.d2 > prev + 1e-10 * table.norm_one_sq) ++bad_tables;
      prev = e.d2;
    }
  }
  if (check_tables) return {bad_tables == 0, std::to_string(bad_tables) + " non-monotone or unbounded entries"};
  return {contradictions == 0, std::to_string(contradictions) + " contradictions in 50 polynomials"};
}

Outcome certificates_agree(Rng& rng) {
  const HbSpace s = half_shift_space();
  const Poly f{1.0, 1.0};
  const auto a = theorem_a_check(s, f, {Arc::between(0.1, 2.0 * std::numbers::pi - 0.1)}, {Arc::between(-0.5, 0.5)});
  bool ok = a.success && classify_finite_defect(s, f).verdict == Verdict::Cyclic;
  const HbSpace z2 = make_space(Function::polynomial(Poly{0.0, 0.5}));
  for (int t = 0; t < 10; ++t) {
    const Poly g = inner_outer(random_poly(rng, 4)).outer;
    const auto b = theorem_b_check(z2, g, {});
    ok = ok && b.success && classify_finite_defect(z2, g).verdict == Verdict::Cyclic;
  }
  return {ok, ok ? "arc and local certificates confirmed by the classifier" : "certificate disagrees with classifier"};
}

Outcome necessity_excludes(Rng& rng) {
  const HbSpace s = make_space(Function::polynomial(Poly{0.0, 0.5, 0.5}));
  std::vector<Poly> fs{Poly{1.0, -1.0}, Poly{1.0, 1.0}, Poly{1.0, -1.0} * Poly{2.0, 1.0}};
  for (int t = 0; t < 5; ++t) fs.push_back(random_poly(rng, 3));
  std::size_t rejected = 0;
  for (const Poly& f : fs) {
    const NecessityResult n = necessity_check(s, f);
    if (n.pass) continue;
    ++rejected;
    if (classify_finite_defect(s, f).verdict == Verdict::Cyclic || analyze(s, f, 30).verdict == Verdict::Cyclic)
      return {false, "a rejected f was declared cyclic"};
  }
  return {rejected >= 2, std::to_string(rejected) + " rejections, none contradicted"};
}

Outcome multiplier_stability(Rng& rng) {
  const HbSpace no_zero = make_space(Function::polynomial(Poly{1.0 / 3.0, 1.0 / 3.0}));
  const HbSpace with_zero = half_shift_space();
  std::size_t tested = 0;
  for (int t = 0; t < 20; ++t) {
    const Poly f = inner_outer(random_poly(rng, 4)).outer;
    for (const HbSpace* s : {&no_zero, &with_zero}) {
      if (classify_finite_defect(*s, f).verdict != Verdict::Cyclic) continue;
      ++tested;
      if (classify_finite_defect(*s, f.shifted(1)).verdict != Verdict::NotCyclic) return {false, "z f declared cyclic"};
      if (s->circle_zeros_of_a().empty() && classify_finite_defect(*s, s->A * f).verdict != Verdict::Cyclic)
        return {false, "a f lost cyclicity"};
    }
  }
  return {tested > 0, std::to_string(tested) + " cyclic f tested"};
}

Outcome theta_triangulation() {
  const ThetaModel m = theta_model(Function::blaschke({0.0}));
  const HbSpace s = half_shift_space();
  for (const Poly& f : {Poly{1.0}, Poly{1.0, 1.0}, Poly{1.0, -1.0}, Poly{0.0, 1.0}, Poly{1.0, 0.0, -1.0}}) {
    const Verdict vt = theta_cyclic(m, f).verdict;
    const Verdict vc = classify_finite_defect(s, f).verdict;
    const Verdict vd = estimate_from_decay(decay_table(s, f, 60));
    if (vt != vc || contradicts(vt, vd)) return {false, "verdicts disagree"};
  }
  return {true, "theta model, classifier and decay agree on 5 functions"};
}

std::vector<Function> theta_cases() {
  return {Function::blaschke({0.0}), Function::blaschke({0.0, 0.0}), Function::blaschke({0.5}),
          Function::blaschke({0.0, cplx(0.0, 0.3)}), Function::blaschke({cplx(0.2, -0.4), -0.5}, cplx(0.0, 1.0))};
}

Outcome theta_mass() {
  double worst = 0.0;
  for (const auto& th : theta_cases()) {
    const ThetaModel m = theta_model(th);
    worst = std::max(worst, std::abs(m.sigma_mass() - m.herglotz_at_zero));
  }
  return bound("max mass defect", worst, 1e-6);
}

Outcome dirichlet_exact(Rng& rng) {
  DirichletSpec spec{{{1.0, 1.0}, {-1.0, 0.5}, {cplx(0.0, 1.0), 2.0}, {cplx(0.6, 0.8), 0.75}}};
  const auto atoms = exact_atoms(spec);
  double worst = 0.0;
  bool positive = true;
  std::uniform_int_distribution<int> deg(0, 8);
  for (int t = 0; t < 20; ++t) {
    const Poly f = dyadic_poly(rng, deg(rng));
    const DirichletNorm d = dirichlet_norm(spec, f);
    const ExactDirichletNorm e = dirichlet_norm_exact(atoms, to_exact(f));
    worst = std::max(worst, std::abs(d.norm_sq - e.norm_sq.get_d()) / std::max(1.0, d.norm_sq));
    positive = positive && d.dirichlet >= 0 && sgn(e.dirichlet) >= 0;
  }
  return {worst < 1e-12 && positive, "float/exact gap " + num(worst) + (positive ? "" : ", negative integral")};
}

Outcome theta_poltoratski(Rng& rng) {
  double worst = 0.0;
  for (const auto& th : theta_cases()) {
    const ThetaModel m = theta_model(th);
    const ClarkMeasure mu = clark_measure(m.space, 1.0);
    const Poly h = random_poly(rng, 3);
    for (const auto& a : mu.atoms) worst = std::max(worst, std::abs(poltoratski_limit(m.space, mu, h, a.point).value - h(a.point)));
  }
  return bound("max |V h(atom) - h(atom)|", worst, 1e-3);
}

}  // namespace

std::vector<CheckResult> verify_suite(std::uint64_t seed) {
  Rng rng(seed);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"fourier_roundtrip", [&] { return fourier_roundtrip(rng); }},
      {"roots_reexpand", [&] { return roots_reexpand(rng); }},
      {"herglotz_positivity", [&] { return herglotz_positivity(rng); }},
      {"cauchy_projection", [&] { return cauchy_projection(rng); }},
      {"pythagorean_identity", [] { return pythagorean(); }},
      {"factor_outer_positive", [] { return factor_output(); }},
      {"inner_outer_moduli", [&] { return inner_outer_check(rng); }},
      {"mate_residual", [&] { return mate_residuals(rng); }},
      {"contractive_embedding", [&] { return contractive_embedding(rng); }},
      {"reproducing_property", [&] { return reproducing_property(rng); }},
      {"clark_mass_conservation", [&] { return clark_mass(rng); }},
      {"generic_alpha_no_atoms", [&] { return generic_alpha_no_atoms(rng); }},
      {"clark_kernel_identity", [&] { return clark_kernel_identity(rng); }},
      {"cauchy_unitarity", [] { return unitarity(); }},
      {"sigma_lower_in_upper", [] { return sigma_inclusion(); }},
      {"toeplitz_kernel_counts", [] { return toeplitz_counts(); }},
      {"pseudocontinuation_values", [&] { return pseudocontinuation(rng); }},
      {"pseudocontinuation_boundary", [] { return boundary_agreement(); }},
      {"classifier_decay_agreement", [&] { return classifier_agreement(rng, false); }},
      {"decay_monotone_bounded", [&] { return classifier_agreement(rng, true); }},
      {"certificates_confirmed", [&] { return certificates_agree(rng); }},
      {"necessity_excludes_cyclic", [&] { return necessity_excludes(rng); }},
      {"multiplier_stability", [&] { return multiplier_stability(rng); }},
      {"theta_triangulation", [] { return theta_triangulation(); }},
      {"theta_mass_conservation", [] { return theta_mass(); }},
      {"dirichlet_exact_agreement", [&] { return dirichlet_exact(rng); }},
      {"theta_poltoratski", [&] { return theta_poltoratski(rng); }},
  };
  std::vector<CheckResult> out;
  for (const auto& [name, run] : checks) {
    CheckResult r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Outcome o = run();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const Error& e) {
      r.detail = std::string(to_string(e.kind())) + ": " + e.what();
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

void print_checks(std::ostream& os, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    os << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << std::fixed << std::setprecision(3) << c.seconds << " s) "
       << std::defaultfloat << c.detail << '\n';
}

}  // namespace hblab
