// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hblab/clark.hpp"
#include "hblab/cyclicity.hpp"
#include "hblab/error.hpp"
#include "hblab/factor.hpp"
#include "hblab/hb.hpp"
#include "hblab/models.hpp"
#include "hblab/sigma.hpp"

using namespace hblab;

namespace {

using Rng = std::mt19937_64;

struct Criterion {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& what, double value) {
    std::ostringstream os;
    os << what << '=' << std::setprecision(4) << value;
    notes.push_back(os.str());
  }
};

HbSpace space_of(Poly p, Backend backend = Backend::Float) {
  return make_space(Function::polynomial(std::move(p)), {}, backend);
}

Poly random_poly(Rng& rng, int degree) {
  std::normal_distribution<double> g;
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = {g(rng), g(rng)};
  return Poly(std::move(c));
}

cplx random_disk(Rng& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmax * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

// Outer polynomial with all roots in 1.05 <= |z| <= 3.
Poly random_outer(Rng& rng, int degree) {
  std::uniform_real_distribution<double> r(1.05, 3.0), th(0.0, 2.0 * std::numbers::pi);
  std::vector<cplx> roots;
  for (int k = 0; k < degree; ++k) roots.push_back(std::polar(r(rng), th(rng)));
  return from_roots(roots, 1.0);
}

double grid_pythagorean_error(const Function& a, const Function& b) {
  double worst = 0.0;
  for (int k = 0; k < 4096; ++k) {
    const cplx z = std::polar(1.0, (2.0 * k + 1.0) * std::numbers::pi / 4096.0);
    worst = std::max(worst, std::abs(std::norm(a(z)) + std::norm(b(z)) - 1.0));
  }
  return worst;
}

void pythagorean_identity(Criterion& c) {
  for (const Poly& p : {Poly{0.5, 0.5}, Poly{0.0, 0.5}, Poly{0.0, 0.5, 0.5}, Poly{0.0, 0.75, 0.25}}) {
    const HbSpace s = space_of(p, Backend::Exact);
    const double err = grid_pythagorean_error(s.a, s.b);
    c.require(err < 1e-10, "float grid error too large");
    c.require(s.exact.has_value(), "exact backend unavailable");
    if (!s.exact) continue;
    const QLaurent defect = defect_weight(s.exact->p, s.exact->q);
    c.require(is_identically_zero(defect - s.exact->A.scale_sq * abs2(s.exact->A.shape)), "exact identity not zero");
  }
}

void mate_exactness(Criterion& c) {
  const HbSpace s = space_of(Poly{0.5, 0.5}, Backend::Exact);
  c.require(s.exact->A.scale_sq == mpq_class(1, 4), "a scale");
  c.require(s.exact->A.shape == QPoly{QComplex(1), QComplex(-1)}, "a = (1 - z)/2 coefficients");
  const HbElement one = element_exact(s, QPoly{QComplex(1)});
  // f1 = g / sqrt(scale_sq) = 2 g
  c.require(*one.exact_g == QPoly{QComplex(mpq_class(-1, 2))}, "mate(1) = -1");
  c.require(*one.exact_norm_sq == mpq_class(2), "||1||^2 = 2");
  for (int k = 0; k <= 8; ++k) {
    const HbElement x = element_exact(s, QPoly::monomial(k, QComplex(1)));
    c.require(*x.exact_norm_sq == mpq_class(4 * k + 2), "||z^" + std::to_string(k) + "||^2 = " + std::to_string(4 * k + 2));
  }
}

void kernel_norms(Criterion& c) {
  Rng rng(31);
  double worst = 0.0;
  for (const Poly& p : {Poly{0.5, 0.5}, Poly{0.0, 0.5, 0.5}}) {
    const HbSpace s = space_of(p);
    for (int t = 0; t < 10; ++t) {
      const cplx lam = random_disk(rng, 0.9);
      const double direct = (1.0 - std::norm(s.b(lam))) / (1.0 - std::norm(lam));
      const double via_mate = element(s, kernel(s, lam)).norm_sq;
      worst = std::max(worst, std::abs(via_mate - direct) / direct);
    }
  }
  c.note("max_rel_err", worst);
  c.require(worst < 1e-8, "relative error >= 1e-8");
}

void clark_triangulation(Criterion& c) {
  const ClarkMeasure a = clark_measure(space_of(Poly{0.0, 0.5, 0.5}), 1.0);
  c.require(a.atoms.size() == 1, "one atom for z(1+z)/2");
  if (a.atoms.size() == 1) c.require(std::abs(a.atoms[0].mass - 2.0 / 3.0) < 1e-4, "atom mass 2/3");
  c.require(std::abs(a.ac_mass - 1.0 / 3.0) < 1e-6, "a.c. mass 1/3");
  double total = a.ac_mass;
  for (const auto& at : a.atoms) total += at.mass;
  c.require(std::abs(total - 1.0) < 1e-6, "total 1");
  c.note("atom_mass", a.atoms.empty() ? 0.0 : a.atoms[0].mass);

  const ClarkMeasure b = clark_measure(space_of(Poly{0.5, 0.5}), 1.0);
  c.require(b.atoms.size() == 1, "one atom for (1+z)/2");
  if (b.atoms.size() == 1) c.require(std::abs(b.atoms[0].mass - 2.0) < 1e-4, "atom mass 2");
  total = b.ac_mass;
  for (const auto& at : b.atoms) total += at.mass;
  c.require(std::abs(total - 3.0) < 1e-6, "total 3");
}

void unitarity(Criterion& c) {
  const HbSpace s = space_of(Poly{0.0, 0.5});
  const ClarkMeasure mu = clark_measure(s, 1.0);
  std::vector<HbElement> v;
  for (int j = 0; j <= 6; ++j) v.push_back(element(s, normalized_cauchy_refit(s, mu, Poly::monomial(j)).value));
  double worst = 0.0;
  const std::size_t n = 1 << 14;
  for (int j = 0; j <= 6; ++j)
    for (int k = 0; k <= 6; ++k) {
      cplx l2{};
      for (std::size_t m = 0; m < n; ++m) {
        const cplx z = std::polar(1.0, (2.0 * static_cast<double>(m) + 1.0) * std::numbers::pi / static_cast<double>(n));
        l2 += std::pow(z, j) * std::conj(std::pow(z, k)) * mu.density(z);
      }
      l2 /= static_cast<double>(n);
      const cplx hb = inner_product(v[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(k)]);
      worst = std::max(worst, std::abs(hb - l2));
    }
  c.note("max_entry_err", worst);
  c.require(worst < 1e-6, "Gram entries differ by >= 1e-6");
}

void classifier_vs_decay(Criterion& c) {
  const HbSpace s = space_of(Poly{0.5, 0.5});
  c.require(classify_finite_defect(s, Poly{1.0, 1.0}).verdict == Verdict::Cyclic, "1+z cyclic");
  const DecayTable up = decay_table(s, Poly{1.0, 1.0}, 60);
  c.require(up.entries.size() == 60 && up.entries.back().d2 < 0.1, "d_60^2 < 0.1");
  for (std::size_t k = 1; k < up.entries.size(); ++k)
    c.require(up.entries[k].d2 <= up.entries[k - 1].d2 + 1e-10, "monotone at N=" + std::to_string(k + 1));
  if (!up.entries.empty()) c.note("d60_sq", up.entries.back().d2);

  c.require(classify_finite_defect(s, Poly{1.0, -1.0}).verdict == Verdict::NotCyclic, "1-z not cyclic");
  const DecayTable flat = decay_table(s, Poly{1.0, -1.0}, 12);
  for (const auto& e : flat.entries) c.require(std::abs(e.d2 - 2.0) < 1e-9, "d_N^2 = 2 at N=" + std::to_string(e.N));
  c.require(classify_finite_defect(s, Poly{0.0, 1.0}).verdict == Verdict::NotCyclic, "z not cyclic");

  Rng rng(61);
  std::uniform_int_distribution<int> deg(0, 6);
  int contradictions = 0;
  for (int t = 0; t < 50; ++t) {
    const Poly f = random_poly(rng, deg(rng));
    if (contradicts(classify_finite_defect(s, f).verdict, estimate_from_decay(decay_table(s, f, 60)))) ++contradictions;
  }
  c.note("contradictions", contradictions);
  c.require(contradictions == 0, "classifier and decay estimator contradict");
}

void necessity(Criterion& c) {
  const HbSpace s = space_of(Poly{0.0, 0.5, 0.5});
  const NecessityResult bad = necessity_check(s, Poly{1.0, -1.0});
  c.require(!bad.pass && bad.report.verdict == Verdict::NotCyclic, "1-z rejected");
  c.require(std::abs(bad.alpha - 1.0) < 1e-8 && std::abs(bad.zeta - 1.0) < 1e-8, "witness alpha = 1, zeta = 1");
  c.require(necessity_check(s, Poly{1.0, 1.0}).pass, "1+z passes");
}

void sigma_machinery(Criterion& c) {
  const Function edge = Function::polynomial(Poly{1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2});
  const ToeplitzTrend a = toeplitz_kernel_sections(edge, 64);
  for (const auto& sec : a.sections) c.require(sec.near_kernel == 1, "count 1 at N=" + std::to_string(sec.N));
  const Function exposed = Function::rational(Poly{std::sqrt(3.0)}, Poly{2.0, 1.0});
  const ToeplitzTrend b = toeplitz_kernel_sections(exposed, 64);
  double lo = 1e300, hi = 0.0;
  for (const auto& sec : b.sections) {
    c.require(sec.near_kernel == 0, "count 0 at N=" + std::to_string(sec.N));
    lo = std::min(lo, sec.sigma_min);
    hi = std::max(hi, sec.sigma_min);
  }
  c.note("sigma_min_lo", lo);
  c.note("sigma_min_hi", hi);
  c.require(lo > 0.2 && (hi - lo) < 1e-3 * hi, "sigma_min not stable across N");

  std::vector<HbSpace> spaces = {space_of(Poly{0.5, 0.5}), space_of(Poly{0.0, 0.5}), space_of(Poly{0.0, 0.5, 0.5}),
                                 space_of(Poly{0.0, 0.75, 0.25}),
                                 space_from_phi(Poly{1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2})};
  for (const auto& s : spaces) {
    const SigmaBounds sb = sigma_bounds(s);
    for (const auto& p : sb.lower) {
      bool inside = false;
      for (const auto& q : sb.upper) inside = inside || std::abs(p.point - q.point) < 1e-8;
      c.require(inside, "lower bound point outside upper bound");
    }
  }
}

void certificates(Criterion& c) {
  const HbSpace s = space_of(Poly{0.5, 0.5});
  const auto a = theorem_a_check(s, Poly{1.0, 1.0}, {Arc::between(0.1, 2.0 * std::numbers::pi - 0.1)},
                                 {Arc::between(-0.5, 0.5)});
  c.require(a.success && a.report.verdict == Verdict::Cyclic, "arc certificate");

  const HbSpace t = space_of(Poly{0.0, 0.5});
  Rng rng(91);
  for (int k = 0; k < 20; ++k) {
    const Poly f = random_outer(rng, 1 + k % 5);
    c.require(theorem_b_check(t, f, {}).success, "empty cover certifies outer f");
    c.require(classify_finite_defect(t, f).verdict == Verdict::Cyclic, "classifier agrees on outer f");
  }
  const auto g = theorem_c_check(t, Poly{1.0});
  c.require(g.success, "g = 1 certificate");
  for (cplx z : {cplx(0.0), cplx(0.3, 0.4), cplx(-0.8)}) c.require(std::abs(g.F(z) - 1.0) < 1e-8, "F = 1");
}

void models(Criterion& c) {
  const DirichletSpec d{{{1.0, 1.0}}};
  c.require(dirichlet_cyclic(d, Poly{1.0, 1.0}).verdict == Verdict::Cyclic, "D: 1+z cyclic");
  c.require(dirichlet_cyclic(d, Poly{1.0, -1.0}).verdict == Verdict::NotCyclic, "D: 1-z not cyclic");
  c.require(dirichlet_cyclic(d, Poly{0.0, 1.0}).verdict == Verdict::NotCyclic, "D: z not cyclic");

  const ThetaModel sq = theta_model(Function::blaschke({0.0, 0.0}));
  c.require(sq.sigma.size() == 2, "two atoms for z^2");
  for (const auto& a : sq.sigma) {
    c.require(std::abs(std::abs(a.point.real()) - 1.0) < 1e-8 && std::abs(a.point.imag()) < 1e-8, "atoms at +-1");
    c.require(std::abs(a.mass - 0.5) < 1e-4, "mass 1/2");
  }

  const ThetaModel lin = theta_model(Function::blaschke({0.0}));
  const HbSpace s = space_of(Poly{0.5, 0.5});
  for (const Poly& f : {Poly{1.0}, Poly{1.0, 1.0}, Poly{1.0, -1.0}, Poly{0.0, 1.0}, Poly{1.0, 0.0, -1.0}})
    c.require(theta_cyclic(lin, f).verdict == classify_finite_defect(s, f).verdict, "theta model agrees with classifier");

  const ClarkMeasure mu = clark_measure(sq.space, 1.0);
  double worst = 0.0;
  for (const auto& a : sq.sigma)
    for (const Poly& h : {Poly{1.0}, Poly{0.0, 1.0}, Poly::monomial(2), Poly{1.0, -2.0, 0.5}})
      worst = std::max(worst, std::abs(poltoratski_limit(sq.space, mu, h, a.point).value - h(a.point)));
  c.note("poltoratski_err", worst);
  c.require(worst < 1e-3, "boundary limits reproduce h at atoms");
}

void inner_division(Criterion& c) {
  Rng rng(111);
  const std::vector<HbSpace> spaces = {space_of(Poly{0.5, 0.5}), space_of(Poly{0.0, 0.5})};
  for (int t = 0; t < 20; ++t) {
    const HbSpace& s = spaces[static_cast<std::size_t>(t) % 2];
    const Poly f = random_poly(rng, t % 4) * Poly{-random_disk(rng, 0.9), 1.0};
    try {
      const HbElement q = divide_inner(s, element(s, f));
      c.require(std::isfinite(q.norm_sq), "finite norm of f/theta");
      c.require(is_outer(q.f), "f/theta outer");
    } catch (const Error& e) {
      c.require(false, std::string("divide_inner failed: ") + e.what());
    }
  }
  // a has no circle zeros for these spaces
  const std::vector<HbSpace> plain = {space_of(Poly{0.0, 0.5}), space_of(Poly{0.0, 0.25, 0.25})};
  int tested = 0;
  for (const auto& s : plain) {
    c.require(s.circle_zeros_of_a().empty(), "a without circle zeros");
    for (int t = 0; t < 10; ++t) {
      const Poly f = random_outer(rng, 1 + t % 4);
      if (classify_finite_defect(s, f).verdict != Verdict::Cyclic) continue;
      ++tested;
      c.require(classify_finite_defect(s, f.shifted(1)).verdict == Verdict::NotCyclic, "z f not cyclic");
      c.require(classify_finite_defect(s, s.A * f).verdict == Verdict::Cyclic, "a f cyclic");
    }
  }
  c.require(tested > 0, "no cyclic f tested");
}

struct Entry {
  const char* name;
  void (*run)(Criterion&);
  double max_seconds;  // 0: no runtime bound
};

}  // namespace

int main() {
  const std::vector<Entry> entries = {
      {"1 pythagorean_identity", pythagorean_identity, 1.0},
      {"2 mate_exactness", mate_exactness, 1.0},
      {"3 kernel_norms", kernel_norms, 0.0},
      {"4 clark_triangulation", clark_triangulation, 5.0},
      {"5 cauchy_unitarity", unitarity, 0.0},
      {"6 classifier_vs_decay", classifier_vs_decay, 30.0},
      {"7 necessity", necessity, 0.0},
      {"8 sigma_machinery", sigma_machinery, 0.0},
      {"9 certificates", certificates, 0.0},
      {"10 models", models, 0.0},
      {"11 inner_division_and_multipliers", inner_division, 0.0},
  };
  int failed = 0;
  for (const auto& e : entries) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.failures.push_back(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.max_seconds > 0 && secs >= e.max_seconds) c.failures.push_back("runtime over limit");
    const bool pass = c.failures.empty();
    if (!pass) ++failed;
    std::cout << (pass ? "PASS " : "FAIL ") << e.name << " (" << std::fixed << std::setprecision(3) << secs << " s)"
              << std::defaultfloat;
    for (const auto& n : c.notes) std::cout << ' ' << n;
    for (std::size_t k = 0; k < c.failures.size() && k < 5; ++k) std::cout << " [" << c.failures[k] << ']';
    std::cout << '\n';
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << '\n';
  return failed == 0 ? 0 : 1;
}
