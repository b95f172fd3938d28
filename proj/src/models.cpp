#include "hblab/models.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hblab/clark.hpp"
#include "hblab/error.hpp"
#include "hblab/factor.hpp"
#include "hblab/kernels.hpp"

namespace hblab {

namespace {

constexpr double kNonzero = 1e-9;

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string fmt(const Poly& p) {
  std::string s = "[";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + fmt(p.coeffs()[k]);
  return s + "]";
}

// Quotient of f - f(zeta) by z - zeta.
template <class T>
PolyT<T> difference_quotient(const PolyT<T>& f, const T& zeta) {
  if (f.degree() < 1) return {};
  std::vector<T> q(static_cast<std::size_t>(f.degree()));
  T acc = f[f.degree()];
  for (int k = f.degree() - 1; k >= 0; --k) {
    q[static_cast<std::size_t>(k)] = acc;
    acc = acc * zeta + f[k];
  }
  return PolyT<T>(std::move(q));
}

CyclicityReport point_rule(const char* rule, const char* anchor, const char* norm, const Poly& f,
                           const std::vector<cplx>& points) {
  CyclicityReport r;
  Evidence e;
  e.rule = rule;
  e.anchor = anchor;
  e.inputs.push_back({"f", fmt(f)});
  e.inputs.push_back({"norm", norm});
  const bool outer = !f.is_zero() && is_outer(f);
  e.numbers.push_back({"outer", outer ? 1.0 : 0.0});
  bool nonzero = !f.is_zero();
  for (std::size_t j = 0; j < points.size(); ++j) {
    const double v = std::abs(f(points[j]));
    e.numbers.push_back({"zeta_" + std::to_string(j) + "_angle", normalize_angle(std::arg(points[j]))});
    e.numbers.push_back({"abs_f_zeta_" + std::to_string(j), v});
    nonzero = nonzero && v > kNonzero;
  }
  e.verdict = outer && nonzero ? Verdict::Cyclic : Verdict::NotCyclic;
  r.verdict = e.verdict;
  r.evidence.push_back(std::move(e));
  return r;
}

}  // namespace

void DirichletSpec::validate() const {
  if (atoms.empty()) throw Error(ErrorKind::InvalidArgument, "Dirichlet measure needs at least one atom");
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (std::abs(std::abs(atoms[i].point) - 1.0) > 1e-10)
      throw Error(ErrorKind::InvalidArgument, "Dirichlet atom off the unit circle");
    if (!(atoms[i].weight > 0.0)) throw Error(ErrorKind::InvalidArgument, "Dirichlet weight must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(atoms[i].point - atoms[j].point) < 1e-12)
        throw Error(ErrorKind::InvalidArgument, "repeated Dirichlet atom");
  }
}

DirichletNorm dirichlet_norm(const DirichletSpec& spec, const Poly& f) {
  spec.validate();
  DirichletNorm n;
  for (const auto& at : spec.atoms) n.dirichlet += at.weight * l2_norm_sq(difference_quotient(f, at.point));
  n.hardy = l2_norm_sq(f);
  n.norm_sq = n.dirichlet + n.hardy;
  return n;
}

ExactDirichletNorm dirichlet_norm_exact(const std::vector<ExactDirichletAtom>& atoms, const QPoly& f) {
  ExactDirichletNorm n;
  for (const auto& at : atoms) {
    if (at.point.re * at.point.re + at.point.im * at.point.im != 1)
      throw Error(ErrorKind::InvalidArgument, "exact Dirichlet atom must satisfy |zeta|^2 = 1");
    if (sgn(at.weight) <= 0) throw Error(ErrorKind::InvalidArgument, "Dirichlet weight must be positive");
    n.dirichlet += at.weight * l2_norm_sq(difference_quotient(f, at.point));
  }
  n.hardy = l2_norm_sq(f);
  n.norm_sq = n.dirichlet + n.hardy;
  return n;
}

std::vector<ExactDirichletAtom> exact_atoms(const DirichletSpec& spec) {
  spec.validate();
  std::vector<ExactDirichletAtom> out;
  for (const auto& at : spec.atoms) {
    const auto z = rationalize(at.point, 1L << 20, 1e-14);
    const auto w = rationalize(at.weight, 1L << 20, 1e-14);
    if (!z || !w || z->re * z->re + z->im * z->im != 1)
      throw Error(ErrorKind::ExactUnavailable, "Dirichlet atom has no exact rational unimodular form");
    out.push_back({*z, *w});
  }
  return out;
}

CyclicityReport dirichlet_cyclic(const DirichletSpec& spec, const Poly& f) {
  spec.validate();
  std::vector<cplx> pts;
  for (const auto& at : spec.atoms) pts.push_back(at.point);
  return point_rule("dirichlet_point_test", "cyclic in D(mu) iff f is outer and nonzero at every atom of mu",
                    "dirichlet", f, pts);
}

double ThetaModel::sigma_mass() const {
  double s = 0.0;
  for (const auto& at : sigma) s += at.mass;
  return s;
}

Function as_blaschke(const Function& f) {
  if (f.kind() == Function::Kind::Blaschke) return f;
  if (f.boundary_singular() || kernels::max_abs([&](cplx z) { return std::abs(f(z)) - 1.0; }, 4096) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "theta is not unimodular on the circle");
  std::vector<cplx> zeros;
  if (f.numerator().degree() > 0) zeros = roots_flat(f.numerator());
  const Function shape = Function::blaschke(zeros);
  const cplx phase = f(1.0) / shape(1.0);
  return Function::blaschke(std::move(zeros), phase / std::abs(phase));
}

ThetaModel theta_model(const Function& theta_in, const GridConfig& grid) {
  const Function theta = as_blaschke(theta_in);
  if (theta.blaschke_data().zeros.empty()) throw Error(ErrorKind::ConstantB, "theta is constant");
  const Poly& num = theta.numerator();
  const Poly& den = theta.denominator();
  ThetaModel m;
  m.theta = theta;
  m.b = Function::rational(den + num, den * cplx(2.0));
  m.a = Function::rational(den - num, den * cplx(2.0));
  m.space = make_space(m.b, grid);
  m.model_space_dim = static_cast<int>(theta.blaschke_data().zeros.size());
  const cplx t0 = theta(0.0);
  m.herglotz_at_zero = ((1.0 + t0) / (1.0 - t0)).real();
  const auto herglotz_fn = [&](cplx z) {
    const cplx t = theta(z);
    return (1.0 + t) / (1.0 - t);
  };
  for (const auto& r : roots(num - den)) {
    const cplx zeta = r.root / std::abs(r.root);
    if (std::abs(theta(zeta) - 1.0) > 1e-8) continue;
    const RadialLimit lim = radial_atom_mass(herglotz_fn, zeta, grid);
    m.sigma.push_back({zeta, lim.value});
    m.sigma_error.push_back(lim.error);
  }
  return m;
}

CyclicityReport theta_cyclic(const ThetaModel& model, const Poly& f) {
  std::vector<cplx> pts;
  for (const auto& at : model.sigma) pts.push_back(at.point);
  return point_rule("theta_model_point_test", "cyclic iff f is outer and nonzero at every atom of sigma",
                    "h(b)", f, pts);
}

UniversalReport universal_cyclicity(const HbSpace& space, std::size_t count, std::uint64_t seed, std::size_t n_max) {
  UniversalReport u;
  u.b_outer = is_outer(space.p, space.tol);
  u.b_report = classify_finite_defect(space, space.p);
  u.b_report.evidence.front().inputs.push_back({"note", "numerator of b; 1/q is an invertible multiplier"});
  u.consistent = (u.b_report.verdict == Verdict::Cyclic) == u.b_outer;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 0.6), angle(0.0, 2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < count; ++i) {
    KernelCheck kc;
    kc.lambda = std::polar(radius(rng), angle(rng));
    const Poly k = taylor_polynomial(kernel(space, kc.lambda), 1e-14);
    const DecayTable t = decay_table(space, k, n_max);
    kc.verdict = estimate_from_decay(t);
    kc.last_d2 = t.entries.empty() ? 0.0 : t.entries.back().d2;
    Evidence e;
    e.rule = "kernel_decay";
    e.anchor = "every reproducing kernel of H(b) is cyclic";
    e.inputs.push_back({"lambda", fmt(kc.lambda)});
    e.numbers.push_back({"last_d2", kc.last_d2});
    e.verdict = kc.verdict;
    u.b_report.evidence.push_back(std::move(e));
    u.kernels.push_back(kc);
  }
  return u;
}

}  // namespace hblab
