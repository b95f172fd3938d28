#include "hblab/factor.hpp"

#include <algorithm>
#include <cmath>

#include "hblab/error.hpp"
#include "hblab/kernels.hpp"

namespace hblab {

namespace {

double coeff_scale(const Laurent& w) {
  double s = 0.0;
  for (const auto& c : w.c) s = std::max(s, std::abs(c));
  return s;
}

}  // namespace

Poly fejer_riesz(const Laurent& w_in, const Tolerances& tol) {
  const double scale = coeff_scale(w_in);
  if (scale == 0.0) throw Error(ErrorKind::NegativeWeight, "fejer_riesz: weight is identically zero");

  for (int k = 0; k <= std::max(-w_in.low, w_in.high()); ++k) {
    if (std::abs(w_in[-k] - std::conj(w_in[k])) > 1e-12 * scale)
      throw Error(ErrorKind::InvalidArgument, "fejer_riesz: weight is not Hermitian");
  }
  const Laurent w = trim(w_in, 1e-14 * scale);
  const double floor = -tol.negative_weight * std::max(1.0, scale);
  const double wmin = -kernels::max_abs([&](cplx z) { return std::max(0.0, -eval_on_circle(w, std::arg(z)).real()); }, 4096);
  if (wmin < floor) throw Error(ErrorKind::NegativeWeight, "fejer_riesz: weight is negative on the circle");

  const int D = std::max(-w.low, w.high());
  if (D == 0) return Poly::constant(std::sqrt(std::max(0.0, w[0].real())));

  // Laurent lift z^D w(z)
  std::vector<cplx> lift(static_cast<std::size_t>(2 * D + 1));
  for (int k = 0; k <= 2 * D; ++k) lift[static_cast<std::size_t>(k)] = w[k - D];
  const auto rts = roots(Poly(std::move(lift)), 1e-6);

  std::vector<cplx> chosen;
  std::vector<cplx> outside, inside;
  for (const auto& r : rts) {
    const double mod = std::abs(r.root);
    if (std::abs(mod - 1.0) <= 1e-6) {
      if (r.multiplicity % 2 != 0)
        throw Error(ErrorKind::OddCircleMultiplicity, "fejer_riesz: circle root of odd multiplicity");
      const cplx on_circle = r.root / mod;
      for (int k = 0; k < r.multiplicity / 2; ++k) chosen.push_back(on_circle);
    } else {
      for (int k = 0; k < r.multiplicity; ++k) (mod > 1.0 ? outside : inside).push_back(r.root);
    }
  }
  if (outside.size() != inside.size())
    throw Error(ErrorKind::RootPairing, "fejer_riesz: unbalanced root pairs");
  std::vector<bool> used(inside.size(), false);
  for (const cplx& r : outside) {
    const cplx mirror = 1.0 / std::conj(r);
    std::size_t best = inside.size();
    double best_d = tol.root_pairing * std::max(1.0, std::abs(mirror)) * 10.0;
    for (std::size_t i = 0; i < inside.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(inside[i] - mirror);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    if (best == inside.size() || best_d > tol.root_pairing * std::max(1.0, std::abs(mirror)))
      throw Error(ErrorKind::RootPairing, "fejer_riesz: root has no reciprocal-conjugate partner");
    used[best] = true;
    chosen.push_back(r);
  }

  const Poly shape = from_roots(chosen);
  // mean over the circle: w_0 = c^2 * ||shape||_2^2
  const double c = std::sqrt(w[0].real() / l2_norm_sq(shape));
  const cplx s0 = shape[0];
  return shape * (c * std::conj(s0) / std::abs(s0));
}

Poly ExactFactor::to_float() const {
  return hblab::to_float(shape) * cplx(std::sqrt(scale_sq.get_d()));
}

std::optional<ExactFactor> fejer_riesz_exact(const QLaurent& w, const Tolerances& tol) {
  Laurent wf;
  wf.low = w.low;
  for (const auto& c : w.c) wf.c.push_back(c.to_cplx());
  const Poly a = fejer_riesz(wf, tol);
  std::vector<QComplex> shape;
  for (const auto& c : a.coeffs()) {
    auto q = rationalize(c / a[0], 1L << 24, 1e-9);
    if (!q) return std::nullopt;
    shape.push_back(*q);
  }
  ExactFactor out{0, QPoly(std::move(shape))};
  const QLaurent s2 = abs2(out.shape);
  if (is_exact_zero(s2[0])) return std::nullopt;
  out.scale_sq = w[0].re / s2[0].re;
  const QLaurent diff = w - out.scale_sq * s2;
  if (!is_identically_zero(diff)) return std::nullopt;
  return out;
}

Laurent defect_weight(const Poly& p, const Poly& q) { return abs2(q) - abs2(p); }

QLaurent defect_weight(const QPoly& p, const QPoly& q) { return abs2(q) - abs2(p); }

double MateData::pythagorean_error(std::size_t n) const {
  return kernels::max_abs(
      [&](cplx z) {
        const cplx qz = q(z);
        return (std::norm(A(z)) + std::norm(p(z))) / std::norm(qz) - 1.0;
      },
      n);
}

MateData mate_of_b(const Function& b, const Tolerances& tol) {
  if (b.kind() == Function::Kind::Blaschke)
    throw Error(ErrorKind::ExtremeB, "b is inner (finite Blaschke): log(1-|b|) is not integrable");
  if (b.is_constant()) throw Error(ErrorKind::ConstantB, "b must be nonconstant");
  if (b.boundary_singular()) throw Error(ErrorKind::BoundaryPole, "b has a boundary pole");

  const double sup = sup_on_circle(b);
  if (sup > 1.0 + 1e-12) throw Error(ErrorKind::NotContractive, "sup |b| on the circle exceeds 1");

  MateData m;
  m.p = b.numerator();
  m.q = b.denominator();
  const Laurent w = defect_weight(m.p, m.q);
  double scale = 0.0;
  for (const auto& c : w.c) scale = std::max(scale, std::abs(c));
  double qscale = 0.0;
  for (const auto& c : m.q.coeffs()) qscale = std::max(qscale, std::abs(c));
  if (scale <= 1e-12 * qscale * qscale)
    throw Error(ErrorKind::ExtremeB, "|b| = 1 on the circle: log(1-|b|) is not integrable");

  m.A = fejer_riesz(w, tol);
  m.a = m.q.degree() == 0 ? Function::polynomial(m.A * (1.0 / m.q[0])) : Function::rational(m.A, m.q);
  return m;
}

bool is_outer(const Poly& f, const Tolerances& tol) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "is_outer: zero polynomial");
  if (f.degree() == 0) return true;
  for (const auto& r : roots(f, tol.root_cluster))
    if (std::abs(r.root) < 1.0 - tol.outer) return false;
  return true;
}

InnerOuter inner_outer(const Poly& f, const Tolerances& tol) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "inner_outer: zero polynomial");
  std::vector<cplx> interior;
  if (f.degree() >= 1) {
    for (const auto& r : roots(f, tol.root_cluster))
      if (std::abs(r.root) < 1.0 - tol.outer)
        for (int k = 0; k < r.multiplicity; ++k) interior.push_back(r.root);
  }
  std::sort(interior.begin(), interior.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });

  Poly g = f;
  for (const cplx& z : interior) g = divide_linear(g, z).first;
  for (const cplx& z : interior) g = g * Poly{1.0, -std::conj(z)};
  const cplx g0 = g[0];
  const cplx phase = g0 / std::abs(g0);
  return {Function::blaschke(interior, phase), g * (1.0 / phase)};
}

}  // namespace hblab
