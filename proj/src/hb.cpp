#include "hblab/hb.hpp"

#include <atomic>
#include <cmath>

#include "hblab/error.hpp"
#include "hblab/kernels.hpp"

namespace hblab {

namespace {

std::uint64_t next_space_id() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

QPoly rational_coeffs(const Poly& p, const char* what) {
  std::vector<QComplex> c;
  for (const auto& x : p.coeffs()) {
    auto r = rationalize(x, 1L << 24, 1e-15);
    if (!r) throw Error(ErrorKind::ExactUnavailable, std::string(what) + " has a coefficient without a small rational form");
    c.push_back(*r);
  }
  return QPoly(std::move(c));
}

void require_same_space(const HbElement& x, const HbElement& y) {
  if (x.space_id != y.space_id) throw Error(ErrorKind::SpaceMismatch, "elements belong to different spaces");
}

}  // namespace

std::vector<cplx> HbSpace::circle_zeros_of_a() const {
  std::vector<cplx> out;
  if (A.degree() < 1) return out;
  for (const auto& r : roots(A, tol.root_cluster))
    if (std::abs(std::abs(r.root) - 1.0) <= 1e-6) out.push_back(r.root / std::abs(r.root));
  return out;
}

double HbSpace::pythagorean_error(std::size_t n) const {
  return kernels::max_abs(
      [&](cplx z) {
        const double qz = std::norm(q(z));
        return (std::norm(A(z)) + std::norm(p(z))) / qz - 1.0;
      },
      n);
}

HbSpace make_space(const Function& b, const GridConfig& grid, Backend backend, const Tolerances& tol) {
  grid.validate();
  if (b.boundary_singular()) throw Error(ErrorKind::BoundaryPole, "b has a boundary pole");
  const MateData m = mate_of_b(b, tol);
  HbSpace s;
  s.b = b;
  s.a = m.a;
  s.p = m.p;
  s.q = m.q;
  s.A = m.A;
  s.grid = grid;
  s.tol = tol;
  s.backend = backend;
  s.id = next_space_id();
  if (backend == Backend::Exact) {
    ExactSpace e;
    e.p = rational_coeffs(s.p, "b");
    e.q = rational_coeffs(s.q, "b");
    auto factor = fejer_riesz_exact(defect_weight(e.p, e.q), tol);
    if (!factor) throw Error(ErrorKind::ExactUnavailable, "the mate has no verified rational shape");
    e.A = std::move(*factor);
    s.exact = std::move(e);
  }
  return s;
}

HbSpace space_from_phi(const Poly& phi, const GridConfig& grid, const Tolerances& tol) {
  if (phi.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "phi is zero");
  if (!is_outer(phi, tol)) throw Error(ErrorKind::NotOuter, "phi must be outer");
  const Laurent w = abs2(phi);
  std::vector<cplx> h(static_cast<std::size_t>(phi.degree()) + 1);
  h[0] = w[0].real();
  for (int k = 1; k <= phi.degree(); ++k) h[static_cast<std::size_t>(k)] = 2.0 * w[k];
  const Poly H(std::move(h));
  const Poly one = Poly::constant(1.0);
  std::vector<cplx> num = (H - one).coeffs();
  for (auto& c : num)
    if (std::abs(c) < 1e-14 * std::max(1.0, w[0].real())) c = 0.0;
  const Function b = Function::rational(Poly(std::move(num)), H + one);
  if (b.is_constant()) throw Error(ErrorKind::ConstantB, "phi is constant: b reduces to a constant");
  return make_space(b, grid, Backend::Float, tol);
}

Poly mate(const HbSpace& s, const Poly& f) {
  if (f.is_zero()) return {};
  const int n = f.degree();
  const int dp = s.p.degree();
  const int da = s.A.degree();
  std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
  const cplx a0 = std::conj(s.A[0]);
  for (int m = n; m >= 0; --m) {
    cplx acc{};
    for (int j = 0; j <= dp && m + j <= n; ++j) acc -= std::conj(s.p[j]) * f[m + j];
    for (int j = 1; j <= da && m + j <= n; ++j) acc -= std::conj(s.A[j]) * c[static_cast<std::size_t>(m + j)];
    c[static_cast<std::size_t>(m)] = acc / a0;
  }
  return Poly(std::move(c));
}

QPoly mate_exact_scaled(const ExactSpace& s, const QPoly& f) {
  if (f.is_zero()) return {};
  const int n = f.degree();
  const int dp = s.p.degree();
  const QPoly& u = s.A.shape;
  const int du = u.degree();
  std::vector<QComplex> c(static_cast<std::size_t>(n) + 1);
  const QComplex u0 = conj(u[0]);
  for (int m = n; m >= 0; --m) {
    QComplex acc;
    for (int j = 0; j <= dp && m + j <= n; ++j) acc -= conj(s.p[j]) * f[m + j];
    for (int j = 1; j <= du && m + j <= n; ++j) acc -= conj(u[j]) * c[static_cast<std::size_t>(m + j)];
    c[static_cast<std::size_t>(m)] = acc / u0;
  }
  return QPoly(std::move(c));
}

double mate_residual(const HbSpace& s, const Poly& f, const Poly& f1) {
  const int top = std::max(f.degree(), f1.degree());
  double worst = 0.0;
  for (int m = 0; m <= top; ++m) {
    cplx acc{};
    for (int j = 0; j <= s.p.degree(); ++j) acc += std::conj(s.p[j]) * f[m + j];
    for (int j = 0; j <= s.A.degree(); ++j) acc += std::conj(s.A[j]) * f1[m + j];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

bool mate_residual_is_zero(const ExactSpace& s, const QPoly& f, const QPoly& g) {
  const int top = std::max(f.degree(), g.degree());
  const QPoly& u = s.A.shape;
  for (int m = 0; m <= top; ++m) {
    QComplex acc;
    for (int j = 0; j <= s.p.degree(); ++j) acc += conj(s.p[j]) * f[m + j];
    for (int j = 0; j <= u.degree(); ++j) acc += conj(u[j]) * g[m + j];
    if (!is_exact_zero(acc)) return false;
  }
  return true;
}

HbElement element(const HbSpace& s, const Poly& f) {
  HbElement e;
  e.f = f;
  e.f1 = mate(s, f);
  e.norm_sq = l2_norm_sq(e.f) + l2_norm_sq(e.f1);
  e.space_id = s.id;
  return e;
}

HbElement element(const HbSpace& s, const Function& f, double tail_tol) {
  return element(s, taylor_polynomial(f, tail_tol));
}

HbElement element_exact(const HbSpace& s, const QPoly& f) {
  if (!s.exact) throw Error(ErrorKind::ExactUnavailable, "space was built without the exact backend");
  HbElement e;
  e.exact_f = f;
  e.exact_g = mate_exact_scaled(*s.exact, f);
  e.exact_norm_sq = l2_norm_sq(f) + l2_norm_sq(*e.exact_g) / s.exact->A.scale_sq;
  e.f = to_float(f);
  e.f1 = to_float(*e.exact_g) * cplx(1.0 / std::sqrt(s.exact->A.scale_sq.get_d()));
  e.norm_sq = e.exact_norm_sq->get_d();
  e.space_id = s.id;
  return e;
}

cplx inner_product(const HbElement& x, const HbElement& y) {
  require_same_space(x, y);
  return l2_inner(x.f, y.f) + l2_inner(x.f1, y.f1);
}

QComplex inner_product_exact(const HbSpace& s, const HbElement& x, const HbElement& y) {
  require_same_space(x, y);
  if (!s.exact || !x.exact_f || !y.exact_f)
    throw Error(ErrorKind::ExactUnavailable, "exact inner product needs exact elements");
  QComplex g = l2_inner(*x.exact_g, *y.exact_g);
  g.re /= s.exact->A.scale_sq;
  g.im /= s.exact->A.scale_sq;
  return l2_inner(*x.exact_f, *y.exact_f) + g;
}

Eigen::MatrixXcd gram(const std::vector<HbElement>& xs) {
  for (const auto& x : xs) require_same_space(xs.front(), x);
  return kernels::gram(xs.size(), [&](std::size_t j, std::size_t k) { return inner_product(xs[k], xs[j]); });
}

Function kernel(const HbSpace& s, cplx lambda) {
  if (!(std::abs(lambda) < 1.0)) throw Error(ErrorKind::OutsideDisk, "kernel: |lambda| >= 1");
  const cplx cb = std::conj(s.b(lambda));
  const Poly num = s.q - s.p * cb;
  const Poly den = s.q * Poly{1.0, -std::conj(lambda)};
  return Function::rational(num, den);
}

Function boundary_kernel(const HbSpace& s, cplx zeta) {
  if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "boundary kernel needs |zeta| = 1");
  const cplx bz = s.b(zeta);
  if (std::abs(std::abs(bz) - 1.0) > 1e-8)
    throw Error(ErrorKind::InvalidArgument, "boundary kernel needs |b(zeta)| = 1");
  const Poly num = s.q - s.p * std::conj(bz);
  // (z - zeta) divides the numerator; drop it together with (1 - conj(zeta) z) = -conj(zeta)(z - zeta)
  const auto [quot, rem] = divide_linear(num, zeta);
  (void)rem;
  return Function::rational(quot * (-zeta), s.q);
}

HbElement divide_inner(const HbSpace& s, const HbElement& x) {
  if (x.f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "divide_inner: f is zero");
  const InnerOuter io = inner_outer(x.f, s.tol);
  return element(s, io.outer);
}

}  // namespace hblab
