#include "hblab/clark.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "hblab/error.hpp"
#include "hblab/kernels.hpp"

namespace hblab {

namespace {

void require_unimodular(cplx alpha) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12) throw Error(ErrorKind::InvalidArgument, "alpha must be unimodular");
}

template <class T>
std::pair<T, double> richardson(const std::vector<T>& g) {
  // h_k = 2^{-k}: two elimination sweeps remove the O(h) and O(h^2) terms
  std::vector<T> r1, r2;
  for (std::size_t k = 1; k < g.size(); ++k) r1.push_back(2.0 * g[k] - g[k - 1]);
  for (std::size_t k = 1; k < r1.size(); ++k) r2.push_back((4.0 * r1[k] - r1[k - 1]) / 3.0);
  if (r2.size() < 2) throw Error(ErrorKind::InvalidArgument, "radial sequence too short for extrapolation");
  return {r2.back(), std::abs(r2.back() - r2[r2.size() - 2])};
}

}  // namespace

Measure ClarkMeasure::measure() const {
  Function f = phi;
  return {[f](cplx zeta) { return std::norm(f(zeta)); }, atoms};
}

double ClarkMeasure::mass_defect() const {
  double s = ac_mass;
  for (const auto& a : atoms) s += a.mass;
  return std::abs(s - total_mass);
}

RadialLimit radial_atom_mass(const std::function<cplx(cplx)>& herglotz_fn, cplx zeta, const GridConfig& grid) {
  std::vector<double> g;
  for (int k = grid.k_min; k <= grid.k_max; ++k) {
    const double r = grid.radius(k);
    g.push_back((1.0 - r) / (1.0 + r) * herglotz_fn(r * zeta).real());
  }
  const auto [value, error] = richardson(g);
  return {value, error};
}

Function phi_alpha(const HbSpace& s, cplx alpha) {
  require_unimodular(alpha);
  const Poly den = s.q - s.p * std::conj(alpha);
  Function phi = Function::rational(s.A, den, true);
  if (phi.is_polynomial()) return phi;
  for (const auto& r : roots(phi.denominator()))
    if (std::abs(r.root) <= 1.0 + 1e-7) return phi;
  return Function::rational(phi.numerator(), phi.denominator());
}

ClarkMeasure clark_measure(const HbSpace& s, cplx alpha) {
  require_unimodular(alpha);
  ClarkMeasure mu;
  mu.alpha = alpha;
  mu.phi = phi_alpha(s, alpha);

  const cplx ca = std::conj(alpha);
  const cplx beta = ca * s.b(0.0);
  mu.total_mass = ((1.0 + beta) / (1.0 - beta)).real();

  const Poly diff = s.p - s.q * alpha;
  if (diff.degree() >= 1) {
    const Poly plus = s.q + s.p * ca;
    const Poly minus = s.q - s.p * ca;
    const auto H = [&](cplx z) { return plus(z) / minus(z); };
    for (const auto& r : roots(diff, s.tol.root_cluster)) {
      if (std::abs(std::abs(r.root) - 1.0) > 1e-6) continue;
      const cplx zeta = r.root / std::abs(r.root);
      if (std::abs(s.b(zeta) - alpha) >= 1e-8) continue;
      const RadialLimit m = radial_atom_mass(H, zeta, s.grid);
      mu.atoms.push_back({zeta, m.value});
      mu.atom_mass_error.push_back(m.error);
    }
  }

  std::size_t n = s.grid.n;
  const auto dens = [&](cplx z) { return cplx(std::norm(mu.phi(z))); };
  double prev = kernels::mean(dens, n, 1.0).real();
  for (;;) {
    const double next = kernels::mean(dens, 2 * n, 1.0).real();
    n *= 2;
    const bool stable = std::abs(next - prev) <= 1e-10 * std::max(1.0, std::abs(next));
    prev = next;
    if (stable || n >= (std::size_t{1} << 20)) break;
  }
  mu.ac_mass = prev;
  mu.grid_used = n;
  return mu;
}

std::vector<cplx> alpha_grid(const HbSpace& s, std::size_t count) {
  std::vector<cplx> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(kernels::node(k, count));
  for (const cplx& zeta : s.circle_zeros_of_a()) {
    cplx v = s.b(zeta);
    v /= std::abs(v);
    bool seen = false;
    for (const cplx& w : out) seen = seen || std::abs(w - v) < 1e-9;
    if (!seen) out.push_back(v);
  }
  return out;
}

cplx normalized_cauchy(const HbSpace& s, const ClarkMeasure& mu, const std::function<cplx(cplx)>& h, cplx z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::OutsideDisk, "normalized_cauchy: |z| >= 1");
  GridConfig g = s.grid;
  g.n = std::max(g.n, mu.grid_used);
  return (1.0 - std::conj(mu.alpha) * s.b(z)) * cauchy(mu.measure(), h, z, g);
}

CauchyRefit normalized_cauchy_refit(const HbSpace& s, const ClarkMeasure& mu, const Poly& h) {
  if (h.is_zero()) return {Function::polynomial(Poly()), 0.0};
  const int D = h.degree() + std::max(s.p.degree(), s.q.degree());
  const std::size_t count = static_cast<std::size_t>(D) + 17;
  GridConfig g = s.grid;
  g.n = std::max(g.n, mu.grid_used);
  const auto moments = cauchy_moments(mu.measure(), [&](cplx z) { return h(z); }, count, g);
  const Poly factor = s.q - s.p * std::conj(mu.alpha);
  std::vector<cplx> num(count);
  for (std::size_t k = 0; k < count; ++k)
    for (int j = 0; j <= factor.degree() && static_cast<std::size_t>(j) <= k; ++j)
      num[k] += factor[j] * moments[k - static_cast<std::size_t>(j)];
  double residual = 0.0;
  for (std::size_t k = static_cast<std::size_t>(D) + 1; k < count; ++k) residual = std::max(residual, std::abs(num[k]));
  num.resize(static_cast<std::size_t>(D) + 1);
  return {Function::rational(Poly(std::move(num)), s.q), residual};
}

PoltoratskiLimit poltoratski_limit(const HbSpace& s, const ClarkMeasure& mu, const Poly& h, cplx zeta) {
  bool is_atom = false;
  for (const auto& a : mu.atoms) is_atom = is_atom || std::abs(a.point - zeta) < 1e-8;
  if (!is_atom) throw Error(ErrorKind::NotAnAtom, "zeta is not an atom of the Clark measure");
  const Function v = normalized_cauchy_refit(s, mu, h).value;
  std::vector<cplx> g;
  for (int k = s.grid.k_min; k <= s.grid.k_max; ++k) g.push_back(v(s.grid.radius(k) * zeta));
  const auto [value, error] = richardson(g);
  return {value, error};
}

void write_clark_csv(std::ostream& os, const ClarkMeasure& mu, std::size_t samples) {
  const double alpha_angle = normalize_angle(std::arg(mu.alpha));
  os << "alpha_angle,type,theta,value\n";
  os.precision(17);
  for (std::size_t k = 0; k < samples; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
    const cplx z = std::polar(1.0, theta);
    double v;
    try {
      v = mu.density(z);
    } catch (const Error&) {
      v = std::numeric_limits<double>::infinity();
    }
    os << alpha_angle << ",ac," << theta << ',' << v << '\n';
  }
  for (const auto& a : mu.atoms)
    os << alpha_angle << ",atom," << normalize_angle(std::arg(a.point)) << ',' << a.mass << '\n';
}

}  // namespace hblab
