#include "hblab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hblab/error.hpp"
#include "hblab/kernels.hpp"

namespace hblab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_open_disk(cplx z, const char* who) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::OutsideDisk, std::string(who) + ": |z| >= 1");
}

}  // namespace

void GridConfig::validate() const {
  if (n < 256 || (n & (n - 1)) != 0) throw Error(ErrorKind::InvalidArgument, "grid size must be a power of two >= 256");
  if (!(k_min >= 3 && k_max > k_min)) throw Error(ErrorKind::InvalidArgument, "radial sequence needs k_max > k_min >= 3");
  if (rule != "trapezoid") throw Error(ErrorKind::InvalidArgument, "unknown quadrature rule: " + rule);
}

double GridConfig::radius(int k) const { return 1.0 - std::ldexp(1.0, -k); }

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

Arc Arc::between(double from, double to) {
  const double raw = to - from;
  if (raw == 0.0) throw Error(ErrorKind::InvalidArgument, "empty arc");
  double extent = std::fmod(raw, kTwoPi);
  if (extent <= 0) extent += kTwoPi;
  if (std::abs(raw) >= kTwoPi && std::abs(std::fmod(raw, kTwoPi)) < 1e-15) extent = kTwoPi;
  return {normalize_angle(from), extent};
}

Arc Arc::full() { return {0.0, kTwoPi}; }

bool Arc::is_full() const { return extent_ >= kTwoPi; }

bool Arc::contains(double theta, bool closed, double tol) const {
  if (is_full()) return true;
  double d = normalize_angle(theta) - start_;
  if (d < 0) d += kTwoPi;
  // measure the offset both ways so that points just before start count as on the boundary
  if (closed) return d <= extent_ + tol || d >= kTwoPi - tol;
  return d > tol && d < extent_ - tol;
}

bool covers_circle(std::span<const Arc> arcs, double tol, std::vector<Arc>* gaps) {
  std::vector<std::pair<double, double>> pieces;
  for (const Arc& a : arcs) {
    if (a.is_full()) {
      if (gaps) gaps->clear();
      return true;
    }
    if (a.end() <= kTwoPi) {
      pieces.emplace_back(a.start(), a.end());
    } else {
      pieces.emplace_back(a.start(), kTwoPi);
      pieces.emplace_back(0.0, a.end() - kTwoPi);
    }
  }
  std::sort(pieces.begin(), pieces.end());
  bool ok = true;
  double reach = 0.0;
  auto record_gap = [&](double from, double to) {
    if (to - from > tol) {
      ok = false;
      if (gaps) gaps->push_back(Arc::between(from, to));
    }
  };
  if (gaps) gaps->clear();
  for (const auto& [lo, hi] : pieces) {
    record_gap(reach, lo);
    reach = std::max(reach, hi);
  }
  record_gap(reach, kTwoPi);
  return ok;
}

Measure Measure::lebesgue() {
  return {[](cplx) { return 1.0; }, {}};
}

Measure Measure::dirac(cplx point, double mass) { return {nullptr, {{point, mass}}}; }

Measure Measure::from_density(std::function<double(cplx)> w) { return {std::move(w), {}}; }

cplx herglotz(const Measure& mu, cplx z, const GridConfig& grid) {
  require_open_disk(z, "herglotz");
  cplx total{};
  if (mu.density) {
    total += kernels::mean([&](cplx zeta) { return (zeta + z) / (zeta - z) * mu.density(zeta); }, grid.n);
  }
  for (const Atom& a : mu.atoms) total += a.mass * (a.point + z) / (a.point - z);
  return total;
}

cplx cauchy(const Measure& nu, const std::function<cplx(cplx)>& h, cplx z, const GridConfig& grid) {
  require_open_disk(z, "cauchy");
  cplx total{};
  if (nu.density) {
    total += kernels::mean([&](cplx zeta) { return h(zeta) * nu.density(zeta) / (1.0 - z * std::conj(zeta)); },
                           grid.n);
  }
  for (const Atom& a : nu.atoms) total += a.mass * h(a.point) / (1.0 - z * std::conj(a.point));
  return total;
}

std::vector<cplx> cauchy_moments(const Measure& nu, const std::function<cplx(cplx)>& h, std::size_t count,
                                 const GridConfig& grid) {
  std::vector<cplx> out(count, cplx{});
  if (nu.density) {
    std::size_t n = grid.n;
    while (n < 4 * count) n *= 2;
    const auto samples = kernels::sample([&](cplx zeta) { return h(zeta) * nu.density(zeta); }, n);
    const auto coeffs = kernels::dft(samples);
    for (std::size_t k = 0; k < count; ++k) out[k] = coeffs[k];
  }
  for (const Atom& a : nu.atoms) {
    const cplx base = a.mass * h(a.point);
    const cplx step = std::conj(a.point);
    cplx pw = 1.0;
    for (std::size_t k = 0; k < count; ++k) {
      out[k] += base * pw;
      pw *= step;
    }
  }
  return out;
}

FourierCoefficients fourier_coeffs(const Function& f, int first, int last) {
  if (f.boundary_singular()) throw Error(ErrorKind::BoundaryPole, "fourier_coeffs: boundary pole");
  if (last < first) throw Error(ErrorKind::InvalidArgument, "fourier_coeffs: empty index range");
  FourierCoefficients out;
  out.first = first;
  out.values.assign(static_cast<std::size_t>(last - first + 1), cplx{});
  if (last < 0) return out;
  const auto taylor = taylor_coeffs(f, static_cast<std::size_t>(last) + 1);
  for (int k = std::max(first, 0); k <= last; ++k)
    out.values[static_cast<std::size_t>(k - first)] = taylor[static_cast<std::size_t>(k)];
  return out;
}

FourierCoefficients fourier_coeffs_sampled(const std::function<cplx(cplx)>& g, int first, int last, std::size_t n,
                                           double offset) {
  if (last < first) throw Error(ErrorKind::InvalidArgument, "fourier_coeffs_sampled: empty index range");
  const auto pick = [&](std::size_t size, double off) {
    const auto c = kernels::dft(kernels::sample(g, size, off), off);
    std::vector<cplx> v;
    for (int k = first; k <= last; ++k) {
      const long idx = ((k % static_cast<long>(size)) + static_cast<long>(size)) % static_cast<long>(size);
      v.push_back(c[static_cast<std::size_t>(idx)]);
    }
    return v;
  };
  FourierCoefficients out;
  out.first = first;
  out.values = pick(n, offset);
  // halving the offset makes the coarse nodes exactly the even-indexed fine nodes
  const auto coarse = pick(n / 2, offset / 2.0);
  for (std::size_t i = 0; i < coarse.size(); ++i)
    out.error_bound = std::max(out.error_bound, std::abs(coarse[i] - out.values[i]));
  return out;
}

}  // namespace hblab
