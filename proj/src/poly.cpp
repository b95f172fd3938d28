#include "hblab/poly.hpp"

#include <cmath>

#include "hblab/error.hpp"

namespace hblab {

Poly trim(const Poly& p, double rel_tol) {
  double scale = 0.0;
  for (const auto& c : p.coeffs()) scale = std::max(scale, std::abs(c));
  std::vector<cplx> c = p.coeffs();
  while (!c.empty() && std::abs(c.back()) <= rel_tol * scale) c.pop_back();
  return Poly(std::move(c));
}

std::pair<Poly, cplx> divide_linear(const Poly& p, cplx root) {
  const int n = p.degree();
  if (n < 1) return {Poly(), p[0]};
  std::vector<cplx> q(static_cast<std::size_t>(n));
  cplx acc = p[n];
  for (int k = n - 1; k >= 0; --k) {
    q[static_cast<std::size_t>(k)] = acc;
    acc = p[k] + root * acc;
  }
  return {Poly(std::move(q)), acc};
}

Poly from_roots(std::span<const cplx> roots, cplx lead) {
  std::vector<cplx> c{lead};
  for (const cplx& r : roots) {
    std::vector<cplx> next(c.size() + 1, cplx{});
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return Poly(std::move(c));
}

std::vector<cplx> series_divide(const Poly& num, const Poly& den, std::size_t n) {
  if (den.is_zero() || den[0] == cplx{})
    throw Error(ErrorKind::Pole, "series_divide: denominator vanishes at 0");
  std::vector<cplx> out(n);
  const cplx d0 = den[0];
  const int dd = den.degree();
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = num[static_cast<std::ptrdiff_t>(k)];
    const int jmax = std::min<int>(dd, static_cast<int>(k));
    for (int j = 1; j <= jmax; ++j) acc -= den[j] * out[k - static_cast<std::size_t>(j)];
    out[k] = acc / d0;
  }
  return out;
}

cplx l2_inner(const Poly& f, const Poly& g) {
  cplx s{};
  const std::size_t n = std::min(f.size(), g.size());
  for (std::size_t k = 0; k < n; ++k) s += f.coeffs()[k] * std::conj(g.coeffs()[k]);
  return s;
}

double l2_norm_sq(const Poly& f) {
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return s;
}

QComplex l2_inner(const QPoly& f, const QPoly& g) {
  QComplex s;
  const std::size_t n = std::min(f.size(), g.size());
  for (std::size_t k = 0; k < n; ++k) s += f.coeffs()[k] * conj(g.coeffs()[k]);
  return s;
}

mpq_class l2_norm_sq(const QPoly& f) {
  mpq_class s = 0;
  for (const auto& c : f.coeffs()) s += c.norm();
  return s;
}

QPoly to_exact(const Poly& p) {
  std::vector<QComplex> c;
  c.reserve(p.size());
  for (const auto& x : p.coeffs()) c.push_back(QComplex::from_double(x));
  return QPoly(std::move(c));
}

Poly to_float(const QPoly& p) {
  std::vector<cplx> c;
  c.reserve(p.size());
  for (const auto& x : p.coeffs()) c.push_back(x.to_cplx());
  return Poly(std::move(c));
}

double max_coeff_diff(const Poly& p, const Poly& q) {
  double m = 0.0;
  const int n = std::max(p.degree(), q.degree());
  for (int k = 0; k <= n; ++k) m = std::max(m, std::abs(p[k] - q[k]));
  return m;
}

namespace {

template <class T>
LaurentT<T> abs2_impl(const PolyT<T>& p) {
  LaurentT<T> w;
  const int d = p.degree();
  if (d < 0) return w;
  w.low = -d;
  w.c.assign(static_cast<std::size_t>(2 * d + 1), T(0));
  // coefficient of z^k in p(z) * conj(p(z)) on |z| = 1 is sum_j p_{j+k} conj(p_j)
  for (int k = -d; k <= d; ++k) {
    T s(0);
    for (int j = std::max(0, -k); j <= d && j + k <= d; ++j) s += p[j + k] * conj(p[j]);
    w.c[static_cast<std::size_t>(k + d)] = s;
  }
  return w;
}

template <class T, class Op>
LaurentT<T> combine(const LaurentT<T>& a, const LaurentT<T>& b, Op op) {
  if (a.c.empty() && b.c.empty()) return {};
  int lo = a.c.empty() ? b.low : (b.c.empty() ? a.low : std::min(a.low, b.low));
  int hi = a.c.empty() ? b.high() : (b.c.empty() ? a.high() : std::max(a.high(), b.high()));
  LaurentT<T> r;
  r.low = lo;
  r.c.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) r.c.push_back(op(a[k], b[k]));
  return r;
}

}  // namespace

Laurent abs2(const Poly& p) { return abs2_impl(p); }
QLaurent abs2(const QPoly& p) { return abs2_impl(p); }

Laurent operator-(const Laurent& a, const Laurent& b) {
  return combine(a, b, [](const cplx& x, const cplx& y) { return x - y; });
}
QLaurent operator-(const QLaurent& a, const QLaurent& b) {
  return combine(a, b, [](const QComplex& x, const QComplex& y) { return x - y; });
}
Laurent operator+(const Laurent& a, const Laurent& b) {
  return combine(a, b, [](const cplx& x, const cplx& y) { return x + y; });
}
QLaurent operator+(const QLaurent& a, const QLaurent& b) {
  return combine(a, b, [](const QComplex& x, const QComplex& y) { return x + y; });
}
QLaurent operator*(const mpq_class& s, const QLaurent& a) {
  QLaurent r = a;
  for (auto& c : r.c) c *= QComplex(s);
  return r;
}

cplx eval_on_circle(const Laurent& w, double theta) {
  cplx s{};
  for (int k = w.low; k <= w.high(); ++k) s += w[k] * std::polar(1.0, k * theta);
  return s;
}

bool is_identically_zero(const QLaurent& w) {
  return std::all_of(w.c.begin(), w.c.end(), [](const QComplex& c) { return is_exact_zero(c); });
}

Laurent trim(const Laurent& w, double abs_tol) {
  int lo = w.low, hi = w.high();
  while (lo <= hi && std::abs(w[lo]) <= abs_tol && std::abs(w[hi]) <= abs_tol && lo < 0 && hi > 0) {
    ++lo;
    --hi;
  }
  Laurent r;
  r.low = lo;
  for (int k = lo; k <= hi; ++k) r.c.push_back(w[k]);
  return r;
}

}  // namespace hblab
