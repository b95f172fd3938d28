#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hblab/exact.hpp"

namespace hblab {

inline bool is_exact_zero(const cplx& c) { return c == cplx{}; }
inline bool is_exact_zero(const QComplex& c) { return sgn(c.re) == 0 && sgn(c.im) == 0; }

/// Dense univariate polynomial, coefficients stored lowest degree first.
/// Trailing exact zeros are always stripped, so the zero polynomial has an
/// empty coefficient vector and degree -1.
template <class T>
class PolyT {
 public:
  PolyT() = default;
  explicit PolyT(std::vector<T> coeffs) : c_(std::move(coeffs)) { strip(); }
  PolyT(std::initializer_list<T> coeffs) : c_(coeffs) { strip(); }

  static PolyT constant(T value) { return PolyT(std::vector<T>{std::move(value)}); }
  static PolyT monomial(int k, T value = T(1)) {
    std::vector<T> c(static_cast<std::size_t>(k) + 1);
    c.back() = std::move(value);
    return PolyT(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<T>& coeffs() const { return c_; }
  T operator[](std::ptrdiff_t k) const {
    return (k < 0 || k >= static_cast<std::ptrdiff_t>(c_.size())) ? T(0) : c_[static_cast<std::size_t>(k)];
  }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  /// Horner evaluation.
  T operator()(const T& z) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  PolyT derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<long>(k));
    return PolyT(std::move(d));
  }

  /// z^k * p
  PolyT shifted(int k) const {
    if (is_zero()) return {};
    std::vector<T> c(static_cast<std::size_t>(k), T(0));
    c.insert(c.end(), c_.begin(), c_.end());
    return PolyT(std::move(c));
  }

  /// Coefficients 0..n-1 (the Taylor section of length n).
  PolyT truncated(std::size_t n) const {
    if (n >= c_.size()) return *this;
    return PolyT(std::vector<T>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  /// Coefficientwise complex conjugate, i.e. the polynomial p*(z) = conj(p(conj z)).
  PolyT conj_coeffs() const {
    std::vector<T> c(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) c[k] = conj(c_[k]);
    return PolyT(std::move(c));
  }

  PolyT& operator+=(const PolyT& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    strip();
    return *this;
  }
  PolyT& operator-=(const PolyT& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    strip();
    return *this;
  }
  PolyT& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    strip();
    return *this;
  }

  friend PolyT operator+(PolyT a, const PolyT& b) { return a += b; }
  friend PolyT operator-(PolyT a, const PolyT& b) { return a -= b; }
  friend PolyT operator-(const PolyT& a) { return PolyT() - a; }
  friend PolyT operator*(PolyT a, const T& s) { return a *= s; }
  friend PolyT operator*(const T& s, PolyT a) { return a *= s; }
  friend PolyT operator*(const PolyT& a, const PolyT& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return PolyT(std::move(c));
  }
  friend bool operator==(const PolyT& a, const PolyT& b) { return a.c_ == b.c_; }

 private:
  void strip() {
    while (!c_.empty() && is_exact_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

using Poly = PolyT<cplx>;
using QPoly = PolyT<QComplex>;

/// Drop trailing coefficients whose modulus is below rel_tol times the largest one.
Poly trim(const Poly& p, double rel_tol);

/// Quotient and remainder of p / (z - root) by synthetic division.
std::pair<Poly, cplx> divide_linear(const Poly& p, cplx root);

/// Leading coefficient times prod (z - r_i).
Poly from_roots(std::span<const cplx> roots, cplx lead = 1.0);

/// Power-series quotient num/den truncated to n coefficients; den(0) != 0.
std::vector<cplx> series_divide(const Poly& num, const Poly& den, std::size_t n);

/// l2 (= H^2) inner product sum_k f_k conj(g_k) and squared norm.
cplx l2_inner(const Poly& f, const Poly& g);
double l2_norm_sq(const Poly& f);
QComplex l2_inner(const QPoly& f, const QPoly& g);
mpq_class l2_norm_sq(const QPoly& f);

QPoly to_exact(const Poly& p);
Poly to_float(const QPoly& p);

/// Largest coefficient modulus of p - q.
double max_coeff_diff(const Poly& p, const Poly& q);

/// Laurent (trigonometric) polynomial sum_{k=low}^{low+n-1} c_k z^k, evaluated
/// on the unit circle. Used for |p|^2 and the weights fed to spectral factorization.
template <class T>
struct LaurentT {
  int low = 0;
  std::vector<T> c;

  int high() const { return low + static_cast<int>(c.size()) - 1; }
  T operator[](int k) const {
    int i = k - low;
    return (i < 0 || i >= static_cast<int>(c.size())) ? T(0) : c[static_cast<std::size_t>(i)];
  }
};

using Laurent = LaurentT<cplx>;
using QLaurent = LaurentT<QComplex>;

/// |p|^2 on the circle as a Laurent polynomial of degrees -deg p .. deg p.
Laurent abs2(const Poly& p);
QLaurent abs2(const QPoly& p);

Laurent operator-(const Laurent& a, const Laurent& b);
QLaurent operator-(const QLaurent& a, const QLaurent& b);
Laurent operator+(const Laurent& a, const Laurent& b);
QLaurent operator+(const QLaurent& a, const QLaurent& b);
QLaurent operator*(const mpq_class& s, const QLaurent& a);

cplx eval_on_circle(const Laurent& w, double theta);
bool is_identically_zero(const QLaurent& w);

/// Symmetric range of degrees actually carried (drops exact-zero ends).
Laurent trim(const Laurent& w, double abs_tol);

}  // namespace hblab
