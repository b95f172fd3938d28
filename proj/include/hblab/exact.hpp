#pragma once

#include <complex>
#include <optional>
#include <ostream>

#include <gmpxx.h>

namespace hblab {

using cplx = std::complex<double>;

/// Gaussian rational: real and imaginary parts are GMP rationals. Used by the
/// exact backend, where every coefficient of every intermediate polynomial is
/// an exact rational.
struct QComplex {
  mpq_class re;
  mpq_class im;

  QComplex() : re(0), im(0) {}
  QComplex(mpq_class r) : re(std::move(r)), im(0) {}  // NOLINT(implicit)
  QComplex(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}
  QComplex(long n) : re(n), im(0) {}  // NOLINT(implicit)

  /// Exact conversion of the binary64 value (no rounding).
  static QComplex from_double(cplx z);

  cplx to_cplx() const { return {re.get_d(), im.get_d()}; }
  mpq_class norm() const { return re * re + im * im; }

  QComplex& operator+=(const QComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  QComplex& operator-=(const QComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  QComplex& operator*=(const QComplex& o) {
    mpq_class r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  QComplex& operator/=(const QComplex& o) {
    mpq_class d = o.norm();
    mpq_class r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
  }
};

inline QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
inline QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
inline QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
inline QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
inline QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
inline bool operator==(const QComplex& a, const QComplex& b) {
  return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }
inline QComplex conj(const QComplex& a) { return {a.re, -a.im}; }
std::ostream& operator<<(std::ostream& os, const QComplex& z);

/// Continued-fraction reconstruction of x as p/q with q <= max_den. Returns
/// nothing unless |x - p/q| <= tol * max(1, |x|).
std::optional<mpq_class> rationalize(double x, long max_den = 1 << 20, double tol = 1e-12);
std::optional<QComplex> rationalize(cplx z, long max_den = 1 << 20, double tol = 1e-12);

}  // namespace hblab
