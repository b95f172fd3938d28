#include "hblab/exact.hpp"

#include <cmath>

#include "hblab/error.hpp"

namespace hblab {

namespace {

mpq_class exact_from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "non-finite value in exact conversion");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

}  // namespace

QComplex QComplex::from_double(cplx z) { return {exact_from_double(z.real()), exact_from_double(z.imag())}; }

std::ostream& operator<<(std::ostream& os, const QComplex& z) {
  os << z.re.get_str();
  if (sgn(z.im) != 0) os << (sgn(z.im) > 0 ? "+" : "") << z.im.get_str() << "i";
  return os;
}

std::optional<mpq_class> rationalize(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // convergents h/k of the continued fraction of x
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    if (std::abs(a) > 1e15) break;
    const long ai = static_cast<long>(a);
    const long h2 = ai * h1 + h0;
    const long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol * std::max(1.0, std::abs(x))) {
      mpq_class q(h1, k1);
      q.canonicalize();
      return q;
    }
    const double frac = r - a;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

std::optional<QComplex> rationalize(cplx z, long max_den, double tol) {
  auto re = rationalize(z.real(), max_den, tol);
  auto im = rationalize(z.imag(), max_den, tol);
  if (!re || !im) return std::nullopt;
  return QComplex(*re, *im);
}

}  // namespace hblab
