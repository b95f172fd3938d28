#include "hblab/function.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "hblab/error.hpp"
#include "hblab/kernels.hpp"

namespace hblab {

namespace {

cplx newton_polish(const Poly& p, const Poly& dp, cplx z, int iterations = 12) {
  cplx best = z;
  double best_res = std::abs(p(z));
  for (int it = 0; it < iterations && best_res > 0.0; ++it) {
    const cplx d = dp(z);
    if (d == cplx{}) break;
    z -= p(z) / d;
    const double res = std::abs(p(z));
    if (!(res < best_res)) break;
    best = z;
    best_res = res;
  }
  return best;
}

std::vector<cplx> companion_eigenvalues(const Poly& monic) {
  const int n = monic.degree();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -monic[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
  std::vector<cplx> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  return out;
}

// Taylor coefficients of p about c, t_j = p^(j)(c)/j!, and the matching
// magnitudes sum_k |binom(k,j) p_k| |c|^(k-j) by repeated synthetic division.
void taylor_shift(const Poly& p, cplx c, std::vector<cplx>& t, std::vector<double>& mag) {
  std::vector<cplx> a(p.coeffs().begin(), p.coeffs().end());
  std::vector<double> b(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) b[k] = std::abs(a[k]);
  const double r = std::abs(c);
  const std::size_t n = a.size();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = n - 1; k > j; --k) {
      a[k - 1] += c * a[k];
      b[k - 1] += r * b[k];
    }
  t = std::move(a);
  mag = std::move(b);
}

// Accepts c as an m-fold root when the first m Taylor coefficients about c
// vanish to within rounding of their magnitudes.
bool is_multiple_root(const Poly& p, cplx c, int m) {
  std::vector<cplx> t;
  std::vector<double> mag;
  taylor_shift(p, c, t, mag);
  for (int j = 0; j < m; ++j)
    if (std::abs(t[static_cast<std::size_t>(j)]) > 1e-10 * mag[static_cast<std::size_t>(j)]) return false;
  return true;
}

cplx polish_cluster(const Poly& monic, cplx centroid, int m) {
  if (m == 1) return centroid;
  Poly dm = monic;
  for (int k = 0; k < m - 1; ++k) dm = dm.derivative();
  return newton_polish(dm, dm.derivative(), centroid);
}

int find_root(std::vector<int>& parent, int i) {
  while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
  return i;
}

}  // namespace

std::vector<RootMultiplicity> roots(const Poly& p, double cluster_tol) {
  if (p.degree() < 1) throw Error(ErrorKind::DegreeZero, "roots: polynomial of degree < 1");
  std::vector<RootMultiplicity> out;

  int zeros = 0;
  while (p[zeros] == cplx{}) ++zeros;
  if (zeros > 0) out.push_back({cplx{}, zeros});
  std::vector<cplx> rest(p.coeffs().begin() + zeros, p.coeffs().end());
  const cplx lead = rest.back();
  for (auto& c : rest) c /= lead;
  const Poly monic(std::move(rest));
  if (monic.degree() < 1) return out;

  const Poly dmonic = monic.derivative();
  std::vector<cplx> raw = companion_eigenvalues(monic);
  for (auto& r : raw) r = newton_polish(monic, dmonic, r);

  const int n = static_cast<int>(raw.size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const cplx a = raw[static_cast<std::size_t>(i)], b = raw[static_cast<std::size_t>(j)];
      if (std::abs(a - b) <= cluster_tol * std::max({1.0, std::abs(a), std::abs(b)}))
        parent[static_cast<std::size_t>(find_root(parent, i))] = find_root(parent, j);
    }

  std::vector<std::vector<int>> clusters(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) clusters[static_cast<std::size_t>(find_root(parent, i))].push_back(i);
  std::vector<RootMultiplicity> found;
  for (const auto& members : clusters) {
    if (members.empty()) continue;
    cplx centroid{};
    for (int i : members) centroid += raw[static_cast<std::size_t>(i)];
    const int m = static_cast<int>(members.size());
    found.push_back({polish_cluster(monic, centroid / static_cast<double>(m), m), m});
  }

  // Roots of multiplicity >= 3 scatter by about eps^(1/m), beyond the
  // clustering radius. Nearby clusters are merged when the merged point is a
  // numerical root of the combined multiplicity.
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < found.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < found.size() && !merged; ++j) {
        const cplx a = found[i].root, b = found[j].root;
        if (std::abs(a - b) > 1e-3 * std::max({1.0, std::abs(a), std::abs(b)})) continue;
        const int m = found[i].multiplicity + found[j].multiplicity;
        const cplx c = polish_cluster(
            monic, (a * static_cast<double>(found[i].multiplicity) + b * static_cast<double>(found[j].multiplicity)) / static_cast<double>(m), m);
        if (!is_multiple_root(monic, c, m)) continue;
        found[i] = {c, m};
        found.erase(found.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
  }
  out.insert(out.end(), found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](const RootMultiplicity& a, const RootMultiplicity& b) {
    if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
    return a.root.imag() < b.root.imag();
  });
  return out;
}

std::vector<cplx> roots_flat(const Poly& p, double cluster_tol) {
  std::vector<cplx> out;
  for (const auto& r : roots(p, cluster_tol))
    for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.root);
  return out;
}

UnitCircleFunction UnitCircleFunction::polynomial(Poly p) {
  UnitCircleFunction f;
  f.kind_ = Kind::Polynomial;
  f.num_ = std::move(p);
  f.den_ = Poly::constant(1.0);
  return f;
}

UnitCircleFunction UnitCircleFunction::rational(Poly num, Poly den, bool boundary_singular) {
  if (den.is_zero()) throw Error(ErrorKind::Pole, "rational function with zero denominator");
  if (num.is_zero()) return polynomial(Poly());

  if (den.degree() >= 1 && num.degree() >= 1) {
    // cancel common roots, matched pairwise
    std::vector<cplx> dr = roots_flat(den);
    std::vector<cplx> nr = roots_flat(num);
    std::vector<bool> used(nr.size(), false);
    for (const cplx& r : dr) {
      std::size_t best = nr.size();
      double best_d = 1e-6 * std::max(1.0, std::abs(r));
      for (std::size_t i = 0; i < nr.size(); ++i) {
        if (used[i]) continue;
        const double d = std::abs(nr[i] - r);
        if (d <= best_d) {
          best_d = d;
          best = i;
        }
      }
      if (best == nr.size()) continue;
      used[best] = true;
      const cplx c = 0.5 * (r + nr[best]);
      num = divide_linear(num, c).first;
      den = divide_linear(den, c).first;
    }
  }

  if (den.degree() == 0) return polynomial(num * (1.0 / den[0]));
  if (den[0] == cplx{}) throw Error(ErrorKind::Pole, "rational function has a pole at 0");
  const cplx d0 = den[0];
  num *= 1.0 / d0;
  den *= 1.0 / d0;

  for (const auto& r : roots(den)) {
    const double mod = std::abs(r.root);
    if (mod < 1.0 - 1e-7) throw Error(ErrorKind::Pole, "denominator vanishes inside the unit disk");
    if (mod <= 1.0 + 1e-7 && !boundary_singular)
      throw Error(ErrorKind::BoundaryPole, "denominator vanishes on the unit circle");
  }

  UnitCircleFunction f;
  f.kind_ = Kind::Rational;
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  f.boundary_singular_ = boundary_singular;
  return f;
}

UnitCircleFunction UnitCircleFunction::blaschke(std::vector<cplx> zeros, cplx phase) {
  if (std::abs(std::abs(phase) - 1.0) > 1e-12)
    throw Error(ErrorKind::InvalidArgument, "Blaschke phase must be unimodular");
  Poly num = Poly::constant(phase);
  Poly den = Poly::constant(1.0);
  for (const cplx& z : zeros) {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::InvalidArgument, "Blaschke zero outside the open disk");
    num = num * Poly{-z, 1.0};
    den = den * Poly{1.0, -std::conj(z)};
  }
  UnitCircleFunction f;
  f.kind_ = Kind::Blaschke;
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  f.blaschke_ = {std::move(zeros), phase};
  return f;
}

const Poly& UnitCircleFunction::poly() const {
  if (kind_ != Kind::Polynomial) throw Error(ErrorKind::InvalidArgument, "function is not a polynomial");
  return num_;
}

const UnitCircleFunction::BlaschkeData& UnitCircleFunction::blaschke_data() const {
  if (kind_ != Kind::Blaschke) throw Error(ErrorKind::InvalidArgument, "function is not a Blaschke product");
  return blaschke_;
}

cplx UnitCircleFunction::operator()(cplx z) const {
  if (kind_ == Kind::Polynomial) return num_(z);
  const cplx d = den_(z);
  double scale = 0.0, zk = 1.0;
  for (const auto& c : den_.coeffs()) {
    scale += std::abs(c) * zk;
    zk *= std::abs(z);
  }
  if (std::abs(d) <= 1e-15 * scale) throw Error(ErrorKind::Pole, "evaluation at a pole");
  return num_(z) / d;
}

UnitCircleFunction UnitCircleFunction::scaled(cplx s) const {
  UnitCircleFunction f = *this;
  f.num_ *= s;
  if (f.kind_ == Kind::Blaschke) {
    // no longer inner unless |s| = 1; keep the Blaschke tag only for unimodular factors
    if (std::abs(std::abs(s) - 1.0) > 1e-12) f.kind_ = Kind::Rational;
    else f.blaschke_.phase *= s;
  }
  return f;
}

cplx eval(const Function& f, cplx z, double tol) {
  if (std::abs(z) > 1.0 + tol) throw Error(ErrorKind::OutsideDisk, "eval: |z| > 1");
  return f(z);
}

std::vector<cplx> taylor_coeffs(const Function& f, std::size_t n) {
  if (f.boundary_singular()) throw Error(ErrorKind::BoundaryPole, "Taylor coefficients of a boundary-singular function");
  if (f.is_polynomial()) {
    std::vector<cplx> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = f.numerator()[static_cast<std::ptrdiff_t>(k)];
    return c;
  }
  return series_divide(f.numerator(), f.denominator(), n);
}

Poly taylor_polynomial(const Function& f, double tol, int max_degree) {
  if (f.is_polynomial()) return f.poly();
  if (f.boundary_singular()) throw Error(ErrorKind::BoundaryPole, "Taylor section of a boundary-singular function");
  double rho = std::numeric_limits<double>::infinity();
  for (const auto& r : roots(f.denominator())) rho = std::min(rho, std::abs(r.root));
  const double q = 1.0 / rho;
  const double tail_factor = 1.0 / (1.0 - q);
  std::size_t n = 64;
  for (;;) {
    const std::size_t total = std::min<std::size_t>(n, static_cast<std::size_t>(max_degree) + 1);
    std::vector<cplx> c = series_divide(f.numerator(), f.denominator(), total + 16);
    // first K such that the next 16 coefficients and the geometric tail are negligible
    for (std::size_t k = 1; k + 16 <= c.size(); ++k) {
      double window = 0.0;
      for (std::size_t j = k; j < k + 16; ++j) window = std::max(window, std::abs(c[j]));
      if (window * tail_factor * 16.0 < tol) {
        c.resize(k);
        return Poly(std::move(c));
      }
    }
    if (total >= static_cast<std::size_t>(max_degree) + 1) {
      c.resize(total);
      return Poly(std::move(c));
    }
    n *= 2;
  }
}

Function product(const Function& f, const Function& g) {
  if (f.is_polynomial() && g.is_polynomial()) return Function::polynomial(f.poly() * g.poly());
  return Function::rational(f.numerator() * g.numerator(), f.denominator() * g.denominator(),
                            f.boundary_singular() || g.boundary_singular());
}

double sup_on_circle(const Function& f, std::size_t n) {
  return kernels::max_abs([&](cplx z) { return f(z); }, n);
}

}  // namespace hblab
