#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "hblab/poly.hpp"

namespace hblab {

struct RootMultiplicity {
  cplx root;
  int multiplicity;
};

/// All complex roots of p with multiplicities: companion-matrix eigenvalues,
/// Newton polishing, then clustering within cluster_tol * max(1, |r|). Each
/// cluster of size m is replaced by its centroid refined by Newton on the
/// (m-1)-th derivative, where the root is simple.
std::vector<RootMultiplicity> roots(const Poly& p, double cluster_tol = 1e-7);

/// roots() expanded so that a root of multiplicity m appears m times.
std::vector<cplx> roots_flat(const Poly& p, double cluster_tol = 1e-7);

/// An analytic function with boundary access, given by polynomial, rational or
/// finite-Blaschke data. Immutable once built; all kinds share a reduced
/// numerator/denominator view.
class UnitCircleFunction {
 public:
  enum class Kind { Polynomial, Rational, Blaschke };

  struct BlaschkeData {
    std::vector<cplx> zeros;
    cplx phase{1.0};
  };

  UnitCircleFunction() = default;

  static UnitCircleFunction polynomial(Poly p);
  static UnitCircleFunction constant(cplx c) { return polynomial(Poly::constant(c)); }
  /// Cancels common factors and normalizes den(0) = 1. A denominator that
  /// reduces to a constant yields a polynomial. Denominator zeros in the open
  /// disk are rejected; zeros on the circle only when boundary_singular is set.
  static UnitCircleFunction rational(Poly num, Poly den, bool boundary_singular = false);
  /// phase * prod (z - z_k)/(1 - conj(z_k) z), all |z_k| < 1, |phase| = 1.
  static UnitCircleFunction blaschke(std::vector<cplx> zeros, cplx phase = 1.0);

  Kind kind() const { return kind_; }
  bool is_polynomial() const { return kind_ == Kind::Polynomial; }
  bool boundary_singular() const { return boundary_singular_; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  /// Throws InvalidArgument unless kind() == Polynomial.
  const Poly& poly() const;
  const BlaschkeData& blaschke_data() const;

  /// Value at z by the representation (Horner for polynomials). Valid at any z
  /// off the poles, so it doubles as the continuation outside the disk.
  cplx operator()(cplx z) const;

  UnitCircleFunction scaled(cplx s) const;

 private:
  Kind kind_ = Kind::Polynomial;
  Poly num_;
  Poly den_ = Poly::constant(1.0);
  bool boundary_singular_ = false;
  BlaschkeData blaschke_;
};

using Function = UnitCircleFunction;

/// Checked evaluation: |z| <= 1 + tol and z not a pole.
cplx eval(const Function& f, cplx z, double tol = 1e-12);

/// Taylor coefficients 0..n-1 (exact for polynomials, power-series division
/// for rational data with a disk-free denominator).
std::vector<cplx> taylor_coeffs(const Function& f, std::size_t n);

/// Taylor section of f whose geometric tail bound is below tol (degree capped
/// at max_degree).
Poly taylor_polynomial(const Function& f, double tol = 1e-14, int max_degree = 4096);

/// Polynomial/rational products used to assemble kernels and Clark data.
Function product(const Function& f, const Function& g);

/// Largest |f(zeta)| over the n-point circle grid.
double sup_on_circle(const Function& f, std::size_t n = 4096);

}  // namespace hblab
