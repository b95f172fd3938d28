#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hblab/config.hpp"
#include "hblab/function.hpp"

namespace hblab {

/// Counterclockwise arc of the unit circle. start is normalized into [0, 2pi);
/// extent lies in (0, 2pi], with extent == 2pi meaning the whole circle.
class Arc {
 public:
  /// Arc from angle `from` counterclockwise to angle `to` (radians, any real values).
  /// Equal endpoints are rejected as an empty arc.
  static Arc between(double from, double to);
  static Arc full();

  double start() const { return start_; }
  double extent() const { return extent_; }
  double end() const { return start_ + extent_; }
  bool is_full() const;

  /// Membership of the angle theta in the closed arc (closed = true) or in its interior.
  bool contains(double theta, bool closed = true, double tol = 1e-12) const;

 private:
  Arc(double start, double extent) : start_(start), extent_(extent) {}
  double start_;
  double extent_;
};

double normalize_angle(double theta);

/// True when the union of the closed arcs covers the circle up to gaps of
/// length <= tol. The uncovered pieces are returned through `gaps` when given.
bool covers_circle(std::span<const Arc> arcs, double tol = 1e-12, std::vector<Arc>* gaps = nullptr);

struct Atom {
  cplx point;
  double mass;
};

/// A finite positive measure on the circle: an absolutely continuous part with
/// density w(zeta) (relative to normalized Lebesgue measure) plus finitely many atoms.
struct Measure {
  std::function<double(cplx)> density;
  std::vector<Atom> atoms;

  static Measure lebesgue();
  static Measure dirac(cplx point, double mass = 1.0);
  static Measure from_density(std::function<double(cplx)> w);
};

/// Integral of (zeta + z)/(zeta - z) d mu: atoms in closed form, density by the
/// trapezoid rule on grid.n points. Throws OutsideDisk for |z| >= 1.
cplx herglotz(const Measure& mu, cplx z, const GridConfig& grid = {});

/// Integral of h(zeta) d nu(zeta) / (1 - z conj(zeta)), same quadrature.
cplx cauchy(const Measure& nu, const std::function<cplx(cplx)>& h, cplx z, const GridConfig& grid = {});

/// Moments  int h(zeta) conj(zeta)^k d nu,  k = 0..count-1: the Taylor
/// coefficients of the Cauchy transform of h nu. Density part by one FFT.
std::vector<cplx> cauchy_moments(const Measure& nu, const std::function<cplx(cplx)>& h, std::size_t count,
                                 const GridConfig& grid = {});

struct FourierCoefficients {
  int first = 0;
  std::vector<cplx> values;
  double error_bound = 0.0;
};

/// Fourier coefficients with indices first..last. Exact for polynomials;
/// power-series expansion for rational data; negative indices are zero for
/// analytic data. Boundary-singular input is rejected.
FourierCoefficients fourier_coeffs(const Function& f, int first, int last);

/// Coefficients of a sampled boundary function by the DFT on n points; the
/// error bound is the largest change against the same transform on n/2 points.
FourierCoefficients fourier_coeffs_sampled(const std::function<cplx(cplx)>& g, int first, int last, std::size_t n,
                                           double offset = 0.0);

}  // namespace hblab
