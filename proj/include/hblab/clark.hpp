#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "hblab/boundary.hpp"
#include "hblab/hb.hpp"

namespace hblab {

/// Aleksandrov-Clark measure mu_alpha of b: density |phi_alpha|^2 dm plus the
/// atoms at the unimodular solutions of b = alpha.
struct ClarkMeasure {
  cplx alpha;
  Function phi;             // phi_alpha = a / (1 - conj(alpha) b), reduced
  std::vector<Atom> atoms;  // masses from radial extrapolation
  std::vector<double> atom_mass_error;
  double ac_mass = 0.0;
  double total_mass = 0.0;     // Re (1 + conj(alpha) b(0)) / (1 - conj(alpha) b(0))
  std::size_t grid_used = 0;   // quadrature size after refinement

  double density(cplx zeta) const { return std::norm(phi(zeta)); }
  Measure measure() const;
  /// |atoms + ac_mass - total_mass|
  double mass_defect() const;
};

struct RadialLimit {
  double value;
  double error;
};

/// lim_{r -> 1} (1 - r)/(1 + r) Re H(r zeta) by Richardson extrapolation over
/// r_k = 1 - 2^{-k}, k = grid.k_min..grid.k_max; the error is the change of
/// the last extrapolated value.
RadialLimit radial_atom_mass(const std::function<cplx(cplx)>& herglotz_fn, cplx zeta, const GridConfig& grid = {});

/// Throws InvalidArgument unless |alpha| = 1.
ClarkMeasure clark_measure(const HbSpace& space, cplx alpha);

/// phi_alpha = a / (1 - conj(alpha) b); boundary singular where b = alpha
/// unless the factor cancels.
Function phi_alpha(const HbSpace& space, cplx alpha);

/// 64 equispaced points plus b(zeta) at every unimodular zero zeta of a.
std::vector<cplx> alpha_grid(const HbSpace& space, std::size_t count = 64);

/// V_alpha h(z) = (1 - conj(alpha) b(z)) * int h dmu_alpha / (1 - z conj(zeta)),
/// quadrature plus closed-form atom terms. Throws OutsideDisk for |z| >= 1.
cplx normalized_cauchy(const HbSpace& space, const ClarkMeasure& mu, const std::function<cplx(cplx)>& h, cplx z);

struct CauchyRefit {
  Function value;   // V_alpha h as N / q
  double residual;  // largest tail coefficient of q V_alpha h beyond deg N
};

/// V_alpha h for polynomial h in closed form: q V_alpha h is a polynomial of
/// degree <= deg h + max(deg p, deg q). Its coefficients are read from the
/// moments of h mu_alpha; the tail beyond that degree is the residual.
CauchyRefit normalized_cauchy_refit(const HbSpace& space, const ClarkMeasure& mu, const Poly& h);

struct PoltoratskiLimit {
  cplx value;
  double error;
};

/// Radial limit of V_alpha h at an atom zeta of mu_alpha; throws NotAnAtom.
PoltoratskiLimit poltoratski_limit(const HbSpace& space, const ClarkMeasure& mu, const Poly& h, cplx zeta);

/// CSV rows alpha_angle,type,theta,value for density samples and atoms.
void write_clark_csv(std::ostream& os, const ClarkMeasure& mu, std::size_t samples = 256);

}  // namespace hblab
