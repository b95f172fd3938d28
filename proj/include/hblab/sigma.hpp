#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "hblab/hb.hpp"

namespace hblab {

struct SigmaPoint {
  cplx point;
  std::string provenance;
};

/// Finite point sets with lower (certified inside sigma(phi)) and upper
/// (certified to contain sigma(phi)) bounds.
struct SigmaBounds {
  std::vector<SigmaPoint> lower;
  std::vector<SigmaPoint> upper;
  bool normalized = false;  // b(0) = 0 and mu_1 without atoms
};

/// Unimodular zeros of the numerator of an outer rational phi. Throws NotOuter.
std::vector<cplx> sigma_upper(const Function& phi, const Tolerances& tol = {});

/// Atoms of mu_alpha over the alpha grid, deduplicated.
std::vector<SigmaPoint> sigma_lower(const HbSpace& space);

/// Lower bound for the space attached to a polynomial phi; a constant phi
/// gives b = 0, which has no Clark atoms, hence the empty set.
std::vector<SigmaPoint> sigma_lower(const Poly& phi);

/// Both bounds for phi_1 = a/(1 - b). When mu_1 has atoms the upper bound
/// falls back to all unimodular zeros of a, which contain every Clark atom.
SigmaBounds sigma_bounds(const HbSpace& space);

/// True when b(0) = 0 and mu_1 has no atoms.
bool is_normalized(const HbSpace& space);

struct ToeplitzSectionReport {
  std::size_t N = 0;
  std::vector<double> singular_values;  // ascending
  std::size_t near_kernel = 0;          // count below threshold
  double sigma_min = 0.0;
};

struct ToeplitzTrend {
  std::vector<ToeplitzSectionReport> sections;  // N, 2N, 4N (sizes <= 4096)
  bool stable = false;                          // equal near-kernel counts
  std::size_t estimated_kernel_dim = 0;
};

/// Fourier coefficients u_k, k = -(N-1)..N-1, of the unimodular symbol
/// conj(phi)/phi, from samples on the midpoint grid.
std::vector<cplx> symbol_coefficients(const Function& phi, std::size_t N);

/// N x N section with entries u_{m-n}; singular values by SVD.
ToeplitzSectionReport toeplitz_section(const Function& phi, std::size_t N, double threshold = 1e-6);

/// Sections of size N, 2N, 4N computed in parallel. Throws NotOuter for phi
/// with interior zeros and InvalidArgument unless N is a power of two <= 4096.
ToeplitzTrend toeplitz_kernel_sections(const Function& phi, std::size_t N, double threshold = 1e-6);

void write_toeplitz_csv(std::ostream& os, const ToeplitzTrend& trend);

struct Membership {
  double minus_residual = 0.0;  // l2 norm of P-(phi h)
  double plus_residual = 0.0;   // l2 norm of P+(conj(phi) h), mean included
  bool member = false;
};

/// Two-sided test for h in H^2/phi and in conj(H^2_0)/conj(phi).
Membership j_phi_membership(const Function& phi, const std::function<cplx(cplx)>& h, std::size_t n = 4096,
                            double tol = 1e-6);

/// Value of the pseudocontinuation of h at z off the circle: inside by
/// phi(z)^{-1} int P(z, .) phi h dm, outside through the same integral of
/// phi conj(h) at 1/conj(z). Throws OnCircle, NotInJ, Pole (phi(z) = 0).
cplx pseudocontinuation_eval(const Function& phi, const std::function<cplx(cplx)>& h, cplx z, double tol = 1e-6);

}  // namespace hblab
