#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hblab/config.hpp"
#include "hblab/factor.hpp"
#include "hblab/function.hpp"

namespace hblab {

/// Rational data of a space in the exact backend: b = p/q and
/// a = sqrt(scale_sq) * shape / q.
struct ExactSpace {
  QPoly p;
  QPoly q;
  ExactFactor A;
};

/// A validated non-extreme H(b) for rational b, with its Pythagorean mate.
struct HbSpace {
  Function b;
  Function a;
  Poly p;  // b = p/q
  Poly q;  // q(0) = 1
  Poly A;  // a = A/q
  GridConfig grid;
  Tolerances tol;
  Backend backend = Backend::Float;
  std::optional<ExactSpace> exact;
  std::uint64_t id = 0;

  /// Distinct unimodular zeros of a.
  std::vector<cplx> circle_zeros_of_a() const;
  double pythagorean_error(std::size_t n = 4096) const;
};

/// Builds the space for a rational, nonconstant, non-extreme b. The exact
/// backend additionally requires rational coefficients and an exactly
/// verified spectral factor (ExactUnavailable otherwise).
HbSpace make_space(const Function& b, const GridConfig& grid = {}, Backend backend = Backend::Float,
                   const Tolerances& tol = {});

/// The space whose first Clark measure is |phi|^2 dm: with H the Herglotz
/// transform of |phi|^2 dm, b = (H - 1)/(H + 1). Polynomial phi only.
HbSpace space_from_phi(const Poly& phi, const GridConfig& grid = {}, const Tolerances& tol = {});

/// f in H(b) with its mate f1 (T_conj(b) f + T_conj(a) f1 = 0).
struct HbElement {
  Poly f;
  Poly f1;
  double norm_sq = 0.0;
  std::uint64_t space_id = 0;

  // exact backend: f1 = g / sqrt(scale_sq)
  std::optional<QPoly> exact_f;
  std::optional<QPoly> exact_g;
  std::optional<mpq_class> exact_norm_sq;
};

/// The mate of a polynomial f by back-substitution on T_conj(A) f1 = -T_conj(p) f.
Poly mate(const HbSpace& space, const Poly& f);

/// Exact mate up to the factor 1/sqrt(scale_sq): solves T_conj(shape) g = -T_conj(p) f.
QPoly mate_exact_scaled(const ExactSpace& space, const QPoly& f);

/// Largest coefficient of P+(conj(p) f + conj(A) f1), which vanishes exactly
/// when P+(conj(b) f + conj(a) f1) does.
double mate_residual(const HbSpace& space, const Poly& f, const Poly& f1);
bool mate_residual_is_zero(const ExactSpace& space, const QPoly& f, const QPoly& g);

HbElement element(const HbSpace& space, const Poly& f);
/// Rational f enters through its Taylor section with tail below tail_tol.
HbElement element(const HbSpace& space, const Function& f, double tail_tol = 1e-12);
/// Exact element; requires the exact backend.
HbElement element_exact(const HbSpace& space, const QPoly& f);

cplx inner_product(const HbElement& x, const HbElement& y);
QComplex inner_product_exact(const HbSpace& space, const HbElement& x, const HbElement& y);

/// Gram matrix G(j, k) = <x_k, x_j>_b.
Eigen::MatrixXcd gram(const std::vector<HbElement>& xs);

/// k_lambda^b = (1 - conj(b(lambda)) b(z)) / (1 - conj(lambda) z), |lambda| < 1.
Function kernel(const HbSpace& space, cplx lambda);

/// Boundary kernel at a unimodular zeta with |b(zeta)| = 1: the same
/// expression after cancelling the common factor (z - zeta).
Function boundary_kernel(const HbSpace& space, cplx zeta);

/// f / theta with theta the inner factor of f (polynomial, since the
/// Blaschke denominators cancel).
HbElement divide_inner(const HbSpace& space, const HbElement& x);

}  // namespace hblab
