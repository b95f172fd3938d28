#pragma once

#include <optional>

#include "hblab/config.hpp"
#include "hblab/function.hpp"

namespace hblab {

/// Spectral factor of a nonnegative Hermitian trigonometric polynomial w:
/// the polynomial a with |a|^2 = w on the circle, no roots in the open disk and
/// a(0) > 0. Circle roots of w must have even multiplicity and are halved.
Poly fejer_riesz(const Laurent& w, const Tolerances& tol = {});

/// Exact representation of an outer polynomial factor a = sqrt(scale_sq) * shape,
/// with shape(0) = 1 and |a|^2 = scale_sq * |shape|^2 holding identically in
/// rational arithmetic.
struct ExactFactor {
  mpq_class scale_sq;
  QPoly shape;

  Poly to_float() const;
};

/// Exact counterpart of fejer_riesz: rationalizes the float factor and keeps it
/// only if w == scale_sq * |shape|^2 holds exactly. Nothing otherwise.
std::optional<ExactFactor> fejer_riesz_exact(const QLaurent& w, const Tolerances& tol = {});

/// Mate of b as numerator over the denominator of b: b = p/q, a = A/q.
struct MateData {
  Poly p;  // numerator of b
  Poly q;  // denominator of b (q(0) = 1; the constant 1 for polynomial b)
  Poly A;  // numerator of the mate
  Function a;

  /// max over the grid of | |a|^2 + |b|^2 - 1 |
  double pythagorean_error(std::size_t n = 4096) const;
};

/// The outer a with |a|^2 + |b|^2 = 1 on the circle and a(0) > 0, for
/// polynomial or rational b. Throws ExtremeB for inner b, NotContractive when
/// sup |b| > 1 + 1e-12 on the grid, ConstantB for constant b.
MateData mate_of_b(const Function& b, const Tolerances& tol = {});

/// Weight 1 - |b|^2 (polynomial b) or |q|^2 - |p|^2 (rational b = p/q).
Laurent defect_weight(const Poly& p, const Poly& q);
QLaurent defect_weight(const QPoly& p, const QPoly& q);

/// True iff no root of f lies in |z| < 1 - tol.outer (circle roots allowed).
bool is_outer(const Poly& f, const Tolerances& tol = {});

struct InnerOuter {
  Function inner;  // finite Blaschke product on the interior roots
  Poly outer;      // F with F(0) > 0 and f = inner * outer
};

InnerOuter inner_outer(const Poly& f, const Tolerances& tol = {});

}  // namespace hblab
