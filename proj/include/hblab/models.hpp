#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hblab/boundary.hpp"
#include "hblab/cyclicity.hpp"
#include "hblab/hb.hpp"

namespace hblab {

struct DirichletAtom {
  cplx point;     // on the unit circle
  double weight;  // > 0
};

/// Finitely supported positive measure on the circle.
struct DirichletSpec {
  std::vector<DirichletAtom> atoms;

  /// Throws InvalidArgument for an empty list, points off the circle
  /// (1e-10), nonpositive weights or repeated locations.
  void validate() const;
};

struct DirichletNorm {
  double dirichlet = 0.0;  // D_mu(f)
  double hardy = 0.0;      // ||f||_2^2
  double norm_sq = 0.0;    // D_mu(f) + ||f||_2^2
};

/// D_mu(f) = sum_i w_i ||(f - f(zeta_i))/(z - zeta_i)||_2^2 by synthetic division.
DirichletNorm dirichlet_norm(const DirichletSpec& spec, const Poly& f);

struct ExactDirichletAtom {
  QComplex point;  // |point|^2 == 1 exactly
  mpq_class weight;
};

struct ExactDirichletNorm {
  mpq_class dirichlet;
  mpq_class hardy;
  mpq_class norm_sq;
};

/// Same norm in rational arithmetic. Throws InvalidArgument for points that
/// are not exactly unimodular or nonpositive weights.
ExactDirichletNorm dirichlet_norm_exact(const std::vector<ExactDirichletAtom>& atoms, const QPoly& f);

/// Rational form of a float spec (points such as +-1, +-i, (3+4i)/5).
/// Throws ExactUnavailable when a point or weight has no small rational form.
std::vector<ExactDirichletAtom> exact_atoms(const DirichletSpec& spec);

/// Cyclic iff f is outer and nonzero (1e-9) at every atom location.
CyclicityReport dirichlet_cyclic(const DirichletSpec& spec, const Poly& f);

/// b = (1 + theta)/2 for a finite Blaschke product theta.
struct ThetaModel {
  Function theta;
  Function b;
  Function a;                     // (1 - theta)/2
  HbSpace space;                  // H(b) with the mate computed independently
  std::vector<Atom> sigma;        // atoms of the measure of (1+theta)/(1-theta)
  std::vector<double> sigma_error;
  double herglotz_at_zero = 0.0;  // Re (1 + theta(0))/(1 - theta(0))
  int model_space_dim = 0;        // dim K_theta = number of zeros of theta

  double sigma_mass() const;
};

/// Blaschke form of a rational function unimodular on the circle (1e-10);
/// throws InvalidArgument otherwise.
Function as_blaschke(const Function& f);

/// Accepts any rational inner theta; throws ConstantB for a constant one.
ThetaModel theta_model(const Function& theta, const GridConfig& grid = {});

/// Cyclic iff f is outer and nonzero (1e-9) at every atom of sigma.
CyclicityReport theta_cyclic(const ThetaModel& model, const Poly& f);

struct KernelCheck {
  cplx lambda;
  Verdict verdict = Verdict::Undetermined;
  double last_d2 = 0.0;
};

struct UniversalReport {
  CyclicityReport b_report;  // classifier applied to the numerator of b
  bool b_outer = false;
  bool consistent = false;   // verdict cyclic exactly when b is outer
  std::vector<KernelCheck> kernels;
};

/// Classifier on b against its outer test, then decay tables for the
/// reproducing kernels at `count` seeded random points with |lambda| <= 0.6.
UniversalReport universal_cyclicity(const HbSpace& space, std::size_t count = 5, std::uint64_t seed = 7,
                                    std::size_t n_max = 60);

}  // namespace hblab
