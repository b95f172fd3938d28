#include "hblab/error.hpp"

namespace hblab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::BoundaryPole: return "boundary_pole";
    case ErrorKind::OutsideDisk: return "outside_disk";
    case ErrorKind::DegreeZero: return "degree_zero";
    case ErrorKind::ZeroPolynomial: return "zero_polynomial";
    case ErrorKind::NegativeWeight: return "negative_weight";
    case ErrorKind::OddCircleMultiplicity: return "odd_circle_multiplicity";
    case ErrorKind::RootPairing: return "root_pairing";
    case ErrorKind::ExtremeB: return "extreme_b";
    case ErrorKind::NotContractive: return "not_contractive";
    case ErrorKind::ConstantB: return "constant_b";
    case ErrorKind::SpaceMismatch: return "space_mismatch";
    case ErrorKind::NotAnAtom: return "not_an_atom";
    case ErrorKind::NotOuter: return "not_outer";
    case ErrorKind::NotNormalized: return "not_normalized";
    case ErrorKind::NotInJ: return "not_in_J";
    case ErrorKind::OnCircle: return "on_circle";
    case ErrorKind::CoverageGap: return "coverage_gap";
    case ErrorKind::BoundFailure: return "bound_failure";
    case ErrorKind::RefitResidual: return "refit_residual";
    case ErrorKind::ExactUnavailable: return "exact_unavailable";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

}  // namespace hblab
