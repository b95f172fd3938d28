#pragma once

#include <cstddef>
#include <string>

namespace hblab {

enum class Backend { Float, Exact };

/// Quadrature grid and radial sequence r_k = 1 - 2^{-k}, k = k_min..k_max.
struct GridConfig {
  std::size_t n = 4096;
  int k_min = 6;
  int k_max = 16;
  std::string rule = "trapezoid";

  /// Throws InvalidArgument unless n is a power of two >= 256 and k_max > k_min >= 3.
  void validate() const;
  double radius(int k) const;
};

struct Tolerances {
  double root_cluster = 1e-7;    // relative radius for merging repeated roots
  double root_pairing = 1e-6;    // relative mismatch allowed for (r, 1/conj r) pairs
  double outer = 1e-10;          // roots with |z| < 1 - outer are interior
  double nonzero = 1e-9;         // |f(zeta)| above this counts as nonvanishing
  double negative_weight = 1e-12;
};

}  // namespace hblab
