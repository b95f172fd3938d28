#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "hblab/function.hpp"

namespace testing {

using hblab::cplx;
using hblab::Poly;

inline Poly random_poly(std::mt19937_64& rng, int degree) {
  std::normal_distribution<double> g;
  std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = {g(rng), g(rng)};
  return Poly(std::move(c));
}

inline cplx random_disk(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(rmax * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

inline cplx random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, u(rng));
}

// Independent midpoint-rule average of g over the circle.
template <class F>
cplx circle_average(F&& g, int n = 8192) {
  cplx s{};
  for (int k = 0; k < n; ++k) s += g(std::polar(1.0, (2.0 * k + 1.0) * std::numbers::pi / n));
  return s / static_cast<double>(n);
}

inline double max_diff(const Poly& p, const Poly& q) {
  double m = 0.0;
  const std::size_t n = std::max(p.size(), q.size());
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(p[static_cast<std::ptrdiff_t>(k)] - q[static_cast<std::ptrdiff_t>(k)]));
  return m;
}

inline const double sqrt2 = std::sqrt(2.0);
inline const double sqrt3 = std::sqrt(3.0);

}  // namespace testing
