#pragma once

// Data-parallel inner loops shared by every module: sampling on the circle
// grid, trapezoid quadrature, and Hermitian Gram assembly. Each kernel has an
// OpenMP version (namespace kernels) and a serial reference (kernels::serial)
// that the tests and the benchmark compare against.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace hblab {

using cplx = std::complex<double>;

namespace kernels {

/// Grid node e^{i(2 pi k + offset pi)/n}; offset = 0 gives the roots of unity,
/// offset = 1 the midpoints between them.
inline cplx node(std::size_t k, std::size_t n, double offset = 0.0) {
  return std::polar(1.0, (2.0 * static_cast<double>(k) + offset) * std::numbers::pi / static_cast<double>(n));
}

/// Caps the OpenMP team size from HB_LAB_THREADS (read once).
void apply_thread_cap();
int max_threads();

namespace serial {

template <class F>
std::vector<cplx> sample(F&& f, std::size_t n, double offset = 0.0) {
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = f(node(k, n, offset));
  return out;
}

/// (1/n) sum_k g(zeta_k)
template <class F>
cplx mean(F&& g, std::size_t n, double offset = 0.0) {
  cplx s{};
  for (std::size_t k = 0; k < n; ++k) s += g(node(k, n, offset));
  return s / static_cast<double>(n);
}

template <class F>
double max_abs(F&& g, std::size_t n, double offset = 0.0) {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(g(node(k, n, offset))));
  return m;
}

/// G(j,k) = inner(j, k) for a Hermitian form; only the upper triangle is evaluated.
template <class F>
Eigen::MatrixXcd gram(std::size_t n, F&& inner) {
  Eigen::MatrixXcd g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) {
      const cplx v = inner(j, k);
      g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = v;
      g(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = std::conj(v);
    }
  return g;
}

}  // namespace serial

template <class F>
std::vector<cplx> sample(F&& f, std::size_t n, double offset = 0.0) {
  apply_thread_cap();
  std::vector<cplx> out(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = f(node(static_cast<std::size_t>(k), n, offset));
  return out;
}

template <class F>
cplx mean(F&& g, std::size_t n, double offset = 0.0) {
  apply_thread_cap();
  double re = 0.0, im = 0.0;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) reduction(+ : re, im)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const cplx v = g(node(static_cast<std::size_t>(k), n, offset));
    re += v.real();
    im += v.imag();
  }
  return cplx(re, im) / static_cast<double>(n);
}

template <class F>
double max_abs(F&& g, std::size_t n, double offset = 0.0) {
  apply_thread_cap();
  double m = 0.0;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) reduction(max : m)
  for (std::ptrdiff_t k = 0; k < count; ++k) m = std::max(m, std::abs(g(node(static_cast<std::size_t>(k), n, offset))));
  return m;
}

template <class F>
Eigen::MatrixXcd gram(std::size_t n, F&& inner) {
  apply_thread_cap();
  Eigen::MatrixXcd g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t j = 0; j < count; ++j)
    for (std::ptrdiff_t k = j; k < count; ++k) {
      const cplx v = inner(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
      g(j, k) = v;
      g(k, j) = std::conj(v);
    }
  return g;
}

/// Forward DFT of samples taken on the grid with the given offset, scaled by
/// 1/n: returns c_j = (1/n) sum_k s_k conj(zeta_k)^j for j = 0..n-1
/// (indices >= n/2 alias the negative frequencies j - n).
std::vector<cplx> dft(const std::vector<cplx>& samples, double offset = 0.0);

/// Same transform by direct O(n^2) summation; reference for dft().
std::vector<cplx> dft_direct(const std::vector<cplx>& samples, double offset = 0.0);

}  // namespace kernels
}  // namespace hblab
