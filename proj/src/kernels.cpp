#include "hblab/kernels.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

#include <unsupported/Eigen/FFT>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hblab::kernels {

void apply_thread_cap() {
  static std::once_flag once;
  std::call_once(once, [] {
#ifdef _OPENMP
    if (const char* env = std::getenv("HB_LAB_THREADS")) {
      try {
        const int cap = std::stoi(env);
        if (cap > 0 && cap < omp_get_max_threads()) omp_set_num_threads(cap);
      } catch (const std::exception&) {
        // malformed value: keep the OpenMP default
      }
    }
#endif
  });
}

int max_threads() {
  apply_thread_cap();
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<cplx> dft(const std::vector<cplx>& samples, double offset) {
  const std::size_t n = samples.size();
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.fwd(out, samples);
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    // fold the grid offset into a phase: conj(zeta_k)^j = e^{-i pi j offset / n} e^{-2 pi i jk/n}
    const double jj = (j < n / 2) ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    out[j] *= inv * std::polar(1.0, -jj * offset * std::numbers::pi / static_cast<double>(n));
  }
  return out;
}

std::vector<cplx> dft_direct(const std::vector<cplx>& samples, double offset) {
  const std::size_t n = samples.size();
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double jj = (j < n / 2) ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    cplx s{};
    for (std::size_t k = 0; k < n; ++k) s += samples[k] * std::conj(std::pow(node(k, n, offset), jj));
    out[j] = s / static_cast<double>(n);
  }
  return out;
}

}  // namespace hblab::kernels
