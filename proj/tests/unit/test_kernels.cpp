#include <doctest.h>

#include "helpers.hpp"
#include "hblab/kernels.hpp"

using namespace hblab;

TEST_CASE("parallel sample matches serial reference") {
  const auto f = [](cplx z) { return z * z + 1.0 / (2.0 + z); };
  for (std::size_t n : {256u, 1024u, 4096u})
    for (double offset : {0.0, 1.0}) {
      const auto a = kernels::sample(f, n, offset);
      const auto b = kernels::serial::sample(f, n, offset);
      REQUIRE(a.size() == b.size());
      for (std::size_t k = 0; k < n; ++k) CHECK(a[k] == b[k]);
    }
}

TEST_CASE("parallel mean and max agree with serial reference") {
  const auto g = [](cplx z) { return std::norm(1.0 - z) * z; };
  for (std::size_t n : {256u, 4096u, 65536u}) {
    CHECK(std::abs(kernels::mean(g, n, 1.0) - kernels::serial::mean(g, n, 1.0)) < 1e-13);
    CHECK(kernels::max_abs(g, n) == kernels::serial::max_abs(g, n));
  }
}

TEST_CASE("trapezoid mean integrates trigonometric polynomials exactly") {
  // mean of z^k is 1 for k = 0 and 0 otherwise, for |k| < n
  for (int k = -5; k <= 5; ++k) {
    const cplx m = kernels::mean([k](cplx z) { return std::pow(z, k); }, 256);
    CHECK(std::abs(m - (k == 0 ? 1.0 : 0.0)) < 1e-14);
  }
}

TEST_CASE("parallel Gram matches serial reference and is Hermitian") {
  std::mt19937_64 rng(11);
  std::vector<Poly> ps;
  for (int i = 0; i < 12; ++i) ps.push_back(testing::random_poly(rng, 5));
  const auto inner = [&](std::size_t j, std::size_t k) { return l2_inner(ps[k], ps[j]); };
  const Eigen::MatrixXcd a = kernels::gram(ps.size(), inner);
  const Eigen::MatrixXcd b = kernels::serial::gram(ps.size(), inner);
  CHECK((a - b).norm() == 0.0);
  CHECK((a - a.adjoint()).norm() < 1e-14);
}

TEST_CASE("FFT transform matches direct summation") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (std::size_t n : {8u, 64u, 512u})
    for (double offset : {0.0, 1.0}) {
      std::vector<cplx> s(n);
      for (auto& x : s) x = {g(rng), g(rng)};
      const auto a = kernels::dft(s, offset);
      const auto b = kernels::dft_direct(s, offset);
      double worst = 0.0;
      for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
      CHECK(worst < 1e-12);
    }
}

TEST_CASE("DFT recovers the coefficients of a sampled polynomial") {
  const Poly p{1.0, cplx(0.0, 2.0), -3.0};
  const auto c = kernels::dft(kernels::sample([&](cplx z) { return p(z); }, 64, 1.0), 1.0);
  CHECK(std::abs(c[0] - 1.0) < 1e-14);
  CHECK(std::abs(c[1] - cplx(0.0, 2.0)) < 1e-14);
  CHECK(std::abs(c[2] + 3.0) < 1e-14);
  CHECK(std::abs(c[63]) < 1e-14);
}
