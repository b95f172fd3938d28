#include <doctest.h>

#include "helpers.hpp"
#include "hblab/error.hpp"
#include "hblab/hb.hpp"

using namespace hblab;

namespace {

HbSpace half_one_plus_z(Backend backend = Backend::Float) {
  return make_space(Function::polynomial(Poly{0.5, 0.5}), {}, backend);
}
HbSpace half_z(Backend backend = Backend::Float) { return make_space(Function::polynomial(Poly{0.0, 0.5}), {}, backend); }

QPoly qpoly(std::initializer_list<long> c) {
  std::vector<QComplex> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(std::move(v));
}

}  // namespace

TEST_CASE("make_space examples") {
  CHECK(testing::max_diff(half_one_plus_z().A, Poly{0.5, -0.5}) < 1e-10);
  CHECK(testing::max_diff(half_z().A, Poly{testing::sqrt3 / 2.0}) < 1e-12);
  try {
    make_space(Function::polynomial(Poly{0.0, 1.0}));
    FAIL("expected ExtremeB");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ExtremeB);
  }
  CHECK_THROWS_AS(make_space(Function::polynomial(Poly{1.0, 1.0})), Error);
  const HbSpace s = half_one_plus_z();
  const auto zs = s.circle_zeros_of_a();
  REQUIRE(zs.size() == 1);
  CHECK(std::abs(zs[0] - 1.0) < 1e-8);
}

TEST_CASE("mate examples") {
  const HbSpace s = half_one_plus_z();
  const HbElement one = element(s, Poly{1.0});
  CHECK(testing::max_diff(one.f1, Poly{-1.0}) < 1e-12);
  CHECK(std::abs(one.norm_sq - 2.0) < 1e-12);

  const HbSpace t = half_z();
  const HbElement c = element(t, Poly{1.0});
  CHECK(c.f1.is_zero());
  CHECK(std::abs(c.norm_sq - 1.0) < 1e-15);
  const HbElement z = element(t, Poly{0.0, 1.0});
  CHECK(testing::max_diff(z.f1, Poly{-1.0 / testing::sqrt3}) < 1e-12);
  CHECK(std::abs(z.norm_sq - 4.0 / 3.0) < 1e-12);

  const HbElement zero = element(s, Poly{});
  CHECK(zero.norm_sq == 0.0);
  CHECK(zero.f1.is_zero());
}

TEST_CASE("norms of monomials and orthogonality") {
  const HbSpace s = half_one_plus_z();
  const HbElement one = element(s, Poly{1.0});
  for (int k = 0; k <= 8; ++k) {
    const HbElement zk = element(s, Poly::monomial(k));
    CHECK(std::abs(zk.norm_sq - (4.0 * k + 2.0)) < 1e-10);
    // mate(z^k): -2 below index k and -1 at index k
    for (int j = 0; j < k; ++j) CHECK(std::abs(zk.f1[j] + 2.0) < 1e-10);
    CHECK(std::abs(zk.f1[k] + 1.0) < 1e-10);
    const HbElement g = element(s, Poly{1.0, -1.0}.shifted(k));
    CHECK(std::abs(inner_product(one, g)) < 1e-12);
  }
  CHECK(std::abs(inner_product(one, one) - 2.0) < 1e-12);
}

TEST_CASE("exact backend norms") {
  const HbSpace s = half_one_plus_z(Backend::Exact);
  REQUIRE(s.exact.has_value());
  for (int k = 0; k <= 8; ++k) {
    const HbElement zk = element_exact(s, QPoly::monomial(k, QComplex(1)));
    REQUIRE(zk.exact_norm_sq.has_value());
    CHECK(*zk.exact_norm_sq == mpq_class(4 * k + 2));
  }
  const HbSpace t = half_z(Backend::Exact);
  const HbElement z = element_exact(t, qpoly({0, 1}));
  CHECK(*z.exact_norm_sq == mpq_class(4, 3));
  CHECK(mate_residual_is_zero(*t.exact, qpoly({0, 1}), *z.exact_g));
  CHECK_THROWS_AS(element_exact(half_z(), qpoly({1})), Error);
}

TEST_CASE("inner product rejects elements of different spaces") {
  const HbElement x = element(half_z(), Poly{1.0});
  const HbElement y = element(half_one_plus_z(), Poly{1.0});
  try {
    inner_product(x, y);
    FAIL("expected SpaceMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SpaceMismatch);
  }
}

TEST_CASE("property: mate residual vanishes and norms dominate the H2 norm") {
  std::mt19937_64 rng(301);
  const std::vector<HbSpace> spaces = {half_one_plus_z(), half_z(),
                                       make_space(Function::polynomial(Poly{0.0, 0.5, 0.5})),
                                       make_space(Function::rational(Poly{1.0}, Poly{2.0, 1.0}))};
  for (int t = 0; t < 200; ++t) {
    const HbSpace& s = spaces[static_cast<std::size_t>(t) % spaces.size()];
    const Poly f = testing::random_poly(rng, t % 17);
    const HbElement x = element(s, f);
    double scale = 1.0;
    for (const auto& c : f.coeffs()) scale = std::max(scale, std::abs(c));
    CHECK(mate_residual(s, f, x.f1) < 1e-10 * scale);
    CHECK(x.f1.degree() <= std::max(f.degree(), 0));
    CHECK(std::abs(x.norm_sq - l2_norm_sq(f) - l2_norm_sq(x.f1)) < 1e-12 * x.norm_sq);
    CHECK(x.norm_sq >= l2_norm_sq(f) - 1e-12 * x.norm_sq);
  }
}

TEST_CASE("property: exact mate residual is identically zero") {
  std::mt19937_64 rng(302);
  std::uniform_int_distribution<long> d(-9, 9);
  const HbSpace s = half_one_plus_z(Backend::Exact);
  for (int t = 0; t < 40; ++t) {
    std::vector<QComplex> c;
    for (int k = 0; k <= t % 9; ++k) c.emplace_back(mpq_class(d(rng)), mpq_class(d(rng)));
    const QPoly f(std::move(c));
    const QPoly g = mate_exact_scaled(*s.exact, f);
    CHECK(mate_residual_is_zero(*s.exact, f, g));
  }
}

TEST_CASE("kernels") {
  const HbSpace t = half_z();
  const Function k0 = kernel(t, 0.0);
  CHECK(std::abs(k0(0.4) - 1.0) < 1e-15);
  CHECK_THROWS_AS(kernel(t, 1.0), Error);

  const HbSpace s = half_one_plus_z();
  const cplx lam(0.37, 0.21);
  const HbElement k = element(s, kernel(s, lam));
  const cplx bl = s.b(lam);
  CHECK(std::abs(k.norm_sq - (1.0 - std::norm(bl)) / (1.0 - std::norm(lam))) < 1e-8);
}

TEST_CASE("boundary kernel at a point where |b| = 1") {
  const HbSpace s = half_one_plus_z();
  const Function k1 = boundary_kernel(s, 1.0);
  CHECK(std::abs(k1(0.3) - 0.5) < 1e-12);
  const HbElement kx = element(s, k1);
  for (int j = 0; j <= 2; ++j) {
    const HbElement f = element(s, Poly::monomial(j));
    CHECK(std::abs(inner_product(f, kx) - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(boundary_kernel(s, cplx(0.0, 1.0)), Error);
}

TEST_CASE("property: reproducing property") {
  std::mt19937_64 rng(303);
  const std::vector<HbSpace> spaces = {half_one_plus_z(), half_z(), make_space(Function::polynomial(Poly{0.0, 0.5, 0.5}))};
  for (int t = 0; t < 30; ++t) {
    const HbSpace& s = spaces[static_cast<std::size_t>(t) % spaces.size()];
    const Poly f = testing::random_poly(rng, t % 9);
    const cplx lam = testing::random_disk(rng, 0.8);
    const HbElement x = element(s, f);
    const HbElement k = element(s, kernel(s, lam));
    CHECK(std::abs(inner_product(x, k) - f(lam)) < 1e-8 * std::max(1.0, std::abs(f(lam))));
  }
}

TEST_CASE("Gram matrix is Hermitian positive semidefinite") {
  std::mt19937_64 rng(304);
  const HbSpace s = half_one_plus_z();
  std::vector<HbElement> xs;
  for (int k = 0; k < 8; ++k) xs.push_back(element(s, testing::random_poly(rng, 4)));
  const Eigen::MatrixXcd g = gram(xs);
  CHECK((g - g.adjoint()).norm() < 1e-12 * g.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
  CHECK(es.eigenvalues().minCoeff() > -1e-10 * g.norm());
  CHECK(std::abs(g(0, 1) - inner_product(xs[1], xs[0])) < 1e-14);
}

TEST_CASE("divide_inner examples") {
  const HbSpace t = half_z();
  const HbElement a = divide_inner(t, element(t, Poly{0.0, 1.0, 1.0}));
  CHECK(testing::max_diff(a.f, Poly{1.0, 1.0}) < 1e-12);
  CHECK(std::isfinite(a.norm_sq));
  const HbSpace s = half_one_plus_z();
  const HbElement b = divide_inner(s, element(s, Poly{0.0, 1.0}));
  CHECK(testing::max_diff(b.f, Poly{1.0}) < 1e-12);
  CHECK(std::abs(b.norm_sq - 2.0) < 1e-12);
  const HbElement c = divide_inner(s, element(s, Poly{1.0, 1.0}));
  CHECK(testing::max_diff(c.f, Poly{1.0, 1.0}) < 1e-12);
  CHECK_THROWS_AS(divide_inner(s, element(s, Poly{})), Error);
}
