#include <doctest.h>

#include "helpers.hpp"
#include "hblab/error.hpp"
#include "hblab/factor.hpp"

using namespace hblab;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

double pythagorean_gap(const Function& a, const Function& b) {
  double worst = 0.0;
  for (int k = 0; k < 1024; ++k) {
    const cplx z = std::polar(1.0, (2.0 * k + 1.0) * std::numbers::pi / 1024.0);
    worst = std::max(worst, std::abs(std::norm(a(z)) + std::norm(b(z)) - 1.0));
  }
  return worst;
}

}  // namespace

TEST_CASE("fejer_riesz examples") {
  const Poly a = fejer_riesz(Laurent{-1, {-0.25, 0.5, -0.25}});
  CHECK(testing::max_diff(a, Poly{0.5, -0.5}) < 1e-10);
  const Poly c = fejer_riesz(Laurent{0, {0.75}});
  CHECK(testing::max_diff(c, Poly{testing::sqrt3 / 2.0}) < 1e-15);
  CHECK(testing::max_diff(fejer_riesz(Laurent{0, {1.0}}), Poly{1.0}) < 1e-15);
}

TEST_CASE("fejer_riesz errors") {
  // w = cos changes sign at simple circle roots
  CHECK(kind_of([] { fejer_riesz(Laurent{-1, {0.5, 0.0, 0.5}}); }) == ErrorKind::NegativeWeight);
  CHECK(kind_of([] { fejer_riesz(Laurent{0, {-1.0}}); }) == ErrorKind::NegativeWeight);
}

TEST_CASE("property: fejer_riesz output is outer, positive at 0 and reproduces w") {
  std::mt19937_64 rng(201);
  for (int t = 0; t < 40; ++t) {
    const Poly g = testing::random_poly(rng, 1 + t % 8);
    const Laurent w = abs2(g);
    const Poly a = fejer_riesz(w);
    CHECK(a[0].real() > 0.0);
    CHECK(std::abs(a[0].imag()) < 1e-12 * std::abs(a[0]));
    CHECK(is_outer(a));
    double worst = 0.0, scale = 0.0;
    for (int k = 0; k < 256; ++k) {
      const double th = 2.0 * std::numbers::pi * k / 256.0;
      const double wv = eval_on_circle(w, th).real();
      worst = std::max(worst, std::abs(std::norm(a(std::polar(1.0, th))) - wv));
      scale = std::max(scale, wv);
    }
    CHECK(worst < 1e-9 * scale);
  }
}

TEST_CASE("fejer_riesz halves even circle roots") {
  // w = |1 - z|^4 / 16 = ((2 - 2cos)/4)^2
  const Poly sq = Poly{0.5, -0.5} * Poly{0.5, -0.5};
  const Poly a = fejer_riesz(abs2(sq));
  CHECK(testing::max_diff(a, sq) < 1e-6);
}

TEST_CASE("exact spectral factor") {
  const QLaurent w{-1, {QComplex(mpq_class(-1, 4)), QComplex(mpq_class(1, 2)), QComplex(mpq_class(-1, 4))}};
  const auto f = fejer_riesz_exact(w);
  REQUIRE(f.has_value());
  CHECK(f->scale_sq == mpq_class(1, 4));
  CHECK(f->shape == QPoly{QComplex(1), QComplex(-1)});
  CHECK(is_identically_zero(w - f->scale_sq * abs2(f->shape)));
  const auto c = fejer_riesz_exact(QLaurent{0, {QComplex(mpq_class(3, 4))}});
  REQUIRE(c.has_value());
  CHECK(c->scale_sq == mpq_class(3, 4));
  CHECK(std::abs(c->to_float()[0] - testing::sqrt3 / 2.0) < 1e-15);
}

TEST_CASE("mate_of_b examples") {
  const auto m1 = mate_of_b(Function::polynomial(Poly{0.5, 0.5}));
  CHECK(testing::max_diff(m1.A, Poly{0.5, -0.5}) < 1e-10);
  const auto m2 = mate_of_b(Function::polynomial(Poly{0.0, 0.5, 0.5}));
  CHECK(testing::max_diff(m2.A, Poly{0.5, -0.5}) < 1e-10);
  const auto m3 = mate_of_b(Function::polynomial(Poly{0.0, 0.5}));
  CHECK(testing::max_diff(m3.A, Poly{testing::sqrt3 / 2.0}) < 1e-12);
  for (const auto* m : {&m1, &m2, &m3}) CHECK(m->pythagorean_error() < 1e-10);
}

TEST_CASE("mate_of_b for rational b") {
  const Function b = Function::rational(Poly{1.0}, Poly{2.0, 1.0});
  const auto m = mate_of_b(b);
  CHECK(m.pythagorean_error() < 1e-10);
  CHECK(pythagorean_gap(m.a, b) < 1e-10);
  CHECK(m.a(0.0).real() > 0.0);
  CHECK(is_outer(m.A));
}

TEST_CASE("mate_of_b errors") {
  CHECK(kind_of([] { mate_of_b(Function::polynomial(Poly{0.0, 1.0})); }) == ErrorKind::ExtremeB);
  CHECK(kind_of([] { mate_of_b(Function::blaschke({0.5})); }) == ErrorKind::ExtremeB);
  CHECK(kind_of([] { mate_of_b(Function::polynomial(Poly{0.5, 1.0})); }) == ErrorKind::NotContractive);
  CHECK(kind_of([] { mate_of_b(Function::constant(0.5)); }) == ErrorKind::ConstantB);
}

TEST_CASE("property: mates satisfy the Pythagorean identity") {
  std::mt19937_64 rng(202);
  for (int t = 0; t < 25; ++t) {
    Poly p = testing::random_poly(rng, 1 + t % 6);
    double sup = 0.0;
    for (int k = 0; k < 4096; ++k) sup = std::max(sup, std::abs(p(std::polar(1.0, 2.0 * std::numbers::pi * k / 4096.0))));
    p = p * cplx(0.9 / sup);
    const Function b = Function::polynomial(p);
    const auto m = mate_of_b(b);
    CHECK(pythagorean_gap(m.a, b) < 1e-10);
    CHECK(m.A[0].real() > 0.0);
    CHECK(is_outer(m.A));
  }
}

TEST_CASE("is_outer") {
  CHECK(is_outer(Poly{1.0, 1.0}));
  CHECK_FALSE(is_outer(Poly{0.0, 1.0}));
  CHECK(is_outer(Poly{1.0, -1.0} * Poly{2.0, 1.0}));
  CHECK(is_outer(Poly{3.0}));
  CHECK(kind_of([] { is_outer(Poly{}); }) == ErrorKind::ZeroPolynomial);
}

TEST_CASE("inner_outer examples") {
  const auto a = inner_outer(Poly{0.0, 1.0, 1.0});
  CHECK(std::abs(a.inner(0.3) - 0.3) < 1e-12);
  CHECK(testing::max_diff(a.outer, Poly{1.0, 1.0}) < 1e-12);
  const auto b = inner_outer(Poly{1.0, 1.0});
  CHECK(std::abs(b.inner(0.3) - 1.0) < 1e-12);
  CHECK(testing::max_diff(b.outer, Poly{1.0, 1.0}) < 1e-12);
  // f = (z - 1/2)(1 - z): inner factor (z - 1/2)/(1 - z/2) up to a unimodular phase
  const Poly f = Poly{-0.5, 1.0} * Poly{1.0, -1.0};
  const auto c = inner_outer(f);
  for (cplx z : {cplx(0.2, 0.1), cplx(-0.4, 0.3)}) {
    const cplx ref = (z - 0.5) / (1.0 - 0.5 * z);
    CHECK(std::abs(std::abs(c.inner(z)) - std::abs(ref)) < 1e-12);
  }
  CHECK(std::abs(c.inner(0.5)) < 1e-12);
  CHECK(c.outer[0].real() > 0.0);
  CHECK(kind_of([] { inner_outer(Poly{}); }) == ErrorKind::ZeroPolynomial);
}

TEST_CASE("property: inner_outer splits moduli") {
  std::mt19937_64 rng(203);
  for (int t = 0; t < 30; ++t) {
    const Poly f = testing::random_poly(rng, 1 + t % 8);
    const auto io = inner_outer(f);
    CHECK(is_outer(io.outer));
    for (int k = 0; k < 128; ++k) {
      const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / 128.0);
      CHECK(std::abs(std::abs(io.inner(z)) - 1.0) < 1e-10);
      CHECK(std::abs(std::abs(io.outer(z)) - std::abs(f(z))) < 1e-9 * std::max(1.0, std::abs(f(z))));
      CHECK(std::abs(io.inner(z) * io.outer(z) - f(z)) < 1e-9 * std::max(1.0, std::abs(f(z))));
    }
  }
}

TEST_CASE("defect weight of a rational b") {
  const Laurent w = defect_weight(Poly{1.0}, Poly{2.0, 1.0});
  // |2 + z|^2 - 1 = 4 + 2z + 2/z on the circle
  CHECK(std::abs(w[0] - 4.0) < 1e-15);
  CHECK(std::abs(w[1] - 2.0) < 1e-15);
  CHECK(std::abs(w[-1] - 2.0) < 1e-15);
}
