#include <doctest.h>

#include <sstream>

#include "helpers.hpp"
#include "hblab/clark.hpp"
#include "hblab/error.hpp"

using namespace hblab;
using testing::circle_average;

namespace {

HbSpace space_of(Poly p) { return make_space(Function::polynomial(std::move(p))); }

// Integral of h conj(g) against mu: independent midpoint rule plus atoms.
cplx l2_mu(const ClarkMeasure& mu, const Poly& h, const Poly& g) {
  cplx s = circle_average([&](cplx z) { return h(z) * std::conj(g(z)) * mu.density(z); }, 1 << 15);
  for (const auto& a : mu.atoms) s += a.mass * h(a.point) * std::conj(g(a.point));
  return s;
}

}  // namespace

TEST_CASE("Clark measure with an atom and a.c. part") {
  const HbSpace s = space_of(Poly{0.0, 0.5, 0.5});
  const ClarkMeasure mu = clark_measure(s, 1.0);
  REQUIRE(mu.atoms.size() == 1);
  CHECK(std::abs(mu.atoms[0].point - 1.0) < 1e-8);
  CHECK(std::abs(mu.atoms[0].mass - 2.0 / 3.0) < 1e-6);
  // independent oracle: density 1/|2+z|^2 integrated by the midpoint rule
  const double ac = circle_average([](cplx z) { return cplx(1.0 / std::norm(2.0 + z)); }).real();
  CHECK(std::abs(ac - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(mu.ac_mass - ac) < 1e-6);
  CHECK(std::abs(mu.total_mass - 1.0) < 1e-12);
  CHECK(mu.mass_defect() < 1e-6);
  for (double th : {0.3, 2.0, -1.2}) {
    const cplx z = std::polar(1.0, th);
    CHECK(std::abs(mu.density(z) - 1.0 / std::norm(2.0 + z)) < 1e-10);
  }
}

TEST_CASE("Clark measure of (1+z)/2") {
  const HbSpace s = space_of(Poly{0.5, 0.5});
  const ClarkMeasure mu = clark_measure(s, 1.0);
  REQUIRE(mu.atoms.size() == 1);
  CHECK(std::abs(mu.atoms[0].mass - 2.0) < 1e-6);
  CHECK(std::abs(mu.density(std::polar(1.0, 0.7)) - 1.0) < 1e-10);
  CHECK(std::abs(mu.total_mass - 3.0) < 1e-12);
  CHECK(mu.mass_defect() < 1e-6 * 3.0);
}

TEST_CASE("Clark measure without atoms") {
  const HbSpace s = space_of(Poly{0.0, 0.5});
  const ClarkMeasure mu = clark_measure(s, 1.0);
  CHECK(mu.atoms.empty());
  CHECK(std::abs(mu.ac_mass - 1.0) < 1e-8);
  CHECK(std::abs(mu.density(-1.0) - 0.75 / 2.25) < 1e-12);
  CHECK_THROWS_AS(clark_measure(s, 0.5), Error);
}

TEST_CASE("radial atom mass matches a direct evaluation close to the circle") {
  const HbSpace s = space_of(Poly{0.0, 0.5, 0.5});
  const auto H = [&](cplx z) { return (1.0 + s.b(z)) / (1.0 - s.b(z)); };
  const RadialLimit m = radial_atom_mass(H, 1.0);
  const double r = 1.0 - 1e-7;
  const double direct = (1.0 - r) / (1.0 + r) * H(r).real();
  CHECK(std::abs(m.value - direct) < 1e-6);
  CHECK(m.error < 1e-6);
}

TEST_CASE("property: mass conservation over random alpha") {
  std::mt19937_64 rng(401);
  const std::vector<HbSpace> spaces = {space_of(Poly{0.5, 0.5}), space_of(Poly{0.0, 0.5}), space_of(Poly{0.0, 0.5, 0.5}),
                                       space_of(Poly{0.25, 0.25, 0.25, 0.25})};
  for (const auto& s : spaces)
    for (int t = 0; t < 16; ++t) {
      const cplx alpha = testing::random_unimodular(rng);
      const ClarkMeasure mu = clark_measure(s, alpha);
      const cplx b0 = s.b(0.0);
      const double total = ((1.0 + std::conj(alpha) * b0) / (1.0 - std::conj(alpha) * b0)).real();
      CHECK(std::abs(mu.total_mass - total) < 1e-12 * total);
      CHECK(mu.mass_defect() < 1e-6 * total);
      for (const auto& a : mu.atoms) {
        CHECK(a.mass > 0.0);
        CHECK(std::abs(s.b(a.point) - alpha) < 1e-8);
      }
    }
}

TEST_CASE("property: generic alpha gives no atoms when |b| < 1") {
  std::mt19937_64 rng(402);
  const HbSpace s = space_of(Poly{0.0, 0.5});
  for (int t = 0; t < 32; ++t) CHECK(clark_measure(s, testing::random_unimodular(rng)).atoms.empty());
}

TEST_CASE("alpha grid includes the values of b at circle zeros of a") {
  const HbSpace s = space_of(Poly{0.5, 0.5});
  const auto grid = alpha_grid(s);
  CHECK(grid.size() == 64);  // b(1) = 1 coincides with an equispaced point
  bool found = false;
  for (const auto& a : grid) {
    CHECK(std::abs(std::abs(a) - 1.0) < 1e-12);
    found = found || std::abs(a - 1.0) < 1e-8;
  }
  CHECK(found);
}

TEST_CASE("normalized Cauchy transform of the constant") {
  for (const auto& p : {Poly{0.0, 0.5}, Poly{0.0, 0.5, 0.5}}) {
    const HbSpace s = space_of(p);
    const ClarkMeasure mu = clark_measure(s, 1.0);
    for (cplx z : {cplx(0.0), cplx(0.5, 0.2), cplx(-0.7, -0.1)})
      CHECK(std::abs(normalized_cauchy(s, mu, [](cplx) { return cplx(1.0); }, z) - 1.0) < 1e-6);
    CHECK_THROWS_AS(normalized_cauchy(s, mu, [](cplx) { return cplx(1.0); }, 1.0), Error);
  }
}

TEST_CASE("normalized Cauchy transform maps Cauchy kernels to H(b) kernels") {
  const HbSpace s = space_of(Poly{0.0, 0.5});
  const ClarkMeasure mu = clark_measure(s, 1.0);
  const cplx lam = 0.4;
  const auto k = [&](cplx zeta) { return 1.0 / (1.0 - std::conj(lam) * zeta); };
  const Function kb = kernel(s, lam);
  const cplx factor = 1.0 - std::conj(s.b(lam));
  for (int j = 0; j < 16; ++j) {
    const cplx z = std::polar(0.9, 2.0 * std::numbers::pi * j / 16.0);
    CHECK(std::abs(factor * normalized_cauchy(s, mu, k, z) - kb(z)) < 1e-7);
  }
}

TEST_CASE("property: kernel identity at random lambda and alpha") {
  std::mt19937_64 rng(403);
  const HbSpace s = space_of(Poly{0.0, 0.5});
  for (int t = 0; t < 10; ++t) {
    const cplx lam = testing::random_disk(rng, 0.7);
    const cplx alpha = testing::random_unimodular(rng);
    const ClarkMeasure mu = clark_measure(s, alpha);
    const auto k = [&](cplx zeta) { return 1.0 / (1.0 - std::conj(lam) * zeta); };
    const Function kb = kernel(s, lam);
    const cplx factor = 1.0 - alpha * std::conj(s.b(lam));
    double worst = 0.0;
    for (int j = 0; j < 32; ++j) {
      const cplx z = std::polar(0.9, 2.0 * std::numbers::pi * j / 32.0);
      worst = std::max(worst, std::abs(factor * normalized_cauchy(s, mu, k, z) - kb(z)));
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("property: normalized Cauchy transform is unitary on polynomials") {
  for (const auto& p : {Poly{0.0, 0.5}, Poly{0.0, 0.5, 0.5}}) {
    const HbSpace s = space_of(p);
    const ClarkMeasure mu = clark_measure(s, 1.0);
    std::vector<HbElement> v;
    for (int j = 0; j <= 6; ++j) {
      const CauchyRefit r = normalized_cauchy_refit(s, mu, Poly::monomial(j));
      CHECK(r.residual < 1e-8);
      v.push_back(element(s, r.value));
    }
    for (int j = 0; j <= 6; ++j)
      for (int k = 0; k <= 6; ++k) {
        const cplx hb = inner_product(v[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(k)]);
        const cplx l2 = l2_mu(mu, Poly::monomial(j), Poly::monomial(k));
        CHECK(std::abs(hb - l2) < 1e-6);
      }
  }
}

TEST_CASE("refit agrees with pointwise evaluation") {
  const HbSpace s = space_of(Poly{0.0, 0.5, 0.5});
  const ClarkMeasure mu = clark_measure(s, 1.0);
  const Poly h{1.0, -2.0, 0.5};
  const CauchyRefit r = normalized_cauchy_refit(s, mu, h);
  for (cplx z : {cplx(0.1, 0.2), cplx(-0.5), cplx(0.0, 0.8)})
    CHECK(std::abs(r.value(z) - normalized_cauchy(s, mu, [&](cplx w) { return h(w); }, z)) < 1e-6);
}

TEST_CASE("boundary convergence at atoms") {
  const HbSpace s = space_of(Poly{0.0, 0.5, 0.5});
  const ClarkMeasure mu = clark_measure(s, 1.0);
  const auto one = poltoratski_limit(s, mu, Poly{1.0}, 1.0);
  CHECK(std::abs(one.value - 1.0) < 1e-6);
  const auto z = poltoratski_limit(s, mu, Poly{0.0, 1.0}, 1.0);
  CHECK(std::abs(z.value - 1.0) < 1e-3);
  const HbSpace t = space_of(Poly{0.5, 0.5});
  const ClarkMeasure nu = clark_measure(t, 1.0);
  CHECK(std::abs(poltoratski_limit(t, nu, Poly::monomial(2), 1.0).value - 1.0) < 1e-3);
  try {
    poltoratski_limit(s, mu, Poly{1.0}, -1.0);
    FAIL("expected NotAnAtom");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAnAtom);
  }
}

TEST_CASE("Clark CSV output") {
  const HbSpace s = space_of(Poly{0.0, 0.5, 0.5});
  std::ostringstream os;
  write_clark_csv(os, clark_measure(s, 1.0), 8);
  const std::string out = os.str();
  CHECK(out.rfind("alpha_angle,type,theta,value\n", 0) == 0);
  CHECK(out.find(",atom,") != std::string::npos);
  CHECK(out.find(",ac,") != std::string::npos);
}
