#include <doctest.h>

#include <cmath>
#include <random>

#include "gevrey/errors.hpp"
#include "gevrey/ultra_dual.hpp"

using namespace gevrey;

namespace {

UltraSequence growth(const CatalogPtr& c, double power) {
  return synthesize_profile(c, [power](const RepInfo& r) { return std::pow(r.bracket, power); }, Profile::Diagonal, 0);
}

}  // namespace

TEST_CASE("delta is a distribution of every order") {
  for (auto g : {GroupSpec::torus(1), GroupSpec::su2(), GroupSpec::so3()}) {
    CatalogPtr c = share(enumerate_dual(g, 40));
    for (double s : {1.0, 1.5, 2.0, 4.0}) CHECK(ultra_membership_test(delta_field(c), s, Mode::Roumieu).pass);
  }
  CatalogPtr c = share(enumerate_dual(GroupSpec::su2(), 40));
  CHECK_THROWS_AS(ultra_membership_test(delta_field(c), 0.5, Mode::Roumieu), DomainError);
}

TEST_CASE("growth sequences") {
  CatalogPtr c = share(catalog_up_to(GroupSpec::su2(), 60));
  UltraSequence half = growth(c, 0.5);
  CHECK(ultra_membership_test(half, 2, Mode::Beurling).pass);
  GevreyVerdict r = ultra_membership_test(half, 2, Mode::Roumieu);
  CHECK_FALSE(r.pass);
  CHECK(r.witness);
  UltraSequence lin = growth(c, 1.0);
  CHECK_FALSE(ultra_membership_test(lin, 2, Mode::Beurling).pass);
  CHECK_FALSE(ultra_membership_test(lin, 2, Mode::Roumieu).pass);
}

TEST_CASE("dual series partial sums") {
  CatalogPtr c = share(enumerate_dual(GroupSpec::su2(), 200));
  for (double B : {0.5, 1.0}) CHECK(alpha_dual_series_check(delta_field(c), 1.0, B).converged);
  UltraSequence exact = growth(c, 1.0);
  auto sums = alpha_dual_series_probe(exact, 1.0, 1.0);
  for (std::size_t i = 1; i < sums.size(); ++i) CHECK(sums[i] - sums[i - 1] >= 1.0 - 1e-12);
  CHECK_FALSE(alpha_dual_series_check(exact, 1.0, 1.0).converged);
  CHECK(alpha_dual_series_probe(UltraSequence(c), 2, 1).back() == 0.0);
}

TEST_CASE("pairing") {
  std::mt19937_64 rng(31);
  CatalogPtr c = share(catalog_up_to(GroupSpec::so3(), 16));
  CoefficientField phi = random_unit_field(c, rng, 8);
  GroupElement e = identity_element(GroupSpec::so3());
  cd at_e = inverse_transform(phi, std::span<const GroupElement>(&e, 1))[0];
  CHECK(std::abs(pair(delta_field(c), phi) - at_e) < 1e-9);

  UltraSequence v = random_unit_field(c, rng);
  CoefficientField psi = random_unit_field(c, rng, 8);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 100; ++t) {
    cd a(u(rng), u(rng)), b(u(rng), u(rng));
    cd lhs = pair(v, a * phi + b * psi), rhs = a * pair(v, phi) + b * pair(v, psi);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
  // A matrix unit scaled by 1/d picks out one entry of v.
  std::size_t pos = c->position(RepIndex{{2}});
  CoefficientField unit(c);
  unit[pos](1, 3) = 1.0 / 5;
  CHECK(std::abs(pair(v, unit) - v[pos](3, 1)) < 1e-14);
}

TEST_CASE("ill paired sums are refused") {
  CatalogPtr c = share(enumerate_dual(GroupSpec::torus(1), 2000));
  UltraSequence v = growth(c, 1.0);
  CoefficientField phi = synthesize_gevrey(c, 2, 1);
  try {
    pair(v, phi);
    FAIL("expected an ill-paired error");
  } catch (const IllPairedError& e) {
    CHECK(e.tail_fraction() > kCauchyTolerance);
  }
}

TEST_CASE("continuity modulus") {
  CatalogPtr c = share(enumerate_dual(GroupSpec::su2(), 60));
  std::vector<double> eps = {0.1, 0.5, 1.0, 2.0};
  ContinuityReport d = continuity_modulus(delta_field(c), 2, eps);
  REQUIRE(d.curve.size() == eps.size());
  for (const auto& p : d.curve) {
    CHECK(p.finite);
    CHECK(p.C <= 1.0 + 1e-12);
  }
  ContinuityReport d10 = continuity_modulus(cd(10) * delta_field(c), 2, eps);
  for (std::size_t i = 0; i < eps.size(); ++i) CHECK(d10.curve[i].C == doctest::Approx(10 * d.curve[i].C));

  // Against e^{<xi>^{1/2}} the seminorms only win once 2 sqrt(eps) >= 1.
  CatalogPtr big = share(enumerate_dual(GroupSpec::torus(1), 2000));
  ContinuityReport h = continuity_modulus(growth(big, 0.5), 2, {0.05, 0.1, 0.5, 4.0, 16.0});
  CHECK_FALSE(h.curve[0].finite);
  CHECK_FALSE(h.curve[1].finite);
  for (std::size_t i = 2; i < h.curve.size(); ++i) CHECK(h.curve[i].finite);
  CHECK_THROWS_AS(continuity_modulus(delta_field(c), 0.9, eps), DomainError);
}

TEST_CASE("perfectness round trip") {
  CatalogPtr c = share(enumerate_dual(GroupSpec::torus(1), 3000));
  PerfectnessReport r = perfectness_roundtrip(synthesize_gevrey(c, 2, 1), 2, Mode::Roumieu);
  CHECK(r.pass);
  CHECK(r.resynthesis_error < 1e-10);
  CoefficientField b = synthesize_gevrey(c, 1, 1);
  PerfectnessReport rb = perfectness_roundtrip(b, 2, Mode::Beurling, {0.25, 0.5, 1, 2, 4});
  for (const auto& [bp, chk] : rb.series) CHECK(chk.converged);
  CHECK(rb.pass);
  PerfectnessReport z = perfectness_roundtrip(CoefficientField(c), 2, Mode::Roumieu);
  CHECK(z.pass);
}
