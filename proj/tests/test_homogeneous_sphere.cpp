#include <doctest.h>

#include <numbers>
#include <random>

#include "gevrey/errors.hpp"
#include "gevrey/homogeneous_sphere.hpp"
#include "oracles.hpp"

using namespace gevrey;

namespace {

struct Setup {
  GroupGrid grid;
  SphereGrid sphere;
  CatalogPtr cat;
  ClassIStructure st;
  explicit Setup(int band)
      : grid(build_grid(GroupSpec::so3(), band)),
        sphere(sphere_grid(grid)),
        cat(share(catalog_up_to(GroupSpec::so3(), band))),
        st(so3_class_one(cat)) {}

  CoefficientField transform(const std::function<cd(const SpherePoint&)>& f) const {
    std::vector<cd> v(sphere.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(sphere.point(i));
    return forward_transform(grid, lift(sphere, v, grid), cat);
  }
};

}  // namespace

TEST_CASE("class one structure") {
  CatalogPtr c = share(catalog_up_to(GroupSpec::so3(), 5));
  ClassIStructure st = so3_class_one(c);
  for (std::size_t r = 0; r < c->size(); ++r) {
    CHECK(st.k_per_rep[r] == 1);
    CHECK(st.invariant_index[r] == (*c)[r].index.label[0]);
  }
  CHECK_THROWS(so3_class_one(share(catalog_up_to(GroupSpec::su2(), 4))));
}

TEST_CASE("projection keeps the invariant row") {
  CatalogPtr c = share(catalog_up_to(GroupSpec::so3(), 5));
  ClassIStructure st = so3_class_one(c);
  CoefficientField p = project_class_one(delta_field(c), st);
  for (std::size_t r = 0; r < c->size(); ++r) {
    int l = (*c)[r].index.label[0];
    for (int i = 0; i < p[r].rows(); ++i)
      for (int j = 0; j < p[r].cols(); ++j) CHECK(p[r](i, j) == cd(i == l && j == l ? 1.0 : 0.0));
  }
  std::mt19937_64 rng(41);
  CoefficientField f = project_class_one(random_unit_field(c, rng), st);
  CoefficientField g = project_class_one(f, st);
  for (std::size_t r = 0; r < c->size(); ++r) CHECK((f[r].array() == g[r].array()).all());
}

TEST_CASE("lifted spherical harmonics stay in class one") {
  Setup s(8);
  for (int l = 0; l <= 8; ++l)
    for (int m = -l; m <= l; ++m) {
      CoefficientField fh = s.transform([&](const SpherePoint& p) { return oracle::ylm(l, m, p.beta, p.alpha); });
      auto leak = find_leakage(fh, s.st, 1e-10);
      CHECK_FALSE(leak);
      CoefficientField proj = project_class_one(fh, s.st);
      CHECK(plancherel_norm(proj + cd(-1) * fh) < 1e-10);
      for (std::size_t r = 0; r < fh.size(); ++r)
        if ((*s.cat)[r].index.label[0] != l) CHECK(fh.hs_norm(r) < 1e-10);
    }
}

TEST_CASE("constant sphere function lifts to a constant") {
  Setup s(4);
  std::vector<cd> one(s.sphere.size(), 2.0);
  for (cd v : lift(s.sphere, one, s.grid)) CHECK(v == cd(2.0));
  std::vector<cd> vals(s.sphere.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = oracle::ylm(3, 1, s.sphere.point(i).beta, s.sphere.point(i).alpha);
  auto lifted = lift(s.sphere, vals, s.grid);
  std::size_t ng = s.grid.axis2.size();
  for (std::size_t i = 0; i < lifted.size(); i += ng)
    for (std::size_t k = 1; k < ng; ++k) CHECK(lifted[i + k] == lifted[i]);
  CHECK_THROWS_AS(lift(s.sphere, std::vector<cd>(3), s.grid), ContractViolation);
}

TEST_CASE("sphere series reproduces harmonics and the group inverse") {
  Setup s(8);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<SpherePoint> pts;
  for (int i = 0; i < 50; ++i) pts.push_back({std::acos(1 - 2 * u(rng)), 2 * std::numbers::pi * u(rng)});
  CoefficientField y = project_class_one(
      s.transform([](const SpherePoint& p) { return oracle::ylm(2, 1, p.beta, p.alpha); }), s.st);
  auto vals = sphere_series(y, s.st, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(vals[i] - oracle::ylm(2, 1, pts[i].beta, pts[i].alpha)) < 1e-9);

  CoefficientField f = project_class_one(random_unit_field(s.cat, rng), s.st);
  auto a = sphere_series(f, s.st, pts);
  std::vector<GroupElement> reps;
  for (const auto& p : pts) reps.push_back(coset_representative(p));
  auto b = inverse_transform(f, reps);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);

  CoefficientField d = project_class_one(delta_field(s.cat), s.st);
  SpherePoint north{0, 0};
  double expect = 0;
  for (const auto& r : *s.cat) expect += r.dim;
  CHECK(std::abs(sphere_series(d, s.st, std::span<const SpherePoint>(&north, 1))[0] - expect) < 1e-10);
  CHECK_THROWS_AS(sphere_series(random_unit_field(s.cat, rng), s.st, pts), ContractViolation);
}

TEST_CASE("sphere verdicts") {
  CatalogPtr c = share(catalog_up_to(GroupSpec::so3(), 60));
  ClassIStructure st = so3_class_one(c);
  CoefficientField heat = project_class_one(synthesize_gevrey(c, 2, 1, Profile::Dense), st);
  GevreyVerdict v = sphere_gevrey_test(heat, st, 2, Mode::Roumieu);
  CHECK(v.pass);
  CHECK(v.pass == fourier_side_test(heat, 2, Mode::Roumieu).pass);
  CoefficientField bad = heat;
  bad.at(RepIndex{{3}})(0, 2) = 0.5;
  GevreyVerdict w = sphere_gevrey_test(bad, st, 2, Mode::Roumieu);
  CHECK_FALSE(w.pass);
  REQUIRE(w.witness);
  CHECK(w.witness->label == std::vector<int>{3});
  CHECK(w.note.find("(0,2)") != std::string::npos);
  UltraSequence delta = project_class_one(delta_field(c), st);
  for (double s : {1.0, 2.0, 3.0}) CHECK(sphere_ultra_test(delta, st, s, Mode::Roumieu).pass);
  CHECK_THROWS_AS(sphere_gevrey_test(heat, st, 0.5, Mode::Roumieu), DomainError);
}
