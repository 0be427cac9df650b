#include <doctest.h>

#include <random>

#include "gevrey/errors.hpp"
#include "gevrey/fourier_core.hpp"

using namespace gevrey;

namespace {

std::vector<cd> sample(const GroupGrid& grid, const RepIndex& rep, int i, int j) {
  std::vector<cd> f(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) f[n] = evaluate_rep(grid.group, rep, grid.nodes[n])(i, j);
  return f;
}

}  // namespace

TEST_CASE("transform of constants and matrix coefficients") {
  for (auto g : {GroupSpec::torus(1), GroupSpec::torus(2), GroupSpec::su2(), GroupSpec::so3()}) {
    GroupGrid grid = build_grid(g, 4);
    CatalogPtr cat = share(catalog_for_band(g, 4));
    std::vector<cd> one(grid.size(), 1.0);
    CoefficientField f = forward_transform(grid, one, cat);
    for (std::size_t r = 0; r < f.size(); ++r) {
      double expect = (*cat)[r].trivial() ? 1.0 : 0.0;
      CHECK(std::abs(f[r].sum() - expect) < 1e-11);
    }
  }
  GroupGrid grid = build_grid(GroupSpec::su2(), 4);
  CatalogPtr cat = share(catalog_for_band(GroupSpec::su2(), 4));
  CoefficientField f = forward_transform(grid, sample(grid, RepIndex{{3}}, 1, 2), cat);
  for (std::size_t r = 0; r < f.size(); ++r) {
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(f[r].rows(), f[r].cols());
    if ((*cat)[r].index.label[0] == 3) expect(2, 1) = 0.25;
    CHECK((f[r] - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
  GroupGrid t = build_grid(GroupSpec::torus(1), 5);
  CatalogPtr tc = share(catalog_for_band(GroupSpec::torus(1), 5));
  CoefficientField e3 = forward_transform(t, sample(t, RepIndex{{3}}, 0, 0), tc);
  CHECK(std::abs(e3.at(RepIndex{{3}})(0, 0) - 1.0) < 1e-13);
  CHECK(plancherel_norm(e3) == doctest::Approx(1.0));
}

TEST_CASE("inverse transform examples") {
  CatalogPtr cat = share(catalog_up_to(GroupSpec::su2(), 5));
  GroupElement e = identity_element(GroupSpec::su2());
  double sum_d2 = 0;
  for (const auto& r : *cat) sum_d2 += r.dim * r.dim;
  cd v = inverse_transform(delta_field(cat), std::span<const GroupElement>(&e, 1))[0];
  CHECK(std::abs(v - sum_d2) < 1e-11);
  CoefficientField f(cat);
  f.at(RepIndex{{1}})(0, 0) = 1.0;
  GroupElement x{{0.4, 1.2, 2.5}};
  cd fx = inverse_transform(f, std::span<const GroupElement>(&x, 1))[0];
  CHECK(std::abs(fx - 2.0 * evaluate_rep(GroupSpec::su2(), RepIndex{{1}}, x)(0, 0)) < 1e-13);
}

TEST_CASE("grid synthesis matches pointwise inverse") {
  std::mt19937_64 rng(11);
  for (auto g : {GroupSpec::torus(2), GroupSpec::su2(), GroupSpec::so3()}) {
    GroupGrid grid = build_grid(g, 5);
    CatalogPtr cat = share(catalog_for_band(g, 5));
    CoefficientField f = random_unit_field(cat, rng);
    auto a = synthesize_on_grid(grid, f);
    auto b = inverse_transform(f, grid.nodes);
    double err = 0;
    for (std::size_t i = 0; i < a.size(); ++i) err = std::max(err, std::abs(a[i] - b[i]));
    CHECK(err < 1e-12);
    CoefficientField back = forward_transform(grid, a, cat);
    CHECK(plancherel_norm(back + cd(-1) * f) < 1e-12);
  }
}

TEST_CASE("plancherel norm of a matrix coefficient") {
  GroupGrid grid = build_grid(GroupSpec::su2(), 2);
  CatalogPtr cat = share(catalog_for_band(GroupSpec::su2(), 2));
  auto f = sample(grid, RepIndex{{1}}, 0, 0);
  CoefficientField fh = forward_transform(grid, f, cat);
  CHECK(plancherel_norm(fh) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(plancherel_norm(CoefficientField(cat)) == 0.0);
}

TEST_CASE("lp norms of coefficient fields") {
  std::mt19937_64 rng(12);
  CatalogPtr cat = share(catalog_up_to(GroupSpec::so3(), 6));
  CoefficientField f = random_unit_field(cat, rng);
  CHECK(lp_norm(f, 2) == doctest::Approx(plancherel_norm(f)));
  CHECK(lp_norm(delta_field(cat), INFINITY) == doctest::Approx(1.0));
  CoefficientField one(cat);
  one[cat->trivial_position()](0, 0) = 1.0;
  CHECK(lp_norm(one, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(lp_norm(f, 0.5), DomainError);
}

TEST_CASE("matrix norms") {
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(3, 3);
  CHECK(matrix_lp_norm(id, 1) == doctest::Approx(3.0));
  CHECK(matrix_lp_norm(id, INFINITY) == doctest::Approx(1.0));
  CHECK(matrix_lp_norm(id, 2) == doctest::Approx(std::sqrt(3.0)));
  Eigen::VectorXcd u = Eigen::VectorXcd::Random(4), v = Eigen::VectorXcd::Random(4);
  Eigen::MatrixXcd r1 = u * v.adjoint();
  CHECK(operator_norm(r1) == doctest::Approx(hs_norm(r1)));
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n;
  for (int t = 0; t < 100; ++t) {
    Eigen::MatrixXcd a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = cd(n(rng), n(rng));
    CHECK(matrix_lp_norm(a, 1) <= 4.0 * matrix_lp_norm(a, 2) * (1 + 1e-12));
    CHECK(matrix_lp_norm(a, 2) <= 4.0 * matrix_lp_norm(a, 1) * (1 + 1e-12));
    auto r = matrix_norm_inequality(a, 1, 2);
    CHECK(r.rhs_low == doctest::Approx(4.0 * matrix_lp_norm(a, 2)));
  }
}

TEST_CASE("hausdorff young on constants and single entries") {
  GroupGrid grid = build_grid(GroupSpec::su2(), 4);
  CatalogPtr cat = share(catalog_for_band(GroupSpec::su2(), 4));
  std::vector<cd> one(grid.size(), 1.0);
  auto gap = hausdorff_young_gap(grid, one, forward_transform(grid, one, cat));
  CHECK(gap.coeff_linf == doctest::Approx(1.0));
  CHECK(gap.func_l1 == doctest::Approx(1.0));
  CHECK(gap.inverse_sup == doctest::Approx(1.0));
  CHECK(gap.coeff_l1 == doctest::Approx(1.0));
  CoefficientField s(cat);
  s.at(RepIndex{{2}})(0, 1) = 1.0;
  auto samples = synthesize_on_grid(grid, s);
  auto g2 = hausdorff_young_gap(grid, samples, s);
  CHECK(g2.inverse_sup <= g2.coeff_l1 * (1 + 1e-12));
  CHECK(g2.coeff_linf <= g2.func_l1 * (1 + 1e-12));
}

TEST_CASE("fields on different catalogs do not mix") {
  CatalogPtr a = share(catalog_up_to(GroupSpec::su2(), 4)), b = share(catalog_up_to(GroupSpec::su2(), 5));
  CoefficientField f(a), g(b);
  CHECK_THROWS_AS(f += g, ContractViolation);
  CHECK_THROWS_AS(inner_product(f, g), ContractViolation);
  GroupGrid grid = build_grid(GroupSpec::su2(), 3);
  std::vector<cd> samples(grid.size(), 1.0);
  CHECK_THROWS_AS(forward_transform(grid, samples, b), ContractViolation);
}
