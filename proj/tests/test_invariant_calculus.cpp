#include <doctest.h>

#include <random>

#include "gevrey/errors.hpp"
#include "gevrey/invariant_calculus.hpp"

using namespace gevrey;

namespace {

Eigen::Matrix2cd pauli(int j) {
  Eigen::Matrix2cd p;
  if (j == 1) p << 0, 1, 1, 0;
  if (j == 2) p << 0, cd(0, -1), cd(0, 1), 0;
  if (j == 3) p << 1, 0, 0, -1;
  return p;
}

cd at(const CoefficientField& f, const GroupElement& x) {
  return inverse_transform(f, std::span<const GroupElement>(&x, 1))[0];
}

}  // namespace

TEST_CASE("finite difference casimir matches the catalog eigenvalue") {
  const double h = 1e-4;
  for (auto g : {GroupSpec::su2(), GroupSpec::so3()}) {
    auto cat = catalog_up_to(g, 6);
    for (const auto& r : cat) {
      Eigen::MatrixXcd lap = Eigen::MatrixXcd::Zero(r.dim, r.dim);
      Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(r.dim, r.dim);
      for (int j = 1; j <= 3; ++j)
        lap += (evaluate_rep(g, r.index, one_parameter(g, j, h)) - 2 * id +
                evaluate_rep(g, r.index, one_parameter(g, j, -h))) / (h * h);
      CHECK((lap + r.lambda_sq * id).norm() / std::max(1.0, r.lambda_sq) < 1e-6);
    }
  }
}

TEST_CASE("symbols are derivatives along one-parameter subgroups") {
  std::mt19937_64 rng(21);
  const double h = 1e-4;
  for (auto g : {GroupSpec::torus(2), GroupSpec::su2(), GroupSpec::so3()}) {
    CatalogPtr cat = share(catalog_for_band(g, 4));
    CoefficientField f = random_unit_field(cat, rng);
    std::uniform_real_distribution<double> u(0.2, 2.8);
    for (int trial = 0; trial < 5; ++trial) {
      GroupElement x = identity_element(g);
      for (auto& c : x.coords) c = u(rng);
      for (int j = 1; j <= g.dim(); ++j) {
        cd fd = (at(f, compose(g, x, one_parameter(g, j, h))) - at(f, compose(g, x, one_parameter(g, j, -h)))) / (2 * h);
        cd exact = at(apply_symbol(vector_field_symbol(j, cat), f), x);
        CHECK(std::abs(fd - exact) < 1e-6);
      }
    }
  }
}

TEST_CASE("defining rep symbols and torus symbols") {
  CatalogPtr cat = share(catalog_up_to(GroupSpec::su2(), 3));
  for (int j = 1; j <= 3; ++j) {
    Eigen::MatrixXcd s = vector_field_symbol(j, cat).at(RepIndex{{1}});
    CHECK((s - cd(0, 0.5) * pauli(j)).cwiseAbs().maxCoeff() < 1e-15);
  }
  CatalogPtr t = share(enumerate_dual(GroupSpec::torus(2), 4));
  CHECK(vector_field_symbol(1, t).at(RepIndex{{3, -1}})(0, 0) == cd(0, 3));
  CHECK(vector_field_symbol(2, t).at(RepIndex{{3, -1}})(0, 0) == cd(0, -1));
  CHECK_THROWS_AS(vector_field_symbol(4, cat), ContractViolation);
}

TEST_CASE("casimir identity per rep") {
  for (auto g : {GroupSpec::su2(), GroupSpec::so3(), GroupSpec::torus(3)}) {
    CatalogPtr cat = share(enumerate_dual(g, 12));
    std::vector<Symbol> x;
    for (int j = 1; j <= g.dim(); ++j) x.push_back(vector_field_symbol(j, cat));
    for (std::size_t r = 0; r < cat->size(); ++r) {
      Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(x[0][r].rows(), x[0][r].cols());
      for (const auto& xj : x) s += xj[r] * xj[r];
      s += (*cat)[r].lambda_sq * Eigen::MatrixXcd::Identity(s.rows(), s.cols());
      CHECK(s.norm() < 1e-10 * std::max(1.0, (*cat)[r].lambda_sq));
    }
  }
}

TEST_CASE("commutator of the first two fields") {
  CatalogPtr cat = share(catalog_up_to(GroupSpec::su2(), 6));
  Symbol a = alpha_symbol(MultiIndex{{1, 2}}, cat), b = alpha_symbol(MultiIndex{{2, 1}}, cat);
  Symbol x3 = vector_field_symbol(3, cat);
  for (std::size_t r = 0; r < cat->size(); ++r) CHECK((a[r] - b[r] + x3[r]).norm() < 1e-12);
  Symbol e = alpha_symbol(MultiIndex{}, cat);
  for (std::size_t r = 0; r < cat->size(); ++r) CHECK(e[r].isIdentity());
}

TEST_CASE("alpha symbol norm bound") {
  CatalogPtr cat = share(catalog_up_to(GroupSpec::so3(), 10));
  SymbolConstants c = symbol_constants(cat);
  for (int order = 1; order <= 3; ++order)
    for (const auto& w : all_words(3, order)) {
      Symbol s = alpha_symbol(w, cat);
      for (std::size_t r = 0; r < cat->size(); ++r)
        CHECK(operator_norm(s[r]) <= std::pow(c.C0 * (*cat)[r].bracket, order) * (1 + 1e-12));
    }
}

TEST_CASE("factorization through powers of the laplacian") {
  std::mt19937_64 rng(22);
  CatalogPtr cat = share(catalog_up_to(GroupSpec::su2(), 8));
  CoefficientField f = random_unit_field(cat, rng);
  f[cat->trivial_position()].setZero();
  for (int order = 0; order <= 3; ++order)
    for (const auto& w : canonical_words(3, order)) {
      int k = order / 2 + 1;
      Symbol p = p_alpha_symbol(w, k, cat);
      CHECK(p[cat->trivial_position()].norm() == 0);
      CoefficientField lhs = apply_symbol(p, laplacian_power_apply(f, k));
      CoefficientField rhs = apply_symbol(alpha_symbol(w, cat), f);
      CHECK(plancherel_norm(lhs + cd(-1) * rhs) < 1e-10 * std::max(1.0, plancherel_norm(rhs)));
    }
  CHECK_THROWS_AS(p_alpha_symbol(MultiIndex{{1, 2}}, 1, cat), DomainError);
}

TEST_CASE("laplacian powers") {
  CatalogPtr cat = share(catalog_up_to(GroupSpec::su2(), 4));
  CoefficientField f(cat);
  f.at(RepIndex{{2}})(1, 0) = 1.0;
  f[cat->trivial_position()](0, 0) = 1.0;
  CoefficientField g = laplacian_power_apply(f, 2);
  CHECK(g.at(RepIndex{{2}})(1, 0).real() == doctest::Approx(4.0));
  CHECK(std::abs(g[cat->trivial_position()](0, 0)) == 0.0);
  CoefficientField h = laplacian_power_apply(f, 0);
  CHECK(plancherel_norm(h + cd(-1) * f) == 0.0);
}

TEST_CASE("sobolev norms") {
  CatalogPtr t = share(enumerate_dual(GroupSpec::torus(1), 10));
  CoefficientField e(t);
  e.at(RepIndex{{3}})(0, 0) = 1.0;
  CHECK(sobolev_norm(e, 1) == doctest::Approx(std::sqrt(10.0)));
  CHECK(sobolev_norm(e, 0) == doctest::Approx(plancherel_norm(e)));
  CatalogPtr s = share(enumerate_dual(GroupSpec::su2(), 40));
  double series = series_convergence_probe(*s, 2).back();
  CHECK(sobolev_norm(delta_field(s), -2) == doctest::Approx(std::sqrt(series)).epsilon(1e-12));
}

TEST_CASE("derivative profiles") {
  CatalogPtr t = share(enumerate_dual(GroupSpec::torus(1), 10));
  CoefficientField e(t);
  e.at(RepIndex{{3}})(0, 0) = 1.0;
  auto prof = derivative_l2_profile(e, 2);
  REQUIRE(prof.size() == 3);
  CHECK(prof[0].second == doctest::Approx(1.0));
  CHECK(prof[2].second == doctest::Approx(9.0));

  std::mt19937_64 rng(23);
  CatalogPtr cat = share(catalog_up_to(GroupSpec::su2(), 6));
  CoefficientField f = random_unit_field(cat, rng);
  double first = 0;
  for (const auto& [w, v] : derivative_l2_profile(f, 1))
    if (w.order() == 1) first += v * v;
  CHECK(first == doctest::Approx(std::real(inner_product(laplacian_power_apply(f, 1), f))).epsilon(1e-9));
  double second = 0;
  for (const auto& w : all_words(3, 2)) second += std::pow(plancherel_norm(apply_symbol(alpha_symbol(w, cat), f)), 2);
  CHECK(second == doctest::Approx(std::real(inner_product(laplacian_power_apply(f, 2), f))).epsilon(1e-9));
  CHECK(linf_bound(f) == doctest::Approx(lp_norm(f, 1)));
}
