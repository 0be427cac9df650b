#include <doctest.h>

#include <atomic>
#include <random>
#include <stdexcept>

#include "gevrey/fourier_core.hpp"
#include "gevrey/parallel.hpp"

using namespace gevrey;

TEST_CASE("parallel_for visits every index once") {
  set_worker_count(4);
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("parallel_for rethrows worker exceptions") {
  set_worker_count(3);
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) {
                    if (i == 37) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("pairwise sum is exact on small sets and order independent of workers") {
  std::vector<double> v(1000);
  std::mt19937_64 rng(61);
  std::normal_distribution<double> n;
  for (auto& x : v) x = n(rng);
  double a = pairwise_sum(v);
  double ref = 0;
  for (double x : v) ref += x;
  CHECK(a == doctest::Approx(ref));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{1, 2, 3}) == 6.0);
}

TEST_CASE("transforms are deterministic across worker counts") {
  CatalogPtr c = share(catalog_up_to(GroupSpec::su2(), 10));
  GroupGrid grid = build_grid(GroupSpec::su2(), 10);
  std::mt19937_64 rng(62);
  CoefficientField f = random_unit_field(c, rng);
  set_worker_count(1);
  auto s1 = synthesize_on_grid(grid, f);
  auto f1 = forward_transform(grid, s1, c);
  set_worker_count(5);
  auto s5 = synthesize_on_grid(grid, f);
  auto f5 = forward_transform(grid, s5, c);
  CHECK(s1 == s5);
  for (std::size_t r = 0; r < f1.size(); ++r) CHECK((f1[r].array() == f5[r].array()).all());
  set_worker_count(0);
  CHECK(worker_count() >= 1);
}
