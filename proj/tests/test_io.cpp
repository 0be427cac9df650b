#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include "gevrey/errors.hpp"
#include "gevrey/io.hpp"

using namespace gevrey;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("gevreykit_" + name)).string();
}

}  // namespace

TEST_CASE("field stream round trip") {
  std::mt19937_64 rng(51);
  for (auto g : {GroupSpec::torus(2), GroupSpec::su2(), GroupSpec::so3()}) {
    CatalogPtr c = share(enumerate_dual(g, 6));
    CoefficientField f = random_unit_field(c, rng, 2);
    std::stringstream ss;
    write_field_jsonl(ss, f);
    CoefficientField back = read_field_jsonl(ss);
    REQUIRE(back.catalog().same_as(f.catalog()));
    for (std::size_t r = 0; r < f.size(); ++r) CHECK((back[r].array() == f[r].array()).all());
  }
}

TEST_CASE("headerless field streams need a group") {
  CatalogPtr c = share(enumerate_dual(GroupSpec::su2(), 4));
  std::stringstream ss;
  write_field_jsonl(ss, delta_field(c), false);
  std::string text = ss.str();
  std::istringstream a(text);
  CHECK_THROWS_AS(read_field_jsonl(a), DataError);
  std::istringstream b(text);
  CoefficientField f = read_field_jsonl(b, GroupSpec::su2(), 4.0);
  CHECK(f.catalog().same_as(*c));
  std::istringstream bad("{\"group\":\"su2\",\"cutoff\":4}\nnot json\n");
  CHECK_THROWS_AS(read_field_jsonl(bad), DataError);
  std::istringstream wrong("{\"group\":\"su2\",\"cutoff\":4}\n{\"label\":[2],\"matrix\":[[[1,0]]]}\n");
  CHECK_THROWS_AS(read_field_jsonl(wrong), DataError);
}

TEST_CASE("sample csv round trip") {
  std::vector<cd> v = {{1.0 / 3, -2.5e-17}, {0, 1}, {-7, 0.125}};
  std::stringstream ss;
  write_samples_csv(ss, v);
  auto back = read_samples_csv(ss);
  REQUIRE(back.size() == v.size());
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] == v[i]);
  std::vector<SphereSample> rows = {{{0.5, 1.5}, {2, -1}}, {{1.0 / 7, 0}, {0, 0}}};
  std::stringstream sp;
  write_sphere_csv(sp, rows);
  auto sb = read_sphere_csv(sp);
  REQUIRE(sb.size() == 2);
  CHECK(sb[1].point.beta == 1.0 / 7);
  CHECK(sb[0].value == cd(2, -1));
  std::istringstream junk("re,im\n1,x\n");
  CHECK_THROWS_AS(read_samples_csv(junk), DataError);
}

TEST_CASE("decay csv") {
  CatalogPtr c = share(enumerate_dual(GroupSpec::su2(), 30));
  CoefficientField f = synthesize_gevrey(c, 2, 1.3, Profile::RandomPhase, 4);
  f[2].setZero();
  std::string path = temp_path("decay.csv");
  emit_decay_csv(f, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "bracket,dim,hs_norm,log_hs_norm");
  auto rows = load_decay_csv(path);
  CHECK(rows.size() == c->size() - 1);
  std::size_t i = 0;
  for (std::size_t r = 0; r < c->size(); ++r) {
    if (f.hs_norm(r) == 0) continue;
    CHECK(rows[i].bracket == (*c)[r].bracket);
    CHECK(rows[i].dim == (*c)[r].dim);
    CHECK(rows[i].hs_norm == f.hs_norm(r));
    CHECK(rows[i].log_hs_norm == std::log(f.hs_norm(r)));
    ++i;
  }
  std::string again = temp_path("decay2.csv");
  emit_decay_csv(f, again);
  std::ifstream x(path), y(again);
  CHECK(std::string(std::istreambuf_iterator<char>(x), {}) == std::string(std::istreambuf_iterator<char>(y), {}));
  std::remove(path.c_str());
  std::remove(again.c_str());
  CHECK_THROWS_AS(emit_decay_csv(f, "/nonexistent/dir/out.csv"), DataError);
  CHECK(format17(0.1) == "0.10000000000000001");
}
