#include "gevrey/homogeneous_sphere.hpp"

#include <cmath>
#include <string>

#include "gevrey/errors.hpp"
#include "gevrey/parallel.hpp"

namespace gevrey {

ClassIStructure so3_class_one(const CatalogPtr& catalog) {
  if (catalog->group().family != GroupFamily::SO3)
    throw ContractViolation("class I structure is built for SO3 only, got " + catalog->group().name());
  ClassIStructure st;
  st.catalog = catalog;
  for (const auto& r : *catalog) {
    int l = r.index.label[0];
    st.k_per_rep.push_back(1);
    st.invariant_index.push_back(l);
    std::vector<int> order{l};
    for (int i = 0; i < r.dim; ++i)
      if (i != l) order.push_back(i);
    st.basis_order.push_back(std::move(order));
  }
  return st;
}

namespace {
void check_structure(const CoefficientField& coeffs, const ClassIStructure& st) {
  if (!st.catalog || !coeffs.catalog().same_as(*st.catalog))
    throw ContractViolation("field catalog does not match the class I structure");
}
}  // namespace

CoefficientField project_class_one(const CoefficientField& coeffs, const ClassIStructure& st) {
  check_structure(coeffs, st);
  CoefficientField out(coeffs.catalog_ptr());
  for (std::size_t r = 0; r < out.size(); ++r) {
    int row = st.invariant_index[r];
    out[r].row(row) = coeffs[r].row(row);
  }
  return out;
}

std::optional<Leakage> find_leakage(const CoefficientField& coeffs, const ClassIStructure& st, double tol) {
  check_structure(coeffs, st);
  std::optional<Leakage> worst;
  for (std::size_t r = 0; r < coeffs.size(); ++r) {
    const auto& m = coeffs[r];
    for (int i = 0; i < m.rows(); ++i) {
      if (i == st.invariant_index[r]) continue;
      for (int j = 0; j < m.cols(); ++j) {
        double a = std::abs(m(i, j));
        if (a > tol && (!worst || a > worst->magnitude)) worst = Leakage{r, i, j, a};
      }
    }
  }
  return worst;
}

GroupElement coset_representative(const SpherePoint& p) { return GroupElement{{p.alpha, p.beta, 0.0}}; }

SphereGrid sphere_grid(const GroupGrid& g) {
  if (g.group.family != GroupFamily::SO3) throw ContractViolation("sphere grids project SO3 grids");
  SphereGrid s;
  s.band = g.band;
  s.alphas = g.axis0;
  s.betas = g.axis1;
  for (std::size_t a = 0; a < s.alphas.size(); ++a)
    for (std::size_t b = 0; b < s.betas.size(); ++b) s.weights.push_back(g.axis1_weights[b] / s.alphas.size());
  return s;
}

std::vector<cd> lift(const SphereGrid& sphere, std::span<const cd> samples, const GroupGrid& g) {
  if (g.group.family != GroupFamily::SO3 || sphere.alphas != g.axis0 || sphere.betas != g.axis1)
    throw ContractViolation("sphere grid (band " + std::to_string(sphere.band) + ") is not aligned with the SO3 grid (band " +
                            std::to_string(g.band) + ")");
  if (samples.size() != sphere.size())
    throw ContractViolation("sphere sample count " + std::to_string(samples.size()) + " does not match grid size " +
                            std::to_string(sphere.size()));
  std::size_t ng = g.axis2.size();
  std::vector<cd> out(g.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t c = 0; c < ng; ++c) out[i * ng + c] = samples[i];
  return out;
}

std::vector<cd> sphere_series(const CoefficientField& coeffs, const ClassIStructure& st,
                              std::span<const SpherePoint> points) {
  check_structure(coeffs, st);
  if (auto leak = find_leakage(coeffs, st))
    throw ContractViolation("field is not class I projected: rep " + label_string(coeffs.catalog()[leak->rep].index) +
                            " entry (" + std::to_string(leak->row) + "," + std::to_string(leak->col) + ") = " +
                            std::to_string(leak->magnitude));
  const DualCatalog& cat = coeffs.catalog();
  int L = 2 * cat.required_band();
  std::vector<cd> out(points.size());
  parallel_for(points.size(), [&](std::size_t p) {
    auto d = wigner_d_all(L, points[p].beta, true);
    std::vector<cd> terms(cat.size());
    for (std::size_t r = 0; r < cat.size(); ++r) {
      int l = cat[r].index.label[0], c = st.invariant_index[r];
      cd acc = 0;
      // sum_i f^_{c,i} xi_{i,c}(x) with xi_{i,c} = e^{-i m_i alpha} d_{m_i 0}(beta)
      for (int i = 0; i < cat[r].dim; ++i)
        acc += coeffs[r](c, i) * std::polar(d[2 * l](i, c), -double(l - i) * points[p].alpha);
      terms[r] = double(cat[r].dim) * acc;
    }
    out[p] = pairwise_sum(terms);
  });
  return out;
}

namespace {
GevreyVerdict leakage_verdict(const CoefficientField& coeffs, const Leakage& leak, double s, Mode mode) {
  GevreyVerdict v;
  v.mode = mode;
  v.s = s;
  v.pass = false;
  v.margin = -std::log(leak.magnitude / 1e-12);
  v.witness = coeffs.catalog()[leak.rep].index;
  v.note = "class I leakage at rep " + label_string(*v.witness) + " entry (" + std::to_string(leak.row) + "," +
           std::to_string(leak.col) + ")";
  v.diagnostics = {{"leak_row", leak.row}, {"leak_col", leak.col}, {"leak_magnitude", leak.magnitude}};
  return v;
}

void require_homogeneous_range(double s) {
  if (!(s >= 1.0)) throw DomainError("sphere tests need s >= 1, got " + std::to_string(s));
}
}  // namespace

GevreyVerdict sphere_gevrey_test(const CoefficientField& coeffs, const ClassIStructure& st, double s, Mode mode) {
  require_homogeneous_range(s);
  if (auto leak = find_leakage(coeffs, st)) return leakage_verdict(coeffs, *leak, s, mode);
  return fourier_side_test(project_class_one(coeffs, st), s, mode);
}

GevreyVerdict sphere_ultra_test(const UltraSequence& seq, const ClassIStructure& st, double s, Mode mode) {
  require_homogeneous_range(s);
  if (auto leak = find_leakage(seq, st)) return leakage_verdict(seq, *leak, s, mode);
  return ultra_membership_test(project_class_one(seq, st), s, mode);
}

}  // namespace gevrey
