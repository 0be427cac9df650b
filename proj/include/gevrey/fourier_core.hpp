#pragma once

#include <Eigen/Dense>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "gevrey/dual_catalog.hpp"
#include "gevrey/group_quadrature.hpp"

namespace gevrey {

using CatalogPtr = std::shared_ptr<const DualCatalog>;

inline CatalogPtr share(DualCatalog c) { return std::make_shared<const DualCatalog>(std::move(c)); }

// A d_xi x d_xi complex matrix per catalog rep, stored in catalog order.
// Zero matrices stand for absent reps.
class MatrixField {
 public:
  explicit MatrixField(CatalogPtr catalog);

  const DualCatalog& catalog() const { return *catalog_; }
  const CatalogPtr& catalog_ptr() const { return catalog_; }
  std::size_t size() const { return entries_.size(); }

  Eigen::MatrixXcd& operator[](std::size_t i) { return entries_[i]; }
  const Eigen::MatrixXcd& operator[](std::size_t i) const { return entries_[i]; }
  Eigen::MatrixXcd& at(const RepIndex& r) { return entries_[catalog_->position(r)]; }
  const Eigen::MatrixXcd& at(const RepIndex& r) const { return entries_[catalog_->position(r)]; }

  double hs_norm(std::size_t i) const { return entries_[i].norm(); }

  MatrixField& operator*=(cd c);
  MatrixField& operator+=(const MatrixField& other);

 private:
  CatalogPtr catalog_;
  std::vector<Eigen::MatrixXcd> entries_;
};

MatrixField operator*(cd c, MatrixField f);
MatrixField operator+(MatrixField a, const MatrixField& b);

using CoefficientField = MatrixField;

void require_same_catalog(const MatrixField& a, const MatrixField& b, const char* op);

// Transform of the delta distribution at the identity: identity matrices.
CoefficientField delta_field(const CatalogPtr& catalog);

// Gaussian entries on reps whose labels all satisfy |k| <= max_label (every
// rep when max_label < 0), scaled to unit Plancherel norm.
CoefficientField random_unit_field(const CatalogPtr& catalog, std::mt19937_64& rng, int max_label = -1);

// Catalog of every rep a grid of this band transforms exactly.
DualCatalog catalog_for_band(const GroupSpec& group, int band);

CoefficientField forward_transform(const GroupGrid& grid, std::span<const cd> samples, const CatalogPtr& catalog);

// f(x) = sum_xi d_xi Tr(xi(x) f^(xi)) at arbitrary points.
std::vector<cd> inverse_transform(const CoefficientField& coeffs, std::span<const GroupElement> points);

// Same series evaluated at every node of a grid via the separable Euler
// structure. The grid band must cover the catalog.
std::vector<cd> synthesize_on_grid(const GroupGrid& grid, const CoefficientField& coeffs);

double plancherel_norm(const CoefficientField& coeffs);
// sum_xi d_xi Tr(f^(xi) g^(xi)^*), the L2 inner product <f, g>.
cd inner_product(const CoefficientField& f, const CoefficientField& g);

double lp_norm(const CoefficientField& coeffs, double p);

double matrix_lp_norm(const Eigen::MatrixXcd& a, double p);
double hs_norm(const Eigen::MatrixXcd& a);
double operator_norm(const Eigen::MatrixXcd& a);

// Both sides of ||a||_p <= d^{2(1/p-1/q)} ||a||_q and ||a||_q <= d^{2/q} ||a||_p
// for p < q (2/q = 0 when q is infinite).
struct MatrixNormInequality {
  double lhs_low = 0, rhs_low = 0;
  double lhs_high = 0, rhs_high = 0;
};
MatrixNormInequality matrix_norm_inequality(const Eigen::MatrixXcd& a, double p, double q);

struct HausdorffYoungGap {
  double coeff_linf = 0;  // ||f^||_{l^inf}
  double func_l1 = 0;     // ||f||_{L^1} on the grid
  double inverse_sup = 0; // max over grid of |F^{-1} sigma|
  double coeff_l1 = 0;    // ||sigma||_{l^1}
};

HausdorffYoungGap hausdorff_young_gap(const GroupGrid& grid, std::span<const cd> samples,
                                      const CoefficientField& coeffs);

}  // namespace gevrey
