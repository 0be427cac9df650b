#pragma once

#include <utility>
#include <vector>

#include "gevrey/fourier_core.hpp"

namespace gevrey {

using Symbol = MatrixField;

// A word Y_1 ... Y_k of basis vector fields, letters in 1..n.
struct MultiIndex {
  std::vector<int> word;

  std::size_t order() const { return word.size(); }
  std::vector<int> alpha(int n) const;  // letter counts
  static MultiIndex canonical(const std::vector<int>& alpha);

  bool operator==(const MultiIndex&) const = default;
};

// One canonical (non-decreasing) word per alpha with |alpha| = order, in
// lexicographic word order.
std::vector<MultiIndex> canonical_words(int n, int order);
// All n^order words of the given length.
std::vector<MultiIndex> all_words(int n, int order);

// J_1, J_2, J_3 for twice-spin two_j in the descending-m basis.
std::vector<Eigen::MatrixXcd> spin_generators(int two_j);

Symbol identity_symbol(const CatalogPtr& catalog);
Symbol vector_field_symbol(int j, const CatalogPtr& catalog);
Symbol alpha_symbol(const MultiIndex& word, const CatalogPtr& catalog);
Symbol p_alpha_symbol(const MultiIndex& word, int k, const CatalogPtr& catalog);

CoefficientField apply_symbol(const Symbol& sym, const CoefficientField& coeffs);
CoefficientField laplacian_power_apply(const CoefficientField& coeffs, int k);

double sobolev_norm(const CoefficientField& coeffs, double t);
std::vector<std::pair<MultiIndex, double>> derivative_l2_profile(const CoefficientField& coeffs, int up_to);
double linf_bound(const CoefficientField& coeffs);

struct SymbolConstants {
  double C0 = 0;  // max_j sup ||sigma_Xj||_op / <xi> + 1
  double C1 = 0;  // (1 + 1/lambda1^2)^{1/2}
};
SymbolConstants symbol_constants(const CatalogPtr& catalog);

}  // namespace gevrey
