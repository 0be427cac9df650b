#include "gevrey/invariant_calculus.hpp"

#include <cmath>
#include <string>

#include "gevrey/errors.hpp"
#include "gevrey/parallel.hpp"

namespace gevrey {

std::vector<int> MultiIndex::alpha(int n) const {
  std::vector<int> a(n, 0);
  for (int letter : word) {
    if (letter < 1 || letter > n) throw ContractViolation("letter " + std::to_string(letter) + " outside 1.." + std::to_string(n));
    ++a[letter - 1];
  }
  return a;
}

MultiIndex MultiIndex::canonical(const std::vector<int>& alpha) {
  MultiIndex m;
  for (std::size_t j = 0; j < alpha.size(); ++j)
    for (int c = 0; c < alpha[j]; ++c) m.word.push_back(static_cast<int>(j) + 1);
  return m;
}

std::vector<MultiIndex> canonical_words(int n, int order) {
  std::vector<MultiIndex> out;
  // Non-decreasing words of the given length.
  std::vector<int> w(order, 1);
  if (order == 0) return {MultiIndex{}};
  for (;;) {
    out.push_back(MultiIndex{w});
    int i = order - 1;
    while (i >= 0 && w[i] == n) --i;
    if (i < 0) break;
    ++w[i];
    for (int j = i + 1; j < order; ++j) w[j] = w[i];
  }
  return out;
}

std::vector<MultiIndex> all_words(int n, int order) {
  std::vector<MultiIndex> out;
  std::vector<int> w(order, 1);
  if (order == 0) return {MultiIndex{}};
  for (;;) {
    out.push_back(MultiIndex{w});
    int i = order - 1;
    while (i >= 0 && w[i] == n) w[i--] = 1;
    if (i < 0) break;
    ++w[i];
  }
  return out;
}

std::vector<Eigen::MatrixXcd> spin_generators(int two_j) {
  int d = two_j + 1;
  double j = two_j / 2.0;
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(d, d), jz = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    double m = j - i;
    jz(i, i) = m;
    if (i > 0) jp(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  Eigen::MatrixXcd jm = jp.adjoint();
  return {(jp + jm) / 2.0, (jp - jm) / cd(0, 2), jz};
}

Symbol identity_symbol(const CatalogPtr& catalog) { return delta_field(catalog); }

Symbol vector_field_symbol(int j, const CatalogPtr& catalog) {
  const GroupSpec& g = catalog->group();
  if (j < 1 || j > g.dim()) throw ContractViolation("basis index " + std::to_string(j) + " out of range for " + g.name());
  Symbol sym(catalog);
  parallel_for(sym.size(), [&](std::size_t r) {
    const RepInfo& info = (*catalog)[r];
    if (g.family == GroupFamily::Torus) {
      sym[r](0, 0) = cd(0, info.index.label[j - 1]);
      return;
    }
    int l2 = g.family == GroupFamily::SO3 ? 2 * info.index.label[0] : info.index.label[0];
    sym[r] = cd(0, 1) * spin_generators(l2)[j - 1];
  });
  return sym;
}

Symbol alpha_symbol(const MultiIndex& word, const CatalogPtr& catalog) {
  int n = catalog->group().dim();
  word.alpha(n);  // validates letters
  std::vector<Symbol> letters;
  for (int j = 1; j <= n; ++j) letters.push_back(vector_field_symbol(j, catalog));
  Symbol sym = identity_symbol(catalog);
  parallel_for(sym.size(), [&](std::size_t r) {
    for (int letter : word.word) sym[r] = (sym[r] * letters[letter - 1][r]).eval();
  });
  return sym;
}

Symbol p_alpha_symbol(const MultiIndex& word, int k, const CatalogPtr& catalog) {
  if (2 * k <= static_cast<int>(word.order()))
    throw DomainError("p_alpha_symbol needs 2k > |alpha| (k = " + std::to_string(k) + ", |alpha| = " +
                      std::to_string(word.order()) + ")");
  Symbol sym = alpha_symbol(word, catalog);
  for (std::size_t r = 0; r < sym.size(); ++r) {
    const RepInfo& info = (*catalog)[r];
    if (info.trivial()) sym[r].setZero();
    else sym[r] *= std::pow(info.lambda_sq, -k);
  }
  return sym;
}

CoefficientField apply_symbol(const Symbol& sym, const CoefficientField& coeffs) {
  require_same_catalog(sym, coeffs, "apply_symbol");
  CoefficientField out(coeffs.catalog_ptr());
  parallel_for(out.size(), [&](std::size_t r) { out[r] = sym[r] * coeffs[r]; });
  return out;
}

CoefficientField laplacian_power_apply(const CoefficientField& coeffs, int k) {
  if (k < 0) throw DomainError("laplacian power must be nonnegative");
  CoefficientField out = coeffs;
  if (k == 0) return out;
  for (std::size_t r = 0; r < out.size(); ++r) out[r] *= std::pow(coeffs.catalog()[r].lambda_sq, k);
  return out;
}

double sobolev_norm(const CoefficientField& coeffs, double t) {
  std::vector<double> terms(coeffs.size());
  for (std::size_t r = 0; r < coeffs.size(); ++r) {
    const RepInfo& info = coeffs.catalog()[r];
    terms[r] = info.dim * std::pow(info.bracket, 2 * t) * coeffs[r].squaredNorm();
  }
  return std::sqrt(pairwise_sum(terms));
}

std::vector<std::pair<MultiIndex, double>> derivative_l2_profile(const CoefficientField& coeffs, int up_to) {
  if (up_to < 0) throw DomainError("derivative order must be nonnegative");
  std::vector<std::pair<MultiIndex, double>> out;
  int n = coeffs.catalog().group().dim();
  for (int order = 0; order <= up_to; ++order)
    for (const auto& w : canonical_words(n, order))
      out.emplace_back(w, plancherel_norm(apply_symbol(alpha_symbol(w, coeffs.catalog_ptr()), coeffs)));
  return out;
}

double linf_bound(const CoefficientField& coeffs) { return lp_norm(coeffs, 1.0); }

SymbolConstants symbol_constants(const CatalogPtr& catalog) {
  SymbolConstants c;
  double worst = 0;
  for (int j = 1; j <= catalog->group().dim(); ++j) {
    Symbol s = vector_field_symbol(j, catalog);
    for (std::size_t r = 0; r < s.size(); ++r) worst = std::max(worst, operator_norm(s[r]) / (*catalog)[r].bracket);
  }
  c.C0 = worst + 1.0;
  c.C1 = std::sqrt(1.0 + 1.0 / (catalog->lambda1() * catalog->lambda1()));
  return c;
}

}  // namespace gevrey
