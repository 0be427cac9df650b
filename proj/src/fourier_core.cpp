#include "gevrey/fourier_core.hpp"

#include <cmath>
#include <string>

#include "gevrey/errors.hpp"
#include "gevrey/parallel.hpp"

namespace gevrey {

MatrixField::MatrixField(CatalogPtr catalog) : catalog_(std::move(catalog)) {
  if (!catalog_) throw ContractViolation("field needs a catalog");
  entries_.reserve(catalog_->size());
  for (const auto& r : *catalog_) entries_.push_back(Eigen::MatrixXcd::Zero(r.dim, r.dim));
}

MatrixField& MatrixField::operator*=(cd c) {
  for (auto& m : entries_) m *= c;
  return *this;
}

MatrixField& MatrixField::operator+=(const MatrixField& other) {
  require_same_catalog(*this, other, "field addition");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

MatrixField operator*(cd c, MatrixField f) { return f *= c; }
MatrixField operator+(MatrixField a, const MatrixField& b) { return a += b; }

void require_same_catalog(const MatrixField& a, const MatrixField& b, const char* op) {
  if (!a.catalog().same_as(b.catalog()))
    throw ContractViolation(std::string(op) + ": catalogs differ (" + a.catalog().group().name() + ", " +
                            std::to_string(a.size()) + " reps vs " + b.catalog().group().name() + ", " +
                            std::to_string(b.size()) + " reps)");
}

CoefficientField delta_field(const CatalogPtr& catalog) {
  CoefficientField f(catalog);
  for (std::size_t i = 0; i < f.size(); ++i) f[i].setIdentity();
  return f;
}

CoefficientField random_unit_field(const CatalogPtr& catalog, std::mt19937_64& rng, int max_label) {
  std::normal_distribution<double> n;
  CoefficientField f(catalog);
  for (std::size_t r = 0; r < f.size(); ++r) {
    bool keep = true;
    for (int k : (*catalog)[r].index.label) keep = keep && (max_label < 0 || std::abs(k) <= max_label);
    if (!keep) continue;
    for (int i = 0; i < f[r].rows(); ++i)
      for (int j = 0; j < f[r].cols(); ++j) f[r](i, j) = cd(n(rng), n(rng));
  }
  double norm = plancherel_norm(f);
  if (norm > 0) f *= cd(1.0 / norm);
  return f;
}

DualCatalog catalog_for_band(const GroupSpec& group, int band) {
  if (band < 0) throw ConfigurationError("band must be nonnegative");
  if (group.family == GroupFamily::Torus) return enumerate_dual(group, std::sqrt(1.0 + double(band) * band));
  return catalog_up_to(group, band);
}

namespace {

// Largest twice-spin appearing in an SU2/SO3 catalog.
int max_twice_spin(const DualCatalog& c) {
  int band = c.required_band();
  return c.group().family == GroupFamily::SO3 ? 2 * band : band;
}

int twice_spin(const GroupSpec& g, const RepIndex& r) {
  return g.family == GroupFamily::SO3 ? 2 * r.label[0] : r.label[0];
}

void check_grid_covers(const GroupGrid& grid, const DualCatalog& catalog) {
  if (!(grid.group == catalog.group()))
    throw ContractViolation("grid group " + grid.group.name() + " differs from catalog group " +
                            catalog.group().name());
  int need = catalog.required_band();
  if (grid.band < need)
    throw ContractViolation("grid band " + std::to_string(grid.band) + " does not cover catalog band " +
                            std::to_string(need) + " (cutoff " + std::to_string(catalog.bracket_cutoff()) + ")");
}

// exp(-i * sign * (k/2) * angle) for k in [-L, L].
std::vector<cd> half_phases(int L, double angle, double sign) {
  std::vector<cd> out(2 * L + 1);
  for (int k = -L; k <= L; ++k) out[k + L] = std::polar(1.0, -sign * k * angle / 2.0);
  return out;
}

CoefficientField forward_torus(const GroupGrid& grid, std::span<const cd> samples, const CatalogPtr& catalog) {
  CoefficientField out(catalog);
  parallel_for(catalog->size(), [&](std::size_t r) {
    const auto& label = (*catalog)[r].index.label;
    std::vector<cd> terms(grid.size());
    for (std::size_t node = 0; node < grid.size(); ++node) {
      double phase = 0;
      for (std::size_t j = 0; j < label.size(); ++j) phase += label[j] * grid.nodes[node].coords[j];
      terms[node] = grid.weights[node] * samples[node] * std::polar(1.0, -phase);
    }
    out[r](0, 0) = pairwise_sum(terms);
  });
  return out;
}

CoefficientField forward_euler(const GroupGrid& grid, std::span<const cd> samples, const CatalogPtr& catalog) {
  const GroupSpec& g = grid.group;
  bool so3 = g.family == GroupFamily::SO3;
  int L = max_twice_spin(*catalog);
  int S = 2 * L + 1;
  std::size_t na = grid.axis0.size(), nb = grid.axis1.size(), ng = grid.axis2.size();

  // F[a][b][n] = mean over gamma of f * exp(i n gamma)
  std::vector<cd> F(na * nb * S);
  std::vector<std::vector<cd>> gamma_phase(ng);
  for (std::size_t c = 0; c < ng; ++c) gamma_phase[c] = half_phases(L, grid.axis2[c], -1.0);
  parallel_for(na * nb, [&](std::size_t ab) {
    for (int n = 0; n < S; ++n) {
      if (so3 && ((n - L) % 2 != 0)) continue;
      cd acc = 0;
      for (std::size_t c = 0; c < ng; ++c) acc += samples[ab * ng + c] * gamma_phase[c][n];
      F[ab * S + n] = acc / double(ng);
    }
  });
  // G[b][m][n] = mean over alpha of F * exp(i m alpha)
  std::vector<cd> G(nb * S * S);
  std::vector<std::vector<cd>> alpha_phase(na);
  for (std::size_t a = 0; a < na; ++a) alpha_phase[a] = half_phases(L, grid.axis0[a], -1.0);
  parallel_for(nb, [&](std::size_t b) {
    for (int m = 0; m < S; ++m)
      for (int n = 0; n < S; ++n) {
        if (((m - n) % 2) != 0) continue;
        cd acc = 0;
        for (std::size_t a = 0; a < na; ++a) acc += alpha_phase[a][m] * F[(a * nb + b) * S + n];
        G[(b * S + m) * S + n] = acc / double(na);
      }
  });
  std::vector<std::vector<Eigen::MatrixXd>> d(nb);
  parallel_for(nb, [&](std::size_t b) { d[b] = wigner_d_all(L, grid.axis1[b], so3); });

  CoefficientField out(catalog);
  parallel_for(catalog->size(), [&](std::size_t r) {
    int l2 = twice_spin(g, (*catalog)[r].index);
    int dim = l2 + 1;
    Eigen::MatrixXcd& M = out[r];
    for (int i = 0; i < dim; ++i) {
      int n2 = l2 - 2 * i;
      for (int j = 0; j < dim; ++j) {
        int m2 = l2 - 2 * j;
        cd acc = 0;
        for (std::size_t b = 0; b < nb; ++b)
          acc += grid.axis1_weights[b] * d[b][l2](j, i) * G[(b * S + m2 + L) * S + n2 + L];
        M(i, j) = acc;
      }
    }
  });
  return out;
}

}  // namespace

CoefficientField forward_transform(const GroupGrid& grid, std::span<const cd> samples, const CatalogPtr& catalog) {
  check_grid_covers(grid, *catalog);
  if (samples.size() != grid.size())
    throw ContractViolation("sample count " + std::to_string(samples.size()) + " does not match grid size " +
                            std::to_string(grid.size()));
  if (grid.group.family == GroupFamily::Torus) return forward_torus(grid, samples, catalog);
  return forward_euler(grid, samples, catalog);
}

std::vector<cd> inverse_transform(const CoefficientField& coeffs, std::span<const GroupElement> points) {
  const DualCatalog& cat = coeffs.catalog();
  const GroupSpec& g = cat.group();
  std::vector<cd> out(points.size());
  bool torus = g.family == GroupFamily::Torus;
  int L = torus ? 0 : max_twice_spin(cat);
  parallel_for(points.size(), [&](std::size_t p) {
    const GroupElement& x = points[p];
    if (static_cast<int>(x.coords.size()) != g.coordinate_count())
      throw ContractViolation("point has wrong coordinate count for " + g.name());
    std::vector<cd> terms(cat.size());
    if (torus) {
      for (std::size_t r = 0; r < cat.size(); ++r) {
        double phase = 0;
        const auto& label = cat[r].index.label;
        for (std::size_t j = 0; j < label.size(); ++j) phase += label[j] * x.coords[j];
        terms[r] = std::polar(1.0, phase) * coeffs[r](0, 0);
      }
    } else {
      auto d = wigner_d_all(L, x.coords[1], g.family == GroupFamily::SO3);
      auto pa = half_phases(L, x.coords[0], 1.0), pg = half_phases(L, x.coords[2], 1.0);
      for (std::size_t r = 0; r < cat.size(); ++r) {
        int l2 = twice_spin(g, cat[r].index), dim = l2 + 1;
        const Eigen::MatrixXcd& F = coeffs[r];
        cd tr = 0;
        for (int i = 0; i < dim; ++i)
          for (int k = 0; k < dim; ++k) tr += pa[l2 - 2 * i + L] * d[l2](i, k) * pg[l2 - 2 * k + L] * F(k, i);
        terms[r] = double(dim) * tr;
      }
    }
    out[p] = pairwise_sum(terms);
  });
  return out;
}

std::vector<cd> synthesize_on_grid(const GroupGrid& grid, const CoefficientField& coeffs) {
  const DualCatalog& cat = coeffs.catalog();
  check_grid_covers(grid, cat);
  if (grid.group.family == GroupFamily::Torus) return inverse_transform(coeffs, grid.nodes);
  const GroupSpec& g = grid.group;
  bool so3 = g.family == GroupFamily::SO3;
  int L = max_twice_spin(cat);
  int S = 2 * L + 1;
  std::size_t na = grid.axis0.size(), nb = grid.axis1.size(), ng = grid.axis2.size();

  // H[b][m][n] = sum over reps of d_xi d^l_{mn}(beta_b) F_{n-index, m-index}
  std::vector<cd> H(nb * S * S);
  parallel_for(nb, [&](std::size_t b) {
    auto d = wigner_d_all(L, grid.axis1[b], so3);
    for (std::size_t r = 0; r < cat.size(); ++r) {
      int l2 = twice_spin(g, cat[r].index), dim = l2 + 1;
      const Eigen::MatrixXcd& F = coeffs[r];
      for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k)
          H[(b * S + (l2 - 2 * i) + L) * S + (l2 - 2 * k) + L] += double(dim) * d[l2](i, k) * F(k, i);
    }
  });
  std::vector<std::vector<cd>> alpha_phase(na), gamma_phase(ng);
  for (std::size_t a = 0; a < na; ++a) alpha_phase[a] = half_phases(L, grid.axis0[a], 1.0);
  for (std::size_t c = 0; c < ng; ++c) gamma_phase[c] = half_phases(L, grid.axis2[c], 1.0);
  std::vector<cd> out(grid.size());
  parallel_for(na * nb, [&](std::size_t ab) {
    std::size_t a = ab / nb, b = ab % nb;
    std::vector<cd> P(S);
    for (int n = 0; n < S; ++n) {
      cd acc = 0;
      for (int m = 0; m < S; ++m) acc += alpha_phase[a][m] * H[(b * S + m) * S + n];
      P[n] = acc;
    }
    for (std::size_t c = 0; c < ng; ++c) {
      cd acc = 0;
      for (int n = 0; n < S; ++n) acc += gamma_phase[c][n] * P[n];
      out[ab * ng + c] = acc;
    }
  });
  return out;
}

double plancherel_norm(const CoefficientField& coeffs) {
  std::vector<double> terms(coeffs.size());
  for (std::size_t r = 0; r < coeffs.size(); ++r) terms[r] = coeffs.catalog()[r].dim * coeffs[r].squaredNorm();
  return std::sqrt(pairwise_sum(terms));
}

cd inner_product(const CoefficientField& f, const CoefficientField& g) {
  require_same_catalog(f, g, "inner_product");
  std::vector<cd> terms(f.size());
  for (std::size_t r = 0; r < f.size(); ++r)
    terms[r] = double(f.catalog()[r].dim) * (f[r].array() * g[r].conjugate().array()).sum();
  return pairwise_sum(terms);
}

double lp_norm(const CoefficientField& coeffs, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm needs p >= 1, got " + std::to_string(p));
  const DualCatalog& cat = coeffs.catalog();
  if (std::isinf(p)) {
    double best = 0;
    for (std::size_t r = 0; r < coeffs.size(); ++r)
      best = std::max(best, coeffs.hs_norm(r) / std::sqrt(double(cat[r].dim)));
    return best;
  }
  std::vector<double> terms(coeffs.size());
  for (std::size_t r = 0; r < coeffs.size(); ++r)
    terms[r] = std::pow(double(cat[r].dim), 2.0 - p / 2.0) * std::pow(coeffs.hs_norm(r), p);
  return std::pow(pairwise_sum(terms), 1.0 / p);
}

double matrix_lp_norm(const Eigen::MatrixXcd& a, double p) {
  if (!(p >= 1.0)) throw DomainError("matrix_lp_norm needs p >= 1, got " + std::to_string(p));
  if (std::isinf(p)) return a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  if (p == 2.0) return a.norm();
  return std::pow(a.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

double hs_norm(const Eigen::MatrixXcd& a) { return a.norm(); }

double operator_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

MatrixNormInequality matrix_norm_inequality(const Eigen::MatrixXcd& a, double p, double q) {
  if (!(p >= 1.0) || !(q > p)) throw DomainError("matrix_norm_inequality needs 1 <= p < q");
  double d = static_cast<double>(a.rows());
  double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  MatrixNormInequality r;
  r.lhs_low = matrix_lp_norm(a, p);
  r.rhs_low = std::pow(d, 2.0 * (1.0 / p - inv_q)) * matrix_lp_norm(a, q);
  r.lhs_high = matrix_lp_norm(a, q);
  r.rhs_high = std::pow(d, 2.0 * inv_q) * matrix_lp_norm(a, p);
  return r;
}

HausdorffYoungGap hausdorff_young_gap(const GroupGrid& grid, std::span<const cd> samples,
                                      const CoefficientField& coeffs) {
  HausdorffYoungGap gap;
  gap.coeff_linf = lp_norm(coeffs, INFINITY);
  std::vector<cd> absf(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) absf[i] = std::abs(samples[i]);
  gap.func_l1 = haar_integrate(grid, absf).real();
  auto values = synthesize_on_grid(grid, coeffs);
  for (const cd& v : values) gap.inverse_sup = std::max(gap.inverse_sup, std::abs(v));
  gap.coeff_l1 = lp_norm(coeffs, 1.0);
  return gap;
}

}  // namespace gevrey
