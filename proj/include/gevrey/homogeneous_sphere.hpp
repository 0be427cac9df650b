#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gevrey/gevrey_analysis.hpp"
#include "gevrey/ultra_dual.hpp"

namespace gevrey {

// S^2 = SO(3)/SO(2) with SO(2) the gamma-axis rotations. Every spin-l rep is
// class I with one invariant vector, m = 0, at natural index l.
struct ClassIStructure {
  CatalogPtr catalog;
  std::vector<int> k_per_rep;
  std::vector<int> invariant_index;           // natural basis index of the invariant vector
  std::vector<std::vector<int>> basis_order;  // reordered basis, invariant vector first
};

ClassIStructure so3_class_one(const CatalogPtr& catalog);

CoefficientField project_class_one(const CoefficientField& coeffs, const ClassIStructure& structure);

struct Leakage {
  std::size_t rep;
  int row, col;
  double magnitude;
};
std::optional<Leakage> find_leakage(const CoefficientField& coeffs, const ClassIStructure& structure,
                                    double tol = 1e-12);

struct SpherePoint {
  double beta = 0;   // polar angle
  double alpha = 0;  // azimuth
};

GroupElement coset_representative(const SpherePoint& p);

// (beta, alpha) projection of an SO3 Euler grid. Index = ia * n_beta + ib.
struct SphereGrid {
  int band = 0;
  std::vector<double> alphas, betas;
  std::vector<double> weights;
  std::size_t size() const { return alphas.size() * betas.size(); }
  SpherePoint point(std::size_t i) const { return {betas[i % betas.size()], alphas[i / betas.size()]}; }
};

SphereGrid sphere_grid(const GroupGrid& so3_grid);

std::vector<cd> lift(const SphereGrid& sphere, std::span<const cd> sphere_samples, const GroupGrid& so3_grid);

std::vector<cd> sphere_series(const CoefficientField& coeffs, const ClassIStructure& structure,
                              std::span<const SpherePoint> points);

GevreyVerdict sphere_gevrey_test(const CoefficientField& coeffs, const ClassIStructure& structure, double s,
                                 Mode mode);
GevreyVerdict sphere_ultra_test(const UltraSequence& seq, const ClassIStructure& structure, double s, Mode mode);

}  // namespace gevrey
