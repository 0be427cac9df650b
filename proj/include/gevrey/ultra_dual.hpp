#pragma once

#include <span>
#include <vector>

#include "gevrey/gevrey_analysis.hpp"

namespace gevrey {

using UltraSequence = MatrixField;

// Sequences must be tested at s >= 1.
GevreyVerdict ultra_membership_test(const UltraSequence& seq, double s, Mode mode);

// Cauchy-window check of a nonnegative series given in catalog order: the
// tail is the set of reps whose bracket lies in the top tenth of the
// catalog's bracket range.
struct SeriesCheck {
  double total = 0;
  double tail = 0;
  double tail_fraction = 0;
  bool converged = true;
};
inline constexpr double kCauchyTolerance = 1e-8;
SeriesCheck series_check(const DualCatalog& catalog, const std::vector<double>& terms);

// Partial sums of e^{-B <xi>^{1/s}} ||v_xi||_HS.
std::vector<double> alpha_dual_series_probe(const UltraSequence& seq, double s, double B);
SeriesCheck alpha_dual_series_check(const UltraSequence& seq, double s, double B);

// v(phi) = sum d_xi Tr(phi^(xi) v_xi). Throws IllPairedError when the
// absolute series fails the Cauchy check.
cd pair(const UltraSequence& seq, const CoefficientField& coeffs);

struct ContinuityPoint {
  double epsilon = 0;
  double C = 0;
  bool finite = true;  // maximizer not in the top third of the catalog
  std::string argmax;  // battery member attaining C
};

struct ContinuityReport {
  double s = 0;
  int k_cap = 60;
  std::vector<ContinuityPoint> curve;
};

ContinuityReport continuity_modulus(const UltraSequence& seq, double s, const std::vector<double>& epsilon_grid);

struct PerfectnessReport {
  bool fourier_pass = false;
  std::vector<std::pair<double, SeriesCheck>> series;  // per B'
  bool series_pass = false;
  double resynthesis_error = 0;
  bool pass = false;
};

PerfectnessReport perfectness_roundtrip(const CoefficientField& coeffs, double s, Mode mode,
                                        const std::vector<double>& b_grid = {0.25, 0.5},
                                        std::span<const GroupElement> points = {});

}  // namespace gevrey
