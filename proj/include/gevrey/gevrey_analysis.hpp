#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gevrey/fourier_core.hpp"

namespace gevrey {

enum class Mode { Roumieu, Beurling };
enum class Profile { Diagonal, Dense, RandomPhase };

std::string mode_tag(Mode m);  // "R" / "B"
Mode parse_mode(const std::string& s);
Profile parse_profile(const std::string& s);

inline constexpr double kBMin = 1e-3;
inline constexpr double kNormFloor = 1e-290;

// Field with ||entries[xi]||_HS = exp(log_norm(xi)); the profile spreads the
// mass inside each matrix.
CoefficientField synthesize_profile(const CatalogPtr& catalog, const std::function<double(const RepInfo&)>& log_norm,
                                    Profile profile, std::uint64_t seed);
CoefficientField synthesize_gevrey(const CatalogPtr& catalog, double s, double B, Profile profile = Profile::Diagonal,
                                   std::uint64_t seed = 0);

// Per-bracket maximum of ||.||_HS over reps above kNormFloor.
struct BracketPoint {
  double bracket;
  double log_norm;
  std::size_t rep;  // catalog position attaining the maximum
};
std::vector<BracketPoint> bracket_profile(const MatrixField& field);

struct LineFit {
  double slope = 0, intercept = 0, r2 = 0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct DecayModel {
  double s = 0, B = 0, K = 0, r2 = 0;
  int support = 0;
  bool low_quality = false;
};

DecayModel fit_decay(const CoefficientField& coeffs);
// Least-squares (B, K) with s held fixed.
DecayModel fit_decay_pinned(const CoefficientField& coeffs, double s);

struct GevreyVerdict {
  Mode mode = Mode::Roumieu;
  double s = 0;
  bool pass = false;
  double margin = 0;
  std::optional<DecayModel> model;
  std::optional<RepIndex> witness;  // failure certificate
  bool constant_function = false;
  bool band_limited = false;
  bool outside_duality_range = false;  // s < 1
  std::string note;
  std::map<std::string, double> diagnostics;
};

std::string verdict_json(const GevreyVerdict& v);

GevreyVerdict fourier_side_test(const CoefficientField& coeffs, double s, Mode mode);

struct SpaceSideReport {
  GevreyVerdict verdict;
  std::vector<double> u;    // u_0..u_kmax (log upper bounds)
  std::vector<double> rho;  // rho_1..rho_kmax, index k-1
  double growth_exponent = 0;
  double A = 0, C = 0;
};

SpaceSideReport space_side_report(const CoefficientField& coeffs, double s, int k_max, Mode mode);
GevreyVerdict space_side_test(const CoefficientField& coeffs, double s, int k_max, Mode mode);

struct CrossCheckReport {
  GevreyVerdict fourier;
  GevreyVerdict space;
  bool agree = false;
};
CrossCheckReport cross_check(const CoefficientField& coeffs, double s, Mode mode, int k_max = 40);

double infimum_decay_bound(double r, double s);
// Grid minimum of x^{sx} r^{-x} over (0, 10 max(1, r^{1/s})].
double infimum_decay_grid(double r, double s, int points = 400000);

// Split of the nonzero bracket profile into log-bracket thirds; used by the
// Fourier-side and dual tests. Empty when there are too few points.
struct Windows {
  std::vector<BracketPoint> middle, top;
};
Windows tail_windows(const std::vector<BracketPoint>& profile);

}  // namespace gevrey
