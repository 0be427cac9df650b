#include "gevrey/gevrey_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numbers>
#include <random>

#include "gevrey/errors.hpp"
#include "gevrey/parallel.hpp"

namespace gevrey {

namespace {
constexpr double kLog10 = 2.302585092994046;
constexpr double kRateGain = 1.25;
constexpr double kGrowthSlack = 0.25;
constexpr int kMinInteriorOrder = 6;

double safe_log(double x) { return std::log(std::max(x, 1e-300)); }

double log_sum_exp(const std::vector<double>& v) {
  if (v.empty()) return -INFINITY;
  double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  std::vector<double> e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e[i] = std::exp(v[i] - m);
  return m + std::log(pairwise_sum(e));
}

LineFit fit_points(const std::vector<BracketPoint>& pts, double s) {
  std::vector<double> x, y;
  for (const auto& p : pts) {
    x.push_back(-std::pow(p.bracket, 1.0 / s));
    y.push_back(p.log_norm);
  }
  return fit_line(x, y);
}
}  // namespace

std::string mode_tag(Mode m) { return m == Mode::Roumieu ? "R" : "B"; }

Mode parse_mode(const std::string& s) {
  if (s == "R" || s == "r" || s == "roumieu" || s == "Roumieu") return Mode::Roumieu;
  if (s == "B" || s == "b" || s == "beurling" || s == "Beurling") return Mode::Beurling;
  throw ConfigurationError("unknown mode '" + s + "' (expected R or B)");
}

Profile parse_profile(const std::string& s) {
  if (s == "diagonal") return Profile::Diagonal;
  if (s == "dense") return Profile::Dense;
  if (s == "random_phase" || s == "random-phase") return Profile::RandomPhase;
  throw ConfigurationError("unknown profile '" + s + "' (expected diagonal, dense or random_phase)");
}

CoefficientField synthesize_profile(const CatalogPtr& catalog, const std::function<double(const RepInfo&)>& log_norm,
                                    Profile profile, std::uint64_t seed) {
  CoefficientField f(catalog);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  for (std::size_t r = 0; r < f.size(); ++r) {
    const RepInfo& info = (*catalog)[r];
    double norm = std::exp(log_norm(info));
    int d = info.dim;
    switch (profile) {
      case Profile::Diagonal:
        f[r] = Eigen::MatrixXcd::Identity(d, d) * (norm / std::sqrt(double(d)));
        break;
      case Profile::Dense:
        f[r].setConstant(norm / d);
        break;
      case Profile::RandomPhase:
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) f[r](i, j) = std::polar(norm / d, phase(rng));
        break;
    }
  }
  return f;
}

CoefficientField synthesize_gevrey(const CatalogPtr& catalog, double s, double B, Profile profile,
                                   std::uint64_t seed) {
  if (!(s > 0) || !(B > 0)) throw DomainError("synthesize_gevrey needs s > 0 and B > 0");
  return synthesize_profile(
      catalog, [&](const RepInfo& r) { return -B * std::pow(r.bracket, 1.0 / s); }, profile, seed);
}

std::vector<BracketPoint> bracket_profile(const MatrixField& field) {
  std::vector<BracketPoint> out;
  const DualCatalog& cat = field.catalog();
  for (std::size_t r = 0; r < field.size(); ++r) {
    double n = field.hs_norm(r);
    if (!(n > kNormFloor)) continue;
    double y = std::log(n);
    if (!out.empty() && cat[out.back().rep].lambda_sq == cat[r].lambda_sq) {
      if (y > out.back().log_norm) {
        out.back().log_norm = y;
        out.back().rep = r;
      }
      continue;
    }
    out.push_back({cat[r].bracket, y, r});
  }
  return out;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  std::size_t n = x.size();
  LineFit f;
  if (n == 0) return f;
  double mx = pairwise_sum(x) / n, my = pairwise_sum(y) / n;
  std::vector<double> sxy(n), sxx(n), syy(n);
  for (std::size_t i = 0; i < n; ++i) {
    sxy[i] = (x[i] - mx) * (y[i] - my);
    sxx[i] = (x[i] - mx) * (x[i] - mx);
    syy[i] = (y[i] - my) * (y[i] - my);
  }
  double Sxy = pairwise_sum(sxy), Sxx = pairwise_sum(sxx), Syy = pairwise_sum(syy);
  f.slope = Sxx > 0 ? Sxy / Sxx : 0.0;
  f.intercept = my - f.slope * mx;
  f.r2 = (Sxx > 0 && Syy > 0) ? std::clamp(Sxy * Sxy / (Sxx * Syy), 0.0, 1.0) : 0.0;
  return f;
}

DecayModel fit_decay_pinned(const CoefficientField& coeffs, double s) {
  auto prof = bracket_profile(coeffs);
  if (prof.size() < 3)
    throw InsufficientDataError("decay fit needs at least 3 nonzero brackets, got " + std::to_string(prof.size()));
  LineFit f = fit_points(prof, s);
  DecayModel m;
  m.s = s;
  m.B = f.slope;
  m.K = std::exp(f.intercept);
  m.r2 = f.r2;
  m.support = static_cast<int>(prof.size());
  m.low_quality = f.r2 < 0.9;
  return m;
}

DecayModel fit_decay(const CoefficientField& coeffs) {
  auto prof = bracket_profile(coeffs);
  if (prof.size() < 3)
    throw InsufficientDataError("decay fit needs at least 3 nonzero brackets, got " + std::to_string(prof.size()));
  constexpr int kSteps = 481;  // s = 0.20, 0.21, ..., 5.00
  std::vector<LineFit> fits(kSteps);
  parallel_for(kSteps, [&](std::size_t i) { fits[i] = fit_points(prof, 0.2 + 0.01 * i); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < kSteps; ++i)
    if (fits[i].r2 > fits[best].r2 + 1e-12) best = i;
  DecayModel m;
  m.s = 0.2 + 0.01 * best;
  m.B = fits[best].slope;
  m.K = std::exp(fits[best].intercept);
  m.r2 = fits[best].r2;
  m.support = static_cast<int>(prof.size());
  m.low_quality = m.r2 < 0.9 || best == 0 || best == kSteps - 1;
  return m;
}

std::string verdict_json(const GevreyVerdict& v) {
  auto finite = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); };
  nlohmann::json j;
  j["s"] = v.s;
  j["mode"] = mode_tag(v.mode);
  j["pass"] = v.pass;
  j["margin"] = finite(v.margin);
  j["B"] = v.model ? finite(v.model->B) : nlohmann::json(nullptr);
  j["K"] = v.model ? finite(v.model->K) : nlohmann::json(nullptr);
  j["r2"] = v.model ? finite(v.model->r2) : nlohmann::json(nullptr);
  j["witness_label"] = v.witness ? nlohmann::json(v.witness->label) : nlohmann::json(nullptr);
  if (v.constant_function) j["constant_function"] = true;
  if (v.band_limited) j["band_limited"] = true;
  if (v.outside_duality_range) j["outside_duality_range"] = true;
  if (!v.note.empty()) j["note"] = v.note;
  if (!v.diagnostics.empty()) {
    nlohmann::json d;
    for (const auto& [k, x] : v.diagnostics) d[k] = finite(x);
    j["diagnostics"] = d;
  }
  return j.dump();
}

Windows tail_windows(const std::vector<BracketPoint>& prof) {
  Windows w;
  std::size_t n = prof.size();
  if (n < 9) return w;
  double lo = std::log(prof.front().bracket), hi = std::log(prof.back().bracket);
  double c1 = lo + (hi - lo) / 3, c2 = lo + 2 * (hi - lo) / 3;
  for (const auto& p : prof) {
    double lb = std::log(p.bracket);
    if (lb >= c2) w.top.push_back(p);
    else if (lb >= c1) w.middle.push_back(p);
  }
  if (w.middle.size() < 3 || w.top.size() < 3) {
    w.middle.assign(prof.begin() + n / 3, prof.begin() + 2 * n / 3);
    w.top.assign(prof.begin() + 2 * n / 3, prof.end());
  }
  return w;
}

GevreyVerdict fourier_side_test(const CoefficientField& coeffs, double s, Mode mode) {
  if (!(s > 0)) throw DomainError("Gevrey order s must be positive, got " + std::to_string(s));
  GevreyVerdict v;
  v.mode = mode;
  v.s = s;
  v.outside_duality_range = s < 1;
  auto prof = bracket_profile(coeffs);
  const DualCatalog& cat = coeffs.catalog();
  if (prof.empty()) {
    v.pass = true;
    v.note = "zero field";
    return v;
  }
  if (prof.size() == 1 && cat[prof[0].rep].trivial()) {
    v.pass = true;
    v.constant_function = true;
    v.note = "constant function";
    return v;
  }
  Windows w = tail_windows(prof);
  if (w.middle.empty()) {
    v.pass = true;
    v.band_limited = true;
    v.note = "finitely supported on " + std::to_string(prof.size()) + " brackets";
    return v;
  }
  v.model = fit_decay_pinned(coeffs, s);
  LineFit mid = fit_points(w.middle, s), top = fit_points(w.top, s);
  double resid = -INFINITY;
  std::size_t resid_rep = w.top.front().rep;
  for (const auto& p : w.top) {
    double r = p.log_norm - (mid.intercept - mid.slope * std::pow(p.bracket, 1.0 / s));
    if (r > resid) {
      resid = r;
      resid_rep = p.rep;
    }
  }
  // Residual of the single global fit over the upper half of the range.
  double global_resid = -INFINITY;
  double half = prof.front().bracket + (prof.back().bracket - prof.front().bracket) / 2;
  for (const auto& p : prof)
    if (p.bracket >= half)
      global_resid = std::max(global_resid, p.log_norm - (std::log(v.model->K) - v.model->B * std::pow(p.bracket, 1.0 / s)));

  double ratio = mid.slope > 0 ? top.slope / mid.slope : 0.0;
  v.diagnostics = {{"B_mid", mid.slope},          {"B_top", top.slope},         {"K_mid", std::exp(mid.intercept)},
                   {"extrapolation_residual", resid}, {"rate_ratio", ratio}, {"global_residual", global_resid}};

  double m_resid = kLog10 - resid;
  double m_rate = std::min(safe_log(mid.slope / kBMin), safe_log(top.slope / kBMin));
  double margin = std::min(m_resid, m_rate);
  bool pass = margin >= 0;
  std::optional<std::size_t> witness;
  if (!pass) {
    if (m_resid < 0) {
      witness = resid_rep;
    } else {
      double best = -INFINITY;
      for (const auto& p : w.top) {
        double val = p.log_norm + kBMin * std::pow(p.bracket, 1.0 / s);
        if (val > best) best = val, witness = p.rep;
      }
    }
  }
  if (mode == Mode::Beurling) {
    double m_gain = safe_log(ratio / kRateGain);
    if (pass && m_gain < 0) {
      double best = -INFINITY;
      for (const auto& p : w.top) {
        double val = p.log_norm + kRateGain * mid.slope * std::pow(p.bracket, 1.0 / s);
        if (val > best) best = val, witness = p.rep;
      }
    }
    margin = std::min(margin, m_gain);
    pass = margin >= 0;
  }
  v.pass = pass;
  v.margin = margin;
  if (!pass && witness) v.witness = cat[*witness].index;
  return v;
}

SpaceSideReport space_side_report(const CoefficientField& coeffs, double s, int k_max, Mode mode) {
  if (!(s > 0)) throw DomainError("Gevrey order s must be positive, got " + std::to_string(s));
  if (k_max > 200) throw ResourceError("k_max " + std::to_string(k_max) + " exceeds the limit 200");
  if (k_max < 3) throw ContractViolation("k_max must be at least 3, got " + std::to_string(k_max));
  SpaceSideReport rep;
  GevreyVerdict& v = rep.verdict;
  v.mode = mode;
  v.s = s;
  v.outside_duality_range = s < 1;
  const DualCatalog& cat = coeffs.catalog();

  struct Term {
    std::size_t rep;
    double base;   // log d^{3/2} + log ||f^||
    double log_abs;
  };
  std::vector<Term> terms;
  bool any = false;
  for (std::size_t r = 0; r < coeffs.size(); ++r) {
    double n = coeffs.hs_norm(r);
    if (!(n > kNormFloor)) continue;
    any = true;
    terms.push_back({r, 1.5 * std::log(double(cat[r].dim)) + std::log(n), cat[r].trivial() ? -INFINITY : std::log(cat[r].abs)});
  }
  rep.u.assign(k_max + 1, -INFINITY);
  std::vector<double> buf;
  for (const auto& t : terms) buf.push_back(t.base);
  rep.u[0] = log_sum_exp(buf);
  rep.C = std::max(1.0, std::exp(rep.u[0]));
  bool nontrivial = std::any_of(terms.begin(), terms.end(), [](const Term& t) { return std::isfinite(t.log_abs); });
  if (!nontrivial) {
    v.pass = true;
    v.constant_function = any;
    v.note = any ? "constant function" : "zero field";
    return rep;
  }
  for (int k = 1; k <= k_max; ++k) {
    buf.clear();
    for (const auto& t : terms)
      if (std::isfinite(t.log_abs)) buf.push_back(t.base + 2.0 * k * t.log_abs);
    rep.u[k] = log_sum_exp(buf);
    rep.rho.push_back(std::exp((rep.u[k] - s * std::lgamma(2.0 * k + 1.0)) / (2.0 * k)));
  }
  rep.A = *std::max_element(rep.rho.begin(), rep.rho.end());

  // Orders whose dominant term sits in the top tenth of the bracket range
  // measure the truncation rather than the field.
  double bmin = cat[0].bracket, bmax = cat[cat.size() - 1].bracket;
  double edge = bmax - (bmax - bmin) / 10.0;
  int k_eff = 0;
  std::size_t edge_rep = terms.back().rep;
  for (int k = 1; k <= k_max; ++k) {
    double best = -INFINITY;
    std::size_t arg = 0;
    for (const auto& t : terms)
      if (std::isfinite(t.log_abs) && t.base + 2.0 * k * t.log_abs > best) best = t.base + 2.0 * k * t.log_abs, arg = t.rep;
    if (bmax > bmin && cat[arg].bracket >= edge) {
      edge_rep = arg;
      break;
    }
    k_eff = k;
  }
  if (k_eff < kMinInteriorOrder) {
    v.pass = false;
    v.margin = -INFINITY;
    v.witness = cat[edge_rep].index;
    v.note = "derivative bounds are dominated by the catalog edge from order " + std::to_string(k_eff + 1) +
             "; raise the cutoff";
    v.diagnostics = {{"interior_orders", double(k_eff)}, {"A", rep.A}, {"C", rep.C}};
    return rep;
  }
  k_max = k_eff;

  std::vector<double> lx, ly, kx, ky;
  for (int k = (k_max + 1) / 2; k <= k_max; ++k) {
    lx.push_back(std::log(double(k)));
    ly.push_back(std::log(rep.rho[k - 1]));
  }
  rep.growth_exponent = fit_line(lx, ly).slope;
  for (int k = 2; k <= k_max; ++k) {
    kx.push_back(k);
    ky.push_back(std::log(rep.rho[k - 1]));
  }
  std::vector<double> low(rep.rho.begin() + 1, rep.rho.begin() + k_max / 2);
  std::nth_element(low.begin(), low.begin() + low.size() / 2, low.end());
  double median = low.empty() ? rep.rho[0] : low[low.size() / 2];
  double high = *std::max_element(rep.rho.begin() + (k_max / 2 - 1), rep.rho.end());
  v.diagnostics = {{"growth_exponent", rep.growth_exponent},
                   {"A", rep.A},
                   {"C", rep.C},
                   {"rho_kmax", rep.rho.back()},
                   {"max_over_median", high / median},
                   {"slope_vs_k", fit_line(kx, ky).slope},
                   {"interior_orders", double(k_eff)}};

  double threshold = mode == Mode::Roumieu ? kGrowthSlack : -kGrowthSlack;
  v.margin = threshold - rep.growth_exponent;
  v.pass = v.margin >= 0;
  if (!v.pass) {
    double best = -INFINITY;
    for (const auto& t : terms) {
      double val = t.base + 2.0 * k_max * t.log_abs;
      if (std::isfinite(t.log_abs) && val > best) best = val, v.witness = cat[t.rep].index;
    }
  }
  return rep;
}

GevreyVerdict space_side_test(const CoefficientField& coeffs, double s, int k_max, Mode mode) {
  return space_side_report(coeffs, s, k_max, mode).verdict;
}

CrossCheckReport cross_check(const CoefficientField& coeffs, double s, Mode mode, int k_max) {
  CrossCheckReport r;
  r.fourier = fourier_side_test(coeffs, s, mode);
  r.space = space_side_test(coeffs, s, k_max, mode);
  r.agree = r.fourier.pass == r.space.pass;
  return r;
}

double infimum_decay_bound(double r, double s) {
  if (!(r > 0) || !(s > 0)) throw DomainError("infimum_decay_bound needs r > 0 and s > 0");
  return std::exp(-(s / std::numbers::e) * std::pow(r, 1.0 / s));
}

double infimum_decay_grid(double r, double s, int points) {
  if (!(r > 0) || !(s > 0)) throw DomainError("infimum_decay_grid needs r > 0 and s > 0");
  double hi = 10.0 * std::max(1.0, std::pow(r, 1.0 / s));
  double lr = std::log(r), best = INFINITY;
  for (int i = 1; i <= points; ++i) {
    double x = hi * i / points;
    best = std::min(best, s * x * std::log(x) - x * lr);
  }
  return std::exp(best);
}

}  // namespace gevrey
