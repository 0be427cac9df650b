#include "gevrey/ultra_dual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gevrey/errors.hpp"
#include "gevrey/parallel.hpp"

namespace gevrey {

namespace {
constexpr double kLog10 = 2.302585092994046;
constexpr double kRateGain = 1.25;
constexpr int kSeminormCap = 60;

double safe_log(double x) { return std::log(std::max(x, 1e-300)); }

LineFit growth_fit(const std::vector<BracketPoint>& pts, double s) {
  std::vector<double> x, y;
  for (const auto& p : pts) {
    x.push_back(std::pow(p.bracket, 1.0 / s));
    y.push_back(p.log_norm);
  }
  return fit_line(x, y);
}

double log_sum_exp(std::vector<double> v) {
  if (v.empty()) return -INFINITY;
  double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  for (double& x : v) x = std::exp(x - m);
  return m + std::log(pairwise_sum(v));
}

double max_bracket(const DualCatalog& c) { return c.size() ? c[c.size() - 1].bracket : 1.0; }
}  // namespace

GevreyVerdict ultra_membership_test(const UltraSequence& seq, double s, Mode mode) {
  if (!(s >= 1.0))
    throw DomainError("ultradistribution tests need s >= 1 (the duality theory is restricted to s >= 1), got " +
                      std::to_string(s));
  GevreyVerdict v;
  v.mode = mode;
  v.s = s;
  const DualCatalog& cat = seq.catalog();
  auto prof = bracket_profile(seq);
  if (prof.empty()) {
    v.pass = true;
    v.note = "zero sequence";
    return v;
  }
  Windows w = tail_windows(prof);
  if (w.middle.empty()) {
    v.pass = true;
    v.band_limited = true;
    v.note = "finitely supported on " + std::to_string(prof.size()) + " brackets";
    return v;
  }
  LineFit all = growth_fit(prof, s), mid = growth_fit(w.middle, s), top = growth_fit(w.top, s);
  DecayModel model;
  model.s = s;
  model.B = all.slope;
  model.K = std::exp(all.intercept);
  model.r2 = all.r2;
  model.support = static_cast<int>(prof.size());
  model.low_quality = all.r2 < 0.9;
  v.model = model;

  double resid = -INFINITY;
  std::size_t resid_rep = w.top.front().rep;
  for (const auto& p : w.top) {
    double r = p.log_norm - (mid.intercept + mid.slope * std::pow(p.bracket, 1.0 / s));
    if (r > resid) resid = r, resid_rep = p.rep;
  }
  v.diagnostics = {{"G_mid", mid.slope}, {"G_top", top.slope}, {"extrapolation_residual", resid}};
  // Sup-growth of ||v|| e^{-B' t} from the middle to the top window, for the
  // B' grid scaled from the global growth rate.
  const double fractions[] = {1.0, 0.5, 0.25, 0.125};
  for (double f : fractions) {
    double bp = f * std::max(all.slope, 0.0);
    double gm = -INFINITY, gt = -INFINITY;
    for (const auto& p : w.middle) gm = std::max(gm, p.log_norm - bp * std::pow(p.bracket, 1.0 / s));
    for (const auto& p : w.top) gt = std::max(gt, p.log_norm - bp * std::pow(p.bracket, 1.0 / s));
    v.diagnostics["sup_growth_at_" + std::to_string(f).substr(0, 5) + "B0"] = gt - gm;
  }

  double margin = kLog10 - resid;
  std::optional<std::size_t> witness;
  if (margin < 0) witness = resid_rep;
  if (mode == Mode::Roumieu) {
    double m_rate = INFINITY;
    if (top.slope > 0) m_rate = std::max(safe_log(mid.slope / (kRateGain * top.slope)), safe_log(kBMin / top.slope));
    if (margin >= 0 && m_rate < 0) {
      double bp = mid.slope / kRateGain, best = -INFINITY;
      for (const auto& p : w.top) {
        double val = p.log_norm - bp * std::pow(p.bracket, 1.0 / s);
        if (val > best) best = val, witness = p.rep;
      }
    }
    margin = std::min(margin, m_rate);
  }
  v.margin = margin;
  v.pass = margin >= 0;
  if (!v.pass && witness) v.witness = cat[*witness].index;
  return v;
}

SeriesCheck series_check(const DualCatalog& catalog, const std::vector<double>& terms) {
  if (terms.size() != catalog.size()) throw ContractViolation("series length does not match catalog");
  SeriesCheck c;
  double bmin = catalog.size() ? catalog[0].bracket : 1.0, bmax = max_bracket(catalog);
  double edge = bmax - (bmax - bmin) / 10.0;
  std::vector<double> tail;
  for (std::size_t r = 0; r < terms.size(); ++r)
    if (catalog[r].bracket >= edge && bmax > bmin) tail.push_back(terms[r]);
  c.total = pairwise_sum(terms);
  c.tail = pairwise_sum(tail);
  if (!std::isfinite(c.total)) c.tail_fraction = 1.0;
  else c.tail_fraction = c.total > 0 ? c.tail / c.total : 0.0;
  c.converged = std::isfinite(c.total) && c.tail_fraction <= kCauchyTolerance;
  return c;
}

namespace {
std::vector<double> alpha_terms(const UltraSequence& seq, double s, double B) {
  if (!(s > 0)) throw DomainError("s must be positive");
  std::vector<double> t(seq.size());
  for (std::size_t r = 0; r < seq.size(); ++r) {
    double n = seq.hs_norm(r);
    t[r] = n > 0 ? std::exp(-B * std::pow(seq.catalog()[r].bracket, 1.0 / s) + std::log(n)) : 0.0;
  }
  return t;
}
}  // namespace

std::vector<double> alpha_dual_series_probe(const UltraSequence& seq, double s, double B) {
  auto t = alpha_terms(seq, s, B);
  std::vector<double> sums(t.size());
  double acc = 0;
  for (std::size_t r = 0; r < t.size(); ++r) sums[r] = acc += t[r];
  return sums;
}

SeriesCheck alpha_dual_series_check(const UltraSequence& seq, double s, double B) {
  return series_check(seq.catalog(), alpha_terms(seq, s, B));
}

cd pair(const UltraSequence& seq, const CoefficientField& coeffs) {
  require_same_catalog(seq, coeffs, "pair");
  const DualCatalog& cat = coeffs.catalog();
  std::vector<double> abs_terms(cat.size());
  std::vector<cd> terms(cat.size());
  for (std::size_t r = 0; r < cat.size(); ++r) {
    abs_terms[r] = cat[r].dim * coeffs.hs_norm(r) * seq.hs_norm(r);
    terms[r] = double(cat[r].dim) * (coeffs[r] * seq[r]).trace();
  }
  SeriesCheck c = series_check(cat, abs_terms);
  if (!c.converged)
    throw IllPairedError("pairing diverges: tail over the top tenth of the bracket range carries " +
                             std::to_string(c.tail_fraction) + " of the absolute sum (limit 1e-8)",
                         c.tail_fraction);
  return pairwise_sum(terms);
}

ContinuityReport continuity_modulus(const UltraSequence& seq, double s, const std::vector<double>& eps_grid) {
  if (!(s >= 1.0)) throw DomainError("continuity_modulus needs s >= 1, got " + std::to_string(s));
  const DualCatalog& cat = seq.catalog();
  const CatalogPtr& cp = seq.catalog_ptr();
  ContinuityReport rep;
  rep.s = s;
  rep.k_cap = kSeminormCap;

  struct Member {
    std::string name;
    bool top_third;
    double log_pair;              // log |v(phi)|
    std::vector<double> log_L;  // log L_k, k = 0..cap
  };
  std::vector<Member> battery;
  double top_edge = std::exp(2.0 * std::log(max_bracket(cat)) / 3.0);
  // Matrix units E_00 at every rep.
  for (std::size_t r = 0; r < cat.size(); ++r) {
    Member m;
    m.name = "unit" + label_string(cat[r].index);
    m.top_third = cat[r].bracket >= top_edge && cat.size() > 1;
    m.log_pair = std::log(std::max(cat[r].dim * std::abs(seq[r](0, 0)), 1e-300));
    for (int k = 0; k <= kSeminormCap; ++k) {
      if (k > 0 && cat[r].trivial()) m.log_L.push_back(-INFINITY);
      else m.log_L.push_back(1.5 * std::log(double(cat[r].dim)) + (k ? k * std::log(cat[r].abs) : 0.0));
    }
    battery.push_back(std::move(m));
  }
  for (double B : {0.5, 1.0, 2.0}) {
    CoefficientField phi = synthesize_gevrey(cp, s, B);
    Member m;
    m.name = "gevrey(B=" + std::to_string(B).substr(0, 3) + ")";
    m.top_third = false;
    std::vector<cd> terms(cat.size());
    for (std::size_t r = 0; r < cat.size(); ++r) terms[r] = double(cat[r].dim) * (phi[r] * seq[r]).trace();
    m.log_pair = std::log(std::max(std::abs(pairwise_sum(terms)), 1e-300));
    for (int k = 0; k <= kSeminormCap; ++k) {
      std::vector<double> buf;
      for (std::size_t r = 0; r < cat.size(); ++r) {
        double n = phi.hs_norm(r);
        if (!(n > 0) || (k > 0 && cat[r].trivial())) continue;
        buf.push_back(1.5 * std::log(double(cat[r].dim)) + (k ? k * std::log(cat[r].abs) : 0.0) + std::log(n));
      }
      m.log_L.push_back(log_sum_exp(buf));
    }
    battery.push_back(std::move(m));
  }
  for (double eps : eps_grid) {
    if (!(eps > 0)) throw DomainError("epsilon must be positive");
    ContinuityPoint pt;
    pt.epsilon = eps;
    double best = -INFINITY;
    const Member* arg = nullptr;
    for (const auto& m : battery) {
      double sn = -INFINITY;
      for (int k = 0; k <= kSeminormCap; ++k)
        sn = std::max(sn, k * std::log(eps) - s * std::lgamma(k + 1.0) + m.log_L[k]);
      double ratio = m.log_pair - sn;
      if (ratio > best) best = ratio, arg = &m;
    }
    pt.C = std::exp(best);
    if (arg) {
      pt.argmax = arg->name;
      pt.finite = !arg->top_third;
    }
    rep.curve.push_back(pt);
  }
  return rep;
}

PerfectnessReport perfectness_roundtrip(const CoefficientField& coeffs, double s, Mode mode,
                                        const std::vector<double>& b_grid, std::span<const GroupElement> points) {
  PerfectnessReport rep;
  rep.fourier_pass = fourier_side_test(coeffs, s, mode).pass;
  const DualCatalog& cat = coeffs.catalog();
  bool any = false, all = true;
  for (double bp : b_grid) {
    std::vector<double> terms(cat.size());
    for (std::size_t r = 0; r < cat.size(); ++r) {
      double n = coeffs.hs_norm(r);
      terms[r] = n > 0 ? std::exp(bp * std::pow(cat[r].bracket, 1.0 / s) + std::log(n)) : 0.0;
    }
    SeriesCheck c = series_check(cat, terms);
    any = any || c.converged;
    all = all && c.converged;
    rep.series.emplace_back(bp, c);
  }
  rep.series_pass = b_grid.empty() || (mode == Mode::Roumieu ? any : all);

  std::vector<GroupElement> pts(points.begin(), points.end());
  if (pts.empty()) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const GroupSpec& g = cat.group();
    for (int i = 0; i < 16; ++i) {
      GroupElement x = identity_element(g);
      if (g.family == GroupFamily::Torus) {
        for (double& c : x.coords) c = 2 * std::numbers::pi * u(rng);
      } else {
        x.coords = {2 * std::numbers::pi * u(rng), std::acos(1 - 2 * u(rng)), (g.family == GroupFamily::SU2 ? 4 : 2) * std::numbers::pi * u(rng)};
      }
      pts.push_back(x);
    }
  }
  auto reference = inverse_transform(coeffs, pts);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    // Direct sum of d Tr(w xi(x)), kept separate from inverse_transform.
    cd acc = 0;
    for (std::size_t r = 0; r < cat.size(); ++r) {
      if (coeffs.hs_norm(r) == 0) continue;
      acc += double(cat[r].dim) * (coeffs[r] * evaluate_rep(cat.group(), cat[r].index, pts[p])).trace();
    }
    rep.resynthesis_error = std::max(rep.resynthesis_error, std::abs(acc - reference[p]));
  }
  rep.pass = rep.fourier_pass && rep.series_pass && rep.resynthesis_error <= 1e-10;
  return rep;
}

}  // namespace gevrey
