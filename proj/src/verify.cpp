#include "gevrey/verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <random>
#include <sstream>

#include "gevrey/errors.hpp"
#include "gevrey/gevrey_analysis.hpp"
#include "gevrey/homogeneous_sphere.hpp"
#include "gevrey/invariant_calculus.hpp"
#include "gevrey/ultra_dual.hpp"

namespace gevrey {

namespace {

using Rng = std::mt19937_64;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

struct Family {
  std::string name;
  GroupSpec group;
  int band;
};

CatalogPtr band_catalog(const GroupSpec& g, int band) { return share(catalog_for_band(g, band)); }

double max_coeff_error(const CoefficientField& a, const CoefficientField& b) {
  double e = 0;
  for (std::size_t r = 0; r < a.size(); ++r) e = std::max(e, (a[r] - b[r]).cwiseAbs().maxCoeff());
  return e;
}

// --- 1 -----------------------------------------------------------------
CriterionResult plancherel_inversion(bool quick) {
  CriterionResult res{1, "Plancherel/inversion", true, "", 0};
  std::vector<Family> fams = {{"T1", GroupSpec::torus(1), 16},
                              {"T2", GroupSpec::torus(2), 6},
                              {"SU2", GroupSpec::su2(), 12},
                              {"SO3", GroupSpec::so3(), 12}};
  int trials = quick ? 20 : 40;
  std::ostringstream os;
  for (const auto& fam : fams) {
    GroupGrid grid = build_grid(fam.group, fam.band);
    CatalogPtr cat = band_catalog(fam.group, fam.band);
    Rng rng(101);
    double rt = 0, parseval = 0;
    CoefficientField prev = random_unit_field(cat, rng);
    std::vector<cd> prev_samples = synthesize_on_grid(grid, prev);
    for (int t = 0; t < trials; ++t) {
      CoefficientField f = random_unit_field(cat, rng);
      std::vector<cd> samples = synthesize_on_grid(grid, f);
      CoefficientField back = forward_transform(grid, samples, cat);
      rt = std::max(rt, max_coeff_error(back, f));
      std::vector<cd> again = synthesize_on_grid(grid, back);
      for (std::size_t i = 0; i < samples.size(); ++i) rt = std::max(rt, std::abs(again[i] - samples[i]));
      std::vector<cd> prod(samples.size());
      for (std::size_t i = 0; i < samples.size(); ++i) prod[i] = samples[i] * std::conj(prev_samples[i]);
      parseval = std::max(parseval, std::abs(haar_integrate(grid, prod) - inner_product(f, prev)));
      prev = std::move(f);
      prev_samples = std::move(samples);
    }
    bool ok = rt < 1e-10 && parseval < 1e-10;
    res.pass = res.pass && ok;
    os << fam.name << " roundtrip " << sci(rt) << " parseval " << sci(parseval) << "; ";
  }
  res.detail = os.str();
  return res;
}

// --- 2 -----------------------------------------------------------------
double schur_residual(const GroupSpec& g, int band) {
  GroupGrid grid = build_grid(g, band);
  CatalogPtr cat = band_catalog(g, band);
  std::size_t nr = cat->size();
  // Columns: flattened (rep, i, j) coefficient values at each node.
  std::vector<std::size_t> offset(nr + 1, 0);
  for (std::size_t r = 0; r < nr; ++r) offset[r + 1] = offset[r] + (*cat)[r].dim * (*cat)[r].dim;
  Eigen::MatrixXcd V(grid.size(), offset[nr]);
  for (std::size_t node = 0; node < grid.size(); ++node)
    for (std::size_t r = 0; r < nr; ++r) {
      Eigen::MatrixXcd m = evaluate_rep(g, (*cat)[r].index, grid.nodes[node]);
      int d = (*cat)[r].dim;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) V(node, offset[r] + i * d + j) = m(i, j);
    }
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(grid.weights.data(), grid.size());
  Eigen::MatrixXcd gram = V.adjoint() * w.asDiagonal() * V;
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(gram.rows(), gram.cols());
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = offset[r]; c < offset[r + 1]; ++c) expect(c, c) = 1.0 / (*cat)[r].dim;
  return (gram - expect).cwiseAbs().maxCoeff();
}

CriterionResult schur_exactness(bool quick) {
  CriterionResult res{2, "Schur/grid exactness", true, "", 0};
  double su2 = schur_residual(GroupSpec::su2(), 6);
  res.pass = su2 < 1e-11;
  res.detail = "SU2 band 6 max residual " + sci(su2);
  if (!quick) {
    double so3 = schur_residual(GroupSpec::so3(), 6), t2 = schur_residual(GroupSpec::torus(2), 5);
    res.pass = res.pass && so3 < 1e-11 && t2 < 1e-11;
    res.detail += ", SO3 band 6 " + sci(so3) + ", T2 band 5 " + sci(t2);
  }
  return res;
}

// --- 3 -----------------------------------------------------------------
CriterionResult hausdorff_young(bool quick) {
  CriterionResult res{3, "Hausdorff-Young", true, "", 0};
  std::vector<Family> fams = {{"T1", GroupSpec::torus(1), 16},
                              {"T2", GroupSpec::torus(2), 6},
                              {"SU2", GroupSpec::su2(), quick ? 6 : 10},
                              {"SO3", GroupSpec::so3(), quick ? 6 : 10}};
  std::ostringstream os;
  for (const auto& fam : fams) {
    GroupGrid grid = build_grid(fam.group, fam.band);
    CatalogPtr cat = band_catalog(fam.group, fam.band);
    Rng rng(202);
    double slack1 = INFINITY, slack2 = INFINITY;
    for (int t = 0; t < 50; ++t) {
      // Alternate dense fields with sparse ones (a few random reps only).
      CoefficientField f = random_unit_field(cat, rng);
      if (t % 2 == 1) {
        std::uniform_int_distribution<std::size_t> pick(0, cat->size() - 1);
        std::size_t keep = pick(rng);
        for (std::size_t r = 0; r < f.size(); ++r)
          if (r != keep) f[r].setZero();
      }
      std::vector<cd> samples = synthesize_on_grid(grid, f);
      CoefficientField fh = forward_transform(grid, samples, cat);
      HausdorffYoungGap gap = hausdorff_young_gap(grid, samples, fh);
      slack1 = std::min(slack1, gap.func_l1 - gap.coeff_linf);
      slack2 = std::min(slack2, gap.coeff_l1 - gap.inverse_sup);
    }
    bool ok = slack1 >= -1e-9 && slack2 >= -1e-9;
    res.pass = res.pass && ok;
    os << fam.name << " min slack " << sci(slack1) << "/" << sci(slack2) << "; ";
  }
  res.detail = os.str();
  return res;
}

// --- 4 -----------------------------------------------------------------
CriterionResult matrix_norms(bool quick) {
  CriterionResult res{4, "Matrix norm inequalities", true, "", 0};
  Rng rng(303);
  std::normal_distribution<double> n;
  const double pq[3][2] = {{1, 2}, {1, INFINITY}, {2, INFINITY}};
  double worst = -INFINITY;
  int count = quick ? 100 : 400;
  for (int t = 0; t < count; ++t) {
    int d = 1 + t % 8;
    Eigen::MatrixXcd a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = cd(n(rng), n(rng));
    if (t % 3 == 1) a = a.col(0) * a.row(0);  // rank one
    for (const auto& [p, q] : pq) {
      auto r = matrix_norm_inequality(a, p, q);
      double tol1 = 1e-12 * std::max(1.0, r.rhs_low), tol2 = 1e-12 * std::max(1.0, r.rhs_high);
      worst = std::max({worst, (r.lhs_low - r.rhs_low) / std::max(1.0, r.rhs_low),
                        (r.lhs_high - r.rhs_high) / std::max(1.0, r.rhs_high)});
      if (r.lhs_low > r.rhs_low + tol1 || r.lhs_high > r.rhs_high + tol2) res.pass = false;
    }
  }
  res.detail = std::to_string(count) + " matrices, worst relative excess " + sci(worst);
  return res;
}

// --- 5 -----------------------------------------------------------------
CriterionResult series_convergence(bool) {
  CriterionResult res{5, "Series convergence", true, "", 0};
  CatalogPtr cat = share(enumerate_dual(GroupSpec::su2(), 500));
  auto rel = [&](double t) {
    auto s = series_convergence_probe(*cat, t);
    return (s.back() - s[s.size() - 2]) / s.back();
  };
  double r2 = rel(2.0), r15 = rel(1.5);
  res.pass = r2 < 1e-6 && r15 > 1e-4;
  res.detail = "SU2 cutoff 500: relative increment t=2 " + sci(r2) + ", t=1.5 " + sci(r15);
  return res;
}

// --- 6 -----------------------------------------------------------------
CriterionResult casimir_factorization(bool quick) {
  CriterionResult res{6, "Casimir and factorization", true, "", 0};
  CatalogPtr cat = share(enumerate_dual(GroupSpec::su2(), quick ? 15.0 : 25.0));
  double casimir = 0;
  std::vector<Symbol> x;
  for (int j = 1; j <= 3; ++j) x.push_back(vector_field_symbol(j, cat));
  for (std::size_t r = 0; r < cat->size(); ++r) {
    Eigen::MatrixXcd s = x[0][r] * x[0][r] + x[1][r] * x[1][r] + x[2][r] * x[2][r];
    s += (*cat)[r].lambda_sq * Eigen::MatrixXcd::Identity(s.rows(), s.cols());
    casimir = std::max(casimir, s.norm() / std::max(1.0, (*cat)[r].lambda_sq));
  }
  double fact = 0;
  int words = 0;
  for (int order = 0; order <= 4; ++order) {
    int k = order / 2 + 1;
    for (const auto& w : all_words(3, order)) {
      ++words;
      Symbol da = alpha_symbol(w, cat), pa = p_alpha_symbol(w, k, cat);
      for (std::size_t r = 0; r < cat->size(); ++r) {
        const RepInfo& info = (*cat)[r];
        if (info.trivial()) {
          if (pa[r].norm() != 0) fact = INFINITY;
          continue;
        }
        Eigen::MatrixXcd diff = da[r] - pa[r] * std::pow(info.lambda_sq, k);
        fact = std::max(fact, diff.norm() / std::max(1.0, da[r].norm()));
      }
    }
  }
  res.pass = casimir < 1e-10 && fact < 1e-10;
  res.detail = std::to_string(cat->size()) + " reps, " + std::to_string(words) + " words: casimir " + sci(casimir) +
               ", factorization " + sci(fact);
  return res;
}

// --- 7 -----------------------------------------------------------------
CriterionResult gevrey_equivalence(bool) {
  CriterionResult res{7, "Gevrey equivalence", true, "", 0};
  CatalogPtr cat = share(enumerate_dual(GroupSpec::torus(1), 30000.0));
  std::ostringstream os;
  int agree = 0, truth = 0, total = 0;
  for (double s0 : {0.5, 1.0, 2.0}) {
    CoefficientField f = synthesize_gevrey(cat, s0, 1.0);
    DecayModel m = fit_decay(f);
    bool rec = std::abs(m.s - s0) <= 0.05 * s0 && std::abs(m.B - 1.0) <= 0.1;
    res.pass = res.pass && rec;
    os << "s0=" << s0 << " fit s=" << m.s << " B=" << m.B << "; ";
    for (Mode mode : {Mode::Roumieu, Mode::Beurling})
      for (double s : {0.5, 1.0, 2.0, 3.0}) {
        CrossCheckReport c = cross_check(f, s, mode, 40);
        bool expect = mode == Mode::Roumieu ? s >= s0 : s > s0;
        ++total;
        agree += c.agree;
        truth += (c.fourier.pass == expect && c.space.pass == expect);
        if (!c.agree || c.fourier.pass != expect)
          os << "[" << mode_tag(mode) << " s0=" << s0 << " s=" << s << " fourier=" << c.fourier.pass
             << " space=" << c.space.pass << "] ";
      }
  }
  res.pass = res.pass && agree == total && truth == total;
  os << "agreement " << agree << "/" << total << ", expected verdicts " << truth << "/" << total;
  res.detail = os.str();
  return res;
}

// --- 8 -----------------------------------------------------------------
CriterionResult duality(bool) {
  CriterionResult res{8, "Duality", true, "", 0};
  std::ostringstream os;
  std::vector<CatalogPtr> seq_cats = {share(enumerate_dual(GroupSpec::torus(1), 1000.0)),
                                      share(enumerate_dual(GroupSpec::su2(), 30.0)),
                                      share(enumerate_dual(GroupSpec::so3(), 30.0))};
  for (const auto& cat : seq_cats)
    for (double s : {1.0, 2.0}) {
      GevreyVerdict v = ultra_membership_test(delta_field(cat), s, Mode::Roumieu);
      if (!v.pass) {
        res.pass = false;
        os << "delta fails on " << cat->group().name() << " at s=" << s << "; ";
      }
    }
  // Pairing with delta: phi band-limited well inside the catalog.
  std::vector<Family> fams = {{"T1", GroupSpec::torus(1), 16},
                              {"T2", GroupSpec::torus(2), 6},
                              {"SU2", GroupSpec::su2(), 12},
                              {"SO3", GroupSpec::so3(), 12}};
  double pair_err = 0;
  for (const auto& fam : fams) {
    CatalogPtr cat = band_catalog(fam.group, 2 * fam.band);
    Rng rng(404);
    for (int t = 0; t < 5; ++t) {
      CoefficientField phi = random_unit_field(cat, rng, fam.band);
      GroupElement e = identity_element(fam.group);
      cd at_e = inverse_transform(phi, std::span<const GroupElement>(&e, 1))[0];
      pair_err = std::max(pair_err, std::abs(pair(delta_field(cat), phi) - at_e));
    }
  }
  if (!(pair_err < 1e-9)) res.pass = false;
  os << "delta pairing error " << sci(pair_err) << "; ";
  CatalogPtr su2 = share(catalog_up_to(GroupSpec::su2(), 60));
  UltraSequence grow = synthesize_profile(su2, [](const RepInfo& r) { return std::sqrt(r.bracket); },
                                          Profile::Diagonal, 0);
  GevreyVerdict b = ultra_membership_test(grow, 2.0, Mode::Beurling);
  GevreyVerdict r = ultra_membership_test(grow, 2.0, Mode::Roumieu);
  if (!b.pass || r.pass || !r.witness) res.pass = false;
  os << "exp(<xi>^1/2) at s=2: Beurling-dual " << (b.pass ? "pass" : "fail") << ", Roumieu-dual "
     << (r.pass ? "pass" : "fail");
  if (r.witness) os << " witness " << label_string(*r.witness);
  res.detail = os.str();
  return res;
}

// --- 9 -----------------------------------------------------------------
CriterionResult perfectness(bool) {
  CriterionResult res{9, "Perfectness round-trip", true, "", 0};
  CatalogPtr cat = share(enumerate_dual(GroupSpec::torus(1), 3000.0));
  CoefficientField f = synthesize_gevrey(cat, 2.0, 1.0);
  PerfectnessReport p = perfectness_roundtrip(f, 2.0, Mode::Roumieu, {0.25, 0.5});
  std::ostringstream os;
  bool all = true;
  for (const auto& [bp, c] : p.series) {
    all = all && c.converged;
    os << "B'=" << bp << " tail " << sci(c.tail_fraction) << "; ";
  }
  res.pass = p.fourier_pass && all && p.resynthesis_error <= 1e-10;
  os << "resynthesis error " << sci(p.resynthesis_error);
  res.detail = os.str();
  return res;
}

// --- 10 ----------------------------------------------------------------
cd spherical_harmonic(int l, int m, const SpherePoint& p) {
  int am = std::abs(m);
  cd y = std::sph_legendre(l, am, p.beta) * std::polar(1.0, am * p.alpha);
  if (m < 0) y = (am % 2 ? -1.0 : 1.0) * std::conj(y);
  return y;
}

CriterionResult sphere(bool) {
  CriterionResult res{10, "Sphere", true, "", 0};
  std::ostringstream os;
  const int band = 8;
  GroupGrid grid = build_grid(GroupSpec::so3(), band);
  SphereGrid sg = sphere_grid(grid);
  CatalogPtr cat = share(catalog_up_to(GroupSpec::so3(), band));
  ClassIStructure st = so3_class_one(cat);
  Rng rng(505);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<SpherePoint> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({std::acos(1 - 2 * u(rng)), 2 * std::numbers::pi * u(rng)});
  double rt = 0, leak = 0;
  bool idem = true;
  for (int l = 0; l <= band; ++l)
    for (int m = -l; m <= l; ++m) {
      std::vector<cd> samples(sg.size());
      for (std::size_t i = 0; i < sg.size(); ++i) samples[i] = spherical_harmonic(l, m, sg.point(i));
      CoefficientField fh = forward_transform(grid, lift(sg, samples, grid), cat);
      if (auto lk = find_leakage(fh, st, 0.0)) leak = std::max(leak, lk->magnitude);
      CoefficientField proj = project_class_one(fh, st);
      CoefficientField twice = project_class_one(proj, st);
      for (std::size_t r = 0; r < proj.size(); ++r) idem = idem && (proj[r].array() == twice[r].array()).all();
      auto vals = sphere_series(proj, st, pts);
      for (std::size_t i = 0; i < pts.size(); ++i) rt = std::max(rt, std::abs(vals[i] - spherical_harmonic(l, m, pts[i])));
    }
  res.pass = rt < 1e-9 && leak < 1e-10 && idem;
  os << "Y_lm round-trip " << sci(rt) << ", leakage " << sci(leak) << ", idempotent " << (idem ? "yes" : "no") << "; ";

  CatalogPtr big = share(catalog_up_to(GroupSpec::so3(), 60));
  ClassIStructure bst = so3_class_one(big);
  int same = 0, total = 0;
  for (double s0 : {0.5, 1.0, 2.0}) {
    CoefficientField f = project_class_one(synthesize_gevrey(big, s0, 1.0, Profile::Dense), bst);
    for (Mode mode : {Mode::Roumieu, Mode::Beurling})
      for (double s : {1.0, 2.0, 3.0}) {
        GevreyVerdict a = sphere_gevrey_test(f, bst, s, mode), b = fourier_side_test(f, s, mode);
        ++total;
        same += a.pass == b.pass && a.margin == b.margin;
      }
  }
  res.pass = res.pass && same == total;
  os << "sphere vs group verdicts " << same << "/" << total;
  res.detail = os.str();
  return res;
}

}  // namespace

std::string format_result(const CriterionResult& r) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f s", r.seconds);
  return std::string(r.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + " " + r.name + " (" + buf +
         "): " + r.detail;
}

std::vector<CriterionResult> run_acceptance(bool quick, const std::function<void(const CriterionResult&)>& on_result) {
  using Fn = CriterionResult (*)(bool);
  const Fn suite[] = {plancherel_inversion, schur_exactness,  hausdorff_young, matrix_norms, series_convergence,
                      casimir_factorization, gevrey_equivalence, duality,        perfectness,  sphere};
  std::vector<CriterionResult> out;
  int id = 0;
  for (Fn fn : suite) {
    ++id;
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = fn(quick);
    } catch (const std::exception& e) {
      r = CriterionResult{id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace gevrey
