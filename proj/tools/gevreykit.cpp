// gevreykit command-line front end.
//
// Exit codes: 0 success, 1 verdict differs from --expect (or verify failed),
// 2 usage/configuration, 3 data or contract error, 4 resource limit.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "gevrey/errors.hpp"
#include "gevrey/gevrey_analysis.hpp"
#include "gevrey/homogeneous_sphere.hpp"
#include "gevrey/io.hpp"
#include "gevrey/parallel.hpp"
#include "gevrey/ultra_dual.hpp"
#include "gevrey/verify.hpp"

using namespace gevrey;
using nlohmann::json;

namespace {

// JSON config files: top-level keys are global options, nested objects are
// keyed by subcommand name, e.g. {"workers": 2, "classify": {"s": 2}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> out;
    collect(j, {}, out);
    return out;
  }

 private:
  static std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

  static void collect(const json& j, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto p = parents;
        p.push_back(key);
        collect(value, p, out);
        continue;
      }
      CLI::ConfigItem item{parents, key, {}};
      if (value.is_array())
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      else
        item.inputs.push_back(scalar(value));
      out.push_back(std::move(item));
    }
  }
};

struct VerdictFail {};

std::istream& open_in(const std::string& path, std::unique_ptr<std::ifstream>& holder) {
  if (path == "-") return std::cin;
  holder = std::make_unique<std::ifstream>(path);
  if (!*holder) throw DataError("cannot open " + path);
  return *holder;
}

std::ostream& open_out(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
  if (path == "-") return std::cout;
  holder = std::make_unique<std::ofstream>(path);
  if (!*holder) throw DataError("cannot write " + path);
  return *holder;
}

struct FieldSource {
  std::string path = "-";
  std::string group;
  double cutoff = 0;

  MatrixField load() const {
    std::unique_ptr<std::ifstream> h;
    std::istream& is = open_in(path, h);
    std::optional<GroupSpec> g;
    if (!group.empty()) g = parse_group(group);
    std::optional<double> c;
    if (cutoff > 0) c = cutoff;
    return read_field_jsonl(is, g, c);
  }

  void add_to(CLI::App* app, const std::string& flag = "--in") {
    app->add_option(flag, path, "Field JSONL file ('-' for stdin)")->capture_default_str();
    app->add_option("--group", group, "Group when the stream has no header (t1, t2, ..., su2, so3)");
    app->add_option("--cutoff", cutoff, "Bracket cutoff when the stream has no header");
  }
};

void check_expect(const std::string& expect, bool pass) {
  if (expect.empty()) return;
  if ((expect == "pass") != pass) throw VerdictFail{};
}

json verdict(const GevreyVerdict& v) { return json::parse(verdict_json(v)); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

CatalogPtr catalog_from(const std::string& group, double cutoff, int band) {
  GroupSpec g = parse_group(group);
  if (cutoff > 0) return share(enumerate_dual(g, cutoff));
  if (band >= 0) return share(catalog_for_band(g, band));
  throw ConfigurationError("give --cutoff or --band");
}

std::vector<SpherePoint> read_points(const std::string& path) {
  std::unique_ptr<std::ifstream> h;
  std::vector<SpherePoint> pts;
  for (const auto& row : read_sphere_csv(open_in(path, h))) pts.push_back(row.point);
  return pts;
}

int run(int argc, char** argv) {
  CLI::App app{"Fourier analysis and Gevrey / ultradistribution classification on tori, SU(2) and SO(3)"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file (command-line flags win)");
  app.add_option_function<unsigned>("--workers", [](const unsigned& n) { set_worker_count(n); },
                                    "Worker threads (default: GEVREYKIT_WORKERS or all cores)");

  // catalog
  auto* cat_cmd = app.add_subcommand("catalog", "Dump the truncated dual as JSON");
  std::string cat_group = "su2";
  double cat_cutoff = 10;
  cat_cmd->add_option("--group", cat_group)->capture_default_str();
  cat_cmd->add_option("--cutoff", cat_cutoff, "Bracket cutoff")->capture_default_str();
  cat_cmd->callback([&] {
    auto c = enumerate_dual(parse_group(cat_group), cat_cutoff);
    json j = {{"group", c.group().name()},
              {"cutoff", c.bracket_cutoff()},
              {"lambda1", c.lambda1()},
              {"required_band", c.required_band()},
              {"reps", json::parse(catalog_json(c))}};
    emit(j);
  });

  // transform
  auto* tr_cmd = app.add_subcommand("transform", "Grid samples (CSV re,im) to coefficients (JSONL), or back");
  std::string tr_group = "su2", tr_in = "-", tr_out = "-";
  int tr_band = -1;
  double tr_cutoff = 0;
  bool tr_inverse = false, tr_nodes = false;
  tr_cmd->add_option("--group", tr_group)->capture_default_str();
  tr_cmd->add_option("--band", tr_band, "Grid band")->required();
  tr_cmd->add_option("--cutoff", tr_cutoff, "Bracket cutoff (default: everything the band resolves)");
  tr_cmd->add_option("--in", tr_in)->capture_default_str();
  tr_cmd->add_option("--out", tr_out)->capture_default_str();
  tr_cmd->add_flag("--inverse", tr_inverse, "Read a field, write its grid samples");
  tr_cmd->add_flag("--nodes", tr_nodes, "Write grid node coordinates and weights instead");
  tr_cmd->callback([&] {
    GroupSpec g = parse_group(tr_group);
    if (grid_node_count(g, tr_band) > double(kMaxGridNodes))
      throw ResourceError("grid for band " + std::to_string(tr_band) + " exceeds the node budget");
    GroupGrid grid = build_grid(g, tr_band);
    std::unique_ptr<std::ofstream> oh;
    std::ostream& os = open_out(tr_out, oh);
    if (tr_nodes) {
      os << "index";
      for (int c = 0; c < g.coordinate_count(); ++c) os << ",x" << c;
      os << ",weight\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        os << i;
        for (double x : grid.nodes[i].coords) os << "," << format17(x);
        os << "," << format17(grid.weights[i]) << "\n";
      }
      return;
    }
    std::unique_ptr<std::ifstream> ih;
    std::istream& is = open_in(tr_in, ih);
    if (tr_inverse) {
      MatrixField f = read_field_jsonl(is, g);
      write_samples_csv(os, synthesize_on_grid(grid, f));
      return;
    }
    std::vector<cd> samples = read_samples_csv(is);
    CatalogPtr cat = catalog_from(tr_group, tr_cutoff, tr_band);
    write_field_jsonl(os, forward_transform(grid, samples, cat));
  });

  // synthesize
  auto* syn_cmd = app.add_subcommand("synthesize", "Write a field with HS norms exp(-B <xi>^{1/s})");
  std::string syn_group = "su2", syn_profile = "diagonal", syn_out = "-";
  double syn_cutoff = 60, syn_s = 2, syn_B = 1;
  std::uint64_t syn_seed = 0;
  syn_cmd->add_option("--group", syn_group)->capture_default_str();
  syn_cmd->add_option("--cutoff", syn_cutoff)->capture_default_str();
  syn_cmd->add_option("--s", syn_s)->capture_default_str();
  syn_cmd->add_option("--B", syn_B)->capture_default_str();
  syn_cmd->add_option("--profile", syn_profile, "diagonal, dense or random_phase")->capture_default_str();
  syn_cmd->add_option("--seed", syn_seed)->capture_default_str();
  syn_cmd->add_option("--out", syn_out)->capture_default_str();
  syn_cmd->callback([&] {
    if (!(syn_s > 0) || !(syn_B > 0)) throw ConfigurationError("--s and --B must be positive");
    CatalogPtr cat = share(enumerate_dual(parse_group(syn_group), syn_cutoff));
    std::unique_ptr<std::ofstream> oh;
    write_field_jsonl(open_out(syn_out, oh), synthesize_gevrey(cat, syn_s, syn_B, parse_profile(syn_profile), syn_seed));
  });

  // classify
  auto* cls_cmd = app.add_subcommand("classify", "Gevrey class verdict for a coefficient field");
  FieldSource cls_src;
  cls_src.add_to(cls_cmd);
  double cls_s = 2;
  std::string cls_mode = "R", cls_side = "fourier", cls_expect, cls_decay;
  int cls_kmax = 40;
  cls_cmd->add_option("--s", cls_s)->capture_default_str();
  cls_cmd->add_option("--mode", cls_mode, "R (Roumieu) or B (Beurling)")->capture_default_str();
  cls_cmd->add_option("--side", cls_side)->check(CLI::IsMember({"fourier", "space", "both"}))->capture_default_str();
  cls_cmd->add_option("--k-max", cls_kmax, "Derivative order for the space side")->capture_default_str();
  cls_cmd->add_option("--expect", cls_expect)->check(CLI::IsMember({"pass", "fail"}));
  cls_cmd->add_option("--decay-csv", cls_decay, "Also write the decay data behind the verdict");
  cls_cmd->callback([&] {
    MatrixField f = cls_src.load();
    Mode mode = parse_mode(cls_mode);
    if (!cls_decay.empty()) emit_decay_csv(f, cls_decay);
    bool pass;
    if (cls_side == "fourier") {
      GevreyVerdict v = fourier_side_test(f, cls_s, mode);
      pass = v.pass;
      emit(verdict(v));
    } else if (cls_side == "space") {
      GevreyVerdict v = space_side_test(f, cls_s, cls_kmax, mode);
      pass = v.pass;
      emit(verdict(v));
    } else {
      CrossCheckReport c = cross_check(f, cls_s, mode, cls_kmax);
      pass = c.fourier.pass && c.space.pass;
      if (!c.agree) std::cerr << "warning: Fourier-side and space-side verdicts disagree\n";
      emit({{"pass", pass}, {"agree", c.agree}, {"fourier", verdict(c.fourier)}, {"space", verdict(c.space)}});
    }
    check_expect(cls_expect, pass);
  });

  // ultra-test
  auto* ut_cmd = app.add_subcommand("ultra-test", "Ultradistribution dual-class verdict for a sequence");
  FieldSource ut_src;
  ut_src.add_to(ut_cmd);
  double ut_s = 2;
  std::string ut_mode = "R", ut_expect;
  ut_cmd->add_option("--s", ut_s)->capture_default_str();
  ut_cmd->add_option("--mode", ut_mode)->capture_default_str();
  ut_cmd->add_option("--expect", ut_expect)->check(CLI::IsMember({"pass", "fail"}));
  ut_cmd->callback([&] {
    GevreyVerdict v = ultra_membership_test(ut_src.load(), ut_s, parse_mode(ut_mode));
    emit(verdict(v));
    check_expect(ut_expect, v.pass);
  });

  // pair
  auto* pair_cmd = app.add_subcommand("pair", "Evaluate a sequence on a coefficient field");
  std::string pair_seq, pair_field;
  pair_cmd->add_option("--seq", pair_seq, "Sequence JSONL")->required();
  pair_cmd->add_option("--field", pair_field, "Coefficient field JSONL")->required();
  pair_cmd->callback([&] {
    FieldSource a{pair_seq}, b{pair_field};
    try {
      cd v = pair(a.load(), b.load());
      emit({{"re", v.real()}, {"im", v.imag()}});
    } catch (const IllPairedError& e) {
      emit({{"error", "ill-paired"}, {"tail_fraction", e.tail_fraction()}});
      throw;
    }
  });

  // sphere
  auto* sph_cmd = app.add_subcommand("sphere", "Functions on S^2 through class-I SO(3) coefficients");
  sph_cmd->require_subcommand(1);
  int sph_band = 8;
  std::string sph_in = "-", sph_out = "-", sph_points;
  auto* sph_grid = sph_cmd->add_subcommand("grid", "Write the sphere sample points (beta,alpha,re,im)");
  sph_grid->add_option("--band", sph_band)->capture_default_str();
  sph_grid->add_option("--out", sph_out)->capture_default_str();
  sph_grid->callback([&] {
    SphereGrid sg = sphere_grid(build_grid(GroupSpec::so3(), sph_band));
    std::vector<SphereSample> rows;
    for (std::size_t i = 0; i < sg.size(); ++i) rows.push_back({sg.point(i), cd(0)});
    std::unique_ptr<std::ofstream> oh;
    write_sphere_csv(open_out(sph_out, oh), rows);
  });
  auto* sph_lift = sph_cmd->add_subcommand("lift", "Sphere samples on the grid to SO(3) coefficients");
  sph_lift->add_option("--band", sph_band)->capture_default_str();
  sph_lift->add_option("--in", sph_in)->capture_default_str();
  sph_lift->add_option("--out", sph_out)->capture_default_str();
  sph_lift->callback([&] {
    GroupGrid grid = build_grid(GroupSpec::so3(), sph_band);
    SphereGrid sg = sphere_grid(grid);
    std::unique_ptr<std::ifstream> ih;
    auto rows = read_sphere_csv(open_in(sph_in, ih));
    if (rows.size() != sg.size())
      throw DataError("expected " + std::to_string(sg.size()) + " sphere samples, got " + std::to_string(rows.size()));
    std::vector<cd> vals(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      SpherePoint p = sg.point(i);
      if (std::abs(rows[i].point.beta - p.beta) > 1e-9 || std::abs(rows[i].point.alpha - p.alpha) > 1e-9)
        throw DataError("row " + std::to_string(i + 1) + " is not at the grid point (use 'sphere grid')");
      vals[i] = rows[i].value;
    }
    CatalogPtr cat = share(catalog_up_to(GroupSpec::so3(), sph_band));
    std::unique_ptr<std::ofstream> oh;
    write_field_jsonl(open_out(sph_out, oh), forward_transform(grid, lift(sg, vals, grid), cat));
  });
  auto* sph_proj = sph_cmd->add_subcommand("project", "Keep the class-I part of an SO(3) field");
  FieldSource proj_src;
  proj_src.add_to(sph_proj);
  sph_proj->add_option("--out", sph_out)->capture_default_str();
  sph_proj->callback([&] {
    MatrixField f = proj_src.load();
    ClassIStructure st = so3_class_one(f.catalog_ptr());
    std::unique_ptr<std::ofstream> oh;
    write_field_jsonl(open_out(sph_out, oh), project_class_one(f, st));
  });
  auto* sph_series = sph_cmd->add_subcommand("series", "Evaluate a class-I field at sphere points");
  FieldSource ser_src;
  ser_src.add_to(sph_series);
  sph_series->add_option("--points", sph_points, "CSV of beta,alpha[,re,im] (default: the sphere grid of --band)");
  sph_series->add_option("--band", sph_band)->capture_default_str();
  sph_series->add_option("--out", sph_out)->capture_default_str();
  sph_series->callback([&] {
    MatrixField f = ser_src.load();
    ClassIStructure st = so3_class_one(f.catalog_ptr());
    std::vector<SpherePoint> pts;
    if (!sph_points.empty()) {
      pts = read_points(sph_points);
    } else {
      SphereGrid sg = sphere_grid(build_grid(GroupSpec::so3(), sph_band));
      for (std::size_t i = 0; i < sg.size(); ++i) pts.push_back(sg.point(i));
    }
    auto vals = sphere_series(f, st, pts);
    std::vector<SphereSample> rows;
    for (std::size_t i = 0; i < pts.size(); ++i) rows.push_back({pts[i], vals[i]});
    std::unique_ptr<std::ofstream> oh;
    write_sphere_csv(open_out(sph_out, oh), rows);
  });
  auto* sph_cls = sph_cmd->add_subcommand("classify", "Gevrey or dual-class verdict for a class-I field");
  FieldSource scls_src;
  scls_src.add_to(sph_cls);
  double scls_s = 2;
  std::string scls_mode = "R", scls_expect;
  bool scls_ultra = false;
  sph_cls->add_option("--s", scls_s)->capture_default_str();
  sph_cls->add_option("--mode", scls_mode)->capture_default_str();
  sph_cls->add_flag("--ultra", scls_ultra, "Treat the field as a distribution sequence");
  sph_cls->add_option("--expect", scls_expect)->check(CLI::IsMember({"pass", "fail"}));
  sph_cls->callback([&] {
    MatrixField f = scls_src.load();
    ClassIStructure st = so3_class_one(f.catalog_ptr());
    Mode mode = parse_mode(scls_mode);
    GevreyVerdict v = scls_ultra ? sphere_ultra_test(f, st, scls_s, mode) : sphere_gevrey_test(f, st, scls_s, mode);
    emit(verdict(v));
    check_expect(scls_expect, v.pass);
  });

  // probe
  auto* pr_cmd = app.add_subcommand("probe", "Numerical probes of the supporting estimates");
  std::string pr_lemma = "series", pr_group = "su2";
  std::vector<double> pr_t;
  double pr_cutoff = 500, pr_p = 1, pr_B = 1, pr_s = 2;
  int pr_band = 8, pr_trials = 50;
  std::uint64_t pr_seed = 1;
  pr_cmd->add_option("--lemma", pr_lemma)
      ->check(CLI::IsMember({"series", "hy", "normineq", "exp", "weyl"}))
      ->capture_default_str();
  pr_cmd->add_option("--group", pr_group)->capture_default_str();
  pr_cmd->add_option("--t", pr_t, "Exponents for the series probe (repeatable)");
  pr_cmd->add_option("--cutoff", pr_cutoff)->capture_default_str();
  pr_cmd->add_option("--band", pr_band, "Grid band for the hy probe")->capture_default_str();
  pr_cmd->add_option("--trials", pr_trials)->capture_default_str();
  pr_cmd->add_option("--seed", pr_seed)->capture_default_str();
  pr_cmd->add_option("--p", pr_p)->capture_default_str();
  pr_cmd->add_option("--B", pr_B)->capture_default_str();
  pr_cmd->add_option("--s", pr_s)->capture_default_str();
  pr_cmd->callback([&] {
    GroupSpec g = parse_group(pr_group);
    if (pr_lemma == "series") {
      if (pr_t.empty()) throw ConfigurationError("series probe needs at least one --t");
      auto cat = enumerate_dual(g, pr_cutoff);
      std::vector<std::vector<double>> sums;
      std::cout << "label,bracket";
      for (double t : pr_t) {
        sums.push_back(series_convergence_probe(cat, t));
        std::cout << ",S_t" << format17(t);
      }
      std::cout << "\n";
      for (std::size_t i = 0; i < cat.size(); ++i) {
        std::cout << '"' << label_string(cat[i].index) << "\"," << format17(cat[i].bracket);
        for (const auto& s : sums) std::cout << "," << format17(s[i]);
        std::cout << "\n";
      }
    } else if (pr_lemma == "hy") {
      GroupGrid grid = build_grid(g, pr_band);
      CatalogPtr cat = share(catalog_for_band(g, pr_band));
      std::mt19937_64 rng(pr_seed);
      json trials = json::array();
      double worst = INFINITY;
      for (int t = 0; t < pr_trials; ++t) {
        CoefficientField f = random_unit_field(cat, rng);
        auto samples = synthesize_on_grid(grid, f);
        HausdorffYoungGap gap = hausdorff_young_gap(grid, samples, forward_transform(grid, samples, cat));
        worst = std::min({worst, gap.func_l1 - gap.coeff_linf, gap.coeff_l1 - gap.inverse_sup});
        trials.push_back({{"coeff_linf", gap.coeff_linf},
                          {"func_l1", gap.func_l1},
                          {"inverse_sup", gap.inverse_sup},
                          {"coeff_l1", gap.coeff_l1}});
      }
      emit({{"group", g.name()}, {"band", pr_band}, {"min_slack", worst}, {"trials", trials}});
    } else if (pr_lemma == "normineq") {
      std::mt19937_64 rng(pr_seed);
      std::normal_distribution<double> n;
      const double pq[3][2] = {{1, 2}, {1, INFINITY}, {2, INFINITY}};
      json out = json::array();
      for (const auto& [p, q] : pq) {
        double worst_low = 0, worst_high = 0;
        for (int t = 0; t < pr_trials; ++t) {
          int d = 1 + t % 8;
          Eigen::MatrixXcd a(d, d);
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) a(i, j) = cd(n(rng), n(rng));
          auto r = matrix_norm_inequality(a, p, q);
          worst_low = std::max(worst_low, r.lhs_low / r.rhs_low);
          worst_high = std::max(worst_high, r.lhs_high / r.rhs_high);
        }
        out.push_back({{"p", p}, {"q", std::isinf(q) ? json("inf") : json(q)},
                       {"max_ratio_low", worst_low}, {"max_ratio_high", worst_high}});
      }
      emit(out);
    } else if (pr_lemma == "exp") {
      auto cat = enumerate_dual(g, pr_cutoff);
      emit({{"group", g.name()}, {"cutoff", pr_cutoff}, {"sup", exp_dominance_check(cat, pr_p, pr_B, pr_s)}});
    } else {
      auto cat = enumerate_dual(g, pr_cutoff);
      auto r = weyl_dimension_report(cat);
      emit({{"group", g.name()}, {"cutoff", pr_cutoff}, {"max_ratio", r.max_ratio}, {"argmax", r.argmax.label}});
    }
  });

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "Run the acceptance suite");
  bool ver_quick = false;
  bool ver_ok = true;
  ver_cmd->add_flag("--quick", ver_quick, "Smaller trial counts");
  ver_cmd->callback([&] {
    auto results = run_acceptance(ver_quick, [](const CriterionResult& r) {
      std::cout << format_result(r) << std::endl;
    });
    for (const auto& r : results) ver_ok = ver_ok && r.pass;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return ver_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const VerdictFail&) {
    return 1;
  } catch (const ConfigurationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 4;
  } catch (const IllPairedError& e) {
    std::cerr << "ill-paired: " << e.what() << " (tail fraction " << e.tail_fraction() << ")\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return 4;
  }
}
