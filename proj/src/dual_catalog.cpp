#include "gevrey/dual_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

#include "gevrey/errors.hpp"

namespace gevrey {

GroupSpec GroupSpec::torus(int n) {
  if (n < 1) throw ConfigurationError("torus dimension must be positive, got " + std::to_string(n));
  return {GroupFamily::Torus, n};
}

std::string GroupSpec::name() const {
  switch (family) {
    case GroupFamily::Torus:
      return "t" + std::to_string(torus_dim);
    case GroupFamily::SU2:
      return "su2";
    case GroupFamily::SO3:
      return "so3";
  }
  return "?";
}

GroupSpec parse_group(const std::string& raw) {
  std::string name = raw;
  std::transform(name.begin(), name.end(), name.begin(), ::tolower);
  if (name == "su2") return GroupSpec::su2();
  if (name == "so3") return GroupSpec::so3();
  std::string digits;
  if (name.rfind("torus", 0) == 0) digits = name.substr(5);
  else if (name.rfind("t", 0) == 0) digits = name.substr(1);
  if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit))
    return GroupSpec::torus(std::stoi(digits));
  throw ConfigurationError("unsupported group family '" + raw + "' (expected tN, su2 or so3)");
}

std::string label_string(const RepIndex& r) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < r.label.size(); ++i) os << (i ? "," : "") << r.label[i];
  os << ']';
  return os.str();
}

RepInfo rep_info(const GroupSpec& group, const RepIndex& rep) {
  RepInfo info;
  info.index = rep;
  switch (group.family) {
    case GroupFamily::Torus: {
      if (static_cast<int>(rep.label.size()) != group.torus_dim)
        throw ContractViolation("torus label " + label_string(rep) + " has wrong length");
      double sq = 0;
      for (int k : rep.label) sq += double(k) * k;
      info.dim = 1;
      info.lambda_sq = sq;
      break;
    }
    case GroupFamily::SU2: {
      if (rep.label.size() != 1 || rep.label[0] < 0)
        throw ContractViolation("SU2 label must be one nonnegative twice-spin, got " + label_string(rep));
      int l = rep.label[0];
      info.dim = l + 1;
      info.lambda_sq = double(l) * (l + 2) / 4.0;
      break;
    }
    case GroupFamily::SO3: {
      if (rep.label.size() != 1 || rep.label[0] < 0)
        throw ContractViolation("SO3 label must be one nonnegative spin, got " + label_string(rep));
      int l = rep.label[0];
      info.dim = 2 * l + 1;
      info.lambda_sq = double(l) * (l + 1);
      break;
    }
  }
  info.bracket = std::sqrt(1.0 + info.lambda_sq);
  info.abs = std::sqrt(info.lambda_sq);
  return info;
}

namespace {
double analytic_lambda1(const GroupSpec& g) {
  switch (g.family) {
    case GroupFamily::Torus:
      return 1.0;
    case GroupFamily::SU2:
      return std::sqrt(3.0) / 2.0;
    case GroupFamily::SO3:
      return std::sqrt(2.0);
  }
  return 1.0;
}

bool within_cutoff(double bracket, double cutoff) { return bracket <= cutoff * (1.0 + 1e-12); }
}  // namespace

DualCatalog::DualCatalog(GroupSpec group, std::vector<RepInfo> reps, double cutoff)
    : group_(group), reps_(std::move(reps)), cutoff_(cutoff), lambda1_(analytic_lambda1(group)) {
  std::sort(reps_.begin(), reps_.end(), [](const RepInfo& a, const RepInfo& b) {
    if (a.lambda_sq != b.lambda_sq) return a.lambda_sq < b.lambda_sq;
    return a.index < b.index;
  });
  double l1 = INFINITY;
  int trivial_count = 0;
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    lookup_.emplace(reps_[i].index.label, i);
    if (reps_[i].trivial()) {
      trivial_ = i;
      ++trivial_count;
    } else {
      l1 = std::min(l1, reps_[i].abs);
    }
  }
  if (trivial_count != 1)
    throw ContractViolation("catalog must contain exactly one trivial rep");
  if (std::isfinite(l1)) lambda1_ = l1;
}

std::optional<std::size_t> DualCatalog::find(const RepIndex& r) const {
  auto it = lookup_.find(r.label);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t DualCatalog::position(const RepIndex& r) const {
  auto p = find(r);
  if (!p) throw ContractViolation("rep " + label_string(r) + " is not in the catalog");
  return *p;
}

int DualCatalog::required_band() const {
  int band = 0;
  for (const auto& r : reps_)
    for (int k : r.index.label) band = std::max(band, std::abs(k));
  return band;
}

bool DualCatalog::same_as(const DualCatalog& other) const {
  if (this == &other) return true;
  if (!(group_ == other.group_) || reps_.size() != other.reps_.size()) return false;
  for (std::size_t i = 0; i < reps_.size(); ++i)
    if (reps_[i].index != other.reps_[i].index) return false;
  return true;
}

DualCatalog enumerate_dual(const GroupSpec& group, double cutoff) {
  if (!(cutoff >= 1.0))
    throw ConfigurationError("bracket cutoff must be at least 1, got " + std::to_string(cutoff));
  std::vector<RepInfo> reps;
  // Largest label value whose lambda_sq can fit under the cutoff.
  double lam_max = std::sqrt(std::max(0.0, cutoff * cutoff * (1.0 + 2e-12) - 1.0));
  switch (group.family) {
    case GroupFamily::Torus: {
      int n = group.torus_dim;
      if (n < 1) throw ConfigurationError("torus dimension must be positive");
      int K = static_cast<int>(std::floor(lam_max));
      double candidates = std::pow(2.0 * K + 1.0, n);
      if (candidates > 5e7)
        throw ResourceError("torus enumeration needs " + std::to_string(candidates) + " lattice candidates");
      std::vector<int> k(n, -K);
      for (;;) {
        RepInfo info = rep_info(group, RepIndex{k});
        if (within_cutoff(info.bracket, cutoff)) reps.push_back(std::move(info));
        int j = 0;
        while (j < n && k[j] == K) k[j++] = -K;
        if (j == n) break;
        ++k[j];
      }
      break;
    }
    case GroupFamily::SU2:
    case GroupFamily::SO3: {
      for (int l = 0;; ++l) {
        RepInfo info = rep_info(group, RepIndex{{l}});
        if (!within_cutoff(info.bracket, cutoff)) break;
        reps.push_back(std::move(info));
      }
      break;
    }
  }
  return DualCatalog(group, std::move(reps), cutoff);
}

DualCatalog catalog_up_to(const GroupSpec& group, int max_label) {
  if (group.family == GroupFamily::Torus)
    throw ConfigurationError("catalog_up_to is defined for SU2 and SO3 only");
  if (max_label < 0) throw ConfigurationError("max label must be nonnegative");
  RepInfo top = rep_info(group, RepIndex{{max_label}});
  return enumerate_dual(group, top.bracket);
}

WeylDimensionReport weyl_dimension_report(const DualCatalog& catalog) {
  if (catalog.size() == 0) throw ContractViolation("empty catalog");
  double e = (catalog.group().dim() - catalog.group().rank()) / 2.0;
  WeylDimensionReport rep;
  for (const auto& r : catalog) {
    double ratio = r.dim / std::pow(r.bracket, e);
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax = r.index;
    }
  }
  return rep;
}

std::vector<double> series_convergence_probe(const DualCatalog& catalog, double t) {
  std::vector<double> sums;
  sums.reserve(catalog.size());
  double acc = 0.0;
  for (const auto& r : catalog) {
    acc += double(r.dim) * r.dim * std::pow(r.bracket, -2.0 * t);
    sums.push_back(acc);
  }
  return sums;
}

double exp_dominance_check(const DualCatalog& catalog, double p, double B, double s) {
  if (!(B > 0) || !(s > 0) || !(p >= 0))
    throw DomainError("exp_dominance_check needs B > 0, s > 0, p >= 0");
  double best = 0.0;
  for (const auto& r : catalog)
    best = std::max(best, std::exp(p * std::log(double(r.dim)) - B * std::pow(r.bracket, 1.0 / s)));
  return best;
}

std::string catalog_json(const DualCatalog& catalog) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : catalog)
    arr.push_back({{"label", r.index.label}, {"dim", r.dim}, {"lambda_sq", r.lambda_sq}, {"bracket", r.bracket}});
  return arr.dump();
}

}  // namespace gevrey
