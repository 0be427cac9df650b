#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gevrey {

enum class GroupFamily { Torus, SU2, SO3 };

struct GroupSpec {
  GroupFamily family = GroupFamily::SU2;
  int torus_dim = 0;  // only meaningful for Torus

  static GroupSpec torus(int n);
  static GroupSpec su2() { return {GroupFamily::SU2, 0}; }
  static GroupSpec so3() { return {GroupFamily::SO3, 0}; }

  int dim() const { return family == GroupFamily::Torus ? torus_dim : 3; }
  int rank() const { return family == GroupFamily::Torus ? torus_dim : 1; }
  // Euler-angle coordinate count for SU2/SO3, angle count for the torus.
  int coordinate_count() const { return dim(); }
  std::string name() const;  // "t1", "t2", ..., "su2", "so3"

  bool operator==(const GroupSpec&) const = default;
};

// Parses the names produced by GroupSpec::name ("torus3" is also accepted).
GroupSpec parse_group(const std::string& name);

struct RepIndex {
  std::vector<int> label;

  auto operator<=>(const RepIndex&) const = default;
  bool operator==(const RepIndex&) const = default;
};

std::string label_string(const RepIndex& r);

struct RepInfo {
  RepIndex index;
  int dim = 1;
  double lambda_sq = 0.0;
  double bracket = 1.0;
  double abs = 0.0;

  bool trivial() const { return lambda_sq == 0.0; }
};

// Spectral data of a single representation, without a catalog.
RepInfo rep_info(const GroupSpec& group, const RepIndex& rep);

class DualCatalog {
 public:
  DualCatalog(GroupSpec group, std::vector<RepInfo> reps, double cutoff);

  const GroupSpec& group() const { return group_; }
  double bracket_cutoff() const { return cutoff_; }
  double lambda1() const { return lambda1_; }

  std::size_t size() const { return reps_.size(); }
  const RepInfo& operator[](std::size_t i) const { return reps_[i]; }
  const std::vector<RepInfo>& reps() const { return reps_; }
  auto begin() const { return reps_.begin(); }
  auto end() const { return reps_.end(); }

  std::optional<std::size_t> find(const RepIndex& r) const;
  std::size_t position(const RepIndex& r) const;  // throws if absent
  std::size_t trivial_position() const { return trivial_; }

  // Smallest grid band whose quadrature is exact for this catalog:
  // max |k_j| (torus), max twice-spin (SU2), max spin (SO3).
  int required_band() const;

  bool same_as(const DualCatalog& other) const;

 private:
  GroupSpec group_;
  std::vector<RepInfo> reps_;
  double cutoff_;
  double lambda1_;
  std::size_t trivial_ = 0;
  std::map<std::vector<int>, std::size_t> lookup_;
};

DualCatalog enumerate_dual(const GroupSpec& group, double bracket_cutoff);

// Catalog holding all reps with label up to max_label (twice-spin for SU2,
// spin for SO3, max |k_j| for tori is not supported: use enumerate_dual).
DualCatalog catalog_up_to(const GroupSpec& group, int max_label);

struct WeylDimensionReport {
  double max_ratio = 0.0;
  RepIndex argmax;
};

WeylDimensionReport weyl_dimension_report(const DualCatalog& catalog);

std::vector<double> series_convergence_probe(const DualCatalog& catalog, double t);

double exp_dominance_check(const DualCatalog& catalog, double p, double B, double s);

std::string catalog_json(const DualCatalog& catalog);

}  // namespace gevrey
