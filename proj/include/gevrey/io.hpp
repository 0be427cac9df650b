#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gevrey/fourier_core.hpp"
#include "gevrey/homogeneous_sphere.hpp"

namespace gevrey {

// JSON lines, one nonzero rep per line:
//   {"label":[...],"matrix":[[[re,im],...],...]}
// preceded (optionally) by a header line {"group":"su2","cutoff":60}.
void write_field_jsonl(std::ostream& os, const MatrixField& field, bool header = true);
MatrixField read_field_jsonl(std::istream& is, std::optional<GroupSpec> group = std::nullopt,
                             std::optional<double> cutoff = std::nullopt);

void write_samples_csv(std::ostream& os, std::span<const cd> samples);
std::vector<cd> read_samples_csv(std::istream& is);

struct SphereSample {
  SpherePoint point;
  cd value;
};
void write_sphere_csv(std::ostream& os, const std::vector<SphereSample>& rows);
std::vector<SphereSample> read_sphere_csv(std::istream& is);

// bracket,dim,hs_norm,log_hs_norm for every nonzero rep, 17 significant digits.
void emit_decay_csv(const MatrixField& field, const std::string& path);

struct DecayRow {
  double bracket = 0;
  int dim = 0;
  double hs_norm = 0;
  double log_hs_norm = 0;
};
std::vector<DecayRow> load_decay_csv(const std::string& path);

std::string format17(double x);

}  // namespace gevrey
