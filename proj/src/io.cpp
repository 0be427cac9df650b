#include "gevrey/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "gevrey/errors.hpp"

namespace gevrey {

using nlohmann::json;

std::string format17(double x) {
  char buf[64];
  int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, n);
}

void write_field_jsonl(std::ostream& os, const MatrixField& field, bool header) {
  const DualCatalog& cat = field.catalog();
  if (header) os << json{{"group", cat.group().name()}, {"cutoff", cat.bracket_cutoff()}}.dump() << '\n';
  for (std::size_t r = 0; r < field.size(); ++r) {
    const auto& m = field[r];
    if (m.isZero(0.0)) continue;
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
      rows.push_back(std::move(row));
    }
    os << json{{"label", cat[r].index.label}, {"matrix", std::move(rows)}}.dump() << '\n';
  }
  if (!os) throw DataError("failed writing coefficient field");
}

MatrixField read_field_jsonl(std::istream& is, std::optional<GroupSpec> group, std::optional<double> cutoff) {
  std::vector<std::pair<std::vector<int>, Eigen::MatrixXcd>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const std::exception& e) {
      throw DataError("line " + std::to_string(lineno) + ": invalid JSON (" + e.what() + ")");
    }
    if (!j.is_object()) throw DataError("line " + std::to_string(lineno) + ": expected an object");
    if (!j.contains("label")) {
      if (j.contains("group") && !group) group = parse_group(j["group"].get<std::string>());
      if (j.contains("cutoff") && !cutoff) cutoff = j["cutoff"].get<double>();
      continue;
    }
    try {
      auto label = j.at("label").get<std::vector<int>>();
      const json& mat = j.at("matrix");
      int d = static_cast<int>(mat.size());
      Eigen::MatrixXcd m(d, d);
      for (int i = 0; i < d; ++i) {
        if (static_cast<int>(mat[i].size()) != d) throw DataError("matrix is not square");
        for (int k = 0; k < d; ++k) m(i, k) = cd(mat[i][k].at(0).get<double>(), mat[i][k].at(1).get<double>());
      }
      rows.emplace_back(std::move(label), std::move(m));
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::exception& e) {
      throw DataError("line " + std::to_string(lineno) + ": malformed rep entry (" + e.what() + ")");
    }
  }
  if (!group) throw DataError("field stream has no group header; pass --group");
  if (!cutoff) {
    double c = 1.0;
    for (const auto& [label, m] : rows) c = std::max(c, rep_info(*group, RepIndex{label}).bracket);
    cutoff = c;
  }
  CatalogPtr cat = share(enumerate_dual(*group, *cutoff));
  MatrixField f(cat);
  for (auto& [label, m] : rows) {
    auto pos = cat->find(RepIndex{label});
    if (!pos) throw DataError("rep " + label_string(RepIndex{label}) + " lies outside the catalog (cutoff " +
                              format17(*cutoff) + ")");
    if (m.rows() != (*cat)[*pos].dim)
      throw DataError("rep " + label_string(RepIndex{label}) + " needs a " + std::to_string((*cat)[*pos].dim) +
                      "x" + std::to_string((*cat)[*pos].dim) + " matrix");
    f[*pos] = std::move(m);
  }
  return f;
}

namespace {
double parse_double(const std::string& s, std::size_t lineno) {
  std::size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) throw DataError("line " + std::to_string(lineno) + ": empty field");
  std::string t = s.substr(a, b - a + 1);
  double v;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size())
    throw DataError("line " + std::to_string(lineno) + ": cannot parse number '" + t + "'");
  return v;
}

// Rows of numbers; a first row that does not parse is taken as the header.
std::vector<std::vector<double>> read_numeric_csv(std::istream& is, std::size_t columns) {
  std::vector<std::vector<double>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != columns)
      throw DataError("line " + std::to_string(lineno) + ": expected " + std::to_string(columns) + " columns");
    std::vector<double> row;
    try {
      for (const auto& c : cells) row.push_back(parse_double(c, lineno));
    } catch (const DataError&) {
      if (out.empty() && lineno == 1) continue;
      throw;
    }
    out.push_back(std::move(row));
  }
  return out;
}
}  // namespace

void write_samples_csv(std::ostream& os, std::span<const cd> samples) {
  os << "re,im\n";
  for (const cd& v : samples) os << format17(v.real()) << ',' << format17(v.imag()) << '\n';
  if (!os) throw DataError("failed writing samples");
}

std::vector<cd> read_samples_csv(std::istream& is) {
  std::vector<cd> out;
  for (const auto& row : read_numeric_csv(is, 2)) out.emplace_back(row[0], row[1]);
  return out;
}

void write_sphere_csv(std::ostream& os, const std::vector<SphereSample>& rows) {
  os << "beta,alpha,re,im\n";
  for (const auto& r : rows)
    os << format17(r.point.beta) << ',' << format17(r.point.alpha) << ',' << format17(r.value.real()) << ','
       << format17(r.value.imag()) << '\n';
  if (!os) throw DataError("failed writing sphere samples");
}

std::vector<SphereSample> read_sphere_csv(std::istream& is) {
  std::vector<SphereSample> out;
  for (const auto& row : read_numeric_csv(is, 4)) out.push_back({{row[0], row[1]}, cd(row[2], row[3])});
  return out;
}

void emit_decay_csv(const MatrixField& field, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open '" + path + "' for writing");
  os << "bracket,dim,hs_norm,log_hs_norm\n";
  for (std::size_t r = 0; r < field.size(); ++r) {
    double n = field.hs_norm(r);
    if (n == 0) continue;
    const RepInfo& info = field.catalog()[r];
    os << format17(info.bracket) << ',' << info.dim << ',' << format17(n) << ',' << format17(std::log(n)) << '\n';
  }
  if (!os) throw DataError("failed writing '" + path + "'");
}

std::vector<DecayRow> load_decay_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open '" + path + "'");
  std::vector<DecayRow> out;
  for (const auto& row : read_numeric_csv(is, 4))
    out.push_back({row[0], static_cast<int>(row[1]), row[2], row[3]});
  return out;
}

}  // namespace gevrey
