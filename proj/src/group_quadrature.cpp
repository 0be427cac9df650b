#include "gevrey/group_quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gevrey/errors.hpp"
#include "gevrey/parallel.hpp"

namespace gevrey {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double x, double period) {
  double r = std::fmod(x, period);
  if (r < 0) r += period;
  if (r >= period) r -= period;
  return r;
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// d^j_{mn}(beta) at j = max(|m|,|n|), all in twice units.
double wigner_seed(int m2, int n2, double c, double s) {
  int j2 = std::max(std::abs(m2), std::abs(n2));
  if (std::abs(m2) != j2) {
    double sign = ((m2 - n2) / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * wigner_seed(n2, m2, c, s);
  }
  if (m2 == j2) {
    int a = (j2 + n2) / 2, b = (j2 - n2) / 2;
    double v = std::exp(0.5 * log_binomial(j2, a)) * ipow(c, a) * ipow(s, b);
    return b % 2 == 0 ? v : -v;
  }
  int a = (j2 - n2) / 2, b = (j2 + n2) / 2;
  return std::exp(0.5 * log_binomial(j2, a)) * ipow(c, a) * ipow(s, b);
}

void check_coords(const GroupSpec& g, const GroupElement& x) {
  if (static_cast<int>(x.coords.size()) != g.coordinate_count())
    throw ContractViolation("group element has " + std::to_string(x.coords.size()) + " coordinates, " +
                            g.name() + " needs " + std::to_string(g.coordinate_count()));
}

Eigen::Matrix2cd pauli(int j) {
  Eigen::Matrix2cd p;
  const cd i(0, 1);
  if (j == 1) p << 0, 1, 1, 0;
  else if (j == 2) p << 0, -i, i, 0;
  else p << 1, 0, 0, -1;
  return p;
}
}  // namespace

GroupElement identity_element(const GroupSpec& g) { return GroupElement{std::vector<double>(g.coordinate_count(), 0.0)}; }

GroupElement normalize(const GroupSpec& g, GroupElement x) {
  check_coords(g, x);
  switch (g.family) {
    case GroupFamily::Torus:
      for (double& v : x.coords) v = wrap(v, kTwoPi);
      break;
    case GroupFamily::SU2: {
      // alpha and gamma shifted together by 2 pi leave the SU2 matrix unchanged.
      double shift = std::floor(x.coords[0] / kTwoPi) * kTwoPi;
      x.coords[0] = wrap(x.coords[0] - shift, kTwoPi);
      x.coords[2] = wrap(x.coords[2] - shift, 2 * kTwoPi);
      break;
    }
    case GroupFamily::SO3:
      x.coords[0] = wrap(x.coords[0], kTwoPi);
      x.coords[2] = wrap(x.coords[2], kTwoPi);
      break;
  }
  return x;
}

Eigen::Matrix2cd su2_matrix(double a, double b, double g) {
  const cd i(0, 1);
  double c = std::cos(b / 2), s = std::sin(b / 2);
  Eigen::Matrix2cd u;
  u << std::exp(-i * (a + g) / 2.0) * c, -std::exp(-i * (a - g) / 2.0) * s,
      std::exp(i * (a - g) / 2.0) * s, std::exp(i * (a + g) / 2.0) * c;
  return u;
}

GroupElement su2_euler(const Eigen::Matrix2cd& u) {
  double a00 = std::abs(u(0, 0)), a10 = std::abs(u(1, 0));
  double beta = 2.0 * std::atan2(a10, a00);
  double alpha, gamma;
  if (a10 < 1e-14) {
    alpha = 0;
    gamma = -2.0 * std::arg(u(0, 0));
  } else if (a00 < 1e-14) {
    alpha = 0;
    gamma = -2.0 * std::arg(u(1, 0));
  } else {
    alpha = std::arg(u(1, 0)) - std::arg(u(0, 0));
    gamma = -std::arg(u(0, 0)) - std::arg(u(1, 0));
  }
  // The half-angle phases fix (alpha, gamma) only up to the center {+-1}.
  if ((su2_matrix(alpha, beta, gamma) - u).norm() > (su2_matrix(alpha, beta, gamma + kTwoPi) - u).norm())
    gamma += kTwoPi;
  return normalize(GroupSpec::su2(), GroupElement{{alpha, beta, gamma}});
}

Eigen::Matrix3d so3_matrix(double a, double b, double g) {
  auto rz = [](double t) {
    Eigen::Matrix3d r;
    r << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
    return r;
  };
  Eigen::Matrix3d ry;
  ry << std::cos(b), 0, std::sin(b), 0, 1, 0, -std::sin(b), 0, std::cos(b);
  return rz(a) * ry * rz(g);
}

GroupElement so3_euler(const Eigen::Matrix3d& r) {
  double beta = std::acos(std::clamp(r(2, 2), -1.0, 1.0));
  double alpha, gamma;
  if (std::sin(beta) > 1e-12) {
    alpha = std::atan2(r(1, 2), r(0, 2));
    gamma = std::atan2(r(2, 1), -r(2, 0));
  } else if (r(2, 2) > 0) {
    alpha = 0;
    gamma = std::atan2(r(1, 0), r(0, 0));
  } else {
    alpha = 0;
    gamma = std::atan2(r(1, 0), r(1, 1));
  }
  return normalize(GroupSpec::so3(), GroupElement{{alpha, beta, gamma}});
}

Eigen::Matrix3d so3_from_su2(const Eigen::Matrix2cd& u) {
  Eigen::Matrix3d r;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) r(a, b) = 0.5 * (pauli(a + 1) * u * pauli(b + 1) * u.adjoint()).trace().real();
  return r;
}

GroupElement compose(const GroupSpec& g, const GroupElement& x, const GroupElement& y) {
  check_coords(g, x);
  check_coords(g, y);
  switch (g.family) {
    case GroupFamily::Torus: {
      GroupElement z = x;
      for (std::size_t j = 0; j < z.coords.size(); ++j) z.coords[j] += y.coords[j];
      return normalize(g, z);
    }
    case GroupFamily::SU2:
      return su2_euler(su2_matrix(x.coords[0], x.coords[1], x.coords[2]) *
                       su2_matrix(y.coords[0], y.coords[1], y.coords[2]));
    case GroupFamily::SO3:
      return so3_euler(so3_matrix(x.coords[0], x.coords[1], x.coords[2]) *
                       so3_matrix(y.coords[0], y.coords[1], y.coords[2]));
  }
  return x;
}

GroupElement one_parameter(const GroupSpec& g, int j, double t) {
  if (j < 1 || j > g.dim()) throw ContractViolation("basis index " + std::to_string(j) + " out of range for " + g.name());
  if (g.family == GroupFamily::Torus) {
    GroupElement x = identity_element(g);
    x.coords[j - 1] = t;
    return normalize(g, x);
  }
  Eigen::Matrix2cd u = std::cos(t / 2) * Eigen::Matrix2cd::Identity() + cd(0, std::sin(t / 2)) * pauli(j);
  if (g.family == GroupFamily::SU2) return su2_euler(u);
  return so3_euler(so3_from_su2(u));
}

std::vector<Eigen::MatrixXd> wigner_d_all(int L, double beta, bool integer_only) {
  std::vector<Eigen::MatrixXd> out(L + 1);
  for (int l2 = 0; l2 <= L; ++l2)
    if (!integer_only || l2 % 2 == 0) out[l2] = Eigen::MatrixXd::Zero(l2 + 1, l2 + 1);
  double c = std::cos(beta / 2), s = std::sin(beta / 2), cb = std::cos(beta);
  for (int m2 = -L; m2 <= L; ++m2) {
    if (integer_only && (m2 % 2 != 0)) continue;
    for (int n2 = -L; n2 <= L; ++n2) {
      if (((m2 - n2) % 2) != 0) continue;
      int j0 = std::max(std::abs(m2), std::abs(n2));
      double M = m2 / 2.0, N = n2 / 2.0;
      double prev = 0.0, cur = wigner_seed(m2, n2, c, s);
      for (int l2 = j0;; l2 += 2) {
        out[l2]((l2 - m2) / 2, (l2 - n2) / 2) = cur;
        if (l2 + 2 > L) break;
        double J = l2 / 2.0, next;
        if (l2 == 0) {
          next = cb * cur;
        } else {
          double a = cb - M * N / (J * (J + 1));
          double b = std::sqrt((J * J - M * M) * (J * J - N * N)) / (J * (2 * J + 1));
          double scale = (J + 1) * (2 * J + 1) / std::sqrt(((J + 1) * (J + 1) - M * M) * ((J + 1) * (J + 1) - N * N));
          next = (a * cur - b * prev) * scale;
        }
        prev = cur;
        cur = next;
      }
    }
  }
  return out;
}

Eigen::MatrixXd wigner_d(int two_j, double beta) {
  if (two_j < 0) throw ContractViolation("negative twice-spin");
  return wigner_d_all(two_j, beta, two_j % 2 == 0)[two_j];
}

Eigen::MatrixXcd evaluate_rep(const GroupSpec& g, const RepIndex& rep, const GroupElement& x) {
  check_coords(g, x);
  RepInfo info = rep_info(g, rep);
  if (g.family == GroupFamily::Torus) {
    double phase = 0;
    for (std::size_t j = 0; j < rep.label.size(); ++j) phase += rep.label[j] * x.coords[j];
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = std::polar(1.0, phase);
    return m;
  }
  int l2 = g.family == GroupFamily::SU2 ? rep.label[0] : 2 * rep.label[0];
  Eigen::MatrixXd d = wigner_d(l2, x.coords[1]);
  int dim = info.dim;
  Eigen::MatrixXcd out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    double m = (l2 - 2 * i) / 2.0;
    for (int k = 0; k < dim; ++k) {
      double n = (l2 - 2 * k) / 2.0;
      out(i, k) = std::polar(d(i, k), -m * x.coords[0] - n * x.coords[2]);
    }
  }
  return out;
}

double grid_node_count(const GroupSpec& g, int band) {
  switch (g.family) {
    case GroupFamily::Torus:
      return std::pow(2.0 * band + 1.0, g.torus_dim);
    case GroupFamily::SU2:
      return (2.0 * band + 2) * (band + 1.0) * (4.0 * band + 4);
    case GroupFamily::SO3:
      return (2.0 * band + 2) * (band + 1.0) * (2.0 * band + 2);
  }
  return 0;
}

GroupGrid build_grid(const GroupSpec& g, int band) {
  if (band < 0) throw ConfigurationError("band must be nonnegative");
  double count = grid_node_count(g, band);
  if (count > kMaxGridNodes)
    throw ResourceError("grid for " + g.name() + " at band " + std::to_string(band) + " needs " +
                        std::to_string(static_cast<long long>(count)) + " nodes (budget " +
                        std::to_string(static_cast<long long>(kMaxGridNodes)) + ")");
  GroupGrid grid;
  grid.group = g;
  grid.band = band;
  std::size_t n = static_cast<std::size_t>(count);
  grid.nodes.reserve(n);
  grid.weights.reserve(n);
  if (g.family == GroupFamily::Torus) {
    int N = 2 * band + 1;
    for (int a = 0; a < N; ++a) grid.axis0.push_back(kTwoPi * a / N);
    std::vector<int> idx(g.torus_dim, 0);
    for (std::size_t node = 0; node < n; ++node) {
      GroupElement x;
      for (int j = 0; j < g.torus_dim; ++j) x.coords.push_back(grid.axis0[idx[j]]);
      grid.nodes.push_back(std::move(x));
      grid.weights.push_back(1.0 / count);
      for (int j = g.torus_dim - 1; j >= 0; --j) {
        if (++idx[j] < N) break;
        idx[j] = 0;
      }
    }
    return grid;
  }
  int na = 2 * band + 2, nb = band + 1;
  int ng = g.family == GroupFamily::SU2 ? 4 * band + 4 : 2 * band + 2;
  double gamma_period = g.family == GroupFamily::SU2 ? 2 * kTwoPi : kTwoPi;
  for (int a = 0; a < na; ++a) grid.axis0.push_back(kTwoPi * a / na);
  for (int c = 0; c < ng; ++c) grid.axis2.push_back(gamma_period * c / ng);
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(nb);
  if (!table) throw ResourceError("Gauss-Legendre table allocation failed");
  std::vector<std::pair<double, double>> gl(nb);
  for (int b = 0; b < nb; ++b) gsl_integration_glfixed_point(-1.0, 1.0, b, &gl[b].first, &gl[b].second, table);
  gsl_integration_glfixed_table_free(table);
  // Ascending beta means descending cos beta.
  std::sort(gl.begin(), gl.end(), [](auto& p, auto& q) { return p.first > q.first; });
  for (auto& [x, w] : gl) {
    grid.axis1.push_back(std::acos(std::clamp(x, -1.0, 1.0)));
    grid.axis1_weights.push_back(w / 2.0);
  }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < nb; ++b)
      for (int c = 0; c < ng; ++c) {
        grid.nodes.push_back(GroupElement{{grid.axis0[a], grid.axis1[b], grid.axis2[c]}});
        grid.weights.push_back(grid.axis1_weights[b] / (double(na) * ng));
      }
  return grid;
}

cd haar_integrate(const GroupGrid& grid, std::span<const cd> samples) {
  if (samples.size() != grid.size())
    throw ContractViolation("sample count " + std::to_string(samples.size()) + " does not match grid size " +
                            std::to_string(grid.size()));
  std::vector<cd> terms(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) terms[i] = grid.weights[i] * samples[i];
  return pairwise_sum(terms);
}

}  // namespace gevrey
