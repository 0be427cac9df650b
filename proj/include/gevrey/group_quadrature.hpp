#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "gevrey/dual_catalog.hpp"

namespace gevrey {

using cd = std::complex<double>;

// Torus: angles x_j. SU2/SO3: Euler angles (alpha, beta, gamma) for
// Rz(alpha) Ry(beta) Rz(gamma).
struct GroupElement {
  std::vector<double> coords;
};

GroupElement identity_element(const GroupSpec& group);
// Brings coordinates into the canonical ranges without changing the element.
GroupElement normalize(const GroupSpec& group, GroupElement x);

Eigen::Matrix2cd su2_matrix(double alpha, double beta, double gamma);
GroupElement su2_euler(const Eigen::Matrix2cd& u);
Eigen::Matrix3d so3_matrix(double alpha, double beta, double gamma);
GroupElement so3_euler(const Eigen::Matrix3d& r);
// Rotation covered by u.
Eigen::Matrix3d so3_from_su2(const Eigen::Matrix2cd& u);

GroupElement compose(const GroupSpec& group, const GroupElement& x, const GroupElement& y);
// exp(t X_j), j = 1..dim.
GroupElement one_parameter(const GroupSpec& group, int j, double t);

// Wigner small-d matrix for twice-spin two_j; row/col 0 is m = +j.
Eigen::MatrixXd wigner_d(int two_j, double beta);
// All d^j(beta) for twice-spins 0..two_j_max (only even ones when
// integer_only); unused slots are empty.
std::vector<Eigen::MatrixXd> wigner_d_all(int two_j_max, double beta, bool integer_only = false);

Eigen::MatrixXcd evaluate_rep(const GroupSpec& group, const RepIndex& rep, const GroupElement& x);

struct GroupGrid {
  GroupSpec group;
  int band = 0;
  std::vector<GroupElement> nodes;
  std::vector<double> weights;

  // Tensor axes. Torus: axis0 holds the angles of every coordinate.
  // SU2/SO3: axis0 = alpha, axis1 = beta (Gauss-Legendre in cos beta),
  // axis2 = gamma. Node index = (ia * n_beta + ib) * n_gamma + ig.
  std::vector<double> axis0, axis1, axis2;
  std::vector<double> axis1_weights;  // normalized so they sum to 1

  std::size_t size() const { return nodes.size(); }
};

// Node count build_grid would allocate.
double grid_node_count(const GroupSpec& group, int band);
inline constexpr double kMaxGridNodes = 8388608.0;

GroupGrid build_grid(const GroupSpec& group, int band);

cd haar_integrate(const GroupGrid& grid, std::span<const cd> samples);

}  // namespace gevrey
