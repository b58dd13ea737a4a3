#ifndef CARNOT_GROUP_HPP
#define CARNOT_GROUP_HPP

#include <Eigen/Dense>

#include <vector>

namespace carnot {

/// Exponential coordinates x_1 ... x_n of a group element.
using GroupPoint = Eigen::VectorXd;
/// Read-only view accepted wherever a point is consumed (binds to vectors and maps).
using PointRef = Eigen::Ref<const Eigen::VectorXd>;

enum class GroupKind
{
  Euclidean,
  Heisenberg,
  HType
};

/**
 * Catalog descriptor of a stratified (Carnot) group in exponential coordinates.
 *
 * Coordinate layout
 * =================
 * Euclidean R^n:   x_1 ... x_n                       (one layer)
 * Heisenberg H^n:  x_1 ... x_n, y_1 ... y_n, l       (layers [2n, 1])
 * H-type (m, k):   v_1 ... v_m, z_1 ... z_k          (layers [m, k])
 *
 * Heisenberg groups use the chart (z,l)(z',l') = (z+z', l+l'+2 sum Im(z_j conj(z'_j)));
 * H-type groups use the step-2 BCH chart (v,z)(v',z') = (v+v', z+z'+[v,v']/2) with
 * [v,v']_s = <J^s v, v'>. The two charts differ by a dilation of the center (l = 4z).
 */
class CarnotGroup
{
public:
  GroupKind kind() const { return kind_; }
  int dim() const { return dim_; }
  /// dim V_1 (number of horizontal generators).
  int horizontal_dim() const { return layer_dims_.front(); }
  const std::vector<int>& layer_dims() const { return layer_dims_; }
  const std::vector<int>& dilation_exponents() const { return exponents_; }
  /// Q = sum_j j * dim V_j.
  int homogeneous_dimension() const;

  /// n for H^n and R^n; zero for H-type groups.
  int order() const { return order_; }
  /// J^1 ... J^k for H-type groups, empty otherwise.
  const std::vector<Eigen::MatrixXd>& structure() const { return structure_; }
  /// Vertical coefficient of the H-type norm (|v|^4 + kappa |z|^2)^(1/4).
  double norm_kappa() const { return kappa_; }

  /// Copy with a different H-type norm coefficient. Group law is unchanged.
  CarnotGroup with_norm_kappa(double kappa) const;

  friend CarnotGroup make_heisenberg(int n);
  friend CarnotGroup make_htype(int m, int k, const std::vector<Eigen::MatrixXd>& J, double kappa);
  friend CarnotGroup make_euclidean(int n);

private:
  CarnotGroup() = default;

  GroupKind kind_ = GroupKind::Euclidean;
  int dim_ = 0;
  int order_ = 0;
  std::vector<int> layer_dims_;
  std::vector<int> exponents_;
  std::vector<Eigen::MatrixXd> structure_;
  double kappa_ = 16.0;
};

CarnotGroup make_heisenberg(int n);
/// Validates skew-symmetry and J_z^2 = -|z|^2 Id (tolerance 1e-12) before constructing.
CarnotGroup make_htype(int m, int k, const std::vector<Eigen::MatrixXd>& J, double kappa = 16.0);
CarnotGroup make_euclidean(int n);

/// Left multiplication by i, j, k on the quaternions H = R^4: the (4, 3) H-type group.
std::vector<Eigen::MatrixXd> quaternionic_structure();
CarnotGroup make_quaternionic_htype(double kappa = 16.0);

GroupPoint multiply(const CarnotGroup& g, PointRef x, PointRef y);
GroupPoint inverse(const CarnotGroup& g, PointRef x);
GroupPoint dilate(const CarnotGroup& g, double lambda, PointRef x);
int homogeneous_dimension(const CarnotGroup& g);

/// Largest deviation ||J_z^2 + |z|^2 Id|| over the coordinate axes and their pairwise sums.
double htype_defect(const std::vector<Eigen::MatrixXd>& J);

/// Throws InvalidParameter when x does not have the group's coordinate dimension.
void check_point(const CarnotGroup& g, PointRef x);

} // namespace carnot

#endif // CARNOT_GROUP_HPP
