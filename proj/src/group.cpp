#include "carnot/group.hpp"

#include "carnot/error.hpp"

#include <cmath>
#include <string>

namespace carnot {

namespace {

constexpr double htype_tolerance = 1e-12;

std::vector<int> exponents_from_layers(const std::vector<int>& layers)
{
  std::vector<int> out;
  for (std::size_t j = 0; j < layers.size(); ++j)
    out.insert(out.end(), layers[j], static_cast<int>(j) + 1);
  return out;
}

} // namespace

int CarnotGroup::homogeneous_dimension() const
{
  int q = 0;
  for (std::size_t j = 0; j < layer_dims_.size(); ++j)
    q += static_cast<int>(j + 1) * layer_dims_[j];
  return q;
}

CarnotGroup CarnotGroup::with_norm_kappa(double kappa) const
{
  if (!(kappa > 0.0))
    throw InvalidParameter("norm_kappa must be positive");
  CarnotGroup copy = *this;
  copy.kappa_ = kappa;
  return copy;
}

CarnotGroup make_heisenberg(int n)
{
  if (n < 1)
    throw InvalidParameter("Heisenberg order n must be >= 1, got " + std::to_string(n));
  CarnotGroup g;
  g.kind_ = GroupKind::Heisenberg;
  g.order_ = n;
  g.dim_ = 2 * n + 1;
  g.layer_dims_ = {2 * n, 1};
  g.exponents_ = exponents_from_layers(g.layer_dims_);
  return g;
}

CarnotGroup make_euclidean(int n)
{
  if (n < 1)
    throw InvalidParameter("Euclidean dimension must be >= 1, got " + std::to_string(n));
  CarnotGroup g;
  g.kind_ = GroupKind::Euclidean;
  g.order_ = n;
  g.dim_ = n;
  g.layer_dims_ = {n};
  g.exponents_ = exponents_from_layers(g.layer_dims_);
  return g;
}

double htype_defect(const std::vector<Eigen::MatrixXd>& J)
{
  // J_z^2 = sum_{s,t} z_s z_t J^s J^t is quadratic in z, so the identity holds for
  // every z iff it holds on the axes e_s and on the sums e_s + e_t.
  double worst = 0.0;
  const auto m = J.empty() ? 0 : J.front().rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  for (std::size_t s = 0; s < J.size(); ++s) {
    worst = std::max(worst, (J[s] * J[s] + id).norm());
    for (std::size_t t = s + 1; t < J.size(); ++t) {
      const Eigen::MatrixXd jz = J[s] + J[t];
      worst = std::max(worst, (jz * jz + 2.0 * id).norm() / 2.0);
    }
  }
  return worst;
}

CarnotGroup make_htype(int m, int k, const std::vector<Eigen::MatrixXd>& J, double kappa)
{
  if (m < 1 || k < 1)
    throw InvalidParameter("H-type dimensions must satisfy m >= 1, k >= 1");
  if (static_cast<int>(J.size()) != k)
    throw InvalidParameter("expected " + std::to_string(k) + " structure matrices, got " +
                           std::to_string(J.size()));
  if (!(kappa > 0.0))
    throw InvalidParameter("norm_kappa must be positive");
  for (const auto& js : J) {
    if (js.rows() != m || js.cols() != m)
      throw InvalidParameter("structure matrices must be " + std::to_string(m) + "x" +
                             std::to_string(m));
    if ((js + js.transpose()).norm() > htype_tolerance)
      throw NotHType("structure matrix is not skew-symmetric");
  }
  const double defect = htype_defect(J);
  if (defect > htype_tolerance)
    throw NotHType("J_z^2 = -|z|^2 Id violated (defect " + std::to_string(defect) + ")");

  CarnotGroup g;
  g.kind_ = GroupKind::HType;
  g.dim_ = m + k;
  g.layer_dims_ = {m, k};
  g.exponents_ = exponents_from_layers(g.layer_dims_);
  g.structure_ = J;
  g.kappa_ = kappa;
  return g;
}

std::vector<Eigen::MatrixXd> quaternionic_structure()
{
  // q = a + b i + c j + d k  ->  (a, b, c, d); left multiplication matrices.
  Eigen::MatrixXd li(4, 4), lj(4, 4), lk(4, 4);
  li << 0, -1, 0, 0,
        1, 0, 0, 0,
        0, 0, 0, -1,
        0, 0, 1, 0;
  lj << 0, 0, -1, 0,
        0, 0, 0, 1,
        1, 0, 0, 0,
        0, -1, 0, 0;
  lk << 0, 0, 0, -1,
        0, 0, -1, 0,
        0, 1, 0, 0,
        1, 0, 0, 0;
  return {li, lj, lk};
}

CarnotGroup make_quaternionic_htype(double kappa)
{
  return make_htype(4, 3, quaternionic_structure(), kappa);
}

void check_point(const CarnotGroup& g, PointRef x)
{
  if (x.size() != g.dim())
    throw InvalidParameter("point has " + std::to_string(x.size()) +
                           " coordinates, group dimension is " + std::to_string(g.dim()));
}

GroupPoint multiply(const CarnotGroup& g, PointRef x, PointRef y)
{
  check_point(g, x);
  check_point(g, y);
  GroupPoint out = x + y;
  switch (g.kind()) {
  case GroupKind::Euclidean:
    break;
  case GroupKind::Heisenberg: {
    const int n = g.order();
    double twist = 0.0;
    // Im(z_j conj(z'_j)) = y_j x'_j - x_j y'_j
    for (int j = 0; j < n; ++j)
      twist += x[n + j] * y[j] - x[j] * y[n + j];
    out[2 * n] += 2.0 * twist;
    break;
  }
  case GroupKind::HType: {
    const int m = g.horizontal_dim();
    const auto v = x.head(m);
    const auto w = y.head(m);
    for (std::size_t s = 0; s < g.structure().size(); ++s)
      out[m + static_cast<int>(s)] += 0.5 * (g.structure()[s] * v).dot(w);
    break;
  }
  }
  return out;
}

GroupPoint inverse(const CarnotGroup& g, PointRef x)
{
  check_point(g, x);
  return -x;
}

GroupPoint dilate(const CarnotGroup& g, double lambda, PointRef x)
{
  check_point(g, x);
  if (!(lambda > 0.0))
    throw InvalidParameter("dilation factor must be positive");
  GroupPoint out(x.size());
  const auto& alpha = g.dilation_exponents();
  for (int i = 0; i < x.size(); ++i)
    out[i] = std::pow(lambda, alpha[i]) * x[i];
  return out;
}

int homogeneous_dimension(const CarnotGroup& g)
{
  return g.homogeneous_dimension();
}

} // namespace carnot
