#include "carnot/calculus.hpp"

#include "carnot/error.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace carnot {

namespace {

void check_generator(const CarnotGroup& g, int j)
{
  if (j < 0 || j >= g.horizontal_dim())
    throw InvalidParameter("generator index " + std::to_string(j) + " out of range [0, " +
                           std::to_string(g.horizontal_dim()) + ")");
}

void check_step(const FDScheme& s)
{
  if (!(s.h > 0.0))
    throw InvalidParameter("finite-difference step must be positive");
  if (!(s.eta >= 0.0))
    throw InvalidParameter("regularizer eta must be nonnegative");
}

// J_z = sum_s z_s J^s
Eigen::MatrixXd jz(const CarnotGroup& g, PointRef z)
{
  const int m = g.horizontal_dim();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  for (std::size_t s = 0; s < g.structure().size(); ++s)
    out += z[static_cast<int>(s)] * g.structure()[s];
  return out;
}

double central_difference(const ScalarField& f, PointRef x, const Eigen::VectorXd& dir, double h)
{
  const Eigen::VectorXd xp = x + h * dir;
  const Eigen::VectorXd xm = x - h * dir;
  return (f(xp) - f(xm)) / (2.0 * h);
}

// |z|^2 and the center coordinate of H^n.
void heisenberg_parts(const CarnotGroup& g, PointRef x, double& z2, double& ell)
{
  const int n = g.order();
  z2 = x.head(2 * n).squaredNorm();
  ell = x[2 * n];
}

} // namespace

Eigen::VectorXd vector_field(const CarnotGroup& g, int j, PointRef x)
{
  check_generator(g, j);
  check_point(g, x);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(g.dim());
  c[j] = 1.0;
  switch (g.kind()) {
  case GroupKind::Euclidean:
    break;
  case GroupKind::Heisenberg: {
    const int n = g.order();
    if (j < n)
      c[2 * n] = 2.0 * x[n + j];
    else
      c[2 * n] = -2.0 * x[j - n];
    break;
  }
  case GroupKind::HType: {
    const int m = g.horizontal_dim();
    const auto v = x.head(m);
    for (std::size_t s = 0; s < g.structure().size(); ++s)
      c[m + static_cast<int>(s)] = 0.5 * g.structure()[s].row(j).dot(v);
    break;
  }
  }
  return c;
}

double apply_vector_field(const CarnotGroup& g, int j, const ScalarField& f, PointRef x,
                          const FDScheme& s)
{
  check_generator(g, j);
  check_point(g, x);
  if (f.has_gradient())
    return f.gradient(x)[j];
  check_step(s);
  return central_difference(f, x, vector_field(g, j, x), s.h);
}

HorizontalVector horizontal_gradient(const CarnotGroup& g, const ScalarField& f, PointRef x,
                                     const FDScheme& s)
{
  check_point(g, x);
  if (f.has_gradient())
    return f.gradient(x);
  check_step(s);
  HorizontalVector out(g.horizontal_dim());
  for (int j = 0; j < g.horizontal_dim(); ++j)
    out[j] = central_difference(f, x, vector_field(g, j, x), s.h);
  return out;
}

double commutator_apply(const CarnotGroup& g, int i, int j, const ScalarField& f, PointRef x,
                        const FDScheme& s)
{
  check_generator(g, i);
  check_generator(g, j);
  check_step(s);
  if (i == j)
    return 0.0;
  ScalarField xi{[&](PointRef y) { return apply_vector_field(g, i, f, y, s); }, {}};
  ScalarField xj{[&](PointRef y) { return apply_vector_field(g, j, f, y, s); }, {}};
  return apply_vector_field(g, i, xj, x, s) - apply_vector_field(g, j, xi, x, s);
}

double homogeneous_norm(const CarnotGroup& g, PointRef x)
{
  check_point(g, x);
  switch (g.kind()) {
  case GroupKind::Euclidean:
    return x.norm();
  case GroupKind::Heisenberg: {
    double z2, ell;
    heisenberg_parts(g, x, z2, ell);
    return std::pow(z2 * z2 + ell * ell, 0.25);
  }
  case GroupKind::HType: {
    const int m = g.horizontal_dim();
    const double v2 = x.head(m).squaredNorm();
    const double z2 = x.tail(g.dim() - m).squaredNorm();
    return std::pow(v2 * v2 + g.norm_kappa() * z2, 0.25);
  }
  }
  return 0.0;
}

HorizontalVector norm_horizontal_gradient(const CarnotGroup& g, PointRef x)
{
  const double r = homogeneous_norm(g, x);
  if (r == 0.0)
    throw SingularPoint("norm gradient requested at the identity");
  switch (g.kind()) {
  case GroupKind::Euclidean:
    return x / r;
  case GroupKind::Heisenberg: {
    const int n = g.order();
    double z2, ell;
    heisenberg_parts(g, x, z2, ell);
    const double r3 = r * r * r;
    HorizontalVector out(2 * n);
    for (int j = 0; j < n; ++j) {
      out[j] = (z2 * x[j] + x[n + j] * ell) / r3;
      out[n + j] = (z2 * x[n + j] - x[j] * ell) / r3;
    }
    return out;
  }
  case GroupKind::HType: {
    const int m = g.horizontal_dim();
    const Eigen::VectorXd v = x.head(m);
    const Eigen::VectorXd z = x.tail(g.dim() - m);
    // grad N^4 = 4|v|^2 v + kappa J_z v
    const Eigen::VectorXd grad4 = 4.0 * v.squaredNorm() * v + g.norm_kappa() * (jz(g, z) * v);
    return grad4 / (4.0 * r * r * r);
  }
  }
  return {};
}

double norm_gradient_magnitude(const CarnotGroup& g, PointRef x)
{
  const double r = homogeneous_norm(g, x);
  if (r == 0.0)
    throw SingularPoint("norm gradient requested at the identity");
  switch (g.kind()) {
  case GroupKind::Euclidean:
    return 1.0;
  case GroupKind::Heisenberg: {
    double z2, ell;
    heisenberg_parts(g, x, z2, ell);
    return std::sqrt(z2) / r;
  }
  case GroupKind::HType: {
    const int m = g.horizontal_dim();
    const double v2 = x.head(m).squaredNorm();
    const double z2 = x.tail(g.dim() - m).squaredNorm();
    const double kappa = g.norm_kappa();
    if (kappa == 16.0)
      return std::sqrt(v2) / r;
    // |J_z v| = |z||v| and <v, J_z v> = 0
    return std::sqrt(v2 * (16.0 * v2 * v2 + kappa * kappa * z2)) / (4.0 * r * r * r);
  }
  }
  return 0.0;
}

double hardy_weight(const CarnotGroup& g, double p, PointRef x)
{
  if (!(p > 1.0))
    throw InvalidParameter("Hardy weight requires p > 1");
  check_point(g, x);
  if (g.kind() == GroupKind::Heisenberg) {
    double z2, ell;
    heisenberg_parts(g, x, z2, ell);
    const double r4 = z2 * z2 + ell * ell;
    if (r4 == 0.0)
      throw SingularPoint("Hardy weight requested at the identity");
    return std::pow(z2 / r4, 0.5 * p);
  }
  const double r = homogeneous_norm(g, x);
  if (r == 0.0)
    throw SingularPoint("Hardy weight requested at the identity");
  return std::pow(norm_gradient_magnitude(g, x) / r, p);
}

double sub_p_laplacian(const CarnotGroup& g, double p, const ScalarField& f, PointRef x,
                       const FDScheme& s)
{
  if (!(p > 1.0))
    throw InvalidParameter("sub-p-Laplacian requires p > 1");
  check_point(g, x);
  check_step(s);
  const int m = g.horizontal_dim();
  const double eta2 = s.eta * s.eta;
  auto flux = [&](PointRef y, int j) {
    const HorizontalVector grad = horizontal_gradient(g, f, y, s);
    const double d = p == 2.0 ? 1.0 : std::pow(grad.squaredNorm() + eta2, 0.5 * (p - 2.0));
    return d * grad[j];
  };
  double div = 0.0;
  for (int j = 0; j < m; ++j) {
    const Eigen::VectorXd c = vector_field(g, j, x);
    const Eigen::VectorXd xp = x + s.h * c;
    const Eigen::VectorXd xm = x - s.h * c;
    div += (flux(xp, j) - flux(xm, j)) / (2.0 * s.h);
  }
  return div;
}

double infinity_laplacian(const CarnotGroup& g, const ScalarField& f, PointRef x,
                          const FDScheme& s)
{
  check_point(g, x);
  check_step(s);
  const HorizontalVector grad = horizontal_gradient(g, f, x, s);
  ScalarField grad2{[&](PointRef y) { return horizontal_gradient(g, f, y, s).squaredNorm(); }, {}};
  double out = 0.0;
  for (int j = 0; j < g.horizontal_dim(); ++j)
    out += central_difference(grad2, x, vector_field(g, j, x), s.h) * grad[j];
  return 0.5 * out;
}

double fundamental_profile(const CarnotGroup& g, double p, PointRef x)
{
  if (!(p > 1.0))
    throw InvalidParameter("fundamental profile requires p > 1");
  const double r = homogeneous_norm(g, x);
  if (r == 0.0)
    throw SingularPoint("fundamental profile requested at the identity");
  const double q = g.homogeneous_dimension();
  if (p == q)
    return -std::log(r);
  return std::pow(r, (p - q) / (p - 1.0));
}

ScalarField norm_field(const CarnotGroup& g, bool with_gradient)
{
  ScalarField f;
  f.value = [g](PointRef x) { return homogeneous_norm(g, x); };
  if (with_gradient)
    f.gradient = [g](PointRef x) { return norm_horizontal_gradient(g, x); };
  return f;
}

ScalarField fundamental_field(const CarnotGroup& g, double p)
{
  return ScalarField{[g, p](PointRef x) { return fundamental_profile(g, p, x); }, {}};
}

ScalarField radial_field(const CarnotGroup& g, std::function<double(double)> profile,
                         std::function<double(double)> derivative)
{
  ScalarField f;
  f.value = [g, profile](PointRef x) { return profile(homogeneous_norm(g, x)); };
  f.gradient = [g, derivative](PointRef x) -> HorizontalVector {
    const double r = homogeneous_norm(g, x);
    const double d = derivative(r);
    if (d == 0.0)
      return HorizontalVector::Zero(g.horizontal_dim());
    return d * norm_horizontal_gradient(g, x);
  };
  return f;
}

GroupPoint scale_to_norm(const CarnotGroup& g, PointRef x, double r)
{
  const double n = homogeneous_norm(g, x);
  if (n == 0.0)
    throw SingularPoint("cannot scale the identity onto a sphere");
  return dilate(g, r / n, x);
}

namespace {

double bregman_gap(double p, const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
  const double na = a.norm();
  const double lead = na == 0.0 ? 0.0 : p * std::pow(na, p - 2.0) * a.dot(b);
  return std::pow((a + b).norm(), p) - std::pow(na, p) - lead;
}

void check_pair(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
  if (a.size() != b.size())
    throw InvalidParameter("vectors a and b differ in length");
  if (b.norm() == 0.0)
    throw InvalidParameter("b must be nonzero");
}

} // namespace

double subquadratic_ratio(double p, const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
  if (!(p > 1.0 && p < 2.0))
    throw InvalidParameter("the sub-quadratic ratio requires 1 < p < 2");
  check_pair(a, b);
  const double nb = b.norm();
  return bregman_gap(p, a, b) * std::pow(a.norm() + nb, 2.0 - p) / (nb * nb);
}

double superquadratic_ratio(double p, const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
  if (!(p > 2.0))
    throw InvalidParameter("the super-quadratic ratio requires p > 2");
  check_pair(a, b);
  return bregman_gap(p, a, b) / std::pow(b.norm(), p);
}

std::optional<double> elementary_inequality_margin(double p, double w1, double w2)
{
  if (!(p > 1.0))
    throw InvalidParameter("elementary inequality requires p > 1");
  if (!(w1 > 0.0 && w2 > 0.0))
    throw InvalidParameter("elementary inequality requires w1, w2 > 0");
  if (w1 == w2)
    return std::nullopt;
  return std::pow(w1, p) - std::pow(w2, p) - p * std::pow(w2, p - 1.0) * (w1 - w2);
}

SampledInfimum sample_inequality_infimum(double p, int dim, int samples, std::uint64_t seed)
{
  if (dim < 1 || samples < 1)
    throw InvalidParameter("sampling needs dim >= 1 and samples >= 1");
  if (p == 2.0 || !(p > 1.0))
    throw InvalidParameter("sampled ratio defined for 1 < p < 2 and p > 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> logscale(-3.0, 3.0);
  SampledInfimum best{std::numeric_limits<double>::infinity(), {}, {}};
  Eigen::VectorXd a(dim), b(dim);
  for (int i = 0; i < samples; ++i) {
    for (int d = 0; d < dim; ++d) {
      a[d] = normal(rng);
      b[d] = normal(rng);
    }
    // spread |b|/|a| over six decades so both asymptotic regimes are visited
    b *= std::pow(10.0, logscale(rng));
    if (b.norm() == 0.0)
      continue;
    const double r = p < 2.0 ? subquadratic_ratio(p, a, b) : superquadratic_ratio(p, a, b);
    if (r < best.infimum)
      best = {r, a, b};
  }
  return best;
}

} // namespace carnot
