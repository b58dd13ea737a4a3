#ifndef CARNOT_CALCULUS_HPP
#define CARNOT_CALCULUS_HPP

#include "carnot/group.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace carnot {

/// Components along the horizontal generators X_1 ... X_m.
using HorizontalVector = Eigen::VectorXd;

/**
 * A scalar function on the group, optionally with its horizontal gradient in closed form.
 * Both closures must be safe to call concurrently.
 */
struct ScalarField
{
  std::function<double(PointRef)> value;
  std::function<HorizontalVector(PointRef)> gradient;

  double operator()(PointRef x) const { return value(x); }
  bool has_gradient() const { return static_cast<bool>(gradient); }
};

/// Central-difference step and the regularizer used in |grad u|^(p-2).
struct FDScheme
{
  double h = 1e-3;
  double eta = 0.0;
};

/**
 * Coefficient vector of the generator X_j at x (0-based j < dim V_1):
 *   Heisenberg   X_j = d/dx_j + 2 y_j d/dl,  Y_j = d/dy_j - 2 x_j d/dl  (Y_j has index n + j)
 *   H-type       X_i = d/dv_i + 1/2 sum_s (J^s v)_i d/dz_s
 *   Euclidean    X_j = d/dx_j
 */
Eigen::VectorXd vector_field(const CarnotGroup& g, int j, PointRef x);

/// (X_j f)(x): analytic gradient when f provides one, else a central difference along X_j(x).
double apply_vector_field(const CarnotGroup& g, int j, const ScalarField& f, PointRef x,
                          const FDScheme& s);
HorizontalVector horizontal_gradient(const CarnotGroup& g, const ScalarField& f, PointRef x,
                                     const FDScheme& s);
/// (X_i X_j - X_j X_i) f at x by nested differencing.
double commutator_apply(const CarnotGroup& g, int i, int j, const ScalarField& f, PointRef x,
                        const FDScheme& s);

/// Euclidean |x|, Koranyi (|z|^4 + l^2)^(1/4), or Kaplan (|v|^4 + kappa |z|^2)^(1/4).
double homogeneous_norm(const CarnotGroup& g, PointRef x);
/// Closed-form horizontal gradient of the homogeneous norm; throws SingularPoint at 0.
HorizontalVector norm_horizontal_gradient(const CarnotGroup& g, PointRef x);
/// |grad_G N|: 1, |z|/rho, |v| sqrt(16|v|^4 + kappa^2 |z|^2) / (4 N^3) (= |v|/N for kappa 16).
double norm_gradient_magnitude(const CarnotGroup& g, PointRef x);
/// (|grad_G N| / N)^p.
double hardy_weight(const CarnotGroup& g, double p, PointRef x);

/// Discrete div_G((|grad_G f|^2 + eta^2)^((p-2)/2) grad_G f) by nested central differences.
double sub_p_laplacian(const CarnotGroup& g, double p, const ScalarField& f, PointRef x,
                       const FDScheme& s);
/// 1/2 <grad_G |grad_G f|^2, grad_G f>.
double infinity_laplacian(const CarnotGroup& g, const ScalarField& f, PointRef x,
                          const FDScheme& s);
/// N^((p-Q)/(p-1)) for p != Q, -log N for p = Q.
double fundamental_profile(const CarnotGroup& g, double p, PointRef x);

/// The homogeneous norm as a field; the closed-form gradient is attached on request.
ScalarField norm_field(const CarnotGroup& g, bool with_gradient = false);
ScalarField fundamental_field(const CarnotGroup& g, double p);
/// phi(x) = f(N(x)) with grad_G phi = f'(N) grad_G N.
ScalarField radial_field(const CarnotGroup& g, std::function<double(double)> profile,
                         std::function<double(double)> derivative);

/// Dilates x onto the sphere {N = r}; x must not be the identity.
GroupPoint scale_to_norm(const CarnotGroup& g, PointRef x, double r);

/// (|a+b|^p - |a|^p - p|a|^(p-2) a.b) (|a|+|b|)^(2-p) / |b|^2, for 1 < p < 2.
double subquadratic_ratio(double p, const Eigen::VectorXd& a, const Eigen::VectorXd& b);
/// (|a+b|^p - |a|^p - p|a|^(p-2) a.b) / |b|^p, for p > 2.
double superquadratic_ratio(double p, const Eigen::VectorXd& a, const Eigen::VectorXd& b);
/// w1^p - w2^p - p w2^(p-1) (w1 - w2); empty when w1 == w2 (zero margin).
std::optional<double> elementary_inequality_margin(double p, double w1, double w2);

/// Smallest observed ratio over random (a, b) in R^dim; the sampled admissible constant c(p).
struct SampledInfimum
{
  double infimum;
  Eigen::VectorXd a;
  Eigen::VectorXd b;
};
SampledInfimum sample_inequality_infimum(double p, int dim, int samples, std::uint64_t seed);

} // namespace carnot

#endif // CARNOT_CALCULUS_HPP
