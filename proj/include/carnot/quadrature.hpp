#ifndef CARNOT_QUADRATURE_HPP
#define CARNOT_QUADRATURE_HPP

#include "carnot/calculus.hpp"
#include "carnot/group.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace carnot {

/// Flat node list: coordinates stored row-major (node i occupies coords[i*dim .. i*dim+dim)).
struct QuadratureMesh
{
  int dim = 0;
  std::vector<double> coords;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  Eigen::Map<const Eigen::VectorXd> node(std::size_t i) const
  {
    return Eigen::Map<const Eigen::VectorXd>(coords.data() + i * dim, dim);
  }
  /// Neumaier-compensated sum of the weights.
  double total_weight() const;
};

/// Tensor-product midpoint rule on an axis-aligned box.
struct BoxMesh : QuadratureMesh
{
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<int> counts;
};

/// Midpoint cells of per-shell Cartesian grids, weighted by the part of each cell inside its shell.
struct AnnularMesh : QuadratureMesh
{
  std::shared_ptr<const CarnotGroup> group;
  double r_min = 0.0;
  double r_max = 0.0;
  int levels = 0;
  int cells_per_dim = 0;
  /// Shell boundaries r_min q^i, i = 0 .. levels.
  std::vector<double> shell_radii;
};

BoxMesh build_box_mesh(const std::vector<double>& lower, const std::vector<double>& upper,
                       const std::vector<int>& counts);
/**
 * Shell i spans [r_min q^i, r_min q^(i+1)) with q = (r_max/r_min)^(1/levels); the last shell is
 * closed. Each shell is covered by cells_per_dim^n cells over the box |x_i| <= R^alpha_i b_i
 * (R the outer shell radius, b_i = 1 except 1/sqrt(kappa) on the H-type center). A cell keeps
 * the fraction of its volume lying in the shell, computed with N linearized about the cell
 * center; nodes of cut cells whose center falls outside are dilated onto the shell boundary, so
 * every node satisfies r_min <= N <= r_max.
 */
AnnularMesh build_annular_mesh(const CarnotGroup& g, double r_min, double r_max, int levels,
                               int cells_per_dim);

/// Integrand values at every node (may run in parallel).
std::vector<double> evaluate_nodes(const QuadratureMesh& mesh, const ScalarField& f);
/// sum_i w_i v_i in ascending node order; throws EvaluationError on a non-finite value.
double weighted_sum(const QuadratureMesh& mesh, const std::vector<double>& values);
double integrate(const QuadratureMesh& mesh, const ScalarField& integrand);

/**
 * int_{N <= 1} |grad_G N|^p dx (p = 0 gives the ball volume). Uses the homogeneous identity
 * int w e^(-N^4) dx = Gamma(Q/4 + 1) int_{N<=1} w dx for degree-0 w, evaluated by the midpoint
 * rule with `resolution` cells per axis on a box holding the Gaussian.
 */
double ball_moment(const CarnotGroup& g, double p, int resolution);
/// |{N <= 1}|; resolution >= 10.
double unit_ball_volume(const CarnotGroup& g, int resolution);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule
{
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

/// int_a^b f(r) dr on n_panels geometrically graded panels (16-point rule each); a may be 0.
double graded_integral(const std::function<double(double)>& f, double a, double b, int n_panels);
/**
 * int_a^b h(r) sin(r^-alpha) dr. For alpha > 0 the substitution u = r^-alpha is integrated with
 * one Gauss panel per half period up to a window, and the remainder by the two-term
 * integration-by-parts expansion. Requires a > 0 when alpha > 0.
 */
double oscillatory_integral(const std::function<double(double)>& h, double alpha, double a,
                            double b);

/// Q |B_N(1)| int f(r) r^(Q-1) dr; the ball volume is measured at the given resolution.
double radial_integrate(const CarnotGroup& g, const std::function<double(double)>& profile,
                        double r_min, double r_max, int n_panels, int ball_resolution = 64);
/// Same with a precomputed ball volume.
double radial_integrate(int q, double ball_volume, const std::function<double(double)>& profile,
                        double r_min, double r_max, int n_panels);

/// Node coordinates and weight per row.
void write_mesh_csv(const QuadratureMesh& mesh, const std::string& path);

} // namespace carnot

#endif // CARNOT_QUADRATURE_HPP
