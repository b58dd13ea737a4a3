#ifndef CARNOT_HARDY_HPP
#define CARNOT_HARDY_HPP

#include "carnot/calculus.hpp"
#include "carnot/group.hpp"
#include "carnot/quadrature.hpp"

#include <optional>
#include <vector>

namespace carnot {

enum class PotentialKind
{
  HardyPure,
  HardyOscillating
};

/// V = lambda W (pure) or lambda W + beta W sin(N^-alpha) (oscillating), W the Hardy weight.
struct PotentialSpec
{
  PotentialKind kind = PotentialKind::HardyPure;
  double lambda = 1.0;
  double beta = 0.0;
  double alpha = 0.0;

  /// lambda > 0, beta != 0 for the oscillating kind.
  void validate() const;
  /// Copy with lambda and beta multiplied by s.
  PotentialSpec scaled(double s) const;
};

double evaluate_potential(const CarnotGroup& g, const PotentialSpec& spec, double p, PointRef x);

/// N^-(gamma + epsilon) outside the unit ball, 1 inside, with gamma = (Q-p)/p.
struct ExtremalFamilySpec
{
  double epsilon = 0.1;
  /// Support ends here.
  double r_out = 100.0;
  /// Width of the C^1 blend across N = 1.
  double mollify_width = 0.05;
  /// The cutoff falls from 1 to 0 over [cutoff_ratio r_out, r_out].
  double cutoff_ratio = 0.5;

  void validate() const;
};

/**
 * Radial test sequence phi_n with inner radius a_n = b first_ratio shrink^(n-1):
 *   0 below a_n^2, a log-linear ramp on [a_n^2, a_n], the Hardy profile (r/b)^-gamma on [a_n, b],
 *   linear decay to 0 on [b, 2b].
 */
struct ConcentratingFamilySpec
{
  double plateau_radius = 0.025;
  double first_ratio = 0.125;
  double shrink = 0.5;

  void validate() const;
  double inner_radius(int n) const;
};

/// Pieces of (int |grad phi|^p - int V |phi|^p) / int |phi|^p.
struct QuotientParts
{
  double energy = 0.0;
  double potential_term = 0.0;
  double denominator = 0.0;
  double quotient = 0.0;
};

/// ((Q-p)/p)^p; throws OutOfRange for p >= Q.
double hardy_constant(const CarnotGroup& g, double p);

/// Gradients come from phi's closed form when present, else from `fd`.
QuotientParts rayleigh_quotient(const CarnotGroup& g, double p,
                                const std::optional<PotentialSpec>& V, const ScalarField& phi,
                                const QuadratureMesh& mesh, const FDScheme& fd = {});
/// Also throws ResolutionError when an oscillating V is unresolved on the innermost shell.
QuotientParts rayleigh_quotient(const CarnotGroup& g, double p,
                                const std::optional<PotentialSpec>& V, const ScalarField& phi,
                                const AnnularMesh& mesh, const FDScheme& fd = {});
/// Fewer than 8 cells per oscillation period 2 pi r^(alpha+1)/alpha at the inner radius.
void check_oscillation_resolved(const AnnularMesh& mesh, const PotentialSpec& V);

ScalarField make_extremal(const CarnotGroup& g, double p, const ExtremalFamilySpec& spec);
double extremal_profile(const CarnotGroup& g, double p, const ExtremalFamilySpec& spec, double r);
double extremal_derivative(const CarnotGroup& g, double p, const ExtremalFamilySpec& spec,
                           double r);

/// Annular mesh resolution used by the scan; the outer radius follows each r_out.
struct ScanMeshParams
{
  double r_min = 1e-3;
  int levels_per_decade = 6;
  int cells_per_dim = 32;
};

struct ScanRow
{
  double epsilon;
  QuotientParts parts;
};

/**
 * Quotient of phi_eps with V = lambda_factor * hardy_constant for each epsilon, r_out = r_out_scale
 * / epsilon (base.r_out is ignored).
 */
std::vector<ScanRow> sharpness_scan(const CarnotGroup& g, double p,
                                    const std::vector<double>& epsilons,
                                    const ExtremalFamilySpec& base, const ScanMeshParams& mesh,
                                    double lambda_factor = 1.0, double r_out_scale = 10.0);

/// Everything the radial route needs about the group: Q, |B_N(1)|, int_{N<=1} |grad N|^p.
struct RadialMoments
{
  int q = 0;
  double ball_volume = 0.0;
  double gradient_moment = 0.0;
};
RadialMoments radial_moments(const CarnotGroup& g, double p, int resolution = 200);

/// Quotient of a radial phi = f(N) by one-dimensional integrals between consecutive breakpoints.
QuotientParts radial_rayleigh_quotient(const RadialMoments& m, double p,
                                       const std::optional<PotentialSpec>& V,
                                       const std::function<double(double)>& f,
                                       const std::function<double(double)>& df,
                                       const std::vector<double>& breakpoints);

double concentrating_profile(const ConcentratingFamilySpec& fam, double gamma, int n, double r);
double concentrating_derivative(const ConcentratingFamilySpec& fam, double gamma, int n,
                                double r);

/// Quotients of (1 - margin) V on phi_1 ... phi_{n_max}.
std::vector<QuotientParts> sigma_inf_probe(const CarnotGroup& g, double p, const PotentialSpec& V,
                                           const ConcentratingFamilySpec& fam, int n_max,
                                           double margin = 0.1, int ball_resolution = 200);

/// (int |grad phi|^p)^(1/p) / (int |phi|^q)^(1/q), q = Qp/(Q-p).
double sobolev_quotient(const CarnotGroup& g, double p, const ScalarField& phi,
                        const QuadratureMesh& mesh, const FDScheme& fd = {});

} // namespace carnot

#endif // CARNOT_HARDY_HPP
