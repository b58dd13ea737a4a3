#include "carnot/hardy.hpp"

#include "carnot/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace carnot {

namespace {

double gamma_exponent(const CarnotGroup& g, double p)
{
  return (g.homogeneous_dimension() - p) / p;
}

void check_p(double p)
{
  if (!(p > 1.0))
    throw InvalidParameter("p must exceed 1");
}

QuotientParts finish(double energy, double potential, double denominator)
{
  if (!(denominator > 0.0))
    throw DegenerateTestFunction("test function has zero L^p mass on the mesh");
  return {energy, potential, denominator, (energy - potential) / denominator};
}

} // namespace

void PotentialSpec::validate() const
{
  if (!(lambda > 0.0))
    throw InvalidParameter("potential lambda must be positive");
  if (kind == PotentialKind::HardyOscillating && !(beta != 0.0))
    throw InvalidParameter("oscillating potential needs beta != 0");
  if (!std::isfinite(beta) || !std::isfinite(alpha))
    throw InvalidParameter("potential beta and alpha must be finite");
}

PotentialSpec PotentialSpec::scaled(double s) const
{
  PotentialSpec out = *this;
  out.lambda *= s;
  out.beta *= s;
  return out;
}

double evaluate_potential(const CarnotGroup& g, const PotentialSpec& spec, double p, PointRef x)
{
  spec.validate();
  const double w = hardy_weight(g, p, x);
  if (spec.kind == PotentialKind::HardyPure)
    return spec.lambda * w;
  const double r = homogeneous_norm(g, x);
  return (spec.lambda + spec.beta * std::sin(std::pow(r, -spec.alpha))) * w;
}

void ExtremalFamilySpec::validate() const
{
  if (!(epsilon > 0.0))
    throw InvalidParameter("extremal epsilon must be positive");
  if (!(mollify_width > 0.0 && mollify_width < 1.0))
    throw InvalidParameter("mollify_width must lie in (0, 1)");
  if (!(r_out > 1.0 + mollify_width))
    throw InvalidParameter("r_out must exceed 1 + mollify_width");
  if (!(cutoff_ratio > 0.0 && cutoff_ratio < 1.0))
    throw InvalidParameter("cutoff_ratio must lie in (0, 1)");
  if (!(cutoff_ratio * r_out >= 1.0 + 0.5 * mollify_width))
    throw InvalidParameter("outer cutoff overlaps the blend at N = 1");
}

void ConcentratingFamilySpec::validate() const
{
  if (!(plateau_radius > 0.0 && plateau_radius < 0.5))
    throw InvalidParameter("plateau_radius must lie in (0, 0.5)");
  if (!(first_ratio > 0.0 && first_ratio < 1.0))
    throw InvalidParameter("first_ratio must lie in (0, 1)");
  if (!(shrink > 0.0 && shrink < 1.0))
    throw InvalidParameter("shrink must lie in (0, 1)");
}

double ConcentratingFamilySpec::inner_radius(int n) const
{
  if (n < 1)
    throw InvalidParameter("family index starts at 1");
  return plateau_radius * first_ratio * std::pow(shrink, n - 1);
}

double hardy_constant(const CarnotGroup& g, double p)
{
  check_p(p);
  const double q = g.homogeneous_dimension();
  if (p >= q)
    throw OutOfRange("Hardy constant needs p < Q (p = " + std::to_string(p) +
                     ", Q = " + std::to_string(g.homogeneous_dimension()) + ")");
  return std::pow((q - p) / p, p);
}

QuotientParts rayleigh_quotient(const CarnotGroup& g, double p,
                                const std::optional<PotentialSpec>& V, const ScalarField& phi,
                                const QuadratureMesh& mesh, const FDScheme& fd)
{
  check_p(p);
  if (V)
    V->validate();
  if (mesh.dim != g.dim())
    throw InvalidParameter("mesh dimension does not match the group");
  const long n = static_cast<long>(mesh.size());
  std::vector<double> e(mesh.size()), v(mesh.size()), d(mesh.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const auto x = mesh.node(static_cast<std::size_t>(i));
    const double val = std::pow(std::abs(phi(x)), p);
    e[i] = std::pow(horizontal_gradient(g, phi, x, fd).norm(), p);
    v[i] = V && val != 0.0 ? evaluate_potential(g, *V, p, x) * val : 0.0;
    d[i] = val;
  }
  return finish(weighted_sum(mesh, e), weighted_sum(mesh, v), weighted_sum(mesh, d));
}

void check_oscillation_resolved(const AnnularMesh& mesh, const PotentialSpec& V)
{
  if (V.kind != PotentialKind::HardyOscillating || V.alpha <= 0.0)
    return;
  const double pi = std::acos(-1.0);
  const double r0 = mesh.shell_radii.front();
  const double cell = 2.0 * mesh.shell_radii[1] / mesh.cells_per_dim;
  const double period = 2.0 * pi * std::pow(r0, V.alpha + 1.0) / V.alpha;
  if (period < 8.0 * cell)
    throw ResolutionError("oscillation period " + std::to_string(period) + " at r = " +
                          std::to_string(r0) + " spans fewer than 8 cells of width " +
                          std::to_string(cell));
}

QuotientParts rayleigh_quotient(const CarnotGroup& g, double p,
                                const std::optional<PotentialSpec>& V, const ScalarField& phi,
                                const AnnularMesh& mesh, const FDScheme& fd)
{
  if (V)
    check_oscillation_resolved(mesh, *V);
  return rayleigh_quotient(g, p, V, phi, static_cast<const QuadratureMesh&>(mesh), fd);
}

double extremal_profile(const CarnotGroup& g, double p, const ExtremalFamilySpec& spec, double r)
{
  const double s = gamma_exponent(g, p) + spec.epsilon;
  const double r0 = 1.0 - 0.5 * spec.mollify_width;
  const double r1 = 1.0 + 0.5 * spec.mollify_width;
  double f;
  if (r <= r0) {
    f = 1.0;
  } else if (r >= r1) {
    f = std::pow(r, -s);
  } else {
    const double t = (r - r0) / spec.mollify_width;
    const double y1 = std::pow(r1, -s);
    const double m1 = -s * std::pow(r1, -s - 1.0);
    const double h00 = (2.0 * t - 3.0) * t * t + 1.0;
    const double h01 = (3.0 - 2.0 * t) * t * t;
    const double h11 = (t - 1.0) * t * t;
    f = h00 + h01 * y1 + h11 * spec.mollify_width * m1;
  }
  const double c0 = spec.cutoff_ratio * spec.r_out;
  if (r <= c0)
    return f;
  if (r >= spec.r_out)
    return 0.0;
  const double t = (r - c0) / (spec.r_out - c0);
  return f * (1.0 - (3.0 - 2.0 * t) * t * t);
}

double extremal_derivative(const CarnotGroup& g, double p, const ExtremalFamilySpec& spec,
                           double r)
{
  const double s = gamma_exponent(g, p) + spec.epsilon;
  const double r0 = 1.0 - 0.5 * spec.mollify_width;
  const double r1 = 1.0 + 0.5 * spec.mollify_width;
  double f, df;
  if (r <= r0) {
    f = 1.0;
    df = 0.0;
  } else if (r >= r1) {
    f = std::pow(r, -s);
    df = -s * f / r;
  } else {
    const double w = spec.mollify_width;
    const double t = (r - r0) / w;
    const double y1 = std::pow(r1, -s);
    const double m1 = -s * std::pow(r1, -s - 1.0);
    f = (2.0 * t - 3.0) * t * t + 1.0 + (3.0 - 2.0 * t) * t * t * y1 + (t - 1.0) * t * t * w * m1;
    df = ((6.0 * t - 6.0) * t + (6.0 - 6.0 * t) * t * y1 + (3.0 * t - 2.0) * t * w * m1) / w;
  }
  const double c0 = spec.cutoff_ratio * spec.r_out;
  if (r <= c0)
    return df;
  if (r >= spec.r_out)
    return 0.0;
  const double span = spec.r_out - c0;
  const double t = (r - c0) / span;
  const double chi = 1.0 - (3.0 - 2.0 * t) * t * t;
  const double dchi = -6.0 * t * (1.0 - t) / span;
  return df * chi + f * dchi;
}

ScalarField make_extremal(const CarnotGroup& g, double p, const ExtremalFamilySpec& spec)
{
  check_p(p);
  hardy_constant(g, p);
  spec.validate();
  return radial_field(
    g, [g, p, spec](double r) { return extremal_profile(g, p, spec, r); },
    [g, p, spec](double r) { return extremal_derivative(g, p, spec, r); });
}

std::vector<ScanRow> sharpness_scan(const CarnotGroup& g, double p,
                                    const std::vector<double>& epsilons,
                                    const ExtremalFamilySpec& base, const ScanMeshParams& mesh,
                                    double lambda_factor, double r_out_scale)
{
  if (epsilons.empty())
    throw InvalidParameter("sharpness scan needs at least one epsilon");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0) || (i > 0 && !(epsilons[i] < epsilons[i - 1])))
      throw InvalidParameter("epsilons must be positive and strictly decreasing");
  }
  if (!(lambda_factor > 0.0))
    throw InvalidParameter("lambda_factor must be positive");
  if (!(mesh.r_min > 0.0) || mesh.levels_per_decade < 1)
    throw InvalidParameter("scan mesh needs r_min > 0 and levels_per_decade >= 1");

  PotentialSpec V;
  V.lambda = lambda_factor * hardy_constant(g, p);
  std::vector<ScanRow> rows;
  for (double eps : epsilons) {
    ExtremalFamilySpec spec = base;
    spec.epsilon = eps;
    spec.r_out = r_out_scale / eps;
    const ScalarField phi = make_extremal(g, p, spec);
    const int levels = static_cast<int>(
      std::ceil(mesh.levels_per_decade * std::log10(spec.r_out / mesh.r_min)));
    const AnnularMesh m =
      build_annular_mesh(g, mesh.r_min, spec.r_out, levels, mesh.cells_per_dim);
    rows.push_back({eps, rayleigh_quotient(g, p, V, phi, m)});
  }
  return rows;
}

RadialMoments radial_moments(const CarnotGroup& g, double p, int resolution)
{
  check_p(p);
  RadialMoments m;
  m.q = g.homogeneous_dimension();
  m.ball_volume = unit_ball_volume(g, resolution);
  m.gradient_moment = ball_moment(g, p, resolution);
  return m;
}

QuotientParts radial_rayleigh_quotient(const RadialMoments& m, double p,
                                       const std::optional<PotentialSpec>& V,
                                       const std::function<double(double)>& f,
                                       const std::function<double(double)>& df,
                                       const std::vector<double>& breakpoints)
{
  check_p(p);
  if (V)
    V->validate();
  if (breakpoints.size() < 2 || !std::is_sorted(breakpoints.begin(), breakpoints.end()))
    throw InvalidParameter("radial quotient needs at least two sorted breakpoints");
  constexpr int panels = 32;
  const int q = m.q;
  auto energy = [&](double r) { return std::pow(std::abs(df(r)), p) * std::pow(r, q - 1); };
  auto weighted = [&](double r) { return std::pow(std::abs(f(r)), p) * std::pow(r, q - 1 - p); };
  auto mass = [&](double r) { return std::pow(std::abs(f(r)), p) * std::pow(r, q - 1); };
  double e = 0.0, v = 0.0, d = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(b > a))
      continue;
    e += graded_integral(energy, a, b, panels);
    d += graded_integral(mass, a, b, panels);
    if (V) {
      v += V->lambda * graded_integral(weighted, a, b, panels);
      if (V->kind == PotentialKind::HardyOscillating)
        v += V->beta * oscillatory_integral(weighted, V->alpha, a, b);
    }
  }
  return finish(q * m.gradient_moment * e, q * m.gradient_moment * v, q * m.ball_volume * d);
}

double concentrating_profile(const ConcentratingFamilySpec& fam, double gamma, int n, double r)
{
  const double a = fam.inner_radius(n);
  const double b = fam.plateau_radius;
  if (r <= a * a || r >= 2.0 * b)
    return 0.0;
  if (r < a)
    return std::pow(a / b, -gamma) * std::log(r / (a * a)) / std::log(1.0 / a);
  if (r <= b)
    return std::pow(r / b, -gamma);
  return (2.0 * b - r) / b;
}

double concentrating_derivative(const ConcentratingFamilySpec& fam, double gamma, int n,
                                double r)
{
  const double a = fam.inner_radius(n);
  const double b = fam.plateau_radius;
  if (r <= a * a || r >= 2.0 * b)
    return 0.0;
  if (r < a)
    return std::pow(a / b, -gamma) / (r * std::log(1.0 / a));
  if (r <= b)
    return -gamma / b * std::pow(r / b, -gamma - 1.0);
  return -1.0 / b;
}

std::vector<QuotientParts> sigma_inf_probe(const CarnotGroup& g, double p, const PotentialSpec& V,
                                           const ConcentratingFamilySpec& fam, int n_max,
                                           double margin, int ball_resolution)
{
  hardy_constant(g, p);
  V.validate();
  fam.validate();
  if (n_max < 1)
    throw InvalidParameter("n_max must be >= 1");
  if (!(margin > 0.0 && margin < 1.0))
    throw InvalidParameter("margin must lie in (0, 1)");
  const PotentialSpec reduced = V.scaled(1.0 - margin);
  const RadialMoments m = radial_moments(g, p, ball_resolution);
  const double gamma = gamma_exponent(g, p);
  std::vector<QuotientParts> out;
  for (int n = 1; n <= n_max; ++n) {
    const double a = fam.inner_radius(n);
    const double b = fam.plateau_radius;
    out.push_back(radial_rayleigh_quotient(
      m, p, reduced, [&](double r) { return concentrating_profile(fam, gamma, n, r); },
      [&](double r) { return concentrating_derivative(fam, gamma, n, r); },
      {a * a, a, b, 2.0 * b}));
  }
  return out;
}

double sobolev_quotient(const CarnotGroup& g, double p, const ScalarField& phi,
                        const QuadratureMesh& mesh, const FDScheme& fd)
{
  if (!(p >= 1.0))
    throw InvalidParameter("Sobolev quotient needs p >= 1");
  const double Q = g.homogeneous_dimension();
  if (p >= Q)
    throw OutOfRange("Sobolev quotient needs p < Q");
  const double q = Q * p / (Q - p);
  const long n = static_cast<long>(mesh.size());
  std::vector<double> e(mesh.size()), d(mesh.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const auto x = mesh.node(static_cast<std::size_t>(i));
    e[i] = std::pow(horizontal_gradient(g, phi, x, fd).norm(), p);
    d[i] = std::pow(std::abs(phi(x)), q);
  }
  const double den = weighted_sum(mesh, d);
  if (!(den > 0.0))
    throw DegenerateTestFunction("test function has zero L^q mass on the mesh");
  return std::pow(weighted_sum(mesh, e), 1.0 / p) / std::pow(den, 1.0 / q);
}

} // namespace carnot
