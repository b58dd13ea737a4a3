#include "carnot/quadrature.hpp"

#include "carnot/csv.hpp"
#include "carnot/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace carnot {

namespace {

struct Neumaier
{
  double sum = 0.0;
  double comp = 0.0;

  void add(double v)
  {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Half-extent of {N <= R} along coordinate i.
std::vector<double> bounding_extents(const CarnotGroup& g, double R)
{
  std::vector<double> ext(g.dim());
  const auto& alpha = g.dilation_exponents();
  for (int i = 0; i < g.dim(); ++i) {
    double b = 1.0;
    if (g.kind() == GroupKind::HType && alpha[i] == 2)
      b = 1.0 / std::sqrt(g.norm_kappa());
    ext[i] = std::pow(R, alpha[i]) * b;
  }
  return ext;
}

// Visits the midpoints of a uniform grid with `n` cells per axis on prod [-ext_i, ext_i].
template <class Fn>
void for_each_cell(const std::vector<double>& ext, int n, Fn&& fn)
{
  const int dim = static_cast<int>(ext.size());
  std::vector<int> idx(dim, 0);
  Eigen::VectorXd x(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i)
      x[i] = -ext[i] + (idx[i] + 0.5) * (2.0 * ext[i] / n);
    fn(x);
    int d = dim - 1;
    while (d >= 0 && ++idx[d] == n) {
      idx[d] = 0;
      --d;
    }
    if (d < 0)
      break;
  }
}

GaussRule compute_gauss(int n)
{
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1)
    rule.nodes[n / 2] = 0.0;
  return rule;
}

constexpr int panel_order = 16;

// Fraction of the box prod [-w_i, w_i] on which sum_i a_i s_i <= t. Exact for the linear cut
// (alternating sum over box vertices). Directions much thinner than the widest one are dropped;
// they enter only at second order since the uniform offset along them has zero mean.
double halfspace_fraction(const Eigen::VectorXd& a, const Eigen::VectorXd& w, double t)
{
  const int n = static_cast<int>(a.size());
  std::vector<double> b(n);
  double total = 0.0, widest = 0.0;
  for (int i = 0; i < n; ++i) {
    b[i] = std::abs(a[i]) * w[i];
    total += b[i];
    widest = std::max(widest, b[i]);
  }
  if (t >= total)
    return 1.0;
  if (t <= -total)
    return 0.0;
  const double floor = n > 1 ? widest * std::pow(10.0, -10.0 / (n - 1)) : 0.0;
  std::vector<double> beta;
  double T = t;
  for (double bi : b) {
    if (bi > floor) {
      beta.push_back(2.0 * bi);
      T += bi;
    }
  }
  const int k = static_cast<int>(beta.size());
  double norm = 1.0;
  for (int i = 0; i < k; ++i)
    norm *= beta[i] * (i + 1);
  double sum = 0.0;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    double shift = 0.0;
    int parity = 0;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        shift += beta[i];
        parity ^= 1;
      }
    }
    const double r = T - shift;
    if (r > 0.0)
      sum += (parity ? -1.0 : 1.0) * std::pow(r, k);
  }
  return std::clamp(sum / norm, 0.0, 1.0);
}

double gauss_panel(const std::function<double(double)>& f, double a, double b)
{
  const GaussRule& rule = gauss_legendre(panel_order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < panel_order; ++i)
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

} // namespace

double QuadratureMesh::total_weight() const
{
  Neumaier acc;
  for (double w : weights)
    acc.add(w);
  return acc.value();
}

BoxMesh build_box_mesh(const std::vector<double>& lower, const std::vector<double>& upper,
                       const std::vector<int>& counts)
{
  const std::size_t dim = lower.size();
  if (dim == 0 || upper.size() != dim || counts.size() != dim)
    throw InvalidParameter("box bounds and counts must have equal, nonzero length");
  double cell = 1.0;
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!(upper[i] > lower[i]) || counts[i] < 1)
      throw InvalidParameter("box axis " + std::to_string(i) + " is empty");
    cell *= (upper[i] - lower[i]) / counts[i];
    total *= static_cast<std::size_t>(counts[i]);
  }
  BoxMesh mesh;
  mesh.dim = static_cast<int>(dim);
  mesh.lower = lower;
  mesh.upper = upper;
  mesh.counts = counts;
  mesh.coords.reserve(total * dim);
  mesh.weights.assign(total, cell);
  std::vector<int> idx(dim, 0);
  for (std::size_t n = 0; n < total; ++n) {
    for (std::size_t i = 0; i < dim; ++i)
      mesh.coords.push_back(lower[i] + (idx[i] + 0.5) * (upper[i] - lower[i]) / counts[i]);
    for (int d = static_cast<int>(dim) - 1; d >= 0; --d) {
      if (++idx[d] < counts[d])
        break;
      idx[d] = 0;
    }
  }
  return mesh;
}

AnnularMesh build_annular_mesh(const CarnotGroup& g, double r_min, double r_max, int levels,
                               int cells_per_dim)
{
  if (!(r_min > 0.0) || !(r_max > r_min))
    throw InvalidParameter("annulus radii must satisfy 0 < r_min < r_max");
  if (levels < 1)
    throw InvalidParameter("annulus needs at least one level");
  if (cells_per_dim < 2)
    throw InvalidParameter("cells_per_dim must be >= 2");

  AnnularMesh mesh;
  mesh.dim = g.dim();
  mesh.group = std::make_shared<const CarnotGroup>(g);
  mesh.r_min = r_min;
  mesh.r_max = r_max;
  mesh.levels = levels;
  mesh.cells_per_dim = cells_per_dim;
  const double q = std::pow(r_max / r_min, 1.0 / levels);
  for (int i = 0; i <= levels; ++i)
    mesh.shell_radii.push_back(i == levels ? r_max : r_min * std::pow(q, i));

  for (int s = 0; s < levels; ++s) {
    const double lo = mesh.shell_radii[s];
    const double hi = mesh.shell_radii[s + 1];
    const bool last = s + 1 == levels;
    const auto ext = bounding_extents(g, hi);
    double cell = 1.0;
    for (double e : ext)
      cell *= 2.0 * e / cells_per_dim;
    Eigen::VectorXd half(g.dim());
    for (int i = 0; i < g.dim(); ++i)
      half[i] = ext[i] / cells_per_dim;
    for_each_cell(ext, cells_per_dim, [&](const Eigen::VectorXd& x) {
      const double r = homogeneous_norm(g, x);
      // Cells cut by a shell boundary keep the part inside it, with N linearized over the cell.
      Eigen::VectorXd grad(g.dim());
      Eigen::VectorXd y = x;
      for (int i = 0; i < g.dim(); ++i) {
        const double d = 1e-3 * half[i];
        y[i] = x[i] + d;
        const double up = homogeneous_norm(g, y);
        y[i] = x[i] - d;
        grad[i] = (up - homogeneous_norm(g, y)) / (2.0 * d);
        y[i] = x[i];
      }
      const double frac =
        halfspace_fraction(grad, half, hi - r) - halfspace_fraction(grad, half, lo - r);
      if (!(frac > 1e-14))
        return;
      Eigen::VectorXd node = x;
      if (r < lo || r > hi || (r == hi && !last))
        node = scale_to_norm(g, x, r < lo ? lo * (1.0 + 1e-12) : hi * (1.0 - 1e-12));
      mesh.coords.insert(mesh.coords.end(), node.data(), node.data() + node.size());
      mesh.weights.push_back(cell * frac);
    });
  }
  return mesh;
}

std::vector<double> evaluate_nodes(const QuadratureMesh& mesh, const ScalarField& f)
{
  const long n = static_cast<long>(mesh.size());
  std::vector<double> values(mesh.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i)
    values[i] = f(mesh.node(static_cast<std::size_t>(i)));
  return values;
}

double weighted_sum(const QuadratureMesh& mesh, const std::vector<double>& values)
{
  if (values.size() != mesh.size())
    throw InvalidParameter("value count does not match the mesh");
  Neumaier acc;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw EvaluationError("non-finite integrand at node " + std::to_string(i), i);
    acc.add(mesh.weights[i] * values[i]);
  }
  return acc.value();
}

double integrate(const QuadratureMesh& mesh, const ScalarField& integrand)
{
  return weighted_sum(mesh, evaluate_nodes(mesh, integrand));
}

double ball_moment(const CarnotGroup& g, double p, int resolution)
{
  if (resolution < 10)
    throw InvalidParameter("ball quadrature resolution must be >= 10");
  if (!(p >= 0.0))
    throw InvalidParameter("ball moment exponent must be >= 0");
  const int n = resolution + (resolution % 2);
  // e^(-N^4) < 1e-17 beyond N = 40^(1/4)
  const double cut = std::pow(40.0, 0.25);
  const auto ext = bounding_extents(g, cut);
  double cell = 1.0;
  for (double e : ext)
    cell *= 2.0 * e / n;
  Neumaier acc;
  for_each_cell(ext, n, [&](const Eigen::VectorXd& x) {
    const double r = homogeneous_norm(g, x);
    const double r4 = r * r * r * r;
    if (r4 > 40.0)
      return;
    const double w = p == 0.0 ? 1.0 : std::pow(norm_gradient_magnitude(g, x), p);
    acc.add(w * std::exp(-r4));
  });
  return acc.value() * cell / std::tgamma(g.homogeneous_dimension() / 4.0 + 1.0);
}

double unit_ball_volume(const CarnotGroup& g, int resolution)
{
  return ball_moment(g, 0.0, resolution);
}

const GaussRule& gauss_legendre(int order)
{
  static const std::array<GaussRule, 65> rules = [] {
    std::array<GaussRule, 65> out;
    for (int n = 1; n <= 64; ++n)
      out[n] = compute_gauss(n);
    return out;
  }();
  if (order < 1 || order > 64)
    throw InvalidParameter("Gauss-Legendre order must be in [1, 64]");
  return rules[order];
}

double graded_integral(const std::function<double(double)>& f, double a, double b, int n_panels)
{
  if (!(a >= 0.0) || !(b >= a))
    throw InvalidParameter("graded integral needs 0 <= a <= b");
  if (n_panels < 2)
    throw InvalidParameter("graded integral needs at least two panels");
  if (a == b)
    return 0.0;
  Neumaier acc;
  double lo = a;
  int panels = n_panels;
  if (a == 0.0) {
    lo = b * 1e-10;
    // r = lo s^2 absorbs inverse square-root endpoint behavior.
    acc.add(gauss_panel([&](double t) { return 2.0 * lo * t * f(lo * t * t); }, 0.0, 1.0));
    --panels;
  }
  const double q = std::pow(b / lo, 1.0 / panels);
  double left = lo;
  for (int i = 1; i <= panels; ++i) {
    const double right = i == panels ? b : lo * std::pow(q, i);
    acc.add(gauss_panel(f, left, right));
    left = right;
  }
  return acc.value();
}

double oscillatory_integral(const std::function<double(double)>& h, double alpha, double a,
                            double b)
{
  if (!(b >= a) || !(a >= 0.0))
    throw InvalidParameter("oscillatory integral needs 0 <= a <= b");
  if (a == b)
    return 0.0;
  if (alpha <= 0.0) {
    return graded_integral([&](double r) { return h(r) * std::sin(std::pow(r, -alpha)); }, a, b,
                           64);
  }
  if (a == 0.0)
    throw InvalidParameter("oscillatory integral with alpha > 0 needs a > 0");

  const double pi = std::acos(-1.0);
  const double inv = 1.0 / alpha;
  // u = r^-alpha, dr = -(1/alpha) u^(-1/alpha - 1) du
  auto H = [&](double u) { return h(std::pow(u, -inv)) * inv * std::pow(u, -inv - 1.0); };
  auto Hsin = [&](double u) { return H(u) * std::sin(u); };
  auto dH = [&](double u) {
    const double d = 1e-4 * u;
    return (H(u + d) - H(u - d)) / (2.0 * d);
  };
  auto boundary = [&](double u) { return -H(u) * std::cos(u) + dH(u) * std::sin(u); };

  const double u_lo = std::pow(b, -alpha);
  const double u_hi = std::pow(a, -alpha);
  constexpr double half_periods = 20000.0;

  Neumaier acc;
  double k = std::floor(u_lo / pi) + 1.0;
  double first = std::min(k * pi, u_hi);
  if (first / u_lo > 2.0)
    acc.add(graded_integral(Hsin, u_lo, first, 16));
  else
    acc.add(gauss_panel(Hsin, u_lo, first));
  const double direct_end = std::min(u_hi, (k + half_periods) * pi);
  double left = first;
  while (left < direct_end) {
    k += 1.0;
    const double right = std::min(k * pi, direct_end);
    acc.add(gauss_panel(Hsin, left, right));
    left = right;
  }
  if (direct_end < u_hi)
    acc.add(boundary(u_hi) - boundary(direct_end));
  return acc.value();
}

double radial_integrate(int q, double ball_volume, const std::function<double(double)>& profile,
                        double r_min, double r_max, int n_panels)
{
  if (q < 1 || !(ball_volume > 0.0))
    throw InvalidParameter("radial integration needs Q >= 1 and a positive ball volume");
  auto f = [&](double r) { return profile(r) * std::pow(r, q - 1); };
  return q * ball_volume * graded_integral(f, r_min, r_max, n_panels);
}

double radial_integrate(const CarnotGroup& g, const std::function<double(double)>& profile,
                        double r_min, double r_max, int n_panels, int ball_resolution)
{
  return radial_integrate(g.homogeneous_dimension(), unit_ball_volume(g, ball_resolution), profile,
                          r_min, r_max, n_panels);
}

void write_mesh_csv(const QuadratureMesh& mesh, const std::string& path)
{
  CsvTable table;
  table.config = "{\"nodes\":" + std::to_string(mesh.size()) +
                 ",\"dim\":" + std::to_string(mesh.dim) + "}";
  for (int i = 0; i < mesh.dim; ++i)
    table.columns.push_back("x" + std::to_string(i + 1));
  table.columns.push_back("weight");
  table.rows.reserve(mesh.size());
  for (std::size_t n = 0; n < mesh.size(); ++n) {
    std::vector<double> row(mesh.coords.begin() + static_cast<long>(n * mesh.dim),
                            mesh.coords.begin() + static_cast<long>((n + 1) * mesh.dim));
    row.push_back(mesh.weights[n]);
    table.rows.push_back(std::move(row));
  }
  write_csv_atomic(path, table);
}

} // namespace carnot
