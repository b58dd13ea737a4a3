#include "carnot/parabolic.hpp"

#include "carnot/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace carnot {

namespace {

// Horizontal derivatives and the regularized diffusivity at every node.
struct NodeFields
{
  std::vector<double> dx, dy, dl, D;
};

double derivative(const std::vector<double>& u, std::size_t n, std::size_t stride, int pos,
                  int last, double h)
{
  if (pos == 0)
    return (u[n + stride] - u[n]) / h;
  if (pos == last)
    return (u[n] - u[n - stride]) / h;
  return (u[n + stride] - u[n - stride]) / (2.0 * h);
}

void node_fields(const std::vector<double>& u, const GridSpec& grid,
                 const EvolutionConfig& config, NodeFields& f)
{
  const int nx = grid.n_xy;
  const int nl = grid.n_ell;
  const double h = grid.h_xy();
  const double hl = grid.h_ell();
  const std::size_t sx = grid.index(1, 0, 0);
  const std::size_t sy = grid.index(0, 1, 0);
  const double eta2 = config.eta * config.eta;
  const double expo = 0.5 * (config.p - 2.0);
  const double dmax = config.d_max();
  f.dx.resize(u.size());
  f.dy.resize(u.size());
  f.dl.resize(u.size());
  f.D.resize(u.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i <= nx; ++i) {
    const double x = grid.x(i);
    for (int j = 0; j <= nx; ++j) {
      const double y = grid.x(j);
      for (int k = 0; k <= nl; ++k) {
        const std::size_t n = grid.index(i, j, k);
        const double dx = derivative(u, n, sx, i, nx, h);
        const double dy = derivative(u, n, sy, j, nx, h);
        const double dl = derivative(u, n, 1, k, nl, hl);
        const double X = dx + 2.0 * y * dl;
        const double Y = dy - 2.0 * x * dl;
        f.dx[n] = dx;
        f.dy[n] = dy;
        f.dl[n] = dl;
        f.D[n] = std::min(std::pow(X * X + Y * Y + eta2, expo), dmax);
      }
    }
  }
}

// Buffers reused across steps.
struct Workspace
{
  NodeFields fields;
  std::vector<double> rhs;
  std::vector<double> next;
};

void fill_rhs(const EvolutionState& state, const GridSpec& grid, const EvolutionConfig& config,
              const std::vector<double>& potential, Workspace& ws);
void advance(EvolutionState& state, const GridSpec& grid, const EvolutionConfig& config,
             const std::vector<double>& potential, double dt, Workspace& ws);

} // namespace

GridSpec GridSpec::refined(int factor) const
{
  GridSpec g = *this;
  g.n_xy *= factor;
  g.n_ell *= factor;
  return g;
}

void GridSpec::validate() const
{
  if (!(L_xy > 0.0) || !(L_ell > 0.0))
    throw InvalidParameter("grid half-widths must be positive");
  if (n_xy < 8 || n_ell < 8)
    throw InvalidParameter("grid counts must be >= 8");
}

void EvolutionConfig::validate() const
{
  if (!(p > 1.0 && p < 2.0))
    throw InvalidParameter("evolution requires 1 < p < 2 (p = " + std::to_string(p) + ")");
  if (!(eta > 0.0))
    throw InvalidParameter("eta must be positive");
  if (!(diffusivity_cap >= 0.0))
    throw InvalidParameter("diffusivity_cap must be >= 0");
  if (!(cap_factor > 0.0))
    throw InvalidParameter("cap_factor must be positive");
  if (!(dt_safety > 0.0 && dt_safety < 1.0))
    throw InvalidParameter("dt_safety must lie in (0, 1)");
  if (!(t_final > 0.0))
    throw InvalidParameter("t_final must be positive");
  if (!(u0.amplitude >= 0.0) || !(u0.radius > 0.0))
    throw InvalidParameter("bump needs amplitude >= 0 and radius > 0");
  if (checkpoints < 1)
    throw InvalidParameter("checkpoints must be >= 1");
  if (!(stop_sup_factor >= 0.0))
    throw InvalidParameter("stop_sup_factor must be >= 0");
  if (potential)
    potential->validate();
}

double EvolutionConfig::d_max() const
{
  return diffusivity_cap > 0.0 ? diffusivity_cap : std::pow(eta, p - 2.0);
}

EvolutionState init_state(const GridSpec& grid, const EvolutionConfig& config)
{
  grid.validate();
  config.validate();
  const double R = config.u0.radius;
  if (!(R < 0.5 * std::min(grid.L_xy, grid.L_ell)))
    throw InvalidParameter("bump radius must be below half the smallest box half-width");
  EvolutionState s;
  s.u.assign(grid.node_count(), 0.0);
  for (int i = 1; i < grid.n_xy; ++i) {
    const double x = grid.x(i);
    for (int j = 1; j < grid.n_xy; ++j) {
      const double y = grid.x(j);
      const double z2 = x * x + y * y;
      for (int k = 1; k < grid.n_ell; ++k) {
        const double l = grid.ell(k);
        const double rho = std::pow(z2 * z2 + l * l, 0.25);
        if (rho < R) {
          const double t = rho / R;
          s.u[grid.index(i, j, k)] = config.u0.amplitude * std::exp(-1.0 / (1.0 - t * t));
        }
      }
    }
  }
  return s;
}

double stable_dt(const GridSpec& grid, const EvolutionConfig& config)
{
  const double h = grid.h_xy();
  const double hl = grid.h_ell();
  const double L = grid.L_xy;
  const double K = 8.0 / (h * h) + 32.0 * L * L / (hl * hl) + 16.0 * L / (h * hl);
  return config.dt_safety * 2.0 / (config.d_max() * K);
}

std::vector<double> capped_potential(const GridSpec& grid, const EvolutionConfig& config)
{
  std::vector<double> V(grid.node_count(), 0.0);
  if (!config.potential)
    return V;
  const PotentialSpec& spec = *config.potential;
  spec.validate();
  const double p = config.p;
  const double scale = std::pow(config.cap_factor * grid.h_xy(), -p);
  const double cap = (spec.lambda + std::abs(spec.beta)) * scale;
  const CarnotGroup g = make_heisenberg(1);
  for (int i = 1; i < grid.n_xy; ++i) {
    for (int j = 1; j < grid.n_xy; ++j) {
      for (int k = 1; k < grid.n_ell; ++k) {
        const Eigen::Vector3d x(grid.x(i), grid.x(j), grid.ell(k));
        double v;
        if (x.squaredNorm() == 0.0)
          v = spec.lambda * scale;
        else
          v = std::clamp(evaluate_potential(g, spec, p, x), -cap, cap);
        V[grid.index(i, j, k)] = v;
      }
    }
  }
  return V;
}

namespace {

void fill_rhs(const EvolutionState& state, const GridSpec& grid, const EvolutionConfig& config,
              const std::vector<double>& potential, Workspace& ws)
{
  const std::vector<double>& u = state.u;
  if (u.size() != grid.node_count() || potential.size() != u.size())
    throw InvalidParameter("state or potential does not match the grid");
  node_fields(u, grid, config, ws.fields);
  const NodeFields& f = ws.fields;
  const int nx = grid.n_xy;
  const int nl = grid.n_ell;
  const double h = grid.h_xy();
  const double hl = grid.h_ell();
  const std::size_t sx = grid.index(1, 0, 0);
  const std::size_t sy = grid.index(0, 1, 0);
  const double pm1 = config.p - 1.0;

  // Fluxes through the face between node n and its neighbour n + stride.
  auto flux_x = [&](std::size_t n, double y) {
    const std::size_t m = n + sx;
    const double Xu = (u[m] - u[n]) / h + y * (f.dl[n] + f.dl[m]);
    return 0.5 * (f.D[n] + f.D[m]) * Xu;
  };
  auto flux_y = [&](std::size_t n, double x) {
    const std::size_t m = n + sy;
    const double Yu = (u[m] - u[n]) / h - x * (f.dl[n] + f.dl[m]);
    return 0.5 * (f.D[n] + f.D[m]) * Yu;
  };
  auto flux_l = [&](std::size_t n, double x, double y) {
    const std::size_t m = n + 1;
    const double gl = (u[m] - u[n]) / hl;
    const double Xu = 0.5 * (f.dx[n] + f.dx[m]) + 2.0 * y * gl;
    const double Yu = 0.5 * (f.dy[n] + f.dy[m]) - 2.0 * x * gl;
    return 0.5 * (f.D[n] + f.D[m]) * (2.0 * y * Xu - 2.0 * x * Yu);
  };

  std::vector<double>& rhs = ws.rhs;
  if (rhs.size() != u.size())
    rhs.assign(u.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 1; i < nx; ++i) {
    const double x = grid.x(i);
    for (int j = 1; j < nx; ++j) {
      const double y = grid.x(j);
      double below = flux_l(grid.index(i, j, 0), x, y);
      for (int k = 1; k < nl; ++k) {
        const std::size_t n = grid.index(i, j, k);
        const double above = flux_l(n, x, y);
        const double div = (flux_x(n, y) - flux_x(n - sx, y)) / h +
                           (flux_y(n, x) - flux_y(n - sy, x)) / h + (above - below) / hl;
        below = above;
        double react = 0.0;
        if (potential[n] != 0.0 && u[n] > 0.0)
          react = potential[n] * std::pow(u[n], pm1);
        rhs[n] = div + react;
      }
    }
  }
}

void advance(EvolutionState& state, const GridSpec& grid, const EvolutionConfig& config,
             const std::vector<double>& potential, double dt, Workspace& ws)
{
  fill_rhs(state, grid, config, potential, ws);
  const std::vector<double>& rhs = ws.rhs;
  const int nx = grid.n_xy;
  // Boundary entries are never written and stay zero across swaps.
  std::vector<double>& next = ws.next;
  if (next.size() != state.u.size())
    next.assign(state.u.size(), 0.0);
  // Per-slab partial sums keep the reduction order independent of the thread count.
  std::vector<double> total(nx + 1, 0.0), negative(nx + 1, 0.0);
  std::vector<char> finite(nx + 1, 1);
#pragma omp parallel for schedule(static)
  for (int i = 1; i < nx; ++i) {
    double t = 0.0, neg = 0.0;
    for (int j = 1; j < nx; ++j) {
      for (int k = 1; k < grid.n_ell; ++k) {
        const std::size_t n = grid.index(i, j, k);
        const double v = state.u[n] + dt * rhs[n];
        if (!std::isfinite(v))
          finite[i] = 0;
        t += v;
        if (v < 0.0)
          neg -= v;
        next[n] = v;
      }
    }
    total[i] = t;
    negative[i] = neg;
  }
  for (int i = 1; i < nx; ++i) {
    if (!finite[i])
      throw DivergenceError("non-finite value at step " + std::to_string(state.steps + 1),
                            state.steps + 1);
  }
  double pre = 0.0, neg = 0.0;
  for (int i = 1; i < nx; ++i) {
    pre += total[i];
    neg += negative[i];
  }
  double scale = 1.0;
  if (neg > 0.0) {
    const double pos = pre + neg;
    scale = pre > 0.0 ? pre / pos : 0.0;
    const long count = static_cast<long>(next.size());
#pragma omp parallel for schedule(static)
    for (long n = 0; n < count; ++n)
      next[n] = next[n] > 0.0 ? next[n] * scale : 0.0;
  }
  const double cell = grid.h_xy() * grid.h_xy() * grid.h_ell();
  state.clipped_mass += neg * cell;
  state.last_scale = scale;
  state.u.swap(next);
  state.t += dt;
  ++state.steps;
}

} // namespace

std::vector<double> right_hand_side(const EvolutionState& state, const GridSpec& grid,
                                    const EvolutionConfig& config,
                                    const std::vector<double>& potential)
{
  Workspace ws;
  fill_rhs(state, grid, config, potential, ws);
  return std::move(ws.rhs);
}

void step(EvolutionState& state, const GridSpec& grid, const EvolutionConfig& config,
          const std::vector<double>& potential, double dt)
{
  Workspace ws;
  advance(state, grid, config, potential, dt, ws);
}

void step(EvolutionState& state, const GridSpec& grid, const EvolutionConfig& config)
{
  step(state, grid, config, capped_potential(grid, config), stable_dt(grid, config));
}

double discrete_mass(const EvolutionState& state, const GridSpec& grid)
{
  double s = 0.0;
  for (double v : state.u)
    s += v;
  return s * grid.h_xy() * grid.h_xy() * grid.h_ell();
}

double discrete_sup(const EvolutionState& state)
{
  double s = 0.0;
  for (double v : state.u)
    s = std::max(s, v);
  return s;
}

double discrete_energy(const EvolutionState& state, const GridSpec& grid, double p)
{
  const std::vector<double>& u = state.u;
  const double h = grid.h_xy();
  const double hl = grid.h_ell();
  const std::size_t sx = grid.index(1, 0, 0);
  const std::size_t sy = grid.index(0, 1, 0);
  std::vector<double> partial(grid.n_xy + 1, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 1; i < grid.n_xy; ++i) {
    const double x = grid.x(i);
    double acc = 0.0;
    for (int j = 1; j < grid.n_xy; ++j) {
      const double y = grid.x(j);
      for (int k = 1; k < grid.n_ell; ++k) {
        const std::size_t n = grid.index(i, j, k);
        const double dl = (u[n + 1] - u[n - 1]) / (2.0 * hl);
        const double X = (u[n + sx] - u[n - sx]) / (2.0 * h) + 2.0 * y * dl;
        const double Y = (u[n + sy] - u[n - sy]) / (2.0 * h) - 2.0 * x * dl;
        const double g2 = X * X + Y * Y;
        if (g2 > 0.0)
          acc += std::pow(g2, 0.5 * p);
      }
    }
    partial[i] = acc;
  }
  double s = 0.0;
  for (double v : partial)
    s += v;
  return s * h * h * hl;
}

Diagnostics evolve(const GridSpec& grid, const EvolutionConfig& config)
{
  EvolutionState state = init_state(grid, config);
  const std::vector<double> V = capped_potential(grid, config);
  const double raw = stable_dt(grid, config);
  const long nsteps = static_cast<long>(std::ceil(config.t_final / raw));
  Diagnostics diag;
  diag.dt = config.t_final / static_cast<double>(nsteps);
  const long interval = std::max(1L, nsteps / config.checkpoints);
  auto record = [&] {
    diag.records.push_back({state.t, discrete_mass(state, grid), discrete_sup(state),
                            discrete_energy(state, grid, config.p), state.clipped_mass});
  };
  record();
  const double stop = config.stop_sup_factor * discrete_sup(state);
  Workspace ws;
  for (long s = 1; s <= nsteps; ++s) {
    try {
      advance(state, grid, config, V, diag.dt, ws);
    } catch (const DivergenceError& e) {
      diag.diverged = true;
      diag.divergence_step = e.step();
      diag.divergence_time = state.t + diag.dt;
      break;
    }
    const bool stopping = stop > 0.0 && discrete_sup(state) > stop;
    if (s % interval == 0 || s == nsteps || stopping)
      record();
    if (stopping)
      break;
  }
  diag.steps = state.steps;
  return diag;
}

std::vector<RefinementRow> refinement_study(const GridSpec& base, const EvolutionConfig& config,
                                            int levels)
{
  if (levels < 2)
    throw InvalidParameter("refinement study needs at least two levels");
  std::vector<RefinementRow> rows;
  for (int l = 0; l < levels; ++l) {
    const GridSpec grid = base.refined(1 << l);
    const Diagnostics d = evolve(grid, config);
    const DiagnosticRecord& last = d.records.back();
    rows.push_back({grid.n_xy, grid.h_xy(), last.t, last.mass, last.sup, d.diverged});
  }
  return rows;
}

} // namespace carnot
