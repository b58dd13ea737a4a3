#include "carnot/error.hpp"
#include "carnot/parabolic.hpp"
#include "carnot/quadrature.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>

using namespace carnot;

namespace {

EvolutionConfig base_config(double lambda_factor, double t_final)
{
  EvolutionConfig c;
  c.p = 1.7;
  c.t_final = t_final;
  if (lambda_factor > 0.0) {
    PotentialSpec V;
    V.lambda = lambda_factor * hardy_constant(make_heisenberg(1), c.p);
    c.potential = V;
  }
  return c;
}

GridSpec grid_of(int n)
{
  GridSpec g;
  g.n_xy = g.n_ell = n;
  return g;
}

// Straight-line evaluation of div_H(D grad_H u) + V u^(p-1): nodal one-sided/central
// derivatives, nodal diffusivities averaged onto faces, X = d_x + 2y d_l, Y = d_y - 2x d_l.
std::vector<double> reference_rhs(const std::vector<double>& u, const GridSpec& g,
                                  const EvolutionConfig& c, const std::vector<double>& V)
{
  const int n = g.n_xy, m = g.n_ell;
  const double h = g.h_xy(), hl = g.h_ell();
  auto at = [&](int i, int j, int k) { return u[g.index(i, j, k)]; };
  auto d1 = [](double minus, double centre, double plus, int pos, int last, double step) {
    if (pos == 0)
      return (plus - centre) / step;
    if (pos == last)
      return (centre - minus) / step;
    return (plus - minus) / (2.0 * step);
  };
  const std::size_t N = g.node_count();
  std::vector<double> dx(N), dy(N), dl(N), D(N);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j)
      for (int k = 0; k <= m; ++k) {
        const std::size_t id = g.index(i, j, k);
        const double c0 = at(i, j, k);
        dx[id] = d1(i > 0 ? at(i - 1, j, k) : 0.0, c0, i < n ? at(i + 1, j, k) : 0.0, i, n, h);
        dy[id] = d1(j > 0 ? at(i, j - 1, k) : 0.0, c0, j < n ? at(i, j + 1, k) : 0.0, j, n, h);
        dl[id] = d1(k > 0 ? at(i, j, k - 1) : 0.0, c0, k < m ? at(i, j, k + 1) : 0.0, k, m, hl);
        const double X = dx[id] + 2.0 * g.x(j) * dl[id];
        const double Y = dy[id] - 2.0 * g.x(i) * dl[id];
        D[id] = std::min(std::pow(X * X + Y * Y + c.eta * c.eta, (c.p - 2.0) / 2.0), c.d_max());
      }
  std::vector<double> rhs(N, 0.0);
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j)
      for (int k = 1; k < m; ++k) {
        const double x = g.x(i), y = g.x(j);
        auto fx = [&](int a) {  // face between (a, j, k) and (a + 1, j, k)
          const std::size_t p0 = g.index(a, j, k), p1 = g.index(a + 1, j, k);
          return 0.5 * (D[p0] + D[p1]) * ((u[p1] - u[p0]) / h + y * (dl[p0] + dl[p1]));
        };
        auto fy = [&](int b) {
          const std::size_t p0 = g.index(i, b, k), p1 = g.index(i, b + 1, k);
          return 0.5 * (D[p0] + D[p1]) * ((u[p1] - u[p0]) / h - x * (dl[p0] + dl[p1]));
        };
        auto fl = [&](int c3) {
          const std::size_t p0 = g.index(i, j, c3), p1 = g.index(i, j, c3 + 1);
          const double gl = (u[p1] - u[p0]) / hl;
          const double X = 0.5 * (dx[p0] + dx[p1]) + 2.0 * y * gl;
          const double Y = 0.5 * (dy[p0] + dy[p1]) - 2.0 * x * gl;
          return 0.5 * (D[p0] + D[p1]) * (2.0 * y * X - 2.0 * x * Y);
        };
        const std::size_t id = g.index(i, j, k);
        double r = (fx(i) - fx(i - 1)) / h + (fy(j) - fy(j - 1)) / h + (fl(k) - fl(k - 1)) / hl;
        if (V[id] != 0.0 && u[id] > 0.0)
          r += V[id] * std::pow(u[id], c.p - 1.0);
        rhs[id] = r;
      }
  return rhs;
}

bool boundary_is_zero(const std::vector<double>& u, const GridSpec& g)
{
  for (int i = 0; i <= g.n_xy; ++i)
    for (int j = 0; j <= g.n_xy; ++j)
      for (int k = 0; k <= g.n_ell; ++k) {
        const bool edge = i == 0 || j == 0 || k == 0 || i == g.n_xy || j == g.n_xy || k == g.n_ell;
        if (edge && u[g.index(i, j, k)] != 0.0)
          return false;
      }
  return true;
}

} // namespace

TEST_CASE("grid and config validation")
{
  GridSpec g = grid_of(4);
  CHECK_THROWS_AS(g.validate(), InvalidParameter);
  g = grid_of(16);
  CHECK(g.node_count() == 17u * 17u * 17u);
  CHECK(g.x(8) == 0.0);
  EvolutionConfig c;
  c.p = 2.0;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c.p = 1.7;
  c.dt_safety = 1.0;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c.dt_safety = 0.9;
  c.u0.radius = 0.5;
  CHECK_THROWS_AS(init_state(g, c), InvalidParameter);
  CHECK_THROWS_AS(refinement_study(g, base_config(0.0, 1e-4), 1), InvalidParameter);
}

TEST_CASE("initial bump")
{
  const GridSpec g = grid_of(32);
  EvolutionConfig c = base_config(0.0, 0.01);
  const EvolutionState s = init_state(g, c);
  CHECK(discrete_sup(s) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(s.u[g.index(16, 16, 16)] == doctest::Approx(std::exp(-1.0)));
  CHECK(*std::min_element(s.u.begin(), s.u.end()) >= 0.0);
  CHECK(boundary_is_zero(s.u, g));

  // Cross-check the discrete mass against the quadrature module on a graded annulus.
  const CarnotGroup h1 = make_heisenberg(1);
  const AnnularMesh mesh = build_annular_mesh(h1, 1e-3, c.u0.radius, 16, 32);
  const ScalarField bump{[&](PointRef x) {
                           const double t = homogeneous_norm(h1, x) / c.u0.radius;
                           return t < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
                         },
                         {}};
  CHECK(discrete_mass(s, g) == doctest::Approx(integrate(mesh, bump)).epsilon(0.01));

  c.u0.amplitude = 0.0;
  const EvolutionState zero = init_state(g, c);
  CHECK(discrete_sup(zero) == 0.0);
  CHECK(discrete_mass(zero, g) == 0.0);
}

TEST_CASE("mass and sup of simple states")
{
  const GridSpec g = grid_of(8);
  EvolutionState s;
  s.u.assign(g.node_count(), 0.0);
  CHECK(discrete_mass(s, g) == 0.0);
  CHECK(discrete_sup(s) == 0.0);
  int k = 0;
  for (int i = 2; i < 5; ++i)
    for (int j = 3; j < 5; ++j) {
      s.u[g.index(i, j, 4)] = 1.5;
      ++k;
    }
  const double cell = g.h_xy() * g.h_xy() * g.h_ell();
  CHECK(discrete_mass(s, g) == doctest::Approx(1.5 * k * cell));
  CHECK(discrete_sup(s) == 1.5);
}

TEST_CASE("zero data stays zero")
{
  const GridSpec g = grid_of(16);
  EvolutionConfig c = base_config(0.0, 0.001);
  c.u0.amplitude = 0.0;
  EvolutionState s = init_state(g, c);
  for (int t = 0; t < 5; ++t)
    step(s, g, c);
  CHECK(discrete_sup(s) == 0.0);
}

TEST_CASE("single step matches the straight-line evaluation")
{
  const GridSpec g = grid_of(16);
  const EvolutionConfig c = base_config(2.0, 0.01);
  EvolutionState s = init_state(g, c);
  const std::vector<double> V = capped_potential(g, c);
  const double dt = stable_dt(g, c);
  const std::vector<double> want = reference_rhs(s.u, g, c, V);
  const std::vector<double> got = right_hand_side(s, g, c, V);
  double scale = 0.0, diff = 0.0;
  for (std::size_t n = 0; n < want.size(); ++n) {
    scale = std::max(scale, std::abs(want[n]));
    diff = std::max(diff, std::abs(want[n] - got[n]));
  }
  CHECK(diff <= 1e-12 * scale);

  // The update: u + dt rhs, negatives clipped, positives rescaled to the unclipped sum.
  std::vector<double> next(s.u.size());
  double pre = 0.0, pos = 0.0;
  for (std::size_t n = 0; n < next.size(); ++n) {
    next[n] = s.u[n] + dt * want[n];
    pre += next[n];
    pos += std::max(next[n], 0.0);
  }
  for (double& v : next)
    v = v > 0.0 ? v * pre / pos : 0.0;
  const std::vector<double> before = s.u;
  step(s, g, c, V, dt);
  double err = 0.0;
  for (std::size_t n = 0; n < next.size(); ++n)
    err = std::max(err, std::abs(next[n] - s.u[n]));
  CHECK(err <= 1e-12 * discrete_sup(s));
  CHECK(s.steps == 1);
  CHECK(s.t == dt);
}

TEST_CASE("nonnegativity and boundary values are kept")
{
  const GridSpec g = grid_of(16);
  const EvolutionConfig c = base_config(2.0, 0.01);
  EvolutionState s = init_state(g, c);
  const std::vector<double> V = capped_potential(g, c);
  const double dt = stable_dt(g, c);
  for (int t = 0; t < 50; ++t) {
    step(s, g, c, V, dt);
    CHECK(*std::min_element(s.u.begin(), s.u.end()) >= 0.0);
    CHECK(boundary_is_zero(s.u, g));
  }
}

TEST_CASE("without a potential mass and energy do not increase")
{
  const GridSpec g = grid_of(32);
  EvolutionConfig c = base_config(0.0, 0.01);
  c.checkpoints = 20;
  const Diagnostics d = evolve(g, c);
  REQUIRE(d.records.size() >= 20);
  const double m0 = d.records.front().mass;
  for (std::size_t i = 1; i < d.records.size(); ++i) {
    CHECK(d.records[i].t > d.records[i - 1].t);
    CHECK(d.records[i].mass - d.records[i - 1].mass <= 1e-8 * m0);
    CHECK(d.records[i].energy - d.records[i - 1].energy <= 1e-8 * d.records.front().energy);
  }
  CHECK(d.records.back().mass <= m0);
  CHECK_FALSE(d.diverged);

  // Each single step as well.
  EvolutionState s = init_state(g, c);
  const std::vector<double> V = capped_potential(g, c);
  double prev = discrete_mass(s, g);
  for (int t = 0; t < 30; ++t) {
    step(s, g, c, V, stable_dt(g, c));
    const double m = discrete_mass(s, g);
    CHECK(m - prev <= 1e-12 * prev);
    prev = m;
  }
}

TEST_CASE("halving the step leaves diagnostics unchanged")
{
  const GridSpec g = grid_of(16);
  EvolutionConfig c = base_config(0.5, 0.005);
  const double dt1 = stable_dt(g, c);
  const Diagnostics d1 = evolve(g, c);
  c.diffusivity_cap = 2.0 * c.d_max();
  CHECK(stable_dt(g, c) == doctest::Approx(0.5 * dt1));
  const Diagnostics d2 = evolve(g, c);
  REQUIRE(d1.records.size() == d2.records.size());
  const DiagnosticRecord &a = d1.records.back(), &b = d2.records.back();
  CHECK(a.t == doctest::Approx(b.t));
  CHECK(b.mass == doctest::Approx(a.mass).epsilon(0.01));
  CHECK(b.sup == doctest::Approx(a.sup).epsilon(0.01));
  CHECK(b.energy == doctest::Approx(a.energy).epsilon(0.01));
}

TEST_CASE("final sup is monotone in lambda")
{
  const GridSpec g = grid_of(16);
  double prev = 0.0;
  for (double f : {0.0, 0.5, 1.0, 2.0}) {
    const double sup = evolve(g, base_config(f, 0.005)).records.back().sup;
    CHECK(sup >= prev);
    prev = sup;
  }
}

TEST_CASE("divergence is reported with its step")
{
  const GridSpec g = grid_of(8);
  EvolutionConfig c = base_config(0.0, 0.01);
  c.u0.radius = 0.45;
  EvolutionState s = init_state(g, c);
  std::vector<double> V(g.node_count(), 0.0);
  V[g.index(4, 4, 4)] = 1e308;
  try {
    step(s, g, c, V, 10.0);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.step() == 1);
  }

  EvolutionConfig huge = base_config(0.0, 0.01);
  PotentialSpec big;
  big.lambda = 1e306;
  huge.potential = big;
  const Diagnostics d = evolve(grid_of(8), huge);
  CHECK(d.diverged);
  CHECK(d.divergence_step >= 1);
  CHECK(d.divergence_time > 0.0);
}

TEST_CASE("refinement without a potential converges in mass")
{
  const std::vector<RefinementRow> rows = refinement_study(grid_of(16), base_config(0.0, 0.005), 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].h == doctest::Approx(0.5 * rows[0].h));
  const double d1 = std::abs(rows[1].final_mass - rows[0].final_mass);
  const double d2 = std::abs(rows[2].final_mass - rows[1].final_mass);
  CHECK(d2 < 0.5 * d1);
}

TEST_CASE("subcritical potential keeps the coarse solution bounded up to t = 0.1")
{
  EvolutionConfig c = base_config(0.5, 0.1);
  const Diagnostics d = evolve(grid_of(32), c);
  const double s0 = d.records.front().sup;
  for (const DiagnosticRecord& r : d.records)
    CHECK(r.sup <= 2.0 * s0);
  CHECK_FALSE(d.diverged);
}

TEST_CASE("supercritical potential exceeds ten times the initial sup before t = 0.1")
{
  EvolutionConfig c = base_config(2.0, 0.1);
  c.stop_sup_factor = 10.0;
  const Diagnostics d = evolve(grid_of(64), c);
  const DiagnosticRecord& last = d.records.back();
  CHECK((d.diverged || last.sup > 10.0 * d.records.front().sup));
  CHECK(last.t < 0.1);
}
