#ifndef CARNOT_PARABOLIC_HPP
#define CARNOT_PARABOLIC_HPP

#include "carnot/hardy.hpp"

#include <optional>
#include <vector>

namespace carnot {

/**
 * Node grid on the H^1 box [-L_xy, L_xy]^2 x [-L_ell, L_ell]. Counts are cells per axis, so each
 * axis carries count + 1 nodes and the origin is a node when counts are even.
 */
struct GridSpec
{
  double L_xy = 1.0;
  double L_ell = 1.0;
  int n_xy = 32;
  int n_ell = 32;

  double h_xy() const { return 2.0 * L_xy / n_xy; }
  double h_ell() const { return 2.0 * L_ell / n_ell; }
  std::size_t node_count() const
  {
    return static_cast<std::size_t>(n_xy + 1) * (n_xy + 1) * (n_ell + 1);
  }
  /// Node (i, j, k) at (x_i, y_j, l_k) is stored at (i (n_xy+1) + j) (n_ell+1) + k.
  std::size_t index(int i, int j, int k) const
  {
    return (static_cast<std::size_t>(i) * (n_xy + 1) + j) * (n_ell + 1) + k;
  }
  double x(int i) const { return -L_xy + i * h_xy(); }
  double ell(int k) const { return -L_ell + k * h_ell(); }
  GridSpec refined(int factor) const;
  void validate() const;
};

/// u0 = A exp(-1 / (1 - (rho/R)^2)) inside rho < R.
struct BumpSpec
{
  double amplitude = 1.0;
  double radius = 0.4;
};

struct EvolutionConfig
{
  double p = 1.7;
  std::optional<PotentialSpec> potential;
  double eta = 1e-2;
  /// Zero selects eta^(p-2), the value the regularizer gives at vanishing gradient.
  double diffusivity_cap = 0.0;
  /// V is capped at its supremum on the sphere N = cap_factor h_xy.
  double cap_factor = 2.0;
  double dt_safety = 0.9;
  double t_final = 0.01;
  BumpSpec u0;
  /// Diagnostics are recorded this many times after t = 0 (evenly in steps).
  int checkpoints = 10;
  /// Stop early once sup u exceeds this multiple of sup u0; zero disables.
  double stop_sup_factor = 0.0;

  void validate() const;
  double d_max() const;
};

struct EvolutionState
{
  double t = 0.0;
  long steps = 0;
  std::vector<double> u;
  /// Mass removed by clipping negatives, summed over all steps, and the last step's rescale.
  double clipped_mass = 0.0;
  double last_scale = 1.0;
};

struct DiagnosticRecord
{
  double t;
  double mass;
  double sup;
  double energy;
  double clipped_mass;
};

struct Diagnostics
{
  std::vector<DiagnosticRecord> records;
  bool diverged = false;
  double divergence_time = 0.0;
  long divergence_step = -1;
  long steps = 0;
  double dt = 0.0;
};

EvolutionState init_state(const GridSpec& grid, const EvolutionConfig& config);

/// safety 2 / (D_max K) with K the Gershgorin bound 8/h^2 + 32 L^2/h_l^2 + 16 L/(h h_l).
double stable_dt(const GridSpec& grid, const EvolutionConfig& config);
/// The capped potential at every node (zero without a potential).
std::vector<double> capped_potential(const GridSpec& grid, const EvolutionConfig& config);
/// Discrete div_H(D grad_H u) + V u^(p-1) at every node (zero on the boundary).
std::vector<double> right_hand_side(const EvolutionState& state, const GridSpec& grid,
                                    const EvolutionConfig& config,
                                    const std::vector<double>& potential);

/**
 * u <- u + dt rhs, then negatives are clipped and the positive part rescaled to the unclipped
 * discrete mass. Throws DivergenceError when a non-finite value appears.
 */
void step(EvolutionState& state, const GridSpec& grid, const EvolutionConfig& config,
          const std::vector<double>& potential, double dt);
/// Convenience overload using stable_dt and a freshly built potential.
void step(EvolutionState& state, const GridSpec& grid, const EvolutionConfig& config);

Diagnostics evolve(const GridSpec& grid, const EvolutionConfig& config);

double discrete_mass(const EvolutionState& state, const GridSpec& grid);
double discrete_sup(const EvolutionState& state);
/// sum over interior nodes of |grad_H u|^p h_xy^2 h_ell with central differences.
double discrete_energy(const EvolutionState& state, const GridSpec& grid, double p);

struct RefinementRow
{
  int n_xy;
  double h;
  double final_time;
  double final_mass;
  double final_sup;
  bool diverged;
};

/// evolve on grids n, 2n, 4n, ... (levels of them).
std::vector<RefinementRow> refinement_study(const GridSpec& base, const EvolutionConfig& config,
                                            int levels);

} // namespace carnot

#endif // CARNOT_PARABOLIC_HPP
