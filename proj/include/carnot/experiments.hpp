#ifndef CARNOT_EXPERIMENTS_HPP
#define CARNOT_EXPERIMENTS_HPP

#include "carnot/csv.hpp"
#include "carnot/group.hpp"
#include "carnot/hardy.hpp"
#include "carnot/parabolic.hpp"

#include "json.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace carnot {

/// Potential as configured; lambda defaults to lambda_factor times the Hardy constant.
struct PotentialConfig
{
  std::string kind = "pure";
  std::optional<double> lambda;
  double lambda_factor = 1.0;
  /// beta = beta_factor * lambda for the oscillating kind.
  double beta_factor = 0.0;
  double alpha = 2.0;
};

struct ScanConfig
{
  std::vector<double> epsilons{0.2, 0.1, 0.05, 0.025};
  double lambda_factor = 1.0;
  double r_out_scale = 10.0;
  double mollify_width = 0.05;
  double cutoff_ratio = 0.5;
  ScanMeshParams mesh;
};

struct FamilyConfig
{
  ConcentratingFamilySpec family;
  int n_max = 8;
  double margin = 0.1;
  int ball_resolution = 200;
};

struct VerifyConfig
{
  int samples = 1000;
  int residual_points = 100;
  int inequality_samples = 100000;
};

/// One run of the command-line driver. Defaults reproduce the documented H^1 experiments.
struct ExperimentConfig
{
  std::string command;
  nlohmann::json group = {{"kind", "heisenberg"}, {"n", 1}};
  double p = 2.0;
  std::uint64_t seed = 1;
  std::string out;
  PotentialConfig potential;
  ScanConfig scan;
  FamilyConfig family;
  GridSpec grid;
  EvolutionConfig evolution;
  int refine_levels = 3;
  VerifyConfig verify;
};

/// Fills a config from a JSON document; unknown keys and ill-typed values throw InvalidParameter.
ExperimentConfig config_from_json(const nlohmann::json& doc);
/// Full effective config (all defaults spelled out); keys are emitted in sorted order.
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Resolved potential for the configured group and p; empty when lambda is zero.
std::optional<PotentialSpec> resolve_potential(const ExperimentConfig& config,
                                               const CarnotGroup& g);

struct CheckResult
{
  std::string name;
  double measured;
  double tolerance;
  bool pass;
};

std::vector<CheckResult> verify_checks(const ExperimentConfig& config);
std::string render_report(const std::vector<CheckResult>& checks);

CsvTable hardy_scan_table(const ExperimentConfig& config);
CsvTable sigma_inf_table(const ExperimentConfig& config);
CsvTable evolve_table(const ExperimentConfig& config);
CsvTable refine_table(const ExperimentConfig& config);

/// Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error.
int run_verify(const ExperimentConfig& config, std::ostream& os);
int run_hardy_scan(const ExperimentConfig& config, std::ostream& os);
int run_sigma_inf(const ExperimentConfig& config, std::ostream& os);
int run_evolve(const ExperimentConfig& config, std::ostream& os);
int run_refine(const ExperimentConfig& config, std::ostream& os);
/// Dispatches on config.command.
int run_command(const ExperimentConfig& config, std::ostream& os);

} // namespace carnot

#endif // CARNOT_EXPERIMENTS_HPP
