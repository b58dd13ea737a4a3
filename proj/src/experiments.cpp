#include "carnot/experiments.hpp"

#include "carnot/calculus.hpp"
#include "carnot/error.hpp"
#include "carnot/group_json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <set>

namespace carnot {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path)
{
  if (!obj.is_object())
    throw InvalidParameter(path + ": expected an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key()))
      throw InvalidParameter("unknown config key '" + path + item.key() + "'");
  }
}

template <class T>
void read(const json& obj, const char* key, T& target, const std::string& path)
{
  if (!obj.contains(key))
    return;
  try {
    target = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidParameter("config key '" + path + key + "' has the wrong type");
  }
}

json potential_json(const PotentialConfig& c)
{
  json j = {{"kind", c.kind},
            {"lambda_factor", c.lambda_factor},
            {"beta_factor", c.beta_factor},
            {"alpha", c.alpha}};
  j["lambda"] = c.lambda ? json(*c.lambda) : json(nullptr);
  return j;
}

void require(bool ok, const std::string& field, const std::string& what)
{
  if (!ok)
    throw InvalidParameter(field + ": " + what);
}

void validate(const ExperimentConfig& c)
{
  require(c.p > 1.0, "p", "must exceed 1");
  require(c.potential.kind == "pure" || c.potential.kind == "oscillating", "potential.kind",
          "must be 'pure' or 'oscillating'");
  require(!c.potential.lambda || *c.potential.lambda >= 0.0, "potential.lambda",
          "must be >= 0");
  require(c.potential.lambda_factor >= 0.0, "potential.lambda_factor", "must be >= 0");
  require(c.refine_levels >= 2, "refine.levels", "must be >= 2");
  require(c.verify.samples >= 1 && c.verify.residual_points >= 1 &&
            c.verify.inequality_samples >= 1,
          "verify", "sample counts must be >= 1");
  require(c.family.n_max >= 1, "family.n_max", "must be >= 1");
  require(c.family.margin > 0.0 && c.family.margin < 1.0, "family.margin", "must lie in (0, 1)");
}

// Uniform coordinates in [-1, 1], dilated onto N = r with r uniform in [r_lo, r_hi].
GroupPoint random_point(const CarnotGroup& g, std::mt19937_64& rng, double r_lo, double r_hi)
{
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(r_lo, r_hi);
  for (;;) {
    GroupPoint x(g.dim());
    for (int i = 0; i < g.dim(); ++i)
      x[i] = coord(rng);
    if (homogeneous_norm(g, x) > 1e-3)
      return scale_to_norm(g, x, radius(rng));
  }
}

// Like random_point but with |grad N| >= floor, so |grad u|^(p-2) stays bounded.
GroupPoint random_horizontal_point(const CarnotGroup& g, std::mt19937_64& rng, double floor)
{
  for (;;) {
    GroupPoint x = random_point(g, rng, 0.5, 2.0);
    if (norm_gradient_magnitude(g, x) >= floor)
      return x;
  }
}

CheckResult at_most(std::string name, double measured, double tol)
{
  return {std::move(name), measured, tol, measured <= tol};
}

CheckResult at_least(std::string name, double measured, double tol)
{
  return {std::move(name), measured, tol, measured >= tol};
}

// Smallest observed convergence order of the fundamental-solution residual over h, h/2, h/4.
double residual_order(const CarnotGroup& g, double p, const std::vector<GroupPoint>& pts)
{
  const ScalarField u = fundamental_field(g, p);
  const double hs[] = {1e-2, 5e-3, 2.5e-3};
  double res[3];
  for (int l = 0; l < 3; ++l) {
    double worst = 0.0;
    for (const auto& x : pts)
      worst = std::max(worst, std::abs(sub_p_laplacian(g, p, u, x, {hs[l], 0.0})));
    res[l] = worst;
  }
  // residuals already at round-off carry no order information
  constexpr double floor = 1e-9;
  double order = std::numeric_limits<double>::infinity();
  for (int l = 0; l < 2; ++l) {
    if (res[l] > floor || res[l + 1] > floor)
      order = std::min(order, std::log2(res[l] / res[l + 1]));
  }
  return order;
}

} // namespace

ExperimentConfig config_from_json(const json& doc)
{
  ExperimentConfig c;
  check_keys(doc,
             {"command", "group", "p", "seed", "out", "potential", "scan", "family", "grid",
              "evolution", "refine", "verify"},
             "");
  read(doc, "command", c.command, "");
  if (doc.contains("group")) {
    c.group = doc["group"];
    group_from_json(c.group);
  }
  read(doc, "p", c.p, "");
  read(doc, "seed", c.seed, "");
  read(doc, "out", c.out, "");
  if (doc.contains("potential")) {
    const json& j = doc["potential"];
    check_keys(j, {"kind", "lambda", "lambda_factor", "beta_factor", "alpha"}, "potential.");
    read(j, "kind", c.potential.kind, "potential.");
    if (j.contains("lambda") && !j["lambda"].is_null()) {
      double v = 0.0;
      read(j, "lambda", v, "potential.");
      c.potential.lambda = v;
    }
    read(j, "lambda_factor", c.potential.lambda_factor, "potential.");
    read(j, "beta_factor", c.potential.beta_factor, "potential.");
    read(j, "alpha", c.potential.alpha, "potential.");
  }
  if (doc.contains("scan")) {
    const json& j = doc["scan"];
    check_keys(j,
               {"epsilons", "lambda_factor", "r_out_scale", "mollify_width", "cutoff_ratio",
                "r_min", "levels_per_decade", "cells_per_dim"},
               "scan.");
    read(j, "epsilons", c.scan.epsilons, "scan.");
    read(j, "lambda_factor", c.scan.lambda_factor, "scan.");
    read(j, "r_out_scale", c.scan.r_out_scale, "scan.");
    read(j, "mollify_width", c.scan.mollify_width, "scan.");
    read(j, "cutoff_ratio", c.scan.cutoff_ratio, "scan.");
    read(j, "r_min", c.scan.mesh.r_min, "scan.");
    read(j, "levels_per_decade", c.scan.mesh.levels_per_decade, "scan.");
    read(j, "cells_per_dim", c.scan.mesh.cells_per_dim, "scan.");
  }
  if (doc.contains("family")) {
    const json& j = doc["family"];
    check_keys(j,
               {"plateau_radius", "first_ratio", "shrink", "n_max", "margin", "ball_resolution"},
               "family.");
    read(j, "plateau_radius", c.family.family.plateau_radius, "family.");
    read(j, "first_ratio", c.family.family.first_ratio, "family.");
    read(j, "shrink", c.family.family.shrink, "family.");
    read(j, "n_max", c.family.n_max, "family.");
    read(j, "margin", c.family.margin, "family.");
    read(j, "ball_resolution", c.family.ball_resolution, "family.");
  }
  if (doc.contains("grid")) {
    const json& j = doc["grid"];
    check_keys(j, {"L_xy", "L_ell", "n_xy", "n_ell"}, "grid.");
    read(j, "L_xy", c.grid.L_xy, "grid.");
    read(j, "L_ell", c.grid.L_ell, "grid.");
    read(j, "n_xy", c.grid.n_xy, "grid.");
    read(j, "n_ell", c.grid.n_ell, "grid.");
  }
  if (doc.contains("evolution")) {
    const json& j = doc["evolution"];
    check_keys(j,
               {"eta", "diffusivity_cap", "cap_factor", "dt_safety", "t_final", "amplitude",
                "radius", "checkpoints", "stop_sup_factor"},
               "evolution.");
    EvolutionConfig& e = c.evolution;
    read(j, "eta", e.eta, "evolution.");
    read(j, "diffusivity_cap", e.diffusivity_cap, "evolution.");
    read(j, "cap_factor", e.cap_factor, "evolution.");
    read(j, "dt_safety", e.dt_safety, "evolution.");
    read(j, "t_final", e.t_final, "evolution.");
    read(j, "amplitude", e.u0.amplitude, "evolution.");
    read(j, "radius", e.u0.radius, "evolution.");
    read(j, "checkpoints", e.checkpoints, "evolution.");
    read(j, "stop_sup_factor", e.stop_sup_factor, "evolution.");
  }
  if (doc.contains("refine")) {
    check_keys(doc["refine"], {"levels"}, "refine.");
    read(doc["refine"], "levels", c.refine_levels, "refine.");
  }
  if (doc.contains("verify")) {
    const json& j = doc["verify"];
    check_keys(j, {"samples", "residual_points", "inequality_samples"}, "verify.");
    read(j, "samples", c.verify.samples, "verify.");
    read(j, "residual_points", c.verify.residual_points, "verify.");
    read(j, "inequality_samples", c.verify.inequality_samples, "verify.");
  }
  validate(c);
  return c;
}

json config_to_json(const ExperimentConfig& c)
{
  const EvolutionConfig& e = c.evolution;
  return {
    {"command", c.command},
    {"group", c.group},
    {"p", c.p},
    {"seed", c.seed},
    {"out", c.out},
    {"potential", potential_json(c.potential)},
    {"scan",
     {{"epsilons", c.scan.epsilons},
      {"lambda_factor", c.scan.lambda_factor},
      {"r_out_scale", c.scan.r_out_scale},
      {"mollify_width", c.scan.mollify_width},
      {"cutoff_ratio", c.scan.cutoff_ratio},
      {"r_min", c.scan.mesh.r_min},
      {"levels_per_decade", c.scan.mesh.levels_per_decade},
      {"cells_per_dim", c.scan.mesh.cells_per_dim}}},
    {"family",
     {{"plateau_radius", c.family.family.plateau_radius},
      {"first_ratio", c.family.family.first_ratio},
      {"shrink", c.family.family.shrink},
      {"n_max", c.family.n_max},
      {"margin", c.family.margin},
      {"ball_resolution", c.family.ball_resolution}}},
    {"grid",
     {{"L_xy", c.grid.L_xy}, {"L_ell", c.grid.L_ell}, {"n_xy", c.grid.n_xy}, {"n_ell", c.grid.n_ell}}},
    {"evolution",
     {{"eta", e.eta},
      {"diffusivity_cap", e.diffusivity_cap},
      {"cap_factor", e.cap_factor},
      {"dt_safety", e.dt_safety},
      {"t_final", e.t_final},
      {"amplitude", e.u0.amplitude},
      {"radius", e.u0.radius},
      {"checkpoints", e.checkpoints},
      {"stop_sup_factor", e.stop_sup_factor}}},
    {"refine", {{"levels", c.refine_levels}}},
    {"verify",
     {{"samples", c.verify.samples},
      {"residual_points", c.verify.residual_points},
      {"inequality_samples", c.verify.inequality_samples}}},
  };
}

std::optional<PotentialSpec> resolve_potential(const ExperimentConfig& config,
                                               const CarnotGroup& g)
{
  const PotentialConfig& pc = config.potential;
  const double lambda =
    pc.lambda ? *pc.lambda : pc.lambda_factor * hardy_constant(g, config.p);
  if (lambda == 0.0)
    return std::nullopt;
  PotentialSpec V;
  V.lambda = lambda;
  if (pc.kind == "oscillating") {
    V.kind = PotentialKind::HardyOscillating;
    V.beta = pc.beta_factor * lambda;
    V.alpha = pc.alpha;
  }
  V.validate();
  return V;
}

std::vector<CheckResult> verify_checks(const ExperimentConfig& config)
{
  const CarnotGroup g = group_from_json(config.group);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> dil(1e-3, 3.0);
  const int samples = config.verify.samples;
  auto raw_point = [&] {
    GroupPoint x(g.dim());
    for (int i = 0; i < g.dim(); ++i)
      x[i] = unit(rng);
    return x;
  };
  std::vector<CheckResult> out;

  {
    double hom = 0.0, inv = 0.0, assoc = 0.0;
    for (int s = 0; s < samples; ++s) {
      const GroupPoint x = raw_point(), y = raw_point(), w = raw_point();
      const double lam = dil(rng);
      hom = std::max(hom, std::abs(homogeneous_norm(g, dilate(g, lam, x)) -
                                   lam * homogeneous_norm(g, x)));
      inv = std::max(inv, std::abs(homogeneous_norm(g, inverse(g, x)) - homogeneous_norm(g, x)));
      const GroupPoint lhs = multiply(g, multiply(g, x, y), w);
      const GroupPoint rhs = multiply(g, x, multiply(g, y, w));
      assoc = std::max(assoc, (lhs - rhs).lpNorm<Eigen::Infinity>());
    }
    out.push_back(at_most("norm_homogeneity", hom, 1e-12));
    out.push_back(at_most("norm_inverse_symmetry", inv, 1e-12));
    out.push_back(at_most("associativity", assoc, 1e-12));
  }

  if (g.kind() == GroupKind::HType) {
    double worst = 0.0;
    const int k = g.layer_dims()[1];
    const int m = g.horizontal_dim();
    for (int s = 0; s < samples; ++s) {
      Eigen::VectorXd z(k);
      for (int i = 0; i < k; ++i)
        z[i] = unit(rng);
      z.normalize();
      Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < k; ++i)
        jz += z[i] * g.structure()[static_cast<std::size_t>(i)];
      worst = std::max(worst, (jz * jz + Eigen::MatrixXd::Identity(m, m)).norm());
    }
    out.push_back(at_most("htype_identity", worst, 1e-12));
  }

  {
    // [X_i, X_j] on the vertical coordinates: -4 (Heisenberg X_j, Y_j), -J^s_ij (H-type), 0 (flat)
    const FDScheme fd{1e-3, 0.0};
    const int m = g.horizontal_dim();
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
      const GroupPoint x = raw_point();
      for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
          if (g.kind() == GroupKind::Euclidean) {
            const ScalarField f{[](PointRef y) { return y[0] * y[0] * y[y.size() - 1]; }, {}};
            worst = std::max(worst, std::abs(commutator_apply(g, i, j, f, x, fd)));
          } else {
            const int vertical = g.dim() - g.layer_dims()[1];
            for (int c = vertical; c < g.dim(); ++c) {
              const ScalarField f{[c](PointRef y) { return y[c]; }, {}};
              double expected = 0.0;
              if (g.kind() == GroupKind::Heisenberg)
                expected = j == i + g.order() ? -4.0 : 0.0;
              else
                expected = -g.structure()[static_cast<std::size_t>(c - vertical)](i, j);
              worst = std::max(worst, std::abs(commutator_apply(g, i, j, f, x, fd) - expected));
            }
          }
        }
      }
    }
    out.push_back(at_most("commutators", worst, 1e-6));
  }

  {
    const ScalarField N = norm_field(g);
    const FDScheme fine{1e-4, 0.0};
    const FDScheme coarse{1e-3, 0.0};
    double agree = 0.0, bound = 0.0, polar = 0.0;
    for (int s = 0; s < samples; ++s) {
      const GroupPoint x = random_point(g, rng, 0.5, 2.0);
      const double closed = norm_gradient_magnitude(g, x);
      agree = std::max(agree, std::abs(closed - horizontal_gradient(g, N, x, fine).norm()));
      bound = std::max(bound, closed);
      polar = std::max(polar, std::abs(infinity_laplacian(g, N, x, coarse)));
    }
    out.push_back(at_most("norm_gradient_closed_form", agree, 1e-6));
    out.push_back(at_most("norm_gradient_bound", bound, 1.0 + 1e-9));
    out.push_back(at_most("polarizability", polar, 1e-4));
  }

  {
    std::vector<GroupPoint> pts;
    for (int s = 0; s < config.verify.residual_points; ++s)
      pts.push_back(random_horizontal_point(g, rng, 0.3));
    for (double p : {1.5, 2.0, 3.0}) {
      out.push_back(at_least("fundamental_solution_order_p" + format_double(p),
                             residual_order(g, p, pts), 1.8));
    }
  }

  if (g.kind() == GroupKind::Heisenberg) {
    double worst = 0.0;
    const int n = g.order();
    for (int s = 0; s < 10 * samples; ++s) {
      const GroupPoint x = random_point(g, rng, 0.1, 3.0);
      const double z2 = x.head(2 * n).squaredNorm();
      const double l = x[2 * n];
      for (double p : {1.5, 2.0, 3.0}) {
        const double expected = std::pow(z2, 0.5 * p) / std::pow(z2 * z2 + l * l, 0.5 * p);
        const double got = hardy_weight(g, p, x);
        worst = std::max(worst, std::abs(got - expected) / std::max(1.0, std::abs(expected)));
      }
    }
    out.push_back(at_most("hardy_weight_identity", worst, 1e-12));
  }

  {
    const int count = config.verify.inequality_samples;
    const std::uint64_t base = config.seed * 0x9E3779B97F4A7C15ULL;
    const SampledInfimum sub = sample_inequality_infimum(1.5, 3, count, base + 1);
    const SampledInfimum super = sample_inequality_infimum(3.0, 3, count, base + 2);
    out.push_back({"inequality_subquadratic_infimum", sub.infimum, 0.0, sub.infimum > 0.0});
    out.push_back({"inequality_superquadratic_infimum", super.infimum, 0.0, super.infimum > 0.0});
    std::uniform_real_distribution<double> pdist(1.01, 4.0), wdist(0.01, 5.0);
    double least = std::numeric_limits<double>::infinity();
    for (int s = 0; s < count; ++s) {
      const double p = pdist(rng), w1 = wdist(rng), w2 = wdist(rng);
      if (const auto m = elementary_inequality_margin(p, w1, w2))
        least = std::min(least, *m);
    }
    out.push_back({"elementary_inequality_margin", least, 0.0, least > 0.0});
  }
  return out;
}

std::string render_report(const std::vector<CheckResult>& checks)
{
  std::string s;
  int passed = 0;
  for (const auto& c : checks) {
    s += (c.pass ? "PASS " : "FAIL ") + c.name + " measured=" + format_double(c.measured) +
         " tolerance=" + format_double(c.tolerance) + "\n";
    passed += c.pass ? 1 : 0;
  }
  s += "verify: " + std::to_string(passed) + "/" + std::to_string(checks.size()) +
       " checks passed\n";
  return s;
}

CsvTable hardy_scan_table(const ExperimentConfig& config)
{
  const CarnotGroup g = group_from_json(config.group);
  ExtremalFamilySpec base;
  base.mollify_width = config.scan.mollify_width;
  base.cutoff_ratio = config.scan.cutoff_ratio;
  const auto rows = sharpness_scan(g, config.p, config.scan.epsilons, base, config.scan.mesh,
                                   config.scan.lambda_factor, config.scan.r_out_scale);
  CsvTable t;
  t.config = config_to_json(config).dump();
  t.columns = {"parameter", "numerator_energy", "potential_term", "denominator", "quotient"};
  for (const auto& r : rows)
    t.rows.push_back({r.epsilon, r.parts.energy, r.parts.potential_term, r.parts.denominator,
                      r.parts.quotient});
  return t;
}

CsvTable sigma_inf_table(const ExperimentConfig& config)
{
  const CarnotGroup g = group_from_json(config.group);
  const auto V = resolve_potential(config, g);
  if (!V)
    throw InvalidParameter("potential.lambda: sigma-inf needs a positive potential");
  const auto parts = sigma_inf_probe(g, config.p, *V, config.family.family, config.family.n_max,
                                     config.family.margin, config.family.ball_resolution);
  CsvTable t;
  t.config = config_to_json(config).dump();
  t.columns = {"parameter", "numerator_energy", "potential_term", "denominator", "quotient"};
  for (std::size_t n = 0; n < parts.size(); ++n)
    t.rows.push_back({static_cast<double>(n + 1), parts[n].energy, parts[n].potential_term,
                      parts[n].denominator, parts[n].quotient});
  return t;
}

namespace {

EvolutionConfig evolution_config(const ExperimentConfig& config)
{
  const CarnotGroup g = group_from_json(config.group);
  if (g.kind() != GroupKind::Heisenberg || g.order() != 1)
    throw InvalidParameter("group: evolve and refine run on the Heisenberg group H^1");
  EvolutionConfig e = config.evolution;
  e.p = config.p;
  e.potential = resolve_potential(config, g);
  e.validate();
  return e;
}

} // namespace

CsvTable evolve_table(const ExperimentConfig& config)
{
  const EvolutionConfig e = evolution_config(config);
  const Diagnostics d = evolve(config.grid, e);
  CsvTable t;
  t.config = config_to_json(config).dump();
  t.columns = {"t", "mass", "sup", "energy", "clipped_mass", "diverged"};
  for (std::size_t i = 0; i < d.records.size(); ++i) {
    const auto& r = d.records[i];
    const bool last = i + 1 == d.records.size();
    t.rows.push_back({r.t, r.mass, r.sup, r.energy, r.clipped_mass, last && d.diverged ? 1.0 : 0.0});
  }
  return t;
}

CsvTable refine_table(const ExperimentConfig& config)
{
  const EvolutionConfig e = evolution_config(config);
  const auto rows = refinement_study(config.grid, e, config.refine_levels);
  CsvTable t;
  t.config = config_to_json(config).dump();
  t.columns = {"n_xy", "h", "final_time", "final_mass", "final_sup", "diverged"};
  for (const auto& r : rows)
    t.rows.push_back({static_cast<double>(r.n_xy), r.h, r.final_time, r.final_mass, r.final_sup,
                      r.diverged ? 1.0 : 0.0});
  return t;
}

namespace {

void require_out(const ExperimentConfig& config)
{
  if (config.out.empty())
    throw InvalidParameter("out: an output path is required");
}

} // namespace

int run_verify(const ExperimentConfig& config, std::ostream& os)
{
  const auto checks = verify_checks(config);
  const std::string report = render_report(checks);
  if (!config.out.empty())
    write_text_atomic(config.out, report);
  os << report;
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  return ok ? 0 : 1;
}

int run_hardy_scan(const ExperimentConfig& config, std::ostream& os)
{
  require_out(config);
  const CsvTable t = hardy_scan_table(config);
  write_csv_atomic(config.out, t);
  bool decreasing = true;
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    decreasing = decreasing && t.rows[i][4] < t.rows[i - 1][4];
  os << "hardy-scan: " << t.rows.size() << " rows, quotient " << format_double(t.rows.front()[4])
     << " -> " << format_double(t.rows.back()[4])
     << (decreasing ? ", strictly decreasing" : ", not monotone") << ", wrote " << config.out
     << "\n";
  return 0;
}

int run_sigma_inf(const ExperimentConfig& config, std::ostream& os)
{
  require_out(config);
  const CsvTable t = sigma_inf_table(config);
  write_csv_atomic(config.out, t);
  double least = t.rows.front()[4];
  for (const auto& r : t.rows)
    least = std::min(least, r[4]);
  os << "sigma-inf: n_max=" << t.rows.size() << ", final quotient "
     << format_double(t.rows.back()[4]) << ", minimum " << format_double(least) << ", wrote "
     << config.out << "\n";
  return 0;
}

int run_evolve(const ExperimentConfig& config, std::ostream& os)
{
  require_out(config);
  const CsvTable t = evolve_table(config);
  write_csv_atomic(config.out, t);
  const auto& first = t.rows.front();
  const auto& last = t.rows.back();
  os << "evolve: t=" << format_double(last[0]) << ", mass " << format_double(first[1]) << " -> "
     << format_double(last[1]) << ", sup " << format_double(first[2]) << " -> "
     << format_double(last[2]) << (last[5] != 0.0 ? ", diverged" : "") << ", wrote "
     << config.out << "\n";
  return 0;
}

int run_refine(const ExperimentConfig& config, std::ostream& os)
{
  require_out(config);
  const CsvTable t = refine_table(config);
  write_csv_atomic(config.out, t);
  os << "refine:";
  for (const auto& r : t.rows)
    os << " n=" << static_cast<int>(r[0]) << " sup=" << format_double(r[4])
       << (r[5] != 0.0 ? " (diverged)" : "");
  os << ", wrote " << config.out << "\n";
  return 0;
}

int run_command(const ExperimentConfig& config, std::ostream& os)
{
  if (config.command == "verify")
    return run_verify(config, os);
  if (config.command == "hardy-scan")
    return run_hardy_scan(config, os);
  if (config.command == "sigma-inf")
    return run_sigma_inf(config, os);
  if (config.command == "evolve")
    return run_evolve(config, os);
  if (config.command == "refine")
    return run_refine(config, os);
  throw InvalidParameter("command: unknown command '" + config.command + "'");
}

} // namespace carnot
