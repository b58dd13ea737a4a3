// Acceptance run: one PASS/FAIL line per criterion.
//
//   carnot_acceptance            all criteria
//   carnot_acceptance 3 7        selected criteria
//
// Exit status is nonzero when any selected criterion fails.

#include "carnot/calculus.hpp"
#include "carnot/error.hpp"
#include "carnot/experiments.hpp"
#include "carnot/group.hpp"
#include "carnot/hardy.hpp"
#include "carnot/parabolic.hpp"
#include "carnot/quadrature.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace carnot;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome
{
  bool pass = true;
  std::string detail;
};

class Details
{
public:
  template <typename... Args>
  void add(const char* fmt, Args... args)
  {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    if (!text_.empty())
      text_ += "; ";
    text_ += buf;
  }
  const std::string& str() const { return text_; }

private:
  std::string text_;
};

Eigen::VectorXd shell_point(const CarnotGroup& g, std::mt19937_64& rng, double lo, double hi)
{
  std::uniform_real_distribution<double> r(lo, hi);
  Eigen::VectorXd x;
  do
    x = oracle::uniform_vector(rng, g.dim(), -1.0, 1.0);
  while (x.norm() < 1e-3);
  return scale_to_norm(g, x, r(rng));
}

// 1. N(delta_s x) = s N(x) and N(x^-1) = N(x).
Outcome norm_axioms()
{
  Outcome o;
  Details d;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> logs(std::log(0.1), std::log(10.0));
  const std::pair<const char*, CarnotGroup> groups[] = {{"H1", make_heisenberg(1)},
                                                        {"H3", make_heisenberg(3)},
                                                        {"quaternionic", make_quaternionic_htype()},
                                                        {"R3", make_euclidean(3)}};
  for (const auto& [name, g] : groups) {
    double hom = 0.0, inv = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const Eigen::VectorXd x = oracle::uniform_vector(rng, g.dim(), -1.0, 1.0);
      const double s = std::exp(logs(rng));
      const double n = homogeneous_norm(g, x);
      hom = std::max(hom, std::abs(homogeneous_norm(g, dilate(g, s, x)) - s * n));
      inv = std::max(inv, std::abs(homogeneous_norm(g, inverse(g, x)) - n));
    }
    o.pass = o.pass && hom <= 1e-12 && inv <= 1e-12;
    d.add("%s homogeneity %.1e inverse %.1e", name, hom, inv);
  }
  o.detail = d.str();
  return o;
}

// 2. [X_1, Y_1] f = -4 df/dl for polynomial fields whose restriction to each horizontal
// line has constant third derivative, so nested central differences are exact up to round-off.
Outcome commutators()
{
  struct Poly
  {
    std::function<double(PointRef)> f;
    std::function<double(PointRef)> dl;
  };
  const Poly polys[] = {
    {[](PointRef x) { return x[2]; }, [](PointRef) { return 1.0; }},
    {[](PointRef x) { return x[0] * x[2] + x[1] * x[1]; }, [](PointRef x) { return x[0]; }},
    {[](PointRef x) { return x[0] * x[0] * x[1] - x[2] * x[2] + 3.0 * x[0] * x[1]; },
     [](PointRef x) { return -2.0 * x[2]; }},
    {[](PointRef x) { return x[0] * x[0] * x[0] + x[1] * x[1] * x[1] + x[2] * x[0] * x[1]; },
     [](PointRef x) { return x[0] * x[1]; }},
    {[](PointRef x) { return x[2] * x[0] * x[1] + x[0] * x[0] * x[0] - x[2]; },
     [](PointRef x) { return x[0] * x[1] - 1.0; }},
  };
  const CarnotGroup g = make_heisenberg(1);
  const FDScheme fd{1e-3, 0.0};
  std::mt19937_64 rng(202);
  double worst = 0.0;
  for (const Poly& p : polys) {
    const ScalarField f{p.f, {}};
    for (int t = 0; t < 50; ++t) {
      const Eigen::VectorXd x = oracle::uniform_vector(rng, 3, -1.0, 1.0);
      worst = std::max(worst, std::abs(commutator_apply(g, 0, 1, f, x, fd) + 4.0 * p.dl(x)));
    }
  }
  Details d;
  d.add("max residual %.2e over 5 fields x 50 points (tol 1e-6)", worst);
  return {worst <= 1e-6, d.str()};
}

// 3. Infinity-sub-Laplacian of the norm vanishes.
Outcome polarizability()
{
  Outcome o;
  Details d;
  std::mt19937_64 rng(303);
  const FDScheme fd{1e-3, 0.0};
  const std::pair<const char*, CarnotGroup> groups[] = {{"H1", make_heisenberg(1)},
                                                        {"quaternionic", make_quaternionic_htype()}};
  for (const auto& [name, g] : groups) {
    const ScalarField N = norm_field(g, true);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t)
      worst = std::max(worst, std::abs(infinity_laplacian(g, N, shell_point(g, rng, 0.5, 2.0), fd)));
    o.pass = o.pass && worst <= 1e-4;
    d.add("%s max %.2e", name, worst);
  }
  o.detail = d.str();
  return o;
}

// 4. Residual of the p-sub-Laplacian on N^((p-Q)/(p-1)) falls at second order in h.
Outcome fundamental_solutions()
{
  const CarnotGroup g = make_heisenberg(1);
  std::mt19937_64 rng(404);
  std::vector<Eigen::VectorXd> pts;
  // Points where the horizontal gradient is bounded away from zero.
  while (pts.size() < 100) {
    const Eigen::VectorXd x = shell_point(g, rng, 0.5, 2.0);
    if (norm_gradient_magnitude(g, x) >= 0.3)
      pts.push_back(x);
  }
  Outcome o;
  Details d;
  const double hs[] = {1e-2, 5e-3, 2.5e-3};
  for (double p : {1.5, 2.0, 3.0}) {
    const ScalarField u = fundamental_field(g, p);
    double worst[3] = {0.0, 0.0, 0.0};
    for (int l = 0; l < 3; ++l)
      for (const auto& x : pts)
        worst[l] = std::max(worst[l], std::abs(sub_p_laplacian(g, p, u, x, {hs[l], 0.0})));
    const double o1 = std::log2(worst[0] / worst[1]);
    const double o2 = std::log2(worst[1] / worst[2]);
    o.pass = o.pass && o1 >= 1.8 && o2 >= 1.8;
    d.add("p=%g max residual %.2e/%.2e/%.2e orders %.2f %.2f", p, worst[0], worst[1], worst[2], o1, o2);
  }
  o.detail = d.str();
  return o;
}

// 5. Weight identity |z|^p / (|z|^4 + l^2)^(p/2).
Outcome weight_identity()
{
  const CarnotGroup g = make_heisenberg(1);
  std::mt19937_64 rng(505);
  double worst = 0.0;
  for (double p : {1.5, 2.0, 3.0}) {
    for (int t = 0; t < 10000; ++t) {
      const Eigen::Vector3d x = oracle::uniform_vector(rng, 3, -2.0, 2.0);
      const double z2 = x[0] * x[0] + x[1] * x[1];
      const double want = std::pow(z2, 0.5 * p) / std::pow(z2 * z2 + x[2] * x[2], 0.5 * p);
      worst = std::max(worst, std::abs(hardy_weight(g, p, x) - want) / std::max(1.0, want));
    }
  }
  Details d;
  d.add("max relative deviation %.2e over 3 x 10^4 points", worst);
  return {worst <= 1e-12, d.str()};
}

// A smooth compactly supported test field on H^1 with its horizontal gradient.
struct TestField
{
  ScalarField phi;
  double r_max;
  std::string label;
};

TestField random_field(std::mt19937_64& rng, int index)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (index % 2 == 0) {
    const double R = 0.3 + 2.2 * u(rng);
    const int k = 2 + static_cast<int>(3.0 * u(rng));
    ScalarField phi{[R, k](PointRef x) {
                      const double t = oracle::koranyi(x) / R;
                      return t < 1.0 ? std::pow(1.0 - t * t, k) : 0.0;
                    },
                    [R, k](PointRef x) {
                      const double rho = oracle::koranyi(x);
                      const double t = rho / R;
                      Eigen::VectorXd gr = Eigen::VectorXd::Zero(2);
                      if (t >= 1.0 || rho == 0.0)
                        return gr;
                      const double df = -2.0 * k * t * std::pow(1.0 - t * t, k - 1) / R;
                      const double z2 = x[0] * x[0] + x[1] * x[1];
                      const double r3 = rho * rho * rho;
                      gr << df * (z2 * x[0] + x[1] * x[2]) / r3, df * (z2 * x[1] - x[0] * x[2]) / r3;
                      return gr;
                    }};
    return {phi, R, "radial"};
  }
  Eigen::Vector3d c, w;
  for (int i = 0; i < 3; ++i) {
    c[i] = u(rng) - 0.5;
    w[i] = i < 2 ? 0.4 + 1.1 * u(rng) : 0.4 + 1.6 * u(rng);
  }
  ScalarField phi{[c, w](PointRef x) {
                    double q = 0.0;
                    for (int i = 0; i < 3; ++i)
                      q += std::pow((x[i] - c[i]) / w[i], 2);
                    return q < 1.0 ? std::pow(1.0 - q, 3) : 0.0;
                  },
                  [c, w](PointRef x) {
                    double q = 0.0;
                    for (int i = 0; i < 3; ++i)
                      q += std::pow((x[i] - c[i]) / w[i], 2);
                    Eigen::VectorXd gr = Eigen::VectorXd::Zero(2);
                    if (q >= 1.0)
                      return gr;
                    Eigen::Vector3d e;
                    for (int i = 0; i < 3; ++i)
                      e[i] = -6.0 * std::pow(1.0 - q, 2) * (x[i] - c[i]) / (w[i] * w[i]);
                    const Eigen::Vector2d h = oracle::h1_horizontal(x, e);
                    gr << h[0], h[1];
                    return gr;
                  }};
  // Largest Koranyi norm on the bounding box of the support.
  double r_max = 0.0;
  for (int s = 0; s < 8; ++s) {
    Eigen::Vector3d corner;
    for (int i = 0; i < 3; ++i)
      corner[i] = c[i] + ((s >> i) & 1 ? w[i] : -w[i]);
    r_max = std::max(r_max, oracle::koranyi(corner));
  }
  return {phi, r_max, "anisotropic"};
}

// 6. The Hardy inequality on 50 random fields.
Outcome hardy_inequality()
{
  const CarnotGroup g = make_heisenberg(1);
  std::mt19937_64 rng(606);
  std::vector<TestField> fields;
  for (int i = 0; i < 50; ++i)
    fields.push_back(random_field(rng, i));
  Outcome o;
  Details d;
  for (double p : {1.5, 2.0, 3.0}) {
    PotentialSpec V;
    V.lambda = hardy_constant(g, p);
    double least = 1e300;
    for (const TestField& f : fields) {
      const int levels = static_cast<int>(std::ceil(6.0 * std::log10(f.r_max / 1e-3)));
      const AnnularMesh mesh = build_annular_mesh(g, 1e-3, f.r_max, levels, 32);
      least = std::min(least, rayleigh_quotient(g, p, V, f.phi, mesh).quotient);
    }
    o.pass = o.pass && least >= -1e-2;
    d.add("p=%g min quotient %.4g", p, least);
  }
  o.detail = d.str();
  return o;
}

// Euclidean R^3 oracle for the extremal family: 4 pi int of the radial integrands.
QuotientParts r3_oracle(const ExtremalFamilySpec& spec, double lambda)
{
  const CarnotGroup e = make_euclidean(3);
  auto f = [&](double r) { return extremal_profile(e, 2.0, spec, r); };
  auto df = [&](double r) { return extremal_derivative(e, 2.0, spec, r); };
  const double w = spec.mollify_width;
  const double cuts[] = {1e-3, 1.0 - 0.5 * w, 1.0 + 0.5 * w, spec.cutoff_ratio * spec.r_out, spec.r_out};
  // phi = 1 on [0, 1e-3]: int phi^2 = 1e-3, int phi^2 r^2 = 1e-9 / 3.
  double E = 0.0, P = 1e-3, D = 1e-9 / 3.0;
  for (int s = 0; s < 4; ++s) {
    E += oracle::simpson_log([&](double r) { return df(r) * df(r) * r * r; }, cuts[s], cuts[s + 1], 20000);
    P += oracle::simpson_log([&](double r) { return f(r) * f(r); }, cuts[s], cuts[s + 1], 20000);
    D += oracle::simpson_log([&](double r) { return f(r) * f(r) * r * r; }, cuts[s], cuts[s + 1], 20000);
  }
  QuotientParts q;
  q.energy = 4.0 * pi * E;
  q.potential_term = 4.0 * pi * lambda * P;
  q.denominator = 4.0 * pi * D;
  q.quotient = (q.energy - q.potential_term) / q.denominator;
  return q;
}

// 7. Sharpness scans on H^1 and R^3.
Outcome sharpness()
{
  const std::vector<double> eps = {0.2, 0.1, 0.05, 0.025};
  Outcome o;
  Details d;
  const std::pair<const char*, CarnotGroup> groups[] = {{"H1", make_heisenberg(1)}, {"R3", make_euclidean(3)}};
  for (const auto& [name, g] : groups) {
    const std::vector<ScanRow> rows = sharpness_scan(g, 2.0, eps, {}, {});
    bool ok = rows.front().parts.quotient > 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i)
      ok = ok && rows[i].parts.quotient > 0.0 && rows[i].parts.quotient < rows[i - 1].parts.quotient;
    const double ratio = rows.back().parts.quotient / rows.front().parts.quotient;
    ok = ok && ratio <= 0.25;
    o.pass = o.pass && ok;
    std::string seq;
    for (const ScanRow& r : rows) {
      char b[32];
      std::snprintf(b, sizeof b, "%s%.3e", seq.empty() ? "" : " ", r.parts.quotient);
      seq += b;
    }
    d.add("%s quotients %s final/first %.3f", name, seq.c_str(), ratio);
    if (g.kind() == GroupKind::Euclidean) {
      double worst = 0.0;
      for (const ScanRow& r : rows) {
        ExtremalFamilySpec spec;
        spec.epsilon = r.epsilon;
        spec.r_out = 10.0 / r.epsilon;
        const QuotientParts ref = r3_oracle(spec, hardy_constant(g, 2.0));
        worst = std::max(worst, std::abs(r.parts.quotient - ref.quotient) / std::abs(ref.quotient));
      }
      o.pass = o.pass && worst <= 0.01;
      d.add("R3 vs radial oracle max relative difference %.2e", worst);
    }
  }
  o.detail = d.str();
  return o;
}

std::string sequence(const std::vector<QuotientParts>& q)
{
  std::string s;
  for (const QuotientParts& p : q) {
    char b[32];
    std::snprintf(b, sizeof b, "%s%.4g", s.empty() ? "" : " ", p.quotient);
    s += b;
  }
  return s;
}

// Below -1e3 by n = 8, strictly decreasing, and never more than twice as negative per step.
bool divergence_signature(const std::vector<QuotientParts>& q)
{
  bool reached = false, ok = true;
  for (std::size_t i = 0; i < q.size(); ++i) {
    reached = reached || (i < 8 && q[i].quotient < -1e3);
    if (i > 0) {
      ok = ok && q[i].quotient < q[i - 1].quotient;
      if (q[i - 1].quotient < 0.0)
        ok = ok && q[i].quotient >= 2.0 * q[i - 1].quotient;
    }
  }
  return reached && ok;
}

// 8. Divergence of sigma_inf above the constant, boundedness below it.
Outcome supercritical()
{
  const CarnotGroup g = make_heisenberg(1);
  const double p = 1.7;
  const double C = hardy_constant(g, p);
  const ConcentratingFamilySpec fam;
  Outcome o;
  Details d;
  PotentialSpec V;
  V.lambda = 2.0 * C;
  const auto sup = sigma_inf_probe(g, p, V, fam, 8);
  const bool diverges = divergence_signature(sup);
  d.add("lambda=2C: %s", sequence(sup).c_str());

  V.lambda = 0.5 * C;
  const auto sub = sigma_inf_probe(g, p, V, fam, 12);
  double min8 = 1e300, min12 = 1e300;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (i < 8)
      min8 = std::min(min8, sub[i].quotient);
    min12 = std::min(min12, sub[i].quotient);
  }
  // Bounded below: the running minimum settles (n = 9..12 lower it by under 5%) at a finite value.
  const bool bounded = std::isfinite(min12) && min12 >= min8 - 0.05 * std::abs(min8);
  d.add("lambda=0.5C: %s; lower bound n<=8 %.4g, n<=12 %.4g", sequence(sub).c_str(), min8, min12);
  o.pass = diverges && bounded;
  o.detail = d.str();
  return o;
}

// 9. Oscillating potential: divergence depends on lambda only.
Outcome oscillating()
{
  const CarnotGroup g = make_heisenberg(1);
  const double p = 1.7;
  const double C = hardy_constant(g, p);
  const ConcentratingFamilySpec fam;
  PotentialSpec pure;
  pure.lambda = 2.0 * C;
  const auto reference = sigma_inf_probe(g, p, pure, fam, 8);
  Outcome o;
  Details d;
  for (double sign : {1.0, -1.0}) {
    PotentialSpec V;
    V.kind = PotentialKind::HardyOscillating;
    V.lambda = 2.0 * C;
    V.beta = sign * 5.0 * V.lambda;
    V.alpha = 2.0;
    const auto q = sigma_inf_probe(g, p, V, fam, 8);
    const double rel = std::abs(q.back().quotient - reference.back().quotient) /
                       std::abs(reference.back().quotient);
    o.pass = o.pass && divergence_signature(q) && rel <= 0.1;
    d.add("beta=%+g lambda: %s (n=8 differs from pure by %.2e)", 5.0 * sign, sequence(q).c_str(), rel);
  }
  o.detail = d.str();
  return o;
}

// 10. Refinement dichotomy of the parabolic problem.
Outcome parabolic()
{
  const CarnotGroup h1 = make_heisenberg(1);
  const double p = 1.7;
  const double C = hardy_constant(h1, p);
  GridSpec base;
  base.n_xy = base.n_ell = 32;
  auto config = [&](double factor) {
    EvolutionConfig c;
    c.p = p;
    c.t_final = 0.005;
    if (factor > 0.0) {
      PotentialSpec V;
      V.lambda = factor * C;
      c.potential = V;
    }
    return c;
  };
  Outcome o;
  Details d;

  const auto sub = refinement_study(base, config(0.5), 3);
  double smin = 1e300, smax = 0.0, mmin = 1e300, mmax = 0.0;
  for (const RefinementRow& r : sub) {
    smin = std::min(smin, r.final_sup);
    smax = std::max(smax, r.final_sup);
    mmin = std::min(mmin, r.final_mass);
    mmax = std::max(mmax, r.final_mass);
  }
  const double sup_var = (smax - smin) / smin, mass_var = (mmax - mmin) / mmin;
  const bool sub_ok = sup_var < 0.2 && mass_var < 0.2 && !sub.back().diverged;
  d.add("lambda=0.5C sup %.4g/%.4g/%.4g (variation %.1f%%), mass variation %.2f%% -> %s",
        sub[0].final_sup, sub[1].final_sup, sub[2].final_sup, 100.0 * sup_var, 100.0 * mass_var,
        sub_ok ? "ok" : "FAIL");

  const auto super = refinement_study(base, config(2.0), 3);
  bool super_ok = true;
  for (std::size_t i = 1; i < super.size(); ++i)
    super_ok = super_ok && (super[i].diverged || super[i].final_sup >= 2.0 * super[i - 1].final_sup);
  d.add("lambda=2C sup %.4g/%.4g/%.4g (x%.2f, x%.2f per level) -> %s", super[0].final_sup,
        super[1].final_sup, super[2].final_sup, super[1].final_sup / super[0].final_sup,
        super[2].final_sup / super[1].final_sup, super_ok ? "ok" : "FAIL");

  bool mass_ok = true;
  for (int level = 0; level < 3; ++level) {
    EvolutionConfig c = config(0.0);
    c.checkpoints = 20;
    const Diagnostics diag = evolve(base.refined(1 << level), c);
    double worst = -1e300;
    for (std::size_t i = 1; i < diag.records.size(); ++i)
      worst = std::max(worst, (diag.records[i].mass - diag.records[i - 1].mass) / diag.records.front().mass);
    mass_ok = mass_ok && worst <= 1e-8;
    d.add("lambda=0 n=%d largest relative mass increase %.2e", base.n_xy << level, worst);
  }
  o.pass = sub_ok && super_ok && mass_ok;
  o.detail = d.str();
  return o;
}

std::string slurp(const std::filesystem::path& p)
{
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// 11. Repeated experiments give byte-identical CSV (also across thread counts).
Outcome determinism()
{
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "carnot_acceptance";
  fs::create_directories(dir);
  const std::vector<nlohmann::json> runs = {
    {{"command", "hardy-scan"}, {"seed", 7}},
    {{"command", "sigma-inf"}, {"p", 1.7}, {"potential", {{"lambda_factor", 2.0}}}, {"seed", 7}},
    {{"command", "sigma-inf"},
     {"p", 1.7},
     {"potential", {{"kind", "oscillating"}, {"lambda_factor", 2.0}, {"beta_factor", 5.0}}}},
    {{"command", "evolve"},
     {"p", 1.7},
     {"potential", {{"lambda_factor", 2.0}}},
     {"grid", {{"n_xy", 24}, {"n_ell", 24}}},
     {"evolution", {{"t_final", 0.005}}}},
    {{"command", "refine"},
     {"p", 1.7},
     {"grid", {{"n_xy", 8}, {"n_ell", 8}}},
     {"refine", {{"levels", 2}}},
     {"evolution", {{"t_final", 0.002}, {"radius", 0.3}}}},
    {{"command", "verify"}, {"seed", 7}},
  };
  Outcome o;
  Details d;
  int identical = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    nlohmann::json doc = runs[i];
    const fs::path out = dir / ("run" + std::to_string(i) + ".out");
    doc["out"] = out.string();
    const ExperimentConfig c = config_from_json(doc);
    std::vector<std::string> copies;
    for (int rep = 0; rep < 2; ++rep) {
#ifdef _OPENMP
      omp_set_num_threads(rep == 0 ? 1 : 3);
#endif
      std::ostringstream sink;
      run_command(c, sink);
      copies.push_back(slurp(out));
    }
    const bool same = !copies[0].empty() && copies[0] == copies[1];
    identical += same;
    o.pass = o.pass && same;
    if (!same)
      d.add("%s differs", c.command.c_str());
  }
#ifdef _OPENMP
  omp_set_num_threads(omp_get_num_procs());
  d.add("%d/%zu outputs byte-identical across repeated runs with 1 and 3 threads", identical, runs.size());
#else
  d.add("%d/%zu outputs byte-identical across repeated runs", identical, runs.size());
#endif
  o.detail = d.str();
  return o;
}

struct Criterion
{
  const char* name;
  double budget_seconds;
  Outcome (*run)();
};

const Criterion criteria[] = {
  {"norm axioms", 1.0, norm_axioms},
  {"commutators", 1.0, commutators},
  {"polarizability", 10.0, polarizability},
  {"fundamental solutions", 30.0, fundamental_solutions},
  {"hardy weight identity", 0.0, weight_identity},
  {"hardy inequality", 300.0, hardy_inequality},
  {"sharpness", 600.0, sharpness},
  {"supercritical divergence", 600.0, supercritical},
  {"oscillating potential", 600.0, oscillating},
  {"parabolic dichotomy", 1800.0, parabolic},
  {"determinism", 0.0, determinism},
};

} // namespace

int main(int argc, char** argv)
{
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > 11) {
      std::fprintf(stderr, "usage: %s [criterion 1-11 ...]\n", argv[0]);
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty())
    for (int n = 1; n <= 11; ++n)
      selected.push_back(n);

  int failures = 0;
  for (int n : selected) {
    const Criterion& c = criteria[n - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
      o.pass = false;
      char b[96];
      std::snprintf(b, sizeof b, "; runtime %.1f s exceeds %.0f s", secs, c.budget_seconds);
      o.detail += b;
    }
    failures += !o.pass;
    std::printf("criterion %2d %-26s %s  %s [%.1f s]\n", n, c.name, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
