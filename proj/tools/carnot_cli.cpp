// carnot: command-line driver for the verification suite and the Hardy / evolution experiments.
//
//   carnot verify     [--config FILE] [--seed S] [--out REPORT]
//   carnot hardy-scan [--config FILE] [--p P] --out CSV
//   carnot sigma-inf  [--config FILE] [--p P] [--lambda L] --out CSV
//   carnot evolve     [--config FILE] [--p P] [--lambda L] [--grid N] --out CSV
//   carnot refine     [--config FILE] [--p P] [--lambda L] [--grid N] --out CSV

#include "carnot/error.hpp"
#include "carnot/experiments.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <optional>

namespace {

struct Overrides
{
  std::string config_path;
  std::optional<double> p;
  std::optional<double> lambda;
  std::optional<int> grid;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
};

nlohmann::json load_document(const std::string& path)
{
  std::ifstream is(path);
  if (!is)
    throw carnot::InvalidParameter("config: cannot read '" + path + "'");
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw carnot::InvalidParameter("config: '" + path + "' is not valid JSON: " + e.what());
  }
}

carnot::ExperimentConfig build_config(const std::string& command, const Overrides& o)
{
  nlohmann::json doc = o.config_path.empty() ? nlohmann::json::object()
                                             : load_document(o.config_path);
  if (!doc.is_object())
    throw carnot::InvalidParameter("config: top level must be an object");
  doc["command"] = command;
  if (o.p)
    doc["p"] = *o.p;
  if (o.lambda)
    doc["potential"]["lambda"] = *o.lambda;
  if (o.grid) {
    doc["grid"]["n_xy"] = *o.grid;
    doc["grid"]["n_ell"] = *o.grid;
  }
  if (o.out)
    doc["out"] = *o.out;
  if (o.seed)
    doc["seed"] = *o.seed;
  return carnot::config_from_json(doc);
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Calculus, Hardy inequalities and p-Laplacian evolution on Carnot groups"};
  app.require_subcommand(1);
  Overrides o;
  const char* verbs[] = {"verify", "hardy-scan", "sigma-inf", "evolve", "refine"};
  for (const char* verb : verbs) {
    CLI::App* sub = app.add_subcommand(verb);
    sub->add_option("--config", o.config_path, "JSON config file");
    sub->add_option("--p", o.p, "exponent p");
    sub->add_option("--lambda", o.lambda, "potential coefficient (absolute)");
    sub->add_option("--grid", o.grid, "cells per axis for evolve/refine");
    sub->add_option("--out", o.out, "output path");
    sub->add_option("--seed", o.seed, "seed for randomized checks");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return carnot::run_command(build_config(command, o), std::cout);
  } catch (const carnot::IoError& e) {
    std::cerr << "carnot: I/O error: " << e.what() << "\n";
    return 3;
  } catch (const carnot::InvalidParameter& e) {
    std::cerr << "carnot: usage error: " << e.what() << "\n";
    return 2;
  } catch (const carnot::OutOfRange& e) {
    std::cerr << "carnot: usage error: " << e.what() << "\n";
    return 2;
  } catch (const carnot::NotHType& e) {
    std::cerr << "carnot: usage error: " << e.what() << "\n";
    return 2;
  } catch (const carnot::Error& e) {
    std::cerr << "carnot: " << e.what() << "\n";
    return 1;
  }
}
