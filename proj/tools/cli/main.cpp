#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nhspec/errors.hpp"
#include "nhspec/version.hpp"
#include "run_config.hpp"
#include "runner.hpp"

namespace {

using nhspec::cli::Report;
using nhspec::cli::RunConfig;

struct Flags {
  std::string config_file;
  std::string model;
  std::string truncation;
  double tol_real = 0.0;
  double tol_cluster = 0.0;
  double tol_residual = 0.0;
  std::string format;
  std::string out;
  std::string sweep;
  std::string matrix;
  std::string representation;
  std::string realization;
  std::string realization_x;
  std::string realization_z;
  bool unscaled = false;
  int levels = 0;
  int max_vector_dim = 0;
  double t_max = 0.0;
  int t_steps = 0;
  std::vector<double> taus;
  std::map<std::string, double> params;
};

std::vector<int> parse_truncation(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw nhspec::ParameterError("truncation must be a comma-separated list of integers, got '" + text + "'");
    }
  }
  if (out.empty()) throw nhspec::ParameterError("truncation list is empty");
  return out;
}

void write(const Report& report, nhspec::cli::OutputFormat format, const std::string& path) {
  const std::string text = report.render(format);
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw nhspec::ParameterError("cannot write output file '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, symmetry checks and overlap traces for non-Hermitian Hamiltonians", "nhspec"};
  app.set_version_flag("--version", std::string(nhspec::kVersion));
  app.require_subcommand(1);

  Flags f;
  std::vector<CLI::App*> subs{
      app.add_subcommand("spectrum", "Eigenvalues, classification, residuals and reality flags"),
      app.add_subcommand("sweep", "Classification along a parameter sweep with transition bracketing"),
      app.add_subcommand("overlap", "Left-right overlap traces and selection-rule check"),
      app.add_subcommand("checks", "Gamma-matrix identities plus the model's invariant suite")};

  std::map<std::string, CLI::Option*> opts;
  for (auto* sub : subs) {
    opts["config"] = sub->add_option("--config", f.config_file, "JSON config file (flags override its keys)");
    opts["model"] = sub->add_option("--model", f.model, "cubic | pu | dimer | harmonic | custom-matrix-file");
    opts["truncation"] = sub->add_option("--truncation", f.truncation, "Per-mode cutoffs, e.g. 40,40");
    opts["tol-real"] = sub->add_option("--tol-real", f.tol_real, "|Im E| below this counts as real");
    opts["tol-cluster"] = sub->add_option("--tol-cluster", f.tol_cluster, "Eigenvalue clustering radius");
    opts["tol-residual"] = sub->add_option("--tol-residual", f.tol_residual, "Relative eigen-residual gate");
    opts["format"] = sub->add_option("--format", f.format, "json | csv");
    opts["out"] = sub->add_option("--out", f.out, "Output path (default stdout)");
    opts["sweep"] = sub->add_option("--sweep", f.sweep, "PARAM:START:STOP:STEPS");
    opts["matrix"] = sub->add_option("--matrix", f.matrix, "Matrix file for custom-matrix-file");
    opts["representation"] = sub->add_option("--representation", f.representation, "PU: fock | dynamical");
    opts["realization"] = sub->add_option("--realization", f.realization, "Cubic oscillator realization");
    opts["realization-x"] = sub->add_option("--realization-x", f.realization_x, "PU x-mode realization");
    opts["realization-z"] = sub->add_option("--realization-z", f.realization_z, "PU z-mode realization");
    opts["unscaled"] = sub->add_flag("--unscaled", f.unscaled, "PU: unit length scales");
    opts["levels"] = sub->add_option("--levels", f.levels, "Report only the lowest N levels by real part");
    opts["max-vector-dim"] = sub->add_option("--max-vector-dim", f.max_vector_dim,
                                             "Largest dimension for which eigenvectors are computed");
    opts["t-max"] = sub->add_option("--t-max", f.t_max, "Overlap trace end time");
    opts["t-steps"] = sub->add_option("--t-steps", f.t_steps, "Overlap trace sample count");
    opts["tau"] = sub->add_option("--tau", f.taus, "Euclidean times for the reality checks");
    for (const char* p : {"gamma", "omega1", "omega2", "alpha", "beta", "g", "k"}) {
      opts[p] = sub->add_option(std::string("--") + p, f.params[p], std::string("Model parameter ") + p);
    }
  }

  CLI11_PARSE(app, argc, argv);

  nhspec::cli::OutputFormat format = nhspec::cli::OutputFormat::Json;
  std::string out_path;
  try {
    auto* sub = app.get_subcommands().front();
    auto given = [sub](const std::string& name) { return sub->get_option("--" + name)->count() > 0; };

    RunConfig config = f.config_file.empty() ? RunConfig{} : nhspec::cli::load_config_file(f.config_file);
    if (given("model")) config.model = nhspec::cli::model_from_string(f.model);
    if (given("truncation")) config.truncation = parse_truncation(f.truncation);
    if (given("tol-real")) config.tol_real = f.tol_real;
    if (given("tol-cluster")) config.tol_cluster = f.tol_cluster;
    if (given("tol-residual")) config.tol_residual = f.tol_residual;
    if (given("format")) config.format = nhspec::cli::format_from_string(f.format);
    if (given("out")) config.out = f.out;
    if (given("sweep")) config.sweep = nhspec::cli::SweepSpec::parse(f.sweep);
    if (given("matrix")) config.matrix_file = f.matrix;
    if (given("representation")) config.representation = f.representation;
    if (given("realization")) config.realization = f.realization;
    if (given("realization-x")) config.realization_x = f.realization_x;
    if (given("realization-z")) config.realization_z = f.realization_z;
    if (given("unscaled")) config.scaled = false;
    if (given("levels")) config.levels = f.levels;
    if (given("max-vector-dim")) config.max_vector_dim = f.max_vector_dim;
    if (given("t-max")) config.t_max = f.t_max;
    if (given("t-steps")) config.t_steps = f.t_steps;
    if (given("tau")) config.taus = f.taus;
    for (const auto& [name, value] : f.params) {
      if (given(name)) config.parameters[name] = value;
    }
    format = config.format;
    out_path = config.out;

    const std::string name = sub->get_name();
    Report report = name == "spectrum" ? nhspec::cli::run_spectrum(config)
                    : name == "sweep"  ? nhspec::cli::run_sweep(config)
                    : name == "overlap" ? nhspec::cli::run_overlap(config)
                                        : nhspec::cli::run_checks(config);
    write(report, format, out_path);
    return report.exit_code;
  } catch (const nhspec::Error& e) {
    const Report r = nhspec::cli::error_report(e.kind(), e.what());
    std::cout << r.json.dump(2) << "\n";
    return r.exit_code;
  } catch (const std::exception& e) {
    const Report r = nhspec::cli::error_report("internal", e.what());
    std::cout << r.json.dump(2) << "\n";
    return r.exit_code;
  }
}
