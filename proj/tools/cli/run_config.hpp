#pragma once

// Batch run configuration: defaults, JSON config files and command-line
// overrides, in increasing order of precedence.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nhspec/types.hpp"

namespace nhspec::cli {

enum class ModelKind { Cubic, PU, Dimer, Harmonic, CustomMatrixFile };
enum class OutputFormat { Json, Csv };

std::string to_string(ModelKind kind);
ModelKind model_from_string(const std::string& name);
std::string to_string(OutputFormat format);
OutputFormat format_from_string(const std::string& name);

/// Numeric parameters accepted by each model.
const std::vector<std::string>& valid_parameters(ModelKind kind);

struct SweepSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  double value(int step) const;
  /// Parses PARAM:START:STOP:STEPS.
  static SweepSpec parse(const std::string& text);
};

struct RunConfig {
  std::optional<ModelKind> model;
  std::map<std::string, double> parameters;
  std::vector<int> truncation;        // per-mode cutoffs; empty means model default
  double tol_real = 1e-8;
  double tol_cluster = 1e-6;
  double tol_residual = 1e-8;
  std::string realization = "position-imaginary";  // cubic
  std::string realization_x = "position-real";     // PU x-mode
  std::string realization_z = "anti-hermitian";    // PU z-mode
  bool scaled = true;                 // PU length scales
  std::string representation = "fock";  // PU: fock or dynamical
  std::string matrix_file;
  std::optional<SweepSpec> sweep;
  int levels = 0;                     // report only the lowest levels by Re (0: all)
  int max_vector_dim = 600;           // largest dimension for full eigenvectors
  double t_max = 10.0;
  int t_steps = 101;
  std::vector<double> taus{0.1, 1.0, 5.0};
  OutputFormat format = OutputFormat::Json;
  std::string out;

  /// Throws ParameterError naming the valid set for unknown parameters.
  void validate() const;
  nlohmann::json to_json() const;
  /// Applies keys from a config file on top of *this. Unknown keys throw.
  void merge_json(const nlohmann::json& j);
};

RunConfig load_config_file(const std::string& path);

/// Plain-text matrix: first token n, then n rows of n "re,im" pairs.
CMatrix read_matrix_file(const std::string& path);
CMatrix parse_matrix_text(const std::string& text);

}  // namespace nhspec::cli
