#pragma once

// Subcommand implementations. Each returns a report holding the JSON document,
// its CSV rendering and the process exit status.

#include <optional>
#include <string>

#include <json.hpp>

#include "nhspec/antilinear.hpp"
#include "nhspec/types.hpp"
#include "run_config.hpp"

namespace nhspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitError = 2;

struct Report {
  nlohmann::json json;
  std::string csv;
  int exit_code = kExitOk;

  /// Sorted keys, shortest round-trip floats, trailing newline.
  std::string render(OutputFormat format) const;
};

struct ModelInstance {
  CMatrix h;
  std::optional<antilinear::AntilinearOp> pt;  // known antilinear symmetry, if any
  std::string description;
};

/// Builds the model matrix with `parameters` overriding the config's own.
ModelInstance build_model(const RunConfig& config, const std::map<std::string, double>& parameters);
ModelInstance build_model(const RunConfig& config);

Report run_spectrum(const RunConfig& config);
Report run_sweep(const RunConfig& config);
Report run_overlap(const RunConfig& config);
Report run_checks(const RunConfig& config);

/// {"error": {"kind", "message"}, "version"} with exit status kExitError.
Report error_report(const std::string& kind, const std::string& message);

}  // namespace nhspec::cli
