#include "run_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "nhspec/errors.hpp"

namespace nhspec::cli {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

template <typename T>
T get_as(const nlohmann::json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParameterError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Cubic: return "cubic";
    case ModelKind::PU: return "pu";
    case ModelKind::Dimer: return "dimer";
    case ModelKind::Harmonic: return "harmonic";
    case ModelKind::CustomMatrixFile: return "custom-matrix-file";
  }
  return "unknown";
}

ModelKind model_from_string(const std::string& name) {
  for (auto k : {ModelKind::Cubic, ModelKind::PU, ModelKind::Dimer, ModelKind::Harmonic, ModelKind::CustomMatrixFile}) {
    if (to_string(k) == name) return k;
  }
  throw ParameterError("unknown model '" + name + "'; valid: cubic, pu, dimer, harmonic, custom-matrix-file");
}

std::string to_string(OutputFormat format) { return format == OutputFormat::Json ? "json" : "csv"; }

OutputFormat format_from_string(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  throw ParameterError("unknown format '" + name + "'; valid: json, csv");
}

const std::vector<std::string>& valid_parameters(ModelKind kind) {
  static const std::vector<std::string> none;
  static const std::vector<std::string> pu{"alpha", "beta", "gamma", "omega1", "omega2"};
  static const std::vector<std::string> dimer{"g", "k"};
  return kind == ModelKind::PU ? pu : kind == ModelKind::Dimer ? dimer : none;
}

double SweepSpec::value(int step) const {
  return steps == 1 ? start : start + (stop - start) * step / (steps - 1);
}

SweepSpec SweepSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4) throw ParameterError("sweep must look like PARAM:START:STOP:STEPS, got '" + text + "'");
  SweepSpec s;
  s.parameter = parts[0];
  try {
    std::size_t used = 0;
    s.start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("start");
    s.stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("stop");
    s.steps = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("steps");
  } catch (const std::logic_error&) {
    throw ParameterError("sweep bounds in '" + text + "' are not numbers");
  }
  if (s.steps < 1) throw ParameterError("sweep needs at least one step");
  return s;
}

void RunConfig::validate() const {
  if (!model) return;
  const auto& valid = valid_parameters(*model);
  for (const auto& [name, value] : parameters) {
    if (std::find(valid.begin(), valid.end(), name) == valid.end()) {
      throw ParameterError("unknown parameter '" + name + "' for model " + to_string(*model) + "; valid: " +
                           (valid.empty() ? std::string("(none)") : join(valid)));
    }
  }
  if (sweep && std::find(valid.begin(), valid.end(), sweep->parameter) == valid.end()) {
    throw ParameterError("cannot sweep '" + sweep->parameter + "' for model " + to_string(*model) + "; valid: " +
                         (valid.empty() ? std::string("(none)") : join(valid)));
  }
  if (*model == ModelKind::CustomMatrixFile && matrix_file.empty()) {
    throw ParameterError("custom-matrix-file model needs --matrix FILE");
  }
  if (!(tol_real > 0.0) || !(tol_cluster > 0.0) || !(tol_residual > 0.0)) {
    throw ParameterError("tolerances must be positive");
  }
  if (t_steps < 1) throw ParameterError("t_steps must be positive");
  if (levels < 0) throw ParameterError("levels must be non-negative");
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["model"] = model ? to_string(*model) : nullptr;
  j["parameters"] = nlohmann::json::object();
  for (const auto& [k, v] : parameters) j["parameters"][k] = v;
  j["truncation"] = truncation;
  j["tolerances"] = {{"real", tol_real}, {"cluster", tol_cluster}, {"residual", tol_residual}};
  j["realization"] = realization;
  j["realization_x"] = realization_x;
  j["realization_z"] = realization_z;
  j["scaled"] = scaled;
  j["representation"] = representation;
  j["matrix_file"] = matrix_file;
  if (sweep) {
    j["sweep"] = {{"parameter", sweep->parameter}, {"start", sweep->start}, {"stop", sweep->stop}, {"steps", sweep->steps}};
  } else {
    j["sweep"] = nullptr;
  }
  j["levels"] = levels;
  j["max_vector_dim"] = max_vector_dim;
  j["t_max"] = t_max;
  j["t_steps"] = t_steps;
  j["taus"] = taus;
  j["format"] = to_string(format);
  j["out"] = out;
  return j;
}

void RunConfig::merge_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParameterError("config file must hold a JSON object");
  static const std::set<std::string> keys{"model", "parameters", "truncation", "tolerances", "realization",
                                          "realization_x", "realization_z", "scaled", "representation",
                                          "matrix_file", "sweep", "levels", "max_vector_dim", "t_max",
                                          "t_steps", "taus", "format", "out"};
  for (const auto& [key, value] : j.items()) {
    if (!keys.count(key)) {
      std::vector<std::string> names(keys.begin(), keys.end());
      throw ParameterError("unknown config key '" + key + "'; valid: " + join(names));
    }
    if (value.is_null()) continue;
    if (key == "model") model = model_from_string(get_as<std::string>(value, key));
    else if (key == "parameters") {
      if (!value.is_object()) throw ParameterError("config key 'parameters' must be an object");
      for (const auto& [name, v] : value.items()) parameters[name] = get_as<double>(v, "parameters." + name);
    } else if (key == "truncation") truncation = get_as<std::vector<int>>(value, key);
    else if (key == "tolerances") {
      if (!value.is_object()) throw ParameterError("config key 'tolerances' must be an object");
      for (const auto& [name, v] : value.items()) {
        if (name == "real") tol_real = get_as<double>(v, "tolerances.real");
        else if (name == "cluster") tol_cluster = get_as<double>(v, "tolerances.cluster");
        else if (name == "residual") tol_residual = get_as<double>(v, "tolerances.residual");
        else throw ParameterError("unknown tolerance '" + name + "'; valid: cluster, real, residual");
      }
    } else if (key == "realization") realization = get_as<std::string>(value, key);
    else if (key == "realization_x") realization_x = get_as<std::string>(value, key);
    else if (key == "realization_z") realization_z = get_as<std::string>(value, key);
    else if (key == "scaled") scaled = get_as<bool>(value, key);
    else if (key == "representation") representation = get_as<std::string>(value, key);
    else if (key == "matrix_file") matrix_file = get_as<std::string>(value, key);
    else if (key == "sweep") {
      if (value.is_string()) {
        sweep = SweepSpec::parse(value.get<std::string>());
      } else {
        SweepSpec s;
        s.parameter = get_as<std::string>(value.at("parameter"), "sweep.parameter");
        s.start = get_as<double>(value.at("start"), "sweep.start");
        s.stop = get_as<double>(value.at("stop"), "sweep.stop");
        s.steps = get_as<int>(value.at("steps"), "sweep.steps");
        if (s.steps < 1) throw ParameterError("sweep needs at least one step");
        sweep = s;
      }
    } else if (key == "levels") levels = get_as<int>(value, key);
    else if (key == "max_vector_dim") max_vector_dim = get_as<int>(value, key);
    else if (key == "t_max") t_max = get_as<double>(value, key);
    else if (key == "t_steps") t_steps = get_as<int>(value, key);
    else if (key == "taus") taus = get_as<std::vector<double>>(value, key);
    else if (key == "format") format = format_from_string(get_as<std::string>(value, key));
    else if (key == "out") out = get_as<std::string>(value, key);
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  RunConfig config;
  config.merge_json(j);
  return config;
}

CMatrix parse_matrix_text(const std::string& text) {
  std::istringstream in(text);
  long n = 0;
  if (!(in >> n) || n < 1) throw ParameterError("matrix file must start with a positive dimension");
  CMatrix m(n, n);
  for (long r = 0; r < n; ++r) {
    for (long c = 0; c < n; ++c) {
      std::string token;
      if (!(in >> token)) {
        throw ParameterError("matrix file ended early at row " + std::to_string(r) + ", column " + std::to_string(c));
      }
      const auto comma = token.find(',');
      try {
        if (comma == std::string::npos) throw std::invalid_argument(token);
        std::size_t used_re = 0, used_im = 0;
        const std::string re = token.substr(0, comma);
        const std::string im = token.substr(comma + 1);
        const double vr = std::stod(re, &used_re);
        const double vi = std::stod(im, &used_im);
        if (used_re != re.size() || used_im != im.size()) throw std::invalid_argument(token);
        m(r, c) = Complex(vr, vi);
      } catch (const std::logic_error&) {
        throw ParameterError("matrix entry '" + token + "' is not a re,im pair");
      }
    }
  }
  std::string extra;
  if (in >> extra) throw ParameterError("matrix file has trailing data '" + extra + "'");
  return m;
}

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open matrix file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix_text(buffer.str());
}

}  // namespace nhspec::cli
