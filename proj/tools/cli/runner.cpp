#include "runner.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <thread>

#include "nhspec/errors.hpp"
#include "nhspec/evolution.hpp"
#include "nhspec/linalg.hpp"
#include "nhspec/lorentz.hpp"
#include "nhspec/models.hpp"
#include "nhspec/spectral.hpp"
#include "nhspec/version.hpp"

namespace nhspec::cli {

namespace {

using nlohmann::json;

// Dimension limits for the checks that need full propagators or C.
constexpr Eigen::Index kSmallDim = 64;
constexpr Eigen::Index kSymmetrySearchDim = 40;
constexpr double kSymmetryGate = 1e-10;

json cjson(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json cjson(const std::vector<Complex>& zs) {
  json out = json::array();
  for (const Complex z : zs) out.push_back(cjson(z));
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::vector<Complex> sorted_values(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

// Lowest `levels` values by real part, extended so a conjugate pair is never split.
std::vector<Complex> lowest_levels(const std::vector<Complex>& sorted, int levels, double tol_cluster) {
  if (levels <= 0 || static_cast<std::size_t>(levels) >= sorted.size()) return sorted;
  std::size_t count = static_cast<std::size_t>(levels);
  while (count < sorted.size() && std::abs(sorted[count].real() - sorted[count - 1].real()) <= tol_cluster) ++count;
  return {sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(count)};
}

std::string phase_of(const spectral::SpectrumClassification& c) {
  if (!c.leftovers.empty()) return "asymmetric";
  if (!c.defective_clusters.empty()) return "exceptional";
  if (!c.conjugate_pairs.empty()) return "broken";
  return "unbroken";
}

json classification_json(const spectral::SpectrumClassification& c) {
  json pairs = json::array();
  for (const auto& p : c.conjugate_pairs) pairs.push_back({{"upper", cjson(p.upper)}, {"lower", cjson(p.lower)}});
  json defective = json::array();
  for (const auto& d : c.defective_clusters) {
    defective.push_back({{"eigenvalue", cjson(d.eigenvalue)},
                         {"algebraic_multiplicity", d.algebraic_multiplicity},
                         {"geometric_multiplicity", d.geometric_multiplicity}});
  }
  return {{"real", cjson(c.real_singles)},
          {"conjugate_pairs", pairs},
          {"defective", defective},
          {"leftovers", cjson(c.leftovers)},
          {"unpaired_warning", c.unpaired_warning},
          {"phase", phase_of(c)},
          {"counts",
           {{"real", c.real_singles.size()},
            {"pairs", c.conjugate_pairs.size()},
            {"defective", c.defective_clusters.size()},
            {"leftovers", c.leftovers.size()}}}};
}

struct SpectrumData {
  std::vector<Complex> values;  // sorted, possibly cut to the lowest levels
  spectral::SpectrumClassification classification;
  std::optional<spectral::BiorthogonalSystem> system;
  bool cut = false;
};

SpectrumData compute_spectrum(const CMatrix& h, const RunConfig& config) {
  SpectrumData out;
  if (h.rows() <= config.max_vector_dim) {
    spectral::Tolerances tol;
    tol.residual = config.tol_residual;
    tol.real = config.tol_real;
    tol.cluster = config.tol_cluster;
    out.system = spectral::eigendecompose(h, tol);
    const auto all = sorted_values(out.system->eigenvalues);
    out.values = lowest_levels(all, config.levels, config.tol_cluster);
    out.cut = out.values.size() != all.size();
    out.classification = out.cut ? spectral::classify_spectrum(out.values, config.tol_real, config.tol_cluster)
                                 : spectral::classify_spectrum(*out.system, config.tol_real, config.tol_cluster);
  } else {
    const auto all = sorted_values(spectral::eigenvalues(h));
    out.values = lowest_levels(all, config.levels, config.tol_cluster);
    out.cut = out.values.size() != all.size();
    out.classification = spectral::classify_spectrum(out.values, config.tol_real, config.tol_cluster);
  }
  return out;
}

struct SymmetryProbe {
  std::optional<antilinear::AntilinearOp> op;
  double residual = std::numeric_limits<double>::quiet_NaN();
  std::string note;
};

SymmetryProbe probe_symmetry(const ModelInstance& model) {
  SymmetryProbe out;
  if (model.pt) {
    out.op = model.pt;
    out.residual = antilinear::commutes_with(*model.pt, model.h).residual;
    out.note = "model PT";
    return out;
  }
  if (model.h.rows() > kSymmetrySearchDim) {
    out.note = "skipped: dimension above search limit";
    return out;
  }
  try {
    out.op = antilinear::find_antilinear_symmetry(model.h, kSymmetryGate);
    out.residual = antilinear::commutes_with(*out.op, model.h).residual;
    out.note = "nullspace search";
  } catch (const Error& e) {
    out.note = std::string(e.kind()) + ": " + e.what();
  }
  return out;
}

double param(const std::map<std::string, double>& p, const std::string& name, double fallback) {
  const auto it = p.find(name);
  return it == p.end() ? fallback : it->second;
}

models::PUParams pu_params(const std::map<std::string, double>& p) {
  const bool ab = p.count("alpha") || p.count("beta");
  const bool ww = p.count("omega1") || p.count("omega2");
  if (ab && ww) throw ParameterError("give either omega1/omega2 or alpha/beta, not both");
  const double gamma = param(p, "gamma", 1.0);
  if (ab) return models::PUParams::from_alpha_beta(gamma, param(p, "alpha", 1.0), param(p, "beta", 0.0));
  return models::PUParams::from_frequencies(gamma, param(p, "omega1", 1.0), param(p, "omega2", 2.0));
}

int cutoff(const RunConfig& config, std::size_t index, int fallback) {
  if (config.truncation.empty()) return fallback;
  if (index < config.truncation.size()) return config.truncation[index];
  return config.truncation.back();
}

models::PURealizations pu_realizations(const RunConfig& config) {
  models::PURealizations r;
  r.x = fock::realization_from_string(config.realization_x);
  r.z = fock::realization_from_string(config.realization_z);
  r.scaled = config.scaled;
  return r;
}

json base_report(const RunConfig& config) {
  return {{"config", config.to_json()}, {"version", kVersion}};
}

const ModelKind& require_model(const RunConfig& config) {
  if (!config.model) throw ParameterError("--model is required for this subcommand");
  return *config.model;
}

}  // namespace

std::string Report::render(OutputFormat format) const {
  if (format == OutputFormat::Csv && !csv.empty()) return csv;
  return json.dump(2) + "\n";
}

Report error_report(const std::string& kind, const std::string& message) {
  Report r;
  r.json = {{"error", {{"kind", kind}, {"message", message}}}, {"version", kVersion}};
  r.csv = "error_kind,message\n" + kind + ",\"" + message + "\"\n";
  r.exit_code = kExitError;
  return r;
}

ModelInstance build_model(const RunConfig& config, const std::map<std::string, double>& parameters) {
  const ModelKind kind = require_model(config);
  ModelInstance m;
  switch (kind) {
    case ModelKind::Cubic: {
      const int n = cutoff(config, 0, 32);
      const auto r = fock::realization_from_string(config.realization);
      m.h = models::cubic_hamiltonian(n, r);
      m.pt = models::cubic_pt_operator(n, r);
      m.description = "p^2 + i x^3, N=" + std::to_string(n) + ", " + config.realization;
      break;
    }
    case ModelKind::PU: {
      const auto p = pu_params(parameters);
      if (config.representation == "dynamical") {
        m.h = -kI * models::pu_dynamical_matrix(p).dynamical_matrix.cast<Complex>();
        m.description = "Pais-Uhlenbeck dynamical matrix, -iM";
      } else if (config.representation == "fock") {
        const int n1 = cutoff(config, 0, 20);
        const int n2 = cutoff(config, 1, n1);
        const auto r = pu_realizations(config);
        m.h = models::pu_hamiltonian_fock(n1, n2, p, r).matrix;
        m.pt = models::pu_pt_operator(n1, n2, r);
        m.description = "Pais-Uhlenbeck Fock, N=" + std::to_string(n1) + "x" + std::to_string(n2);
      } else {
        throw ParameterError("unknown representation '" + config.representation + "'; valid: dynamical, fock");
      }
      break;
    }
    case ModelKind::Dimer:
      m.h = models::dimer_hamiltonian(param(parameters, "g", 0.5), param(parameters, "k", 1.0));
      m.pt = models::dimer_pt_operator();
      m.description = "gain/loss dimer";
      break;
    case ModelKind::Harmonic: {
      const int n = cutoff(config, 0, 32);
      m.h = models::harmonic_hamiltonian(n);
      m.pt = antilinear::AntilinearOp{fock::parity(n), true};
      m.description = "harmonic oscillator, N=" + std::to_string(n);
      break;
    }
    case ModelKind::CustomMatrixFile:
      m.h = read_matrix_file(config.matrix_file);
      m.description = "matrix from " + config.matrix_file;
      break;
  }
  return m;
}

ModelInstance build_model(const RunConfig& config) { return build_model(config, config.parameters); }

Report run_spectrum(const RunConfig& config) {
  config.validate();
  const ModelInstance model = build_model(config);
  const SpectrumData data = compute_spectrum(model.h, config);
  const SymmetryProbe sym = probe_symmetry(model);
  const auto reality = antilinear::is_real(model.h, config.tol_real);

  Report r;
  r.json = base_report(config);
  r.json["config"]["description"] = model.description;
  r.json["config"]["dimension"] = model.h.rows();
  r.json["eigenvalues"] = cjson(data.values);
  r.json["classification"] = classification_json(data.classification);

  json residuals = {{"antilinear", sym.residual}, {"antilinear_source", sym.note}};
  if (data.system) {
    residuals["right"] = data.system->right_residual;
    residuals["left"] = data.system->left_residual;
    residuals["biorthogonality"] = data.system->biorthogonality_residual();
  } else {
    residuals["right"] = nullptr;
    residuals["left"] = nullptr;
    residuals["biorthogonality"] = nullptr;
  }
  if (*config.model == ModelKind::PU && config.representation == "fock") {
    // Distance of the lowest computed levels from the closed-form ladder.
    const auto p = pu_params(config.parameters);
    const auto formula = models::pu_spectrum_formula(p, 4, 4);
    std::vector<Complex> levels;
    for (const auto& l : formula.levels) levels.push_back(l.energy);
    levels = sorted_values(levels);
    double worst = 0.0;
    const std::size_t k = std::min<std::size_t>(4, data.values.size());
    for (std::size_t i = 0; i < k; ++i) worst = std::max(worst, std::abs(data.values[i] - levels[i]));
    residuals["formula_lowest4"] = worst;
  }
  r.json["residuals"] = residuals;

  r.json["flags"] = {{"is_real", reality.real},
                     {"max_abs_imag_entry", reality.max_imag},
                     {"all_real", data.classification.all_real()},
                     {"broken_phase", !data.classification.conjugate_pairs.empty()},
                     {"exceptional", !data.classification.defective_clusters.empty()},
                     {"unpaired_warning", data.classification.unpaired_warning},
                     {"antilinear_symmetric", sym.op.has_value() && sym.residual < kSymmetryGate},
                     {"vectors_computed", data.system.has_value()},
                     {"diagonalizable", data.system ? json(data.system->diagonalizable()) : json(nullptr)},
                     {"residual_ok", data.system ? json(data.system->residual_ok) : json(nullptr)},
                     {"levels_cut", data.cut}};

  std::string csv = "index,re,im\n";
  for (std::size_t i = 0; i < data.values.size(); ++i) {
    csv += std::to_string(i) + "," + fmt(data.values[i].real()) + "," + fmt(data.values[i].imag()) + "\n";
  }
  r.csv = csv;
  return r;
}

Report run_sweep(const RunConfig& config) {
  config.validate();
  if (!config.sweep) throw ParameterError("sweep subcommand needs --sweep PARAM:START:STOP:STEPS");
  const SweepSpec sweep = *config.sweep;
  if (sweep.steps == 1) {
    RunConfig single = config;
    single.parameters[sweep.parameter] = sweep.start;
    single.sweep.reset();
    Report r = run_spectrum(single);
    r.json["config"] = config.to_json();
    return r;
  }

  struct Step {
    double value;
    std::vector<Complex> values;
    spectral::SpectrumClassification classification;
  };
  auto run_step = [&config, &sweep](int k) {
    auto params = config.parameters;
    params[sweep.parameter] = sweep.value(k);
    const ModelInstance model = build_model(config, params);
    SpectrumData data = compute_spectrum(model.h, config);
    return Step{sweep.value(k), std::move(data.values), std::move(data.classification)};
  };

  std::vector<Step> steps;
  steps.reserve(static_cast<std::size_t>(sweep.steps));
  const int workers = std::max(1u, std::thread::hardware_concurrency());
  for (int begin = 0; begin < sweep.steps; begin += workers) {
    std::vector<std::future<Step>> batch;
    for (int k = begin; k < std::min(sweep.steps, begin + workers); ++k) {
      batch.push_back(std::async(std::launch::async, run_step, k));
    }
    for (auto& f : batch) steps.push_back(f.get());
  }

  Report r;
  r.json = base_report(config);
  json rows = json::array();
  std::string csv = "step,value,phase,n_real,n_pairs,n_defective,n_leftover,max_abs_imag\n";
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& s = steps[k];
    double max_imag = 0.0;
    for (const Complex e : s.values) max_imag = std::max(max_imag, std::abs(e.imag()));
    const std::string phase = phase_of(s.classification);
    json row = {{"step", k},
                {"value", s.value},
                {"phase", phase},
                {"n_real", s.classification.real_singles.size()},
                {"n_pairs", s.classification.conjugate_pairs.size()},
                {"n_defective", s.classification.defective_clusters.size()},
                {"n_leftover", s.classification.leftovers.size()},
                {"max_abs_imag", max_imag}};
    if (s.values.size() <= static_cast<std::size_t>(kSmallDim)) row["eigenvalues"] = cjson(s.values);
    rows.push_back(row);
    csv += std::to_string(k) + "," + fmt(s.value) + "," + phase + "," +
           std::to_string(s.classification.real_singles.size()) + "," +
           std::to_string(s.classification.conjugate_pairs.size()) + "," +
           std::to_string(s.classification.defective_clusters.size()) + "," +
           std::to_string(s.classification.leftovers.size()) + "," + fmt(max_imag) + "\n";
  }
  r.json["steps"] = rows;

  json transitions = json::array();
  json estimate = nullptr;
  for (std::size_t k = 1; k < steps.size(); ++k) {
    const auto& prev = rows[k - 1];
    const auto& cur = rows[k];
    if (prev["phase"] != cur["phase"] || prev["n_pairs"] != cur["n_pairs"]) {
      transitions.push_back({{"from", prev["phase"]},
                             {"to", cur["phase"]},
                             {"bracket", {steps[k - 1].value, steps[k].value}},
                             {"steps", {k - 1, k}}});
    }
  }
  if (!transitions.empty()) {
    const auto& first = transitions.front();
    const std::size_t a = first["steps"][0];
    const std::size_t b = first["steps"][1];
    double location = 0.5 * (steps[a].value + steps[b].value);
    if (rows[a]["phase"] == "exceptional") location = steps[a].value;
    if (rows[b]["phase"] == "exceptional") location = steps[b].value;
    estimate = {{"estimate", location},
                {"bracket", first["bracket"]},
                {"step_width", std::abs(sweep.stop - sweep.start) / (sweep.steps - 1)}};
  }
  r.json["transitions"] = transitions;
  r.json["exceptional_point"] = estimate;
  r.json["flags"] = {{"transition_found", !transitions.empty()}};
  r.csv = csv;
  return r;
}

Report run_overlap(const RunConfig& config) {
  config.validate();
  const ModelInstance model = build_model(config);
  if (model.h.rows() > config.max_vector_dim) {
    throw UnsupportedError("overlap traces need eigenvectors; dimension " + std::to_string(model.h.rows()) +
                           " exceeds max_vector_dim " + std::to_string(config.max_vector_dim));
  }
  spectral::Tolerances tol;
  tol.real = config.tol_real;
  tol.cluster = config.tol_cluster;
  tol.residual = config.tol_residual;
  const auto system = spectral::eigendecompose(model.h, tol);
  const auto times = evolution::uniform_grid(0.0, config.t_max, config.t_steps);
  const auto trace = evolution::overlap_trace(model.h, system, times);
  const auto selection = evolution::selection_rule_check(system, 1e-8, config.tol_cluster);

  Report r;
  r.json = base_report(config);
  r.json["config"]["description"] = model.description;
  r.json["eigenvalues"] = cjson(system.eigenvalues);
  r.json["left_labels"] = cjson(system.left_labels);

  json nonzero = json::array();
  const CMatrix g0 = system.overlap_matrix();
  for (Eigen::Index i = 0; i < g0.cols(); ++i) {
    for (Eigen::Index j = 0; j < g0.rows(); ++j) {
      if (std::abs(g0(j, i)) < 1e-8) continue;
      nonzero.push_back({{"left", j}, {"right", i}, {"value", cjson(g0(j, i))}});
    }
  }
  json violations = json::array();
  for (const auto& v : selection.violations) {
    violations.push_back({{"left", v.left_index},
                          {"right", v.right_index},
                          {"left_label", cjson(v.left_label)},
                          {"right_eigenvalue", cjson(v.right_eigenvalue)},
                          {"magnitude", v.magnitude},
                          {"label_outside_spectrum", v.label_outside_spectrum}});
  }
  r.json["overlaps"] = {{"nonzero_at_t0", nonzero},
                        {"max_drift", trace.max_drift},
                        {"method_agreement", trace.method_agreement},
                        {"literal_t_max", trace.literal_t_max},
                        {"reduced_literal_range", trace.reduced_literal_range}};
  r.json["selection_rule"] = {{"checked", selection.checked_entries},
                              {"violations", violations},
                              {"passed", selection.passed()}};
  r.json["residuals"] = {{"right", system.right_residual},
                         {"left", system.left_residual},
                         {"biorthogonality", system.biorthogonality_residual()}};
  r.json["flags"] = {{"time_independent", trace.max_drift < 1e-9}, {"selection_rule", selection.passed()}};

  std::string csv = "t,max_abs_change\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    const double change = (trace.overlaps[k] - g0).cwiseAbs().maxCoeff();
    csv += fmt(trace.times[k]) + "," + fmt(change) + "\n";
  }
  r.csv = csv;
  return r;
}

namespace {

struct CheckList {
  json entries = json::array();
  int failed = 0;

  void add(const std::string& group, const std::string& name, double value, double gate, const std::string& cmp,
           const std::string& note = "") {
    bool ok = false;
    if (cmp == "<") ok = value < gate;
    else if (cmp == "<=") ok = value <= gate;
    else if (cmp == ">") ok = value > gate;
    else if (cmp == "==") ok = value == gate;
    if (!ok) ++failed;
    json e = {{"group", group}, {"name", name}, {"value", value}, {"gate", gate}, {"comparison", cmp}, {"passed", ok}};
    if (!note.empty()) e["note"] = note;
    entries.push_back(e);
  }

  void fail(const std::string& group, const std::string& name, const std::string& note) {
    ++failed;
    entries.push_back({{"group", group}, {"name", name}, {"value", nullptr}, {"gate", nullptr},
                       {"comparison", nullptr}, {"passed", false}, {"note", note}});
  }
};

void gamma_checks(CheckList& checks) {
  using namespace lorentz;
  const Complex ipi(0.0, std::numbers::pi);
  for (const auto name : {BasisName::Majorana, BasisName::Dirac}) {
    const GammaBasis b = make_basis(name);
    const std::string g = "gamma/" + to_string(name);
    checks.add(g, "anticommutation", anticommutation_residual(b), 1e-14, "<");
    if (name == BasisName::Majorana) checks.add(g, "all_entries_imaginary", max_real_entry(b), 0.0, "==");
    checks.add(g, "lorentz_algebra", lorentz_algebra_residual(b), 1e-13, "<");
    for (int i = 1; i <= 3; ++i) {
      const CMatrix m = boost_generator(b, i);
      const std::string si = std::to_string(i);
      checks.add(g, "boost_generator_square_" + si, (m * m + 0.25 * linalg::identity(4)).norm(), 1e-14, "<");
      const CMatrix g0gi = b.gammas[0] * b.gammas[i];
      checks.add(g, "boost_i_pi_" + si, (complex_boost_spinor(b, i, ipi) + kI * g0gi).norm(), 1e-12, "<");
      double series_gap = 0.0;
      for (const Complex xi : {Complex(0.3, -1.1), Complex(-0.7, 2.5), Complex(1.4, 0.2)}) {
        series_gap = std::max(series_gap,
                              (complex_boost_spinor(b, i, xi) - complex_boost_spinor_closed_form(b, i, xi)).norm());
      }
      checks.add(g, "boost_series_vs_closed_form_" + si, series_gap, 1e-12, "<");
    }
    const CptCheck cpt = cpt_linear_part_check(b);
    checks.add(g, "three_boost_equals_gamma5", cpt.residual, 1e-12, "<");
    checks.add(g, "gamma5_square", cpt.gamma5_square_residual, 1e-13, "<");
    checks.add(g, "gamma5_anticommutation", cpt.gamma5_anticommutation, 1e-13, "<");
    checks.add(g, "cpt_phase_minus_i", std::abs(cpt.phase - Complex(0.0, -1.0)), 1e-12, "<");
    const ChargeConjugation c = charge_conjugation_matrix(b);
    checks.add(g, "charge_conjugation_constraint", c.residual, 1e-13, "<");
    checks.add(g, "charge_conjugation_nullspace_dim", c.nullspace_dimension, 1.0, "==");
  }
  const CMatrix flip = three_boost_vector(ipi) + linalg::identity(4);
  checks.add("gamma/coordinates", "three_boost_vector_minus_identity", linalg::max_abs(flip), 0.0, "==");
  const GammaBasis dirac = make_basis(BasisName::Dirac);
  const GammaBasis majorana = make_basis(BasisName::Majorana);
  const CMatrix u = basis_change(dirac, majorana);
  checks.add("gamma/coordinates", "charge_conjugation_basis_change",
             proportionality_residual(u * charge_conjugation_matrix(dirac).matrix * u.transpose(),
                                      charge_conjugation_matrix(majorana).matrix),
             1e-12, "<");
}

void model_checks(CheckList& checks, const RunConfig& config) {
  const ModelInstance model = build_model(config);
  const std::string g = "model/" + to_string(*config.model);
  const Eigen::Index n = model.h.rows();

  const SymmetryProbe sym = probe_symmetry(model);
  if (sym.op) {
    checks.add(g, "antilinear_commutator", sym.residual, kSymmetryGate, "<", sym.note);
  } else {
    checks.fail(g, "antilinear_commutator", sym.note);
  }

  if (*config.model == ModelKind::Cubic) {
    const int nc = cutoff(config, 0, 32);
    checks.add(g, "b_basis_reality",
               linalg::max_abs_imag(models::cubic_hamiltonian(nc, fock::Realization::PositionImaginary)), 0.0, "==");
    const CMatrix hr = models::cubic_hamiltonian(nc, fock::Realization::PositionReal);
    checks.add(g, "pt_residual_position_real",
               antilinear::commutes_with(models::cubic_pt_operator(nc, fock::Realization::PositionReal), hr).residual,
               1e-12, "<");
  }
  if (*config.model == ModelKind::PU) {
    const auto p = pu_params(config.parameters);
    const Complex s = p.omega1 * p.omega1 + p.omega2 * p.omega2;
    const Complex q = p.omega1 * p.omega1 * p.omega2 * p.omega2;
    checks.add(g, "coefficient_reality", std::abs(s.imag()) + std::abs(q.imag()), 1e-12, "<");
  }

  const auto reality = antilinear::is_real(model.h, config.tol_real);
  if (n <= config.max_vector_dim) {
    for (const double tau : config.taus) {
      const auto er = evolution::euclidean_reality(model.h, tau, 1e-10);
      const std::string st = fmt(tau);
      if (reality.real) {
        checks.add(g, "euclidean_entrywise_real_tau_" + st, er.max_imag, 1e-10, "<");
      } else {
        checks.add(g, "euclidean_trace_real_tau_" + st,
                   std::abs(er.trace.imag()) / std::max(1.0, std::abs(er.trace)), 1e-9, "<");
      }
    }
  }

  if (n > std::min<Eigen::Index>(config.max_vector_dim, kSmallDim)) return;
  spectral::Tolerances tol;
  tol.real = config.tol_real;
  tol.cluster = config.tol_cluster;
  tol.residual = config.tol_residual;
  const auto system = spectral::eigendecompose(model.h, tol);
  const auto selection = evolution::selection_rule_check(system, 1e-8, config.tol_cluster);
  checks.add(g, "selection_rule_violations", static_cast<double>(selection.violations.size()), 0.0, "==");
  if (!system.diagonalizable()) {
    checks.fail(g, "time_independence", "defective spectrum: overlaps are not normalisable");
    return;
  }
  const auto times = evolution::uniform_grid(0.0, config.t_max, config.t_steps);
  const auto trace = evolution::overlap_trace(model.h, system, times);
  checks.add(g, "overlap_drift", trace.max_drift, 1e-9, "<");

  if (!sym.op) return;
  try {
    const auto c = antilinear::build_c_operator(system, *sym.op, 1e-10);
    const double hn = std::max(1.0, model.h.norm());
    // C is a sum of R L† dyads, so rounding in the biorthogonal basis is
    // amplified by the squared eigenvector condition.
    const double kappa = system.left.colwise().norm().maxCoeff() * system.right.colwise().norm().maxCoeff();
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * kappa * kappa;
    const double gate = 1e-10 + rounding;
    const std::string note = rounding > 1e-10 ? "gate includes 64 eps kappa^2 for eigenvector condition kappa" : "";
    checks.add(g, "c_squared_identity", (c.matrix * c.matrix - linalg::identity(n)).norm(), gate, "<", note);
    checks.add(g, "c_commutes_with_h", linalg::commutator(c.matrix, model.h).norm() / hn, gate, "<", note);
    const double cpt = antilinear::pt_commutator_norm(c.matrix, *sym.op);
    if (c.unbroken) {
      checks.add(g, "c_commutes_with_pt", cpt, gate, "<", note);
    } else {
      checks.add(g, "c_fails_to_commute_with_pt", cpt, 0.1, ">");
    }
  } catch (const Error& e) {
    checks.fail(g, "c_operator", std::string(e.kind()) + ": " + e.what());
  }
}

}  // namespace

Report run_checks(const RunConfig& config) {
  config.validate();
  CheckList checks;
  gamma_checks(checks);
  if (config.model) model_checks(checks, config);

  Report r;
  r.json = base_report(config);
  r.json["checks"] = checks.entries;
  r.json["flags"] = {{"passed", checks.failed == 0}, {"failed", checks.failed}, {"total", checks.entries.size()}};
  std::string csv = "group,name,value,gate,comparison,passed\n";
  for (const auto& e : checks.entries) {
    csv += e["group"].get<std::string>() + "," + e["name"].get<std::string>() + "," +
           (e["value"].is_null() ? std::string() : fmt(e["value"].get<double>())) + "," +
           (e["gate"].is_null() ? std::string() : fmt(e["gate"].get<double>())) + "," +
           (e["comparison"].is_null() ? std::string() : e["comparison"].get<std::string>()) + "," +
           (e["passed"].get<bool>() ? "true" : "false") + "\n";
  }
  r.csv = csv;
  r.exit_code = checks.failed == 0 ? kExitOk : kExitChecksFailed;
  return r;
}

}  // namespace nhspec::cli
