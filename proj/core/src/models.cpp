#include "nhspec/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nhspec/eigensolver.hpp"
#include "nhspec/errors.hpp"
#include "nhspec/linalg.hpp"

namespace nhspec::models {

namespace {

constexpr double kRealityTol = 1e-12;

double checked_real(Complex value, const char* name) {
  if (std::abs(value.imag()) > kRealityTol * std::max(1.0, std::abs(value))) {
    throw ParameterError(std::string(name) + " must be real; frequencies must be real or a conjugate pair");
  }
  return value.real();
}

}  // namespace

CMatrix cubic_hamiltonian(int n, fock::Realization realization) {
  if (n < 4) throw InvalidCutoffError("cubic oscillator needs a cutoff of at least 4, got " + std::to_string(n));
  const auto pm = fock::position_momentum(n, realization);
  const CMatrix x2 = pm.position * pm.position;
  return pm.momentum * pm.momentum + kI * (x2 * pm.position);
}

antilinear::AntilinearOp cubic_pt_operator(int n, fock::Realization realization) {
  return antilinear::pt_operator(realization, n, antilinear::CoordinateParity::Odd);
}

PUParams PUParams::from_frequencies(double gamma, Complex omega1, Complex omega2) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be positive");
  if (omega1 == Complex(0.0) || omega2 == Complex(0.0)) throw ParameterError("frequencies must be nonzero");
  PUParams p{gamma, omega1, omega2};
  checked_real(omega1 * omega1 + omega2 * omega2, "omega1^2 + omega2^2");
  checked_real(omega1 * omega1 * omega2 * omega2, "omega1^2 omega2^2");
  return p;
}

PUParams PUParams::from_alpha_beta(double gamma, double alpha, double beta) {
  return from_frequencies(gamma, Complex(alpha, beta), Complex(alpha, -beta));
}

double PUParams::frequency_sum_sq() const { return (omega1 * omega1 + omega2 * omega2).real(); }

double PUParams::frequency_product_sq() const { return (omega1 * omega1 * omega2 * omega2).real(); }

PURegime pu_regime(const PUParams& params, double tol) {
  const double scale = std::max(std::abs(params.omega1), std::abs(params.omega2));
  if (std::abs(params.omega1 - params.omega2) <= tol * scale) return PURegime::EqualFrequencies;
  if (std::abs(params.omega1.imag()) <= tol * scale && std::abs(params.omega2.imag()) <= tol * scale) {
    return PURegime::RealFrequencies;
  }
  return PURegime::ConjugatePair;
}

QuadraticModel pu_dynamical_matrix(const PUParams& params) {
  QuadraticModel m;
  m.coefficient_matrix = RMatrix::Zero(4, 4);
  m.coefficient_matrix(0, 0) = params.gamma * params.frequency_sum_sq();
  m.coefficient_matrix(1, 1) = -params.gamma * params.frequency_product_sq();
  m.coefficient_matrix(2, 2) = 1.0 / params.gamma;
  m.coefficient_matrix(0, 3) = 1.0;
  m.coefficient_matrix(3, 0) = 1.0;
  m.symplectic_form = RMatrix::Zero(4, 4);
  m.symplectic_form.topRightCorner(2, 2) = RMatrix::Identity(2, 2);
  m.symplectic_form.bottomLeftCorner(2, 2) = -RMatrix::Identity(2, 2);
  m.dynamical_matrix = m.symplectic_form * m.coefficient_matrix;
  return m;
}

std::vector<Complex> normal_mode_frequencies(const QuadraticModel& model) {
  const CMatrix m = model.dynamical_matrix.cast<Complex>();
  std::vector<Complex> out;
  const double scale = std::max(1.0, linalg::max_abs(m));
  for (const Complex lambda : spectral::eigenvalues(m)) {
    const Complex w = -kI * lambda;
    const double tiny = 1e-9 * scale;
    if (w.real() > tiny || (std::abs(w.real()) <= tiny && w.imag() > 0.0)) out.push_back(w);
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

PULevels pu_spectrum_formula(const PUParams& params, int n1_max, int n2_max) {
  if (n1_max < 0 || n2_max < 0) throw ParameterError("level grid bounds must be non-negative");
  PULevels out;
  out.degenerate_warning = pu_regime(params) == PURegime::EqualFrequencies;
  for (int n1 = 0; n1 <= n1_max; ++n1) {
    for (int n2 = 0; n2 <= n2_max; ++n2) {
      out.levels.push_back({n1, n2, (n1 + 0.5) * params.omega1 + (n2 + 0.5) * params.omega2});
    }
  }
  return out;
}

std::array<double, 2> pu_length_scales(const PUParams& params) {
  const double root_sum = std::sqrt(std::abs(params.frequency_sum_sq()));
  const double root_prod = std::abs(params.omega1 * params.omega2);
  if (root_sum < 1e-12 || root_prod < 1e-12) return {1.0, 1.0};
  return {1.0 / std::sqrt(params.gamma * root_sum), 1.0 / std::sqrt(params.gamma * root_prod * root_sum)};
}

fock::MultiModeOperator pu_hamiltonian_fock(int n1, int n2, const PUParams& params,
                                            const PURealizations& realizations) {
  if (n1 < 8 || n2 < 8) {
    throw InvalidCutoffError("Pais-Uhlenbeck cutoffs must be at least 8, got " + std::to_string(n1) + "," +
                             std::to_string(n2));
  }
  const auto scales = realizations.scaled ? pu_length_scales(params) : std::array<double, 2>{1.0, 1.0};
  const auto xm = fock::position_momentum(n1, realizations.x, scales[0]);
  const auto zm = fock::position_momentum(n2, realizations.z, scales[1]);
  const std::vector<int> dims{n1, n2};
  const std::vector<std::string> labels{"x", "z"};

  const auto x = fock::embed(xm.position, 0, dims, labels);
  const auto px = fock::embed(xm.momentum, 0, dims, labels);
  const auto z = fock::embed(zm.position, 1, dims, labels);
  const auto pz = fock::embed(zm.momentum, 1, dims, labels);

  const double g = params.gamma;
  auto h = Complex(1.0 / (2.0 * g)) * (px * px);
  h += pz * x;
  h += Complex(g * params.frequency_sum_sq() / 2.0) * (x * x);
  h -= Complex(g * params.frequency_product_sq() / 2.0) * (z * z);
  return h;
}

antilinear::AntilinearOp pu_pt_operator(int n1, int n2, const PURealizations& realizations) {
  using antilinear::CoordinateParity;
  return antilinear::tensor(antilinear::pt_operator(realizations.x, n1, CoordinateParity::Odd),
                            antilinear::pt_operator(realizations.z, n2, CoordinateParity::Even));
}

CMatrix dimer_hamiltonian(double g, double k) {
  if (!(g >= 0.0) || !(k >= 0.0)) throw ParameterError("dimer needs g >= 0 and k >= 0");
  CMatrix h(2, 2);
  h << Complex(0.0, g), k, k, Complex(0.0, -g);
  return h;
}

antilinear::AntilinearOp dimer_pt_operator() {
  CMatrix swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  return {swap, true};
}

CMatrix harmonic_hamiltonian(int n) {
  if (n < 2) throw InvalidCutoffError("harmonic oscillator needs a cutoff of at least 2, got " + std::to_string(n));
  // a†a is diagonal; building it as a product would round sqrt(k)² off k.
  CMatrix h = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) h(k, k) = k + 0.5;
  return h;
}

}  // namespace nhspec::models
