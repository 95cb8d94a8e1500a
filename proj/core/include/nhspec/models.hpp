#pragma once

// Model Hamiltonians: the p² + ix³ oscillator, the Pais-Uhlenbeck two-mode
// oscillator (Fock truncation and exact quadratic form), the gain/loss dimer
// and the harmonic oscillator, plus a finite-difference oracle for the
// cubic spectrum.

#include <array>
#include <functional>
#include <vector>

#include "nhspec/antilinear.hpp"
#include "nhspec/fock.hpp"
#include "nhspec/types.hpp"

namespace nhspec::models {

// ---------------------------------------------------------------- cubic

/// p² + i x³ in the given realization. Throws InvalidCutoffError when n < 4.
CMatrix cubic_hamiltonian(int n, fock::Realization realization);

/// PT for the cubic oscillator: x is odd.
antilinear::AntilinearOp cubic_pt_operator(int n, fock::Realization realization);

struct OracleOptions {
  int eigenvalue_count = 2;
  Complex shift = 0.0;           // shift-invert target
  int krylov_dimension = 60;
  double boundary_tolerance = 1e-6;
  bool check_boundary = true;    // repeat on a doubled box at equal spacing
};

struct OracleResult {
  std::vector<Complex> eigenvalues;  // sorted by real part
  double max_imag = 0.0;             // over the returned eigenvalues
  double ritz_residual = 0.0;        // largest Arnoldi residual estimate
  double boundary_shift = 0.0;       // max change under box doubling
  int grid_points = 0;
  double box_half_width = 0.0;
};

/// Low-lying spectrum of -c d²/dx² + V(x) on (-L, L) with Dirichlet walls,
/// central differences on grid_points interior nodes, by shift-invert
/// Arnoldi on the tridiagonal matrix. Throws ResolutionError when box
/// doubling moves an eigenvalue by more than the boundary tolerance.
OracleResult finite_difference_spectrum(int grid_points, double box_half_width, double kinetic,
                                        const std::function<Complex(double)>& potential,
                                        const OracleOptions& options = {});

/// finite_difference_spectrum for p² + i x³. Requires grid_points >= 500.
OracleResult cubic_oracle(int grid_points, double box_half_width, const OracleOptions& options = {});

// ---------------------------------------------------------------- Pais-Uhlenbeck

struct PUParams {
  double gamma = 1.0;
  Complex omega1 = 1.0;
  Complex omega2 = 2.0;

  /// Validates γ > 0 and reality of ω₁²+ω₂² and ω₁²ω₂². Throws ParameterError.
  static PUParams from_frequencies(double gamma, Complex omega1, Complex omega2);
  /// ω₁ = α + iβ, ω₂ = α - iβ.
  static PUParams from_alpha_beta(double gamma, double alpha, double beta);

  double frequency_sum_sq() const;      // ω₁² + ω₂²
  double frequency_product_sq() const;  // ω₁² ω₂²
};

enum class PURegime { RealFrequencies, ConjugatePair, EqualFrequencies };

/// Equal frequencies are detected with relative tolerance tol.
PURegime pu_regime(const PUParams& params, double tol = 1e-12);

/// H = ½ ξᵀ S ξ with ξ = (x, z, p_x, p_z), J = [[0, I], [-I, 0]], M = J S.
struct QuadraticModel {
  RMatrix coefficient_matrix;
  RMatrix symplectic_form;
  RMatrix dynamical_matrix;
};

QuadraticModel pu_dynamical_matrix(const PUParams& params);

/// Normal-mode frequencies -iλ over the eigenvalues λ of M, keeping one of
/// each ± pair (Re > 0, or Im > 0 when Re = 0), sorted by (Re, Im).
std::vector<Complex> normal_mode_frequencies(const QuadraticModel& model);

struct PULevel {
  int n1 = 0;
  int n2 = 0;
  Complex energy;
};

struct PULevels {
  std::vector<PULevel> levels;   // n1-major grid order
  bool degenerate_warning = false;
};

/// E(n₁, n₂) = (n₁+½)ω₁ + (n₂+½)ω₂ on 0..n1_max × 0..n2_max. The
/// equal-frequency case sets degenerate_warning.
PULevels pu_spectrum_formula(const PUParams& params, int n1_max, int n2_max);

struct PURealizations {
  fock::Realization x = fock::Realization::PositionReal;
  fock::Realization z = fock::Realization::AntiHermitian;
  bool scaled = true;  // use the length scales below instead of unit scales
};

/// ℓx = (γ √|ω₁²+ω₂²|)^{-1/2}, ℓz = (γ |ω₁ω₂| √|ω₁²+ω₂²|)^{-1/2}.
std::array<double, 2> pu_length_scales(const PUParams& params);

/// p_x²/2γ + p_z x + γ(ω₁²+ω₂²)x²/2 - γω₁²ω₂²z²/2 on modes (x, z).
/// Throws InvalidCutoffError when a cutoff is below 8.
fock::MultiModeOperator pu_hamiltonian_fock(int n1, int n2, const PUParams& params,
                                            const PURealizations& realizations = {});

/// Composite PT with x odd and z even.
antilinear::AntilinearOp pu_pt_operator(int n1, int n2, const PURealizations& realizations = {});

// ---------------------------------------------------------------- small models

/// [[i g, k], [k, -i g]]. Throws ParameterError for negative g or k.
CMatrix dimer_hamiltonian(double g, double k);

/// PT for the dimer: swap the two sites and conjugate.
antilinear::AntilinearOp dimer_pt_operator();

/// a†a + ½ on n levels.
CMatrix harmonic_hamiltonian(int n);

}  // namespace nhspec::models
