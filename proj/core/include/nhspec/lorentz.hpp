#pragma once

// Gamma-matrix algebra for complex Lorentz boosts, the CPT linear part and
// the charge-conjugation matrix. Metric signature (+,-,-,-).

#include <array>
#include <string>

#include "nhspec/types.hpp"

namespace nhspec::lorentz {

enum class BasisName { Majorana, Dirac };

std::string to_string(BasisName name);
BasisName basis_from_string(const std::string& name);

struct GammaBasis {
  BasisName name = BasisName::Majorana;
  std::array<CMatrix, 4> gammas;
  RMatrix metric;  // diag(1, -1, -1, -1)
};

/// Majorana: γ⁰ = [[0, σ2], [σ2, 0]], γ¹ = diag(iσ3, iσ3),
///           γ² = [[0, -σ2], [σ2, 0]], γ³ = diag(-iσ1, -iσ1).
/// Built from the real Majorana algebra (σ1, σ3 real, σ2 imaginary), so every
/// entry is 0 or ±i.
/// Dirac:    γ⁰ = diag(I, -I), γⁱ = [[0, σi], [-σi, 0]].
GammaBasis make_basis(BasisName name);

/// i γ⁰ γ¹ γ² γ³.
CMatrix gamma5(const GammaBasis& basis);

/// max over μ, ν of ||{γ^μ, γ^ν} - 2 η^{μν} I||.
double anticommutation_residual(const GammaBasis& basis);

/// Largest |Re| over all entries of all γ^μ (zero for the Majorana basis).
double max_real_entry(const GammaBasis& basis);

/// M^{μν} = i [γ^μ, γ^ν] / 4. Throws IndexError for indices outside 0..3.
CMatrix generator(const GammaBasis& basis, int mu, int nu);

/// M^{0i}. Throws IndexError unless i is 1, 2 or 3.
CMatrix boost_generator(const GammaBasis& basis, int i);

/// max over all index quadruples of
/// ||[M^{μν}, M^{ρσ}] - i(η^{νρ}M^{μσ} - η^{μρ}M^{νσ} - η^{νσ}M^{μρ} + η^{μσ}M^{νρ})||.
double lorentz_algebra_residual(const GammaBasis& basis);

/// exp(-ξ γ⁰γⁱ / 2) by the matrix exponential.
CMatrix complex_boost_spinor(const GammaBasis& basis, int i, Complex xi);

/// cosh(ξ/2) I - γ⁰γⁱ sinh(ξ/2), valid because (γ⁰γⁱ)² = I.
CMatrix complex_boost_spinor_closed_form(const GammaBasis& basis, int i, Complex xi);

/// Λ³ Λ² Λ¹ (boost 1 applied first) at a common angle ξ. At ξ = iπ this is γ⁵.
CMatrix three_boost_spinor(const GammaBasis& basis, Complex xi);

/// Boost along axis i in (t, x, y, z) order: the (t, i) block is
/// [[cosh ξ, -sinh ξ], [-sinh ξ, cosh ξ]]. Real and imaginary parts below
/// a few ulps of the block scale are set to zero, so quarter-turn angles give
/// exact entries. Throws IndexError unless i is 1, 2 or 3.
CMatrix vector_boost(int i, Complex xi);

/// Λ₃ Λ₂ Λ₁ at a common angle ξ; -I₄ exactly at ξ = iπ.
CMatrix three_boost_vector(Complex xi);

struct ChargeConjugation {
  CMatrix matrix;              // largest entry of unit modulus, first nonzero entry positive real
  int nullspace_dimension = 0;
  double residual = 0.0;       // max_μ ||C⁻¹ γ^μ C + (γ^μ)ᵀ||
};

/// Solves γ^μ C + C (γ^μ)ᵀ = 0 for all μ as the nullspace of the stacked
/// 64 × 16 system. Throws ConstraintError when the nullspace is empty.
ChargeConjugation charge_conjugation_matrix(const GammaBasis& basis);

/// U with γ_to^μ U = U γ_from^μ for every μ, normalised like C. Throws
/// ConstraintError when no such U exists.
CMatrix basis_change(const GammaBasis& from, const GammaBasis& to);

/// min over α of ||α a - b|| / ||b||.
double proportionality_residual(const CMatrix& a, const CMatrix& b);

struct CptCheck {
  double residual = 0.0;                   // ||Λ³Λ²Λ¹(iπ) - γ⁵||
  Complex phase;                           // -iγ⁵ = phase · (three-boost product)
  double gamma5_square_residual = 0.0;     // ||(γ⁵)² - I||
  double gamma5_anticommutation = 0.0;     // max_μ ||{γ⁵, γ^μ}||
};

CptCheck cpt_linear_part_check(const GammaBasis& basis);

}  // namespace nhspec::lorentz
