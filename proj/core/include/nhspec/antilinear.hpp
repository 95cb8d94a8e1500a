#pragma once

// Antilinear operators A = M K (M linear, K entrywise complex conjugation),
// symmetry and reality tests, and the C operator of an antilinearly
// symmetric Hamiltonian.

#include <cstdint>
#include <vector>

#include "nhspec/fock.hpp"
#include "nhspec/spectral.hpp"
#include "nhspec/types.hpp"

namespace nhspec::antilinear {

struct AntilinearOp {
  CMatrix linear;
  bool conjugates = true;

  Eigen::Index dimension() const { return linear.rows(); }

  /// M conj(v), or M v when the operator is linear.
  CVector apply(const CVector& v) const;

  /// A H A^{-1} = M conj(H) M^{-1}. Throws InvalidOperatorError when M is singular.
  CMatrix conjugate_by(const CMatrix& h) const;

  static AntilinearOp complex_conjugation(Eigen::Index n);
};

/// a ∘ b. Two antilinear factors give a linear operator M_a conj(M_b).
AntilinearOp compose(const AntilinearOp& a, const AntilinearOp& b);

/// Operator on a tensor-product space; both factors must share the
/// conjugation flag.
AntilinearOp tensor(const AntilinearOp& a, const AntilinearOp& b);

/// Whether the coordinate flips sign under PT (x -> -x, p -> p) or keeps it
/// (z -> z, p_z -> -p_z).
enum class CoordinateParity { Odd, Even };

/// PT for one truncated mode in the given realization. For an odd coordinate:
/// PositionReal -> (parity, K), PositionImaginary and AntiHermitian -> (1, K).
/// An even coordinate swaps the two choices.
AntilinearOp pt_operator(fock::Realization realization, int n,
                         CoordinateParity parity = CoordinateParity::Odd);

struct CommutationResult {
  double residual = 0.0;   // ||A H A^{-1} - H||_F / ||H||_F
  double condition = 1.0;  // 1-norm condition estimate of the linear part
  bool holds(double tol) const { return residual < tol; }
};

CommutationResult commutes_with(const AntilinearOp& a, const CMatrix& h);

struct RealityResult {
  bool real = true;
  double max_imag = 0.0;
};

/// True iff max |Im H_mn| < tol.
RealityResult is_real(const CMatrix& h, double tol);

struct SymmetrySearchOptions {
  double spectrum_cluster = 1e-6;  // conjugate-closure matching radius (relative to max(1, ||H||))
  double nullspace_threshold = 1e-10;
  int random_trials = 64;
  std::uint64_t seed = 0x5eedULL;
  bool prefer_identity = true;
  double min_inverse_condition = 1e-12;  // smallest admissible sigma_min / sigma_max
};

/// Solves M conj(H) = H M for an invertible M.
///
/// The candidate set is the nullspace of X -> H X - X conj(H) on vectorised
/// matrices. Candidates are scanned in a fixed order (each basis element,
/// their sum, then random combinations from a seeded generator) and the one
/// with the largest sigma_min / sigma_max wins. The identity is returned
/// directly for real H when `prefer_identity` is set.
///
/// Throws NoSymmetryError when the spectrum is not closed under conjugation
/// and ConditioningError when no admissible invertible M is found or the
/// verified residual exceeds `tol`.
AntilinearOp find_antilinear_symmetry(const CMatrix& h, double tol, const SymmetrySearchOptions& options = {});

struct COperator {
  CMatrix matrix;
  std::vector<int> signs;
  std::vector<Complex> pt_norms;  // NaN-free only for real eigenvalues
  bool unbroken = true;           // every eigenvalue real
};

/// C = sum_n c_n |R_n><L_pair(n)|.
///
/// Real eigenvalues: R_n is phase-aligned so that PT R_n = R_n and c_n is the
/// sign of the PT norm (PT R_n)^T R_n. Members of a complex-conjugate pair take
/// c_n = sign(Im E_n), which keeps C² = 1 and [C, H] = 0 but makes C fail to
/// commute with PT.
///
/// Throws UnsupportedError for defective systems and SignAmbiguityError when
/// a PT norm vanishes within tol.
COperator build_c_operator(const spectral::BiorthogonalSystem& system, const AntilinearOp& pt, double tol);

/// ||C M - M conj(C)||_F, the norm of [C, PT] for PT = M K.
double pt_commutator_norm(const CMatrix& c, const AntilinearOp& pt);

}  // namespace nhspec::antilinear
