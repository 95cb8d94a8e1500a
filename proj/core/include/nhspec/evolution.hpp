#pragma once

// Time evolution under non-Hermitian generators and the left-right overlap
// structure it preserves.

#include <span>
#include <utility>
#include <vector>

#include "nhspec/spectral.hpp"
#include "nhspec/types.hpp"

namespace nhspec::evolution {

/// exp(A) by scaling and squaring on a truncated Taylor series. Throws
/// RangeError when the result overflows.
CMatrix expm(const CMatrix& a);

enum class PropagatorMethod { Auto, Spectral, Series };

/// exp(-i H t). Auto uses the pairing-normalised spectral sum when H is
/// diagonalizable and the series otherwise. Throws RangeError with the largest
/// safe |t| when growing modes overflow.
CMatrix propagator(const CMatrix& h, double t, PropagatorMethod method = PropagatorMethod::Auto);

/// sum_i exp(-i E_i t) |R_i><L_pair(i)|; needs a diagonalizable system.
CMatrix spectral_propagator(const spectral::BiorthogonalSystem& system, double t);

/// exp(-H tau) by the series method (entrywise real for real H).
CMatrix euclidean_propagator(const CMatrix& h, double tau);

struct OverlapOptions {
  /// Above this value of max|Im E| * t_max the literal product path is
  /// evaluated only up to growth_limit / max|Im E|.
  double growth_limit = 30.0;
  /// Target accuracy of the literal path. Its cancellation error grows like
  /// eps * exp(2 max|Im E| t) * max||L|| max||R|| * n, which can cap the
  /// literal range below growth_limit.
  double literal_accuracy = 1e-10;
};

struct OverlapTrace {
  std::vector<double> times;
  std::vector<CMatrix> overlaps;  // G(t)(j, i) = <L_j(t)|R_i(t)>, closed form
  std::vector<Complex> right_labels;
  std::vector<Complex> left_labels;
  RMatrix drift;                  // max_t |G_ji(t) - G_ji(0)|
  double max_drift = 0.0;
  /// max |literal - closed form| over the times where the literal path ran.
  double method_agreement = 0.0;
  double literal_t_max = 0.0;
  bool reduced_literal_range = false;
};

/// Evolves |R_i(t)> = exp(-iHt)|R_i> and |L_j(t)> = exp(-iH†t)|L_j> and records
/// their overlaps two ways: the literal product of propagated states and the
/// closed form G_ji(0) exp(-i E_i t + i conj(label_j) t). The literal path runs
/// in extended precision because growing and decaying factors of size
/// exp(|Im E| t) cancel in the allowed entries. Entries of G(0) at the
/// rounding floor (64 n eps ||L_j|| ||R_i||) are taken as exact zeros.
/// Throws UnsupportedError for defective systems.
OverlapTrace overlap_trace(const CMatrix& h, const spectral::BiorthogonalSystem& system,
                           std::span<const double> times, const OverlapOptions& options = {});

/// Uniform grid of `points` samples on [t0, t1].
std::vector<double> uniform_grid(double t0, double t1, int points);

struct SelectionViolation {
  std::size_t left_index;
  std::size_t right_index;
  Complex left_label;
  Complex right_eigenvalue;
  double magnitude;
  bool label_outside_spectrum;  // the left label is not an energy of H
};

struct SelectionReport {
  std::vector<SelectionViolation> violations;
  std::size_t checked_entries = 0;
  bool passed() const { return violations.empty(); }
};

/// Nonzero <L_j|R_i> (above tol) is allowed only when label_j = conj(E_i)
/// within tol_cluster and the label is itself an eigenvalue of H, i.e. the
/// overlap joins two energies E_i^R = E_j^R, E_i^I = -E_j^I of the spectrum.
SelectionReport selection_rule_check(const spectral::BiorthogonalSystem& system, double tol,
                                     double tol_cluster = 1e-6);

struct EuclideanReality {
  bool entrywise_real = false;
  double max_imag = 0.0;
  bool trace_real = false;
  Complex trace;
};

/// exp(-H tau): entrywise reality (max |Im| < tol) and trace reality
/// (|Im tr| < tol * max(1, |tr|)).
EuclideanReality euclidean_reality(const CMatrix& h, double tau, double tol);

}  // namespace nhspec::evolution
