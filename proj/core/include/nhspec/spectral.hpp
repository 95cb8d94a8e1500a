#pragma once

// Biorthogonal spectra of non-Hermitian matrices.
//
// Right vectors R_i solve H R_i = E_i R_i. Left vectors L_j are eigenvectors
// of H† and carry their H† eigenvalue as label, so the pairing rule reads
// label_j = conj(E_i), i.e. <L_j| H = E_i <L_j|. After normalisation
// <L_pair(i)|R_i> = 1 and <L_j|R_i> = 0 for every other j, except inside
// defective clusters which are reported and left unnormalised.

#include <cstddef>
#include <span>
#include <vector>

#include "nhspec/eigensolver.hpp"
#include "nhspec/types.hpp"

namespace nhspec::spectral {

struct Tolerances {
  double residual = 1e-8;       // residual gate, relative to ||H||_F
  double real = 1e-8;           // |Im E| below this counts as real
  double cluster = 1e-6;        // eigenvalues closer than this form a cluster
  double overlap_floor = 1e-10; // smallest pairing overlap that is normalised
  double defect_rank = 1e-6;    // rank threshold on unit cluster eigenvectors
};

struct DefectiveCluster {
  Complex eigenvalue;            // cluster mean
  int algebraic_multiplicity = 0;
  int geometric_multiplicity = 0;
  std::vector<std::size_t> members;
};

struct BiorthogonalSystem {
  std::vector<Complex> eigenvalues;
  CMatrix right;
  std::vector<Complex> left_labels;  // eigenvalue of H† for each left column
  CMatrix left;
  std::vector<std::ptrdiff_t> pairing;  // i -> j, -1 when unmatched
  std::vector<bool> defective;
  std::vector<bool> normalized;
  std::vector<DefectiveCluster> defective_clusters;
  double right_residual = 0.0;
  double left_residual = 0.0;
  double h_norm = 0.0;
  bool residual_ok = true;

  std::size_t size() const { return eigenvalues.size(); }
  bool diagonalizable() const;

  /// G(j, i) = <L_j|R_i>.
  CMatrix overlap_matrix() const;

  /// max |G - I| over the paired entries and zero elsewhere, ignoring
  /// defective indices.
  double biorthogonality_residual() const;
};

/// Full two-sided decomposition. Throws ConvergenceError (with partial
/// eigenvalues) when the QR budget is exhausted.
BiorthogonalSystem eigendecompose(const CMatrix& h, const Tolerances& tol = {});

struct ConjugatePair {
  Complex upper;  // Im > 0
  Complex lower;
};

struct SpectrumClassification {
  std::vector<Complex> real_singles;
  std::vector<ConjugatePair> conjugate_pairs;
  std::vector<DefectiveCluster> defective_clusters;
  std::vector<Complex> leftovers;
  bool unpaired_warning = false;
  double tol_real = 0.0;
  double tol_cluster = 0.0;

  /// Number of eigenvalues accounted for, counting multiplicities.
  std::size_t count() const;
  bool all_real() const {
    return conjugate_pairs.empty() && leftovers.empty() && defective_clusters.empty();
  }
};

/// Buckets eigenvalues into real singles and conjugate pairs. Complex values
/// are sorted by (Re, Im) and matched greedily by |E - conj(E')|; anything
/// left over is reported with `unpaired_warning` set.
SpectrumClassification classify_spectrum(std::span<const Complex> eigenvalues, double tol_real,
                                         double tol_cluster);

/// As above, with the defective clusters found by the decomposition moved to
/// their own bucket.
SpectrumClassification classify_spectrum(const BiorthogonalSystem& system, double tol_real,
                                         double tol_cluster);

struct DefectReport {
  int algebraic_multiplicity = 0;
  int geometric_multiplicity = 0;
  double min_singular_value = 0.0;
};

/// Geometric multiplicity is dim - rank(H - E I) with threshold tol * ||H||_F;
/// algebraic multiplicity counts computed eigenvalues within tol_cluster of E.
DefectReport defect_report(const CMatrix& h, Complex eigenvalue, double tol, double tol_cluster = 1e-6);

/// Groups indices whose values lie within `radius` of each other
/// (single linkage). Groups come out ordered by their first member in
/// (Re, Im) order.
std::vector<std::vector<std::size_t>> cluster_values(std::span<const Complex> values, double radius);

/// Indices sorted by (Re, Im).
std::vector<std::size_t> sorted_order(std::span<const Complex> values);

}  // namespace nhspec::spectral
