#pragma once

// Dense complex non-symmetric eigensolver.
//
// Pipeline: diagonal balancing by powers of two, Householder reduction to
// upper Hessenberg form, then implicitly single-shifted QR with Wilkinson
// shifts. Exceptional shifts are used on the 10th, 20th, ... iteration
// spent on one eigenvalue. The total budget is 30 iterations per eigenvalue;
// exceeding it raises ConvergenceError with the eigenvalues that did
// converge. Real matrices take a Francis double-shift path for
// eigenvalues-only requests. Eigenvectors come from back-substitution on the triangular Schur
// factor; left eigenvectors come from the conjugate-transposed factor of the
// same decomposition.

#include <vector>

#include "nhspec/errors.hpp"
#include "nhspec/types.hpp"

namespace nhspec::spectral {

inline constexpr int kIterationsPerEigenvalue = 30;

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<Complex> converged, int iterations)
      : Error("convergence", what), converged_(std::move(converged)), iterations_(iterations) {}

  /// Eigenvalues deflated before the budget ran out.
  const std::vector<Complex>& converged() const noexcept { return converged_; }
  int iterations() const noexcept { return iterations_; }

 private:
  std::vector<Complex> converged_;
  int iterations_;
};

/// H = Q T Q†, T upper triangular.
struct SchurDecomposition {
  CMatrix t;
  CMatrix q;
};

struct RightEigensystem {
  std::vector<Complex> values;
  CMatrix vectors;  // unit 2-norm columns
};

/// Right eigenvectors of H and eigenvectors of H† from one Schur form.
/// Column k of `left` satisfies H† l = conj(values[k]) l.
struct TwoSidedEigensystem {
  std::vector<Complex> values;
  CMatrix right;
  CMatrix left;
};

/// Scale vector d with D^{-1} H D better conditioned; entries are powers of 2.
RVector balance(CMatrix& h);

/// In-place reduction to upper Hessenberg form; returns Q with H_in = Q H Q†.
CMatrix hessenberg(CMatrix& h, bool accumulate);

SchurDecomposition complex_schur(const CMatrix& h);

/// Eigenvalues only; skips accumulation of the Schur vectors. Entrywise real
/// input is routed to real_eigenvalues.
std::vector<Complex> eigenvalues(const CMatrix& h);

/// Eigenvalues of a real matrix by Francis double-shift QR in real
/// arithmetic. Complex eigenvalues come out as adjacent conjugate pairs.
std::vector<Complex> real_eigenvalues(const RMatrix& h);

RightEigensystem right_eigensystem(const CMatrix& h);

TwoSidedEigensystem two_sided_eigensystem(const CMatrix& h);

/// Eigenvectors of an upper-triangular T, columns normalised to unit 2-norm.
CMatrix triangular_eigenvectors(const CMatrix& t);

/// Column k solves T† w = conj(T(k,k)) w; unit 2-norm.
CMatrix triangular_left_eigenvectors(const CMatrix& t);

}  // namespace nhspec::spectral
