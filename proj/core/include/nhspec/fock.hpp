#pragma once

// Truncated occupation-number matrices for bosonic modes.
//
// Basis state |n> for n = 0..N-1. Mode ordering in multi-mode Kronecker
// products follows the listed order, leftmost mode varying slowest.

#include <string>
#include <vector>

#include "nhspec/types.hpp"

namespace nhspec::fock {

/// How position and momentum are built from the ladder operators.
///
/// PositionReal:      x = l(a+a†)/√2,   p = i(a†-a)/(l√2)   (x real symmetric)
/// PositionImaginary: x = il(b-b†)/√2,  p = (b†+b)/(l√2)    (x imaginary antisymmetric)
/// AntiHermitian:     x = -il(b+b†)/√2, p = (b-b†)/(l√2)    (both anti-Hermitian)
///
/// The first two are unitarily equivalent Hermitian realizations. The third is
/// the complex similarity x -> -ix, p -> ip of the first; it keeps [x,p] = i
/// and turns an inverted x² potential into a confining one.
enum class Realization { PositionReal, PositionImaginary, AntiHermitian };

std::string to_string(Realization r);
Realization realization_from_string(const std::string& name);

struct Ladder {
  CMatrix lowering;
  CMatrix raising;
};

struct PositionMomentum {
  CMatrix position;
  CMatrix momentum;
};

struct TruncatedMode {
  int dimension = 0;
  Realization realization = Realization::PositionReal;
  double length_scale = 1.0;
  CMatrix lowering;
  CMatrix raising;
  CMatrix position;
  CMatrix momentum;
};

/// lowering(n, n+1) = sqrt(n+1); raising is its conjugate transpose.
/// Throws InvalidCutoffError when n < 2.
Ladder ladder(int n);

/// Throws InvalidCutoffError when n < 2 or length_scale is not positive.
PositionMomentum position_momentum(int n, Realization realization, double length_scale = 1.0);

TruncatedMode make_mode(int n, Realization realization, double length_scale = 1.0);

/// diag((-1)^k), k = 0..n-1. Throws InvalidCutoffError when n < 1.
CMatrix parity(int n);

/// Commutator residual with the truncation corner (last row/column) removed.
CMatrix interior_block(const CMatrix& m);

struct MultiModeOperator {
  std::vector<int> mode_dims;
  std::vector<std::string> labels;
  CMatrix matrix;

  Eigen::Index dimension() const { return matrix.rows(); }

  MultiModeOperator& operator+=(const MultiModeOperator& other);
  MultiModeOperator& operator-=(const MultiModeOperator& other);
  MultiModeOperator& operator*=(Complex s);
};

MultiModeOperator operator+(MultiModeOperator a, const MultiModeOperator& b);
MultiModeOperator operator-(MultiModeOperator a, const MultiModeOperator& b);
MultiModeOperator operator*(const MultiModeOperator& a, const MultiModeOperator& b);
MultiModeOperator operator*(Complex s, MultiModeOperator a);

/// Acts as `op` on mode `mode_index` and as identity on the others.
/// Throws ShapeError on a dimension mismatch, IndexError on a bad index.
MultiModeOperator embed(const CMatrix& op, std::size_t mode_index, const std::vector<int>& mode_dims,
                        std::vector<std::string> labels = {});

/// Kronecker product of one operator per mode, in mode order.
MultiModeOperator tensor(const std::vector<CMatrix>& ops, std::vector<std::string> labels = {});

}  // namespace nhspec::fock
