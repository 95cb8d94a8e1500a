#pragma once

// Small dense helpers shared by the modules. Norms are Frobenius unless named
// otherwise.

#include <cstddef>
#include <span>
#include <vector>

#include "nhspec/types.hpp"

namespace nhspec::linalg {

CMatrix identity(Eigen::Index n);

/// Kronecker product, left factor varies slowest.
CMatrix kron(const CMatrix& a, const CMatrix& b);

CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix anticommutator(const CMatrix& a, const CMatrix& b);

double max_abs_imag(const CMatrix& m);
double max_abs(const CMatrix& m);

/// Singular values in descending order.
RVector singular_values(const CMatrix& m);

/// Number of singular values above `threshold` (absolute).
Eigen::Index numerical_rank(const CMatrix& m, double threshold);

/// Orthonormal basis (columns) of the right nullspace: right singular vectors
/// whose singular value is at most `relative_threshold * sigma_max`.
CMatrix nullspace(const CMatrix& m, double relative_threshold);

/// sigma_max / sigma_min; infinity when singular.
double condition_number(const CMatrix& m);

/// Column-major vectorisation and its inverse.
CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols);

}  // namespace nhspec::linalg
