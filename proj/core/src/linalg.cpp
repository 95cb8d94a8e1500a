#include "nhspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nhspec::linalg {

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix anticommutator(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

double max_abs_imag(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.imag().cwiseAbs().maxCoeff();
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

RVector singular_values(const CMatrix& m) {
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues();
}

Eigen::Index numerical_rank(const CMatrix& m, double threshold) {
  const RVector s = singular_values(m);
  return (s.array() > threshold).count();
}

CMatrix nullspace(const CMatrix& m, double relative_threshold) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double cut = relative_threshold * std::max(smax, std::numeric_limits<double>::min());
  // Columns of V beyond the number of singular values span the trivial part
  // of the nullspace when m has fewer rows than columns.
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++rank;
  }
  const Eigen::Index n = m.cols();
  return svd.matrixV().rightCols(n - rank);
}

double condition_number(const CMatrix& m) {
  const RVector s = singular_values(m);
  if (s.size() == 0) return 0.0;
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

CVector vec(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

}  // namespace nhspec::linalg
