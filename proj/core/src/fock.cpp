#include "nhspec/fock.hpp"

#include <cmath>
#include <numeric>

#include "nhspec/errors.hpp"
#include "nhspec/linalg.hpp"

namespace nhspec::fock {

namespace {

void require_cutoff(int n, int minimum) {
  if (n < minimum) {
    throw InvalidCutoffError("cutoff " + std::to_string(n) + " is below the minimum " +
                             std::to_string(minimum));
  }
}

void require_same_layout(const MultiModeOperator& a, const MultiModeOperator& b) {
  if (a.mode_dims != b.mode_dims) {
    throw ShapeError("multi-mode operators act on different mode layouts");
  }
}

}  // namespace

std::string to_string(Realization r) {
  switch (r) {
    case Realization::PositionReal:
      return "position-real";
    case Realization::PositionImaginary:
      return "position-imaginary";
    case Realization::AntiHermitian:
      return "anti-hermitian";
  }
  return "unknown";
}

Realization realization_from_string(const std::string& name) {
  if (name == "position-real") return Realization::PositionReal;
  if (name == "position-imaginary") return Realization::PositionImaginary;
  if (name == "anti-hermitian") return Realization::AntiHermitian;
  throw ParameterError("unknown realization '" + name +
                       "' (valid: position-real, position-imaginary, anti-hermitian)");
}

Ladder ladder(int n) {
  require_cutoff(n, 2);
  CMatrix a = CMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
  }
  return {a, a.adjoint()};
}

PositionMomentum position_momentum(int n, Realization realization, double length_scale) {
  require_cutoff(n, 2);
  if (!(length_scale > 0.0) || !std::isfinite(length_scale)) {
    throw ParameterError("length scale must be positive and finite");
  }
  const auto [a, ad] = ladder(n);
  const double r2 = std::sqrt(2.0);
  const double l = length_scale;
  switch (realization) {
    case Realization::PositionReal:
      return {(a + ad) * (l / r2), kI * (ad - a) / (l * r2)};
    case Realization::PositionImaginary:
      return {kI * (a - ad) * (l / r2), (ad + a) / (l * r2)};
    case Realization::AntiHermitian:
      return {-kI * (a + ad) * (l / r2), (a - ad) / (l * r2)};
  }
  throw ParameterError("unhandled realization");
}

TruncatedMode make_mode(int n, Realization realization, double length_scale) {
  auto lad = ladder(n);
  auto xp = position_momentum(n, realization, length_scale);
  return {n,
          realization,
          length_scale,
          std::move(lad.lowering),
          std::move(lad.raising),
          std::move(xp.position),
          std::move(xp.momentum)};
}

CMatrix parity(int n) {
  require_cutoff(n, 1);
  CMatrix p = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return p;
}

CMatrix interior_block(const CMatrix& m) {
  const Eigen::Index k = std::max<Eigen::Index>(m.rows() - 1, 0);
  return m.topLeftCorner(k, k);
}

MultiModeOperator& MultiModeOperator::operator+=(const MultiModeOperator& other) {
  require_same_layout(*this, other);
  matrix += other.matrix;
  return *this;
}

MultiModeOperator& MultiModeOperator::operator-=(const MultiModeOperator& other) {
  require_same_layout(*this, other);
  matrix -= other.matrix;
  return *this;
}

MultiModeOperator& MultiModeOperator::operator*=(Complex s) {
  matrix *= s;
  return *this;
}

MultiModeOperator operator+(MultiModeOperator a, const MultiModeOperator& b) { return a += b; }

MultiModeOperator operator-(MultiModeOperator a, const MultiModeOperator& b) { return a -= b; }

MultiModeOperator operator*(const MultiModeOperator& a, const MultiModeOperator& b) {
  require_same_layout(a, b);
  return {a.mode_dims, a.labels, a.matrix * b.matrix};
}

MultiModeOperator operator*(Complex s, MultiModeOperator a) { return a *= s; }

MultiModeOperator embed(const CMatrix& op, std::size_t mode_index, const std::vector<int>& mode_dims,
                        std::vector<std::string> labels) {
  if (mode_index >= mode_dims.size()) {
    throw IndexError("mode index " + std::to_string(mode_index) + " out of range for " +
                     std::to_string(mode_dims.size()) + " modes");
  }
  if (op.rows() != op.cols() || op.rows() != mode_dims[mode_index]) {
    throw ShapeError("operator of size " + std::to_string(op.rows()) + "x" +
                     std::to_string(op.cols()) + " does not match mode dimension " +
                     std::to_string(mode_dims[mode_index]));
  }
  std::vector<CMatrix> factors;
  factors.reserve(mode_dims.size());
  for (std::size_t k = 0; k < mode_dims.size(); ++k) {
    factors.push_back(k == mode_index ? op : linalg::identity(mode_dims[k]));
  }
  return tensor(factors, std::move(labels));
}

MultiModeOperator tensor(const std::vector<CMatrix>& ops, std::vector<std::string> labels) {
  if (ops.empty()) throw ShapeError("tensor product of zero modes");
  if (!labels.empty() && labels.size() != ops.size()) {
    throw ShapeError("label count does not match mode count");
  }
  std::vector<int> dims;
  CMatrix acc = CMatrix::Identity(1, 1);
  for (const auto& op : ops) {
    if (op.rows() != op.cols()) throw ShapeError("mode operators must be square");
    dims.push_back(static_cast<int>(op.rows()));
    acc = linalg::kron(acc, op);
  }
  return {std::move(dims), std::move(labels), std::move(acc)};
}

}  // namespace nhspec::fock
