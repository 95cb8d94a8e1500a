#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "nhspec/eigensolver.hpp"
#include "nhspec/errors.hpp"
#include "nhspec/models.hpp"

namespace nhspec::models {

namespace {

// LU factors of a complex symmetric tridiagonal matrix with constant
// off-diagonal, reused for every shift-invert solve.
class TridiagonalSolver {
 public:
  TridiagonalSolver(CVector diagonal, Complex off) : off_(off), pivots_(std::move(diagonal)) {
    multipliers_.resize(pivots_.size());
    for (Eigen::Index k = 1; k < pivots_.size(); ++k) {
      if (std::abs(pivots_[k - 1]) == 0.0) throw ResolutionError("zero pivot in finite-difference solve; move the shift");
      multipliers_[k] = off_ / pivots_[k - 1];
      pivots_[k] -= multipliers_[k] * off_;
    }
    if (std::abs(pivots_[pivots_.size() - 1]) == 0.0) {
      throw ResolutionError("zero pivot in finite-difference solve; move the shift");
    }
  }

  CVector solve(const CVector& rhs) const {
    const Eigen::Index n = rhs.size();
    CVector y = rhs;
    for (Eigen::Index k = 1; k < n; ++k) y[k] -= multipliers_[k] * y[k - 1];
    y[n - 1] /= pivots_[n - 1];
    for (Eigen::Index k = n - 2; k >= 0; --k) y[k] = (y[k] - off_ * y[k + 1]) / pivots_[k];
    return y;
  }

 private:
  Complex off_;
  CVector pivots_;
  CVector multipliers_;
};

struct Ritz {
  std::vector<Complex> values;
  double residual = 0.0;
};

Ritz shift_invert_arnoldi(int grid_points, double box_half_width, double kinetic,
                          const std::function<Complex(double)>& potential, const OracleOptions& options) {
  const Eigen::Index n = grid_points;
  const double h = 2.0 * box_half_width / (grid_points + 1);
  const double diag_kinetic = 2.0 * kinetic / (h * h);
  const Complex off = -kinetic / (h * h);
  CVector diagonal(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double x = -box_half_width + h * static_cast<double>(k + 1);
    diagonal[k] = diag_kinetic + potential(x) - options.shift;
  }
  const TridiagonalSolver solver(diagonal, off);

  const int m = std::min<int>(options.krylov_dimension, grid_points - 1);
  CMatrix basis(n, m + 1);
  CMatrix hess = CMatrix::Zero(m + 1, m);
  std::mt19937_64 rng(0x0ac1e);
  std::normal_distribution<double> normal;
  CVector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v[k] = normal(rng);
  basis.col(0) = v / v.norm();

  int steps = m;
  for (int j = 0; j < m; ++j) {
    CVector w = solver.solve(basis.col(j));
    for (int pass = 0; pass < 2; ++pass) {
      const CVector c = basis.leftCols(j + 1).adjoint() * w;
      w -= basis.leftCols(j + 1) * c;
      hess.col(j).head(j + 1) += c;
    }
    const double beta = w.norm();
    hess(j + 1, j) = beta;
    if (beta < 1e-14 * hess.col(j).norm()) {
      steps = j + 1;
      break;
    }
    basis.col(j + 1) = w / beta;
  }

  const CMatrix hm = hess.topLeftCorner(steps, steps);
  const auto eig = spectral::right_eigensystem(hm);
  std::vector<std::size_t> order(eig.values.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(eig.values[a]) > std::abs(eig.values[b]); });

  Ritz out;
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(options.eigenvalue_count), order.size());
  const double beta_last = std::abs(hess(steps, steps - 1));
  for (std::size_t r = 0; r < count; ++r) {
    const std::size_t i = order[r];
    const Complex theta = eig.values[i];
    const auto y = eig.vectors.col(static_cast<Eigen::Index>(i));
    // Residual of (A - σ)^{-1} for the Ritz pair, mapped to the eigenvalue of A.
    const double res = beta_last * std::abs(y[steps - 1]) / y.norm();
    out.residual = std::max(out.residual, res / (std::abs(theta) * std::abs(theta)));
    out.values.push_back(options.shift + 1.0 / theta);
  }
  std::sort(out.values.begin(), out.values.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

}  // namespace

OracleResult finite_difference_spectrum(int grid_points, double box_half_width, double kinetic,
                                        const std::function<Complex(double)>& potential,
                                        const OracleOptions& options) {
  if (grid_points < 3) throw ResolutionError("finite-difference grid needs at least 3 points");
  if (!(box_half_width > 0.0)) throw ResolutionError("box half-width must be positive");
  if (options.eigenvalue_count < 1) throw ParameterError("eigenvalue_count must be positive");

  const Ritz base = shift_invert_arnoldi(grid_points, box_half_width, kinetic, potential, options);
  OracleResult out;
  out.eigenvalues = base.values;
  out.ritz_residual = base.residual;
  out.grid_points = grid_points;
  out.box_half_width = box_half_width;
  for (const Complex e : out.eigenvalues) out.max_imag = std::max(out.max_imag, std::abs(e.imag()));

  if (options.check_boundary) {
    // Doubling the box at equal spacing isolates the wall effect from the
    // discretisation error.
    const Ritz doubled = shift_invert_arnoldi(2 * grid_points + 1, 2.0 * box_half_width, kinetic, potential, options);
    const std::size_t count = std::min(base.values.size(), doubled.values.size());
    for (std::size_t i = 0; i < count; ++i) {
      out.boundary_shift = std::max(out.boundary_shift, std::abs(base.values[i] - doubled.values[i]));
    }
    if (out.boundary_shift > options.boundary_tolerance) {
      throw ResolutionError("box doubling moved an eigenvalue by " + std::to_string(out.boundary_shift) +
                            "; increase the box half-width (and grid points to keep the spacing)");
    }
  }
  return out;
}

OracleResult cubic_oracle(int grid_points, double box_half_width, const OracleOptions& options) {
  if (grid_points < 500) {
    throw ResolutionError("cubic oracle needs at least 500 grid points, got " + std::to_string(grid_points));
  }
  return finite_difference_spectrum(grid_points, box_half_width, 1.0,
                                    [](double x) { return Complex(0.0, x * x * x); }, options);
}

}  // namespace nhspec::models
