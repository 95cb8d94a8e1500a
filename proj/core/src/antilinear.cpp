#include "nhspec/antilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "nhspec/errors.hpp"
#include "nhspec/linalg.hpp"

namespace nhspec::antilinear {

namespace {

CMatrix apply_flag(const CMatrix& m, bool conjugate) { return conjugate ? CMatrix(m.conjugate()) : m; }

double inverse_condition(const CMatrix& m) {
  const RVector s = linalg::singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  return s(s.size() - 1) / s(0);
}

}  // namespace

CVector AntilinearOp::apply(const CVector& v) const {
  return conjugates ? CVector(linear * v.conjugate()) : CVector(linear * v);
}

CMatrix AntilinearOp::conjugate_by(const CMatrix& h) const {
  if (linear.rows() != h.rows() || linear.cols() != h.cols()) {
    throw ShapeError("antilinear operator and matrix dimensions differ");
  }
  Eigen::PartialPivLU<CMatrix> lu(linear);
  if (!(lu.rcond() > 1e3 * std::numeric_limits<double>::epsilon())) {
    throw InvalidOperatorError("linear part of the antilinear operator is singular");
  }
  const CMatrix mh = linear * apply_flag(h, conjugates);
  // (M H') M^{-1} = (M^{-T} (M H')^T)^T
  const Eigen::PartialPivLU<CMatrix> lu_t(linear.transpose());
  return lu_t.solve(CMatrix(mh.transpose())).transpose();
}

AntilinearOp AntilinearOp::complex_conjugation(Eigen::Index n) { return {CMatrix::Identity(n, n), true}; }

AntilinearOp compose(const AntilinearOp& a, const AntilinearOp& b) {
  if (a.dimension() != b.dimension()) throw ShapeError("cannot compose operators of different size");
  return {a.linear * apply_flag(b.linear, a.conjugates), a.conjugates != b.conjugates};
}

AntilinearOp tensor(const AntilinearOp& a, const AntilinearOp& b) {
  if (a.conjugates != b.conjugates) {
    throw InvalidOperatorError("tensor factors must both be linear or both antilinear");
  }
  return {linalg::kron(a.linear, b.linear), a.conjugates};
}

AntilinearOp pt_operator(fock::Realization realization, int n, CoordinateParity parity) {
  const bool parity_for_odd = (realization == fock::Realization::PositionReal);
  const bool use_parity = (parity == CoordinateParity::Odd) ? parity_for_odd : !parity_for_odd;
  return {use_parity ? fock::parity(n) : CMatrix(CMatrix::Identity(n, n)), true};
}

CommutationResult commutes_with(const AntilinearOp& a, const CMatrix& h) {
  CommutationResult out;
  // 1-norm estimate from the LU factorisation; exact SVDs are too costly at
  // Fock-space sizes.
  const double rc = Eigen::PartialPivLU<CMatrix>(a.linear).rcond();
  out.condition = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  const double hn = h.norm();
  const CMatrix diff = a.conjugate_by(h) - h;
  out.residual = hn > 0.0 ? diff.norm() / hn : diff.norm();
  return out;
}

RealityResult is_real(const CMatrix& h, double tol) {
  const double mi = linalg::max_abs_imag(h);
  return {mi < tol, mi};
}

AntilinearOp find_antilinear_symmetry(const CMatrix& h, double tol, const SymmetrySearchOptions& options) {
  if (h.rows() != h.cols()) throw ShapeError("symmetry search needs a square matrix");
  const Eigen::Index n = h.rows();
  const double scale = std::max(1.0, h.norm());

  const auto evals = spectral::eigenvalues(h);
  const auto cls = spectral::classify_spectrum(evals, options.spectrum_cluster * scale,
                                               options.spectrum_cluster * scale);
  if (cls.unpaired_warning) {
    throw NoSymmetryError("spectrum is not closed under complex conjugation (" +
                          std::to_string(cls.leftovers.size()) + " unpaired eigenvalues)");
  }

  if (options.prefer_identity) {
    AntilinearOp k = AntilinearOp::complex_conjugation(n);
    if (commutes_with(k, h).holds(tol)) return k;
  }

  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix op = linalg::kron(id, h) - linalg::kron(h.conjugate().transpose(), id);
  const CMatrix basis = linalg::nullspace(op, options.nullspace_threshold);
  if (basis.cols() == 0) {
    throw NoSymmetryError("no nonzero M solves M conj(H) = H M");
  }

  std::vector<CVector> candidates;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) candidates.emplace_back(basis.col(k));
  candidates.emplace_back(basis.rowwise().sum());
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < options.random_trials; ++t) {
    CVector coeff(basis.cols());
    for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff(k) = Complex(gauss(rng), gauss(rng));
    candidates.emplace_back(basis * coeff);
  }

  double best_score = -1.0;
  CMatrix best;
  for (const auto& c : candidates) {
    const CMatrix m = linalg::unvec(c, n, n);
    const double score = inverse_condition(m);
    if (score > best_score) {
      best_score = score;
      best = m;
    }
  }
  if (best_score < options.min_inverse_condition) {
    throw ConditioningError("nullspace holds no well-conditioned invertible element (best sigma ratio " +
                            std::to_string(best_score) + ")");
  }

  best *= std::sqrt(static_cast<double>(n)) / best.norm();
  AntilinearOp result{best, true};
  const auto check = commutes_with(result, h);
  if (!check.holds(tol)) {
    throw ConditioningError("best candidate symmetry has residual " + std::to_string(check.residual));
  }
  return result;
}

COperator build_c_operator(const spectral::BiorthogonalSystem& system, const AntilinearOp& pt, double tol) {
  if (!system.diagonalizable()) {
    throw UnsupportedError("C operator needs a diagonalizable system");
  }
  const std::size_t n = system.size();
  if (pt.dimension() != static_cast<Eigen::Index>(n)) {
    throw ShapeError("PT operator dimension does not match the system");
  }
  COperator out;
  out.matrix = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  out.signs.assign(n, 1);
  out.pt_norms.assign(n, Complex(std::numeric_limits<double>::quiet_NaN(), 0.0));

  const double scale = std::max(1.0, system.h_norm);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex e = system.eigenvalues[i];
    const auto col = static_cast<Eigen::Index>(i);
    const CVector r = system.right.col(col);
    if (std::abs(e.imag()) < tol * scale) {
      // PT R = e^{i phi} R for a nondegenerate real level; rotate by e^{i phi/2}.
      const Complex proj = r.dot(pt.apply(r)) / r.squaredNorm();
      const Complex align = std::polar(1.0, 0.5 * std::arg(proj));
      const CVector aligned = align * r;
      const Complex eta = pt.apply(aligned).transpose() * aligned;
      out.pt_norms[i] = eta;
      if (std::abs(eta.real()) < tol * aligned.squaredNorm()) {
        throw SignAmbiguityError("PT norm of level " + std::to_string(i) + " vanishes");
      }
      out.signs[i] = eta.real() > 0.0 ? 1 : -1;
    } else {
      out.unbroken = false;
      out.signs[i] = e.imag() > 0.0 ? 1 : -1;
    }
    const CVector l = system.left.col(system.pairing[i]);
    out.matrix += static_cast<double>(out.signs[i]) * (r * l.adjoint());
  }
  return out;
}

double pt_commutator_norm(const CMatrix& c, const AntilinearOp& pt) {
  return (c * pt.linear - pt.linear * apply_flag(c, pt.conjugates)).norm();
}

}  // namespace nhspec::antilinear
