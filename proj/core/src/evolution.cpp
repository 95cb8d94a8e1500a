#include "nhspec/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nhspec/errors.hpp"

namespace nhspec::evolution {

namespace {

// exp(-700) .. exp(700) stays inside double range with headroom.
constexpr double kLogOverflow = 700.0;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
Mat<Scalar> series_exp(const Mat<Scalar>& a) {
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  const Eigen::Index n = a.rows();
  const Real norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > Real(0.5)) squarings = static_cast<int>(std::ceil(std::log2(static_cast<double>(norm1) / 0.5)));
  const Mat<Scalar> b = a / std::pow(Real(2), squarings);
  Mat<Scalar> sum = Mat<Scalar>::Identity(n, n);
  Mat<Scalar> term = Mat<Scalar>::Identity(n, n);
  const Real eps = Eigen::NumTraits<Real>::epsilon();
  for (int k = 1; k <= 40; ++k) {
    term = term * b / Real(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() <= eps * sum.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

double growth_rate_bound(const CMatrix& h, double t) {
  // Largest Im(E) * sign(t), so |exp(-iEt)| = exp(Im(E) t) <= exp(rate |t|).
  double rate = 0.0;
  for (const Complex e : spectral::eigenvalues(h)) {
    rate = std::max(rate, t >= 0.0 ? e.imag() : -e.imag());
  }
  return rate;
}

}  // namespace

CMatrix expm(const CMatrix& a) {
  CMatrix out = series_exp<Complex>(a);
  if (!out.allFinite()) {
    throw RangeError("matrix exponential overflowed", 0.0);
  }
  return out;
}

CMatrix spectral_propagator(const spectral::BiorthogonalSystem& system, double t) {
  if (!system.diagonalizable()) throw UnsupportedError("spectral propagator needs a diagonalizable system");
  double rate = 0.0;
  for (const Complex e : system.eigenvalues) rate = std::max(rate, t >= 0.0 ? e.imag() : -e.imag());
  if (rate * std::abs(t) > kLogOverflow) {
    throw RangeError("growing modes overflow at t = " + std::to_string(t), kLogOverflow / rate);
  }
  const Eigen::Index n = system.right.rows();
  CMatrix scaled_left(n, static_cast<Eigen::Index>(system.size()));
  for (std::size_t i = 0; i < system.size(); ++i) {
    const Complex phase = std::exp(-kI * system.eigenvalues[i] * t);
    scaled_left.col(static_cast<Eigen::Index>(i)) = std::conj(phase) * system.left.col(system.pairing[i]);
  }
  return system.right * scaled_left.adjoint();
}

CMatrix propagator(const CMatrix& h, double t, PropagatorMethod method) {
  if (h.rows() != h.cols()) throw ShapeError("propagator needs a square matrix");
  if (method != PropagatorMethod::Series) {
    const auto system = spectral::eigendecompose(h);
    if (system.diagonalizable()) return spectral_propagator(system, t);
    if (method == PropagatorMethod::Spectral) {
      throw UnsupportedError("spectral propagator requested for a defective matrix");
    }
  }
  const double rate = growth_rate_bound(h, t);
  if (rate * std::abs(t) > kLogOverflow) {
    throw RangeError("growing modes overflow at t = " + std::to_string(t), kLogOverflow / rate);
  }
  return expm(CMatrix(-kI * t * h));
}

CMatrix euclidean_propagator(const CMatrix& h, double tau) {
  if (h.rows() != h.cols()) throw ShapeError("propagator needs a square matrix");
  double rate = 0.0;
  for (const Complex e : spectral::eigenvalues(h)) rate = std::max(rate, tau >= 0.0 ? -e.real() : e.real());
  if (rate * std::abs(tau) > kLogOverflow) {
    throw RangeError("Euclidean evolution overflows at tau = " + std::to_string(tau), kLogOverflow / rate);
  }
  return expm(CMatrix(-tau * h));
}

std::vector<double> uniform_grid(double t0, double t1, int points) {
  if (points < 1) throw ParameterError("time grid needs at least one point");
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    out[static_cast<std::size_t>(k)] = points == 1 ? t0 : t0 + (t1 - t0) * k / (points - 1);
  }
  return out;
}

OverlapTrace overlap_trace(const CMatrix& h, const spectral::BiorthogonalSystem& system,
                           std::span<const double> times, const OverlapOptions& options) {
  if (!system.diagonalizable()) throw UnsupportedError("overlap trace needs a diagonalizable system");
  using LComplex = std::complex<long double>;
  using LMat = Mat<LComplex>;

  const std::size_t n = system.size();
  OverlapTrace out;
  out.times.assign(times.begin(), times.end());
  out.right_labels = system.eigenvalues;
  out.left_labels = system.left_labels;

  // Entries at the rounding floor are zero overlaps; propagating their noise
  // through exp(|Im E| t) growth would fake a drift.
  CMatrix g0 = system.overlap_matrix();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<std::size_t>(n, 1));
  for (Eigen::Index i = 0; i < g0.cols(); ++i) {
    for (Eigen::Index j = 0; j < g0.rows(); ++j) {
      if (std::abs(g0(j, i)) <= floor * system.left.col(j).norm() * system.right.col(i).norm()) g0(j, i) = 0.0;
    }
  }
  double max_growth = 0.0;
  double t_max = 0.0;
  for (const Complex e : system.eigenvalues) max_growth = std::max(max_growth, std::abs(e.imag()));
  for (const double t : times) t_max = std::max(t_max, std::abs(t));
  double left_scale = 0.0;
  for (Eigen::Index j = 0; j < system.left.cols(); ++j) left_scale = std::max(left_scale, system.left.col(j).norm());
  double right_scale = 0.0;
  for (Eigen::Index i = 0; i < system.right.cols(); ++i) right_scale = std::max(right_scale, system.right.col(i).norm());
  const double noise = std::numeric_limits<long double>::epsilon() * left_scale * right_scale * static_cast<double>(n);
  const double precision_limit = noise > 0.0 ? std::max(0.0, 0.5 * std::log(options.literal_accuracy / noise)) : 0.0;
  const double growth_limit = std::min(options.growth_limit, precision_limit);
  out.literal_t_max = t_max;
  if (max_growth * t_max > growth_limit) {
    out.literal_t_max = growth_limit / max_growth;
    out.reduced_literal_range = true;
  }

  const LMat hl = h.cast<LComplex>();
  const LMat right = system.right.cast<LComplex>();
  const LMat left = system.left.cast<LComplex>();
  const LComplex li(0.0L, 1.0L);

  out.drift = RMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const double t : times) {
    CMatrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Complex exponent = -kI * system.eigenvalues[i] * t + kI * std::conj(system.left_labels[j]) * t;
        const auto jj = static_cast<Eigen::Index>(j);
        const auto ii = static_cast<Eigen::Index>(i);
        g(jj, ii) = g0(jj, ii) * std::exp(exponent);
      }
    }
    out.drift = out.drift.cwiseMax((g - g0).cwiseAbs());

    if (std::abs(t) <= out.literal_t_max) {
      const LMat ur = series_exp<LComplex>(LMat(-li * static_cast<long double>(t) * hl));
      const LMat ul = series_exp<LComplex>(LMat(-li * static_cast<long double>(t) * hl.adjoint()));
      const LMat literal = (ul * left).adjoint() * (ur * right);
      const CMatrix lit = literal.cast<Complex>();
      out.method_agreement = std::max(out.method_agreement, (lit - g).cwiseAbs().maxCoeff());
      out.drift = out.drift.cwiseMax((lit - g0).cwiseAbs());
    }
    out.overlaps.push_back(std::move(g));
  }
  out.max_drift = n == 0 ? 0.0 : out.drift.maxCoeff();
  return out;
}

SelectionReport selection_rule_check(const spectral::BiorthogonalSystem& system, double tol,
                                     double tol_cluster) {
  SelectionReport report;
  const CMatrix g = system.overlap_matrix();
  for (std::size_t i = 0; i < system.size(); ++i) {
    for (std::size_t j = 0; j < system.size(); ++j) {
      ++report.checked_entries;
      const double mag = std::abs(g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)));
      if (mag < tol) continue;
      const Complex label = system.left_labels[j];
      const bool matched = std::abs(label - std::conj(system.eigenvalues[i])) <= tol_cluster;
      bool in_spectrum = false;
      for (const Complex e : system.eigenvalues) {
        if (std::abs(label - e) <= tol_cluster) {
          in_spectrum = true;
          break;
        }
      }
      if (!matched || !in_spectrum) {
        report.violations.push_back({j, i, label, system.eigenvalues[i], mag, !in_spectrum});
      }
    }
  }
  return report;
}

EuclideanReality euclidean_reality(const CMatrix& h, double tau, double tol) {
  const CMatrix u = euclidean_propagator(h, tau);
  EuclideanReality out;
  out.max_imag = u.size() == 0 ? 0.0 : u.imag().cwiseAbs().maxCoeff();
  out.entrywise_real = out.max_imag < tol;
  out.trace = u.trace();
  out.trace_real = std::abs(out.trace.imag()) < tol * std::max(1.0, std::abs(out.trace));
  return out;
}

}  // namespace nhspec::evolution
