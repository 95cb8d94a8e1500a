#include "nhspec/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Householder>
#include <Eigen/Jacobi>

namespace nhspec::spectral {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

void require_finite_square(const CMatrix& h) {
  if (h.rows() != h.cols()) throw ShapeError("eigensolver needs a square matrix");
  if (!h.allFinite()) throw ParameterError("matrix has non-finite entries");
}

// Eigenvalue of the trailing 2x2 block of the active window closest to its
// last diagonal entry, written as d - u²/(x + y) with x = (a - d)/2,
// u² = bc and y = sqrt(x² + u²) so nearly equal diagonals lose no digits.
Complex wilkinson_shift(const CMatrix& h, Eigen::Index iu) {
  const Complex d = h(iu, iu);
  const Complex u = std::sqrt(h(iu - 1, iu)) * std::sqrt(h(iu, iu - 1));
  double s = abs1(u);
  if (s == 0.0) return d;
  const Complex x = 0.5 * (h(iu - 1, iu - 1) - d);
  const double sx = abs1(x);
  s = std::max(s, sx);
  Complex y = s * std::sqrt((x / s) * (x / s) + (u / s) * (u / s));
  if (sx > 0.0 && ((x / sx).real() * y.real() + (x / sx).imag() * y.imag()) < 0.0) y = -y;
  return d - u * (u / (x + y));
}

// 2x2 unitary acting on rows (k, k+1): [x; y] <- [[a, b]; [c, d]] [x; y].
struct PlaneRotation {
  Complex a, b, c, d;

  static PlaneRotation left(const Eigen::JacobiRotation<Complex>& rot) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    m.applyOnTheLeft(0, 1, rot.adjoint());
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
  }

  void apply_to_column(CMatrix& h, Eigen::Index row, Eigen::Index col) const {
    const Complex x = h(row, col);
    const Complex y = h(row + 1, col);
    h(row, col) = a * x + b * y;
    h(row + 1, col) = c * x + d * y;
  }
};

// Applies stored rotations for rows (il, il+1) .. (last, last+1) to column c.
void apply_pending(const std::vector<PlaneRotation>& rotations, CMatrix& h, Eigen::Index c,
                   Eigen::Index il, Eigen::Index last) {
  Complex* col = h.col(c).data();
  for (Eigen::Index k = il; k <= last; ++k) {
    const PlaneRotation& g = rotations[static_cast<std::size_t>(k - il)];
    const Complex x = col[k];
    const Complex y = col[k + 1];
    col[k] = g.a * x + g.b * y;
    col[k + 1] = g.c * x + g.d * y;
  }
}

// Runs the shifted QR iteration on an upper Hessenberg matrix. With `z`
// non-null the full triangular factor is formed and rotations are accumulated
// into z; otherwise only the active window is updated.
void hessenberg_qr(CMatrix& h, CMatrix* z) {
  const Eigen::Index n = h.rows();
  if (n == 0) return;
  const bool full = (z != nullptr);
  const double hnorm = std::max(h.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const int budget = kIterationsPerEigenvalue * static_cast<int>(std::max<Eigen::Index>(n, 1));
  int total = 0;
  int its = 0;
  std::vector<PlaneRotation> rotations;

  Eigen::Index iu = n - 1;
  while (iu >= 0) {
    Eigen::Index il = iu;
    while (il > 0) {
      double s = abs1(h(il - 1, il - 1)) + abs1(h(il, il));
      if (s == 0.0) s = hnorm;
      if (abs1(h(il, il - 1)) <= kEps * s) {
        h(il, il - 1) = 0.0;
        break;
      }
      --il;
    }
    if (il == iu) {
      --iu;
      its = 0;
      continue;
    }

    ++its;
    ++total;
    if (total > budget) {
      std::vector<Complex> done;
      for (Eigen::Index k = iu + 1; k < n; ++k) done.push_back(h(k, k));
      std::string message = "QR iteration exceeded " + std::to_string(budget) + " iterations with " +
                            std::to_string(done.size()) + " of " + std::to_string(n) + " eigenvalues converged";
      throw ConvergenceError(std::move(message), std::move(done), total);
    }

    Complex shift;
    if (its % 20 == 10) {
      shift = h(il, il) + 0.75 * std::abs(h(il + 1, il).real());
    } else if (its % 20 == 0) {
      shift = h(iu, iu) + 0.75 * std::abs(h(iu, iu - 1).real());
    } else {
      shift = wilkinson_shift(h, iu);
    }

    const Eigen::Index col_end = full ? n - 1 : iu;
    const Eigen::Index row_begin = full ? 0 : il;

    // Left rotations are stored and applied to each column just before the
    // column is first needed, so the updates walk down contiguous columns
    // instead of across rows.
    rotations.clear();
    for (Eigen::Index k = il; k < iu; ++k) {
      Eigen::JacobiRotation<Complex> rot;
      if (k == il) {
        rot.makeGivens(h(il, il) - shift, h(il + 1, il));
      } else {
        rot.makeGivens(h(k, k - 1), h(k + 1, k - 1), &h(k, k - 1));
        h(k + 1, k - 1) = 0.0;
      }
      rotations.push_back(PlaneRotation::left(rot));
      rotations.back().apply_to_column(h, k, k);
      apply_pending(rotations, h, k + 1, il, k);
      h.middleRows(row_begin, std::min(k + 2, iu) - row_begin + 1).applyOnTheRight(k, k + 1, rot);
      if (z) z->applyOnTheRight(k, k + 1, rot);
    }
    for (Eigen::Index c = iu + 1; c <= col_end; ++c) apply_pending(rotations, h, c, il, iu - 1);
  }
}

template <typename Mat>
RVector balance_impl(Mat& h) {
  const Eigen::Index n = h.rows();
  RVector d = RVector::Ones(n);
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  bool noconv = true;
  int sweeps = 0;
  while (noconv && sweeps < 100) {
    noconv = false;
    ++sweeps;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += abs1(Complex(h(j, i)));
        r += abs1(Complex(h(i, j)));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c >= g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        noconv = true;
        d(i) *= f;
        h.row(i) /= f;
        h.col(i) *= f;
      }
    }
  }
  return d;
}

// Francis double-shift QR on a real upper Hessenberg matrix, eigenvalues only.
// Only the active window is updated.
std::vector<Complex> real_hessenberg_eigenvalues(RMatrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<Complex> out(static_cast<std::size_t>(n));
  if (n == 0) return out;
  double anorm = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i <= std::min(j + 1, n - 1); ++i) anorm += std::abs(a(i, j));
  }
  if (anorm == 0.0) anorm = 1.0;
  const int budget = kIterationsPerEigenvalue * static_cast<int>(n);
  int total = 0;
  double t = 0.0;
  Eigen::Index nn = n - 1;
  auto set = [&](Eigen::Index k, Complex v) { out[static_cast<std::size_t>(k)] = v; };

  while (nn >= 0) {
    int its = 0;
    Eigen::Index l = 0;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= kEps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        set(nn, x + t);
        --nn;
      } else {
        double y = a(nn - 1, nn - 1);
        double w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          // Closed-form 2x2 block.
          const double p = 0.5 * (y - x);
          const double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + std::copysign(z, p);
            set(nn - 1, x + z);
            set(nn, z != 0.0 ? Complex(x - w / z) : Complex(x + z));
          } else {
            set(nn - 1, Complex(x + p, z));
            set(nn, Complex(x + p, -z));
          }
          nn -= 2;
        } else {
          if (++total > budget) {
            std::vector<Complex> done(out.begin() + nn + 1, out.end());
            std::string message = "QR iteration exceeded " + std::to_string(budget) + " iterations with " +
                                  std::to_string(done.size()) + " of " + std::to_string(n) +
                                  " eigenvalues converged";
            throw ConvergenceError(std::move(message), std::move(done), total);
          }
          if (its > 0 && its % 10 == 0) {
            t += x;
            for (Eigen::Index i = 0; i <= nn; ++i) a(i, i) -= x;
            const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          Eigen::Index m = nn - 2;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u <= kEps * v) break;
          }
          for (Eigen::Index i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          for (Eigen::Index k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            const bool three = (k != nn - 1);
            for (Eigen::Index j = k; j <= nn; ++j) {
              double pj = a(k, j) + q * a(k + 1, j);
              if (three) {
                pj += r * a(k + 2, j);
                a(k + 2, j) -= pj * z;
              }
              a(k + 1, j) -= pj * y;
              a(k, j) -= pj * x;
            }
            const Eigen::Index mmin = std::min(nn, k + 3);
            double* c0 = &a(0, k);
            double* c1 = &a(0, k + 1);
            double* c2 = three ? &a(0, k + 2) : nullptr;
            for (Eigen::Index i = l; i <= mmin; ++i) {
              double pi = x * c0[i] + y * c1[i];
              if (three) {
                pi += z * c2[i];
                c2[i] -= pi * r;
              }
              c1[i] -= pi * q;
              c0[i] -= pi;
            }
          }
        }
      }
    } while (nn >= 0 && l < nn - 1);
  }
  return out;
}

template <typename Mat>
Mat hessenberg_impl(Mat& h, bool accumulate) {
  using Scalar = typename Mat::Scalar;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = h.rows();
  Mat q;
  if (accumulate) q = Mat::Identity(n, n);
  Vec workspace(n);
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Scalar tau;
    double beta;
    Vec essential(m - 1);
    h.col(k).segment(k + 1, m).makeHouseholder(essential, tau, beta);
    if (tau == Scalar(0)) continue;
    h(k + 1, k) = beta;
    h.col(k).tail(m - 1).setZero();
    h.bottomRightCorner(m, n - k - 1).applyHouseholderOnTheLeft(essential, tau, workspace.data());
    h.rightCols(m).applyHouseholderOnTheRight(essential, Eigen::numext::conj(tau), workspace.data());
    if (accumulate) q.rightCols(m).applyHouseholderOnTheRight(essential, Eigen::numext::conj(tau), workspace.data());
  }
  return q;
}

}  // namespace

RVector balance(CMatrix& h) { return balance_impl(h); }

CMatrix hessenberg(CMatrix& h, bool accumulate) { return hessenberg_impl(h, accumulate); }

SchurDecomposition complex_schur(const CMatrix& h) {
  require_finite_square(h);
  CMatrix t = h;
  CMatrix q = hessenberg(t, true);
  hessenberg_qr(t, &q);
  t.triangularView<Eigen::StrictlyLower>().setZero();
  return {std::move(t), std::move(q)};
}

std::vector<Complex> real_eigenvalues(const RMatrix& h) {
  if (h.rows() != h.cols()) throw ShapeError("eigensolver needs a square matrix");
  if (!h.allFinite()) throw ParameterError("matrix has non-finite entries");
  RMatrix t = h;
  balance_impl(t);
  hessenberg_impl(t, false);
  return real_hessenberg_eigenvalues(t);
}

std::vector<Complex> eigenvalues(const CMatrix& h) {
  require_finite_square(h);
  if (h.size() > 0 && h.imag().cwiseAbs().maxCoeff() == 0.0) return real_eigenvalues(h.real());
  CMatrix t = h;
  balance(t);
  hessenberg(t, false);
  hessenberg_qr(t, nullptr);
  std::vector<Complex> out(static_cast<std::size_t>(t.rows()));
  for (Eigen::Index k = 0; k < t.rows(); ++k) out[static_cast<std::size_t>(k)] = t(k, k);
  return out;
}

CMatrix triangular_eigenvectors(const CMatrix& t) {
  const Eigen::Index n = t.rows();
  CMatrix x = CMatrix::Zero(n, n);
  const double tnorm = t.cwiseAbs().maxCoeff();
  const double smlnum = std::numeric_limits<double>::min() * (static_cast<double>(n) / kEps);
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    const Complex lambda = t(k, k);
    const double smin = std::max(kEps * std::max(abs1(lambda), tnorm), smlnum);
    auto col = x.col(k);
    col(k) = 1.0;
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      Complex acc = t.row(j).segment(j + 1, k - j) * col.segment(j + 1, k - j);
      Complex denom = t(j, j) - lambda;
      if (abs1(denom) < smin) denom = smin;
      col(j) = -acc / denom;
      // Rescale when a nearly defective cluster makes the entries explode.
      const double mag = abs1(col(j));
      if (mag > 1e100) col.segment(j, k - j + 1) /= mag;
    }
    col.head(k + 1).normalize();
  }
  return x;
}

CMatrix triangular_left_eigenvectors(const CMatrix& t) {
  const Eigen::Index n = t.rows();
  CMatrix w = CMatrix::Zero(n, n);
  const double tnorm = t.cwiseAbs().maxCoeff();
  const double smlnum = std::numeric_limits<double>::min() * (static_cast<double>(n) / kEps);
  // Row vector u with u (T - lambda) = 0, u_k = 1, u_j = 0 for j < k; w = u†.
  Eigen::RowVectorXcd u(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex lambda = t(k, k);
    const double smin = std::max(kEps * std::max(abs1(lambda), tnorm), smlnum);
    u.setZero();
    u(k) = 1.0;
    for (Eigen::Index j = k + 1; j < n; ++j) {
      const Complex acc = u.segment(k, j - k) * t.col(j).segment(k, j - k);
      Complex denom = t(j, j) - lambda;
      if (abs1(denom) < smin) denom = smin;
      u(j) = -acc / denom;
      const double mag = abs1(u(j));
      if (mag > 1e100) u.segment(k, j - k + 1) /= mag;
    }
    w.col(k) = u.adjoint();
    w.col(k).normalize();
  }
  return w;
}

TwoSidedEigensystem two_sided_eigensystem(const CMatrix& h) {
  require_finite_square(h);
  const Eigen::Index n = h.rows();
  CMatrix b = h;
  const RVector d = balance(b);
  SchurDecomposition s = complex_schur(b);
  CMatrix right = s.q * triangular_eigenvectors(s.t);
  CMatrix left = s.q * triangular_left_eigenvectors(s.t);
  for (Eigen::Index i = 0; i < n; ++i) {
    right.row(i) *= d(i);
    left.row(i) /= d(i);
  }
  right.colwise().normalize();
  left.colwise().normalize();
  std::vector<Complex> values(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) values[static_cast<std::size_t>(k)] = s.t(k, k);
  return {std::move(values), std::move(right), std::move(left)};
}

RightEigensystem right_eigensystem(const CMatrix& h) {
  require_finite_square(h);
  const Eigen::Index n = h.rows();
  CMatrix b = h;
  const RVector d = balance(b);
  SchurDecomposition s = complex_schur(b);
  CMatrix v = s.q * triangular_eigenvectors(s.t);
  for (Eigen::Index i = 0; i < n; ++i) v.row(i) *= d(i);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double nrm = v.col(k).norm();
    if (nrm > 0.0) v.col(k) /= nrm;
  }
  std::vector<Complex> values(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) values[static_cast<std::size_t>(k)] = s.t(k, k);
  return {std::move(values), std::move(v)};
}

}  // namespace nhspec::spectral
