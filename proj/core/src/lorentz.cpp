#include "nhspec/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nhspec/errors.hpp"
#include "nhspec/evolution.hpp"
#include "nhspec/linalg.hpp"

namespace nhspec::lorentz {

namespace {

CMatrix pauli(int k) {
  CMatrix s(2, 2);
  switch (k) {
    case 1: s << 0.0, 1.0, 1.0, 0.0; break;
    case 2: s << 0.0, -kI, kI, 0.0; break;
    case 3: s << 1.0, 0.0, 0.0, -1.0; break;
    default: s = CMatrix::Identity(2, 2);
  }
  return s;
}

CMatrix blocks(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d) {
  CMatrix m(4, 4);
  m << a, b, c, d;
  return m;
}

void check_spatial(int i) {
  if (i < 1 || i > 3) throw IndexError("spatial index must be 1, 2 or 3, got " + std::to_string(i));
}

double snap(double v, double scale) {
  return std::abs(v) <= 8.0 * std::numeric_limits<double>::epsilon() * scale ? 0.0 : v;
}

Complex snap(Complex v, double scale) { return {snap(v.real(), scale), snap(v.imag(), scale)}; }

// Scales to unit largest entry, rotates the first nonzero entry onto the
// positive real axis and clears round-off entries.
CMatrix normalise(CMatrix m) {
  const double largest = m.cwiseAbs().maxCoeff();
  m /= largest;
  const double floor = 1e-12;
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const Eigen::Index r = k / m.cols();
    const Eigen::Index c = k % m.cols();
    if (std::abs(m(r, c)) > floor) {
      m *= std::conj(m(r, c)) / std::abs(m(r, c));
      break;
    }
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = snap(m(r, c), 1e3);
  }
  return m;
}

// Solutions X of a_μ X = X b_μ for all μ.
CMatrix intertwiner_nullspace(const std::array<CMatrix, 4>& a, const std::array<CMatrix, 4>& b, double sign) {
  const CMatrix id = linalg::identity(4);
  CMatrix stacked(64, 16);
  for (int mu = 0; mu < 4; ++mu) {
    stacked.middleRows(16 * mu, 16) = linalg::kron(id, a[mu]) - sign * linalg::kron(b[mu].transpose(), id);
  }
  return linalg::nullspace(stacked, 1e-12);
}

}  // namespace

std::string to_string(BasisName name) { return name == BasisName::Majorana ? "majorana" : "dirac"; }

BasisName basis_from_string(const std::string& name) {
  if (name == "majorana") return BasisName::Majorana;
  if (name == "dirac") return BasisName::Dirac;
  throw ParameterError("unknown gamma basis '" + name + "'; expected majorana or dirac");
}

GammaBasis make_basis(BasisName name) {
  GammaBasis b;
  b.name = name;
  b.metric = RMatrix::Zero(4, 4);
  b.metric.diagonal() << 1.0, -1.0, -1.0, -1.0;
  const CMatrix z = CMatrix::Zero(2, 2);
  const CMatrix id = CMatrix::Identity(2, 2);
  if (name == BasisName::Majorana) {
    b.gammas[0] = blocks(z, pauli(2), pauli(2), z);
    b.gammas[1] = blocks(kI * pauli(3), z, z, kI * pauli(3));
    b.gammas[2] = blocks(z, -pauli(2), pauli(2), z);
    b.gammas[3] = blocks(-kI * pauli(1), z, z, -kI * pauli(1));
  } else {
    b.gammas[0] = blocks(id, z, z, -id);
    for (int i = 1; i <= 3; ++i) b.gammas[i] = blocks(z, pauli(i), -pauli(i), z);
  }
  return b;
}

CMatrix gamma5(const GammaBasis& basis) {
  const auto& g = basis.gammas;
  return kI * g[0] * g[1] * g[2] * g[3];
}

double anticommutation_residual(const GammaBasis& basis) {
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const CMatrix target = 2.0 * basis.metric(mu, nu) * linalg::identity(4);
      worst = std::max(worst, (linalg::anticommutator(basis.gammas[mu], basis.gammas[nu]) - target).norm());
    }
  }
  return worst;
}

double max_real_entry(const GammaBasis& basis) {
  double worst = 0.0;
  for (const auto& g : basis.gammas) worst = std::max(worst, g.real().cwiseAbs().maxCoeff());
  return worst;
}

CMatrix generator(const GammaBasis& basis, int mu, int nu) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3) throw IndexError("Lorentz indices must lie in 0..3");
  return kI * linalg::commutator(basis.gammas[mu], basis.gammas[nu]) / 4.0;
}

CMatrix boost_generator(const GammaBasis& basis, int i) {
  check_spatial(i);
  return generator(basis, 0, i);
}

double lorentz_algebra_residual(const GammaBasis& basis) {
  std::array<std::array<CMatrix, 4>, 4> m;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) m[a][b] = generator(basis, a, b);
  }
  const auto& eta = basis.metric;
  double worst = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      for (int rho = 0; rho < 4; ++rho)
        for (int sigma = 0; sigma < 4; ++sigma) {
          const CMatrix rhs = kI * (eta(nu, rho) * m[mu][sigma] - eta(mu, rho) * m[nu][sigma] -
                                    eta(nu, sigma) * m[mu][rho] + eta(mu, sigma) * m[nu][rho]);
          worst = std::max(worst, (linalg::commutator(m[mu][nu], m[rho][sigma]) - rhs).norm());
        }
  return worst;
}

CMatrix complex_boost_spinor(const GammaBasis& basis, int i, Complex xi) {
  check_spatial(i);
  return evolution::expm(CMatrix(-xi * basis.gammas[0] * basis.gammas[i] / 2.0));
}

CMatrix complex_boost_spinor_closed_form(const GammaBasis& basis, int i, Complex xi) {
  check_spatial(i);
  return std::cosh(xi / 2.0) * linalg::identity(4) - std::sinh(xi / 2.0) * basis.gammas[0] * basis.gammas[i];
}

CMatrix three_boost_spinor(const GammaBasis& basis, Complex xi) {
  return complex_boost_spinor(basis, 3, xi) * complex_boost_spinor(basis, 2, xi) * complex_boost_spinor(basis, 1, xi);
}

CMatrix vector_boost(int i, Complex xi) {
  check_spatial(i);
  const Complex ch = std::cosh(xi);
  const Complex sh = std::sinh(xi);
  const double scale = std::max(std::abs(ch), std::abs(sh));
  CMatrix l = linalg::identity(4);
  l(0, 0) = snap(ch, scale);
  l(i, i) = snap(ch, scale);
  l(0, i) = -snap(sh, scale);
  l(i, 0) = -snap(sh, scale);
  return l;
}

CMatrix three_boost_vector(Complex xi) { return vector_boost(3, xi) * vector_boost(2, xi) * vector_boost(1, xi); }

ChargeConjugation charge_conjugation_matrix(const GammaBasis& basis) {
  std::array<CMatrix, 4> transposed;
  for (int mu = 0; mu < 4; ++mu) transposed[mu] = basis.gammas[mu].transpose();
  // γ C = -C γᵀ
  const CMatrix null = intertwiner_nullspace(basis.gammas, transposed, -1.0);
  if (null.cols() == 0) throw ConstraintError("charge-conjugation constraint has only the zero solution");
  ChargeConjugation out;
  out.nullspace_dimension = static_cast<int>(null.cols());
  out.matrix = normalise(linalg::unvec(null.col(0), 4, 4));
  const Eigen::PartialPivLU<CMatrix> lu(out.matrix);
  for (int mu = 0; mu < 4; ++mu) {
    const CMatrix lhs = lu.solve(CMatrix(basis.gammas[mu] * out.matrix));
    out.residual = std::max(out.residual, (lhs + transposed[mu]).norm());
  }
  return out;
}

CMatrix basis_change(const GammaBasis& from, const GammaBasis& to) {
  const CMatrix null = intertwiner_nullspace(to.gammas, from.gammas, 1.0);
  if (null.cols() == 0) throw ConstraintError("no intertwiner between the two gamma bases");
  return normalise(linalg::unvec(null.col(0), 4, 4));
}

double proportionality_residual(const CMatrix& a, const CMatrix& b) {
  const Complex aa = a.squaredNorm();
  if (std::abs(aa) == 0.0) return 1.0;
  const Complex alpha = (a.adjoint() * b).trace() / aa;
  return (alpha * a - b).norm() / b.norm();
}

CptCheck cpt_linear_part_check(const GammaBasis& basis) {
  CptCheck out;
  const CMatrix g5 = gamma5(basis);
  const CMatrix product = three_boost_spinor(basis, Complex(0.0, std::numbers::pi));
  out.residual = (product - g5).norm();
  out.phase = (product.adjoint() * (-kI * g5)).trace() / product.squaredNorm();
  out.gamma5_square_residual = (g5 * g5 - linalg::identity(4)).norm();
  for (const auto& g : basis.gammas) {
    out.gamma5_anticommutation = std::max(out.gamma5_anticommutation, linalg::anticommutator(g5, g).norm());
  }
  return out;
}

}  // namespace nhspec::lorentz
