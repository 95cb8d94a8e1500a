#include <numbers>
#include <random>

#include "doctest.h"
#include "nhspec/evolution.hpp"
#include "nhspec/linalg.hpp"
#include "nhspec/lorentz.hpp"

using namespace nhspec;
using lorentz::BasisName;

namespace {

const Complex kIPi(0.0, std::numbers::pi);
constexpr BasisName kBases[] = {BasisName::Majorana, BasisName::Dirac};

}  // namespace

TEST_CASE("Clifford algebra in both bases") {
  for (const auto name : kBases) {
    const auto b = lorentz::make_basis(name);
    CHECK(lorentz::anticommutation_residual(b) == 0.0);
    CHECK(lorentz::lorentz_algebra_residual(b) < 1e-15);
    const CMatrix g5 = lorentz::gamma5(b);
    CHECK((g5 * g5 - linalg::identity(4)).norm() == 0.0);
    for (const auto& g : b.gammas) CHECK(linalg::anticommutator(g5, g).norm() == 0.0);
    CHECK((b.gammas[0] - b.gammas[0].adjoint()).norm() == 0.0);
    for (int i = 1; i <= 3; ++i) CHECK((b.gammas[i] + b.gammas[i].adjoint()).norm() == 0.0);
  }
  CHECK(lorentz::max_real_entry(lorentz::make_basis(BasisName::Majorana)) == 0.0);
  CHECK(lorentz::max_real_entry(lorentz::make_basis(BasisName::Dirac)) == 1.0);
}

TEST_CASE("boost generators square to -I/4") {
  for (const auto name : kBases) {
    const auto b = lorentz::make_basis(name);
    for (int i = 1; i <= 3; ++i) {
      const CMatrix m = lorentz::boost_generator(b, i);
      CHECK((m * m + 0.25 * linalg::identity(4)).norm() < 1e-15);
      CHECK((m - lorentz::generator(b, 0, i)).norm() == 0.0);
      CHECK((lorentz::generator(b, i, 0) + m).norm() == 0.0);
    }
    CHECK(lorentz::generator(b, 2, 2).norm() == 0.0);
    CHECK_THROWS_AS(lorentz::generator(b, 0, 4), IndexError);
    CHECK_THROWS_AS(lorentz::boost_generator(b, 0), IndexError);
  }
}

TEST_CASE("closed-form spinor boost matches the exponential for random complex angles") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto name : kBases) {
    const auto b = lorentz::make_basis(name);
    for (int trial = 0; trial < 20; ++trial) {
      const Complex xi(u(rng), u(rng));
      const int axis = 1 + trial % 3;
      const CMatrix series = lorentz::complex_boost_spinor(b, axis, xi);
      const CMatrix closed = lorentz::complex_boost_spinor_closed_form(b, axis, xi);
      CHECK((series - closed).norm() < 1e-12 * closed.norm());
    }
  }
}

TEST_CASE("boost at i pi and the three-boost product") {
  for (const auto name : kBases) {
    const auto b = lorentz::make_basis(name);
    CMatrix product = linalg::identity(4);
    for (int i = 1; i <= 3; ++i) {
      const CMatrix l = lorentz::complex_boost_spinor(b, i, kIPi);
      CHECK((l + kI * b.gammas[0] * b.gammas[i]).norm() < 1e-13);
      product = product * l;  // Λ¹Λ²Λ³: boost 3 applied first
    }
    const CMatrix g5 = lorentz::gamma5(b);
    CHECK((lorentz::three_boost_spinor(b, kIPi) - g5).norm() < 1e-13);
    CHECK((product + g5).norm() < 1e-13);
  }
}

TEST_CASE("vector boosts") {
  const RMatrix eta = lorentz::make_basis(BasisName::Dirac).metric;
  const CMatrix metric = eta.cast<Complex>();
  for (int i = 1; i <= 3; ++i) {
    const CMatrix l = lorentz::vector_boost(i, 0.7);
    CHECK(linalg::max_abs_imag(l) == 0.0);
    CHECK((l.transpose() * metric * l - metric).norm() < 1e-14);
    CHECK(l(0, i).real() == doctest::Approx(-std::sinh(0.7)));

    // At iπ the (t, i) block is -I and the rest is untouched.
    const CMatrix half_turn = lorentz::vector_boost(i, kIPi);
    CMatrix expected = linalg::identity(4);
    expected(0, 0) = expected(i, i) = -1.0;
    CHECK(half_turn == expected);
  }
  CHECK(lorentz::three_boost_vector(kIPi) == CMatrix(-linalg::identity(4)));
  CHECK_THROWS_AS(lorentz::vector_boost(4, 1.0), IndexError);
}

TEST_CASE("charge conjugation matrix") {
  for (const auto name : kBases) {
    const auto b = lorentz::make_basis(name);
    const auto c = lorentz::charge_conjugation_matrix(b);
    CHECK(c.nullspace_dimension == 1);
    CHECK(c.residual < 1e-13);
    CHECK(c.matrix.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    for (const auto& g : b.gammas) CHECK((g * c.matrix + c.matrix * g.transpose()).norm() < 1e-13);
    // C is antisymmetric in four dimensions.
    CHECK((c.matrix + c.matrix.transpose()).norm() < 1e-13);
  }
}

TEST_CASE("basis change carries C between bases") {
  const auto dirac = lorentz::make_basis(BasisName::Dirac);
  const auto majorana = lorentz::make_basis(BasisName::Majorana);
  const CMatrix u = lorentz::basis_change(dirac, majorana);
  for (int mu = 0; mu < 4; ++mu) CHECK((majorana.gammas[mu] * u - u * dirac.gammas[mu]).norm() < 1e-13);
  const CMatrix carried = u * lorentz::charge_conjugation_matrix(dirac).matrix * u.transpose();
  CHECK(lorentz::proportionality_residual(carried, lorentz::charge_conjugation_matrix(majorana).matrix) < 1e-13);
}

TEST_CASE("proportionality residual") {
  const CMatrix a = lorentz::make_basis(BasisName::Dirac).gammas[2];
  CHECK(lorentz::proportionality_residual(a, Complex(0.0, 3.0) * a) < 1e-15);
  CHECK(lorentz::proportionality_residual(a, linalg::identity(4)) > 0.5);
}

TEST_CASE("CPT linear part") {
  for (const auto name : kBases) {
    const auto check = lorentz::cpt_linear_part_check(lorentz::make_basis(name));
    CHECK(check.residual < 1e-13);
    CHECK(check.gamma5_square_residual == 0.0);
    CHECK(check.gamma5_anticommutation == 0.0);
    CHECK(std::abs(check.phase - Complex(0.0, -1.0)) < 1e-13);
  }
}

TEST_CASE("basis names") {
  for (const auto name : kBases) CHECK(lorentz::basis_from_string(lorentz::to_string(name)) == name);
  CHECK_THROWS_AS(lorentz::basis_from_string("weyl"), ParameterError);
}
