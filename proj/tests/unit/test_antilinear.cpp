#include <random>

#include "doctest.h"
#include "nhspec/antilinear.hpp"
#include "nhspec/linalg.hpp"
#include "nhspec/models.hpp"
#include "oracles.hpp"

using namespace nhspec;
using antilinear::AntilinearOp;

TEST_CASE("complex conjugation composes to the identity") {
  const auto k = AntilinearOp::complex_conjugation(3);
  const auto kk = antilinear::compose(k, k);
  CHECK_FALSE(kk.conjugates);
  CHECK(kk.linear == linalg::identity(3));

  CVector v(3);
  v << Complex(1, 2), Complex(0, -1), 3.0;
  CHECK(k.apply(v) == v.conjugate());
}

TEST_CASE("conjugate_by computes M conj(H) M^-1") {
  std::mt19937_64 rng(21);
  const CMatrix h = testing::random_complex(5, rng);
  const CMatrix m = testing::random_complex(5, rng) + 4.0 * linalg::identity(5);
  const AntilinearOp a{m, true};
  CHECK((a.conjugate_by(h) - m * h.conjugate() * m.inverse()).norm() < 1e-12 * h.norm());
  const AntilinearOp linear{m, false};
  CHECK((linear.conjugate_by(h) - m * h * m.inverse()).norm() < 1e-12 * h.norm());

  const AntilinearOp singular{CMatrix::Zero(5, 5), true};
  CHECK_THROWS_AS(singular.conjugate_by(h), InvalidOperatorError);
  CHECK_THROWS_AS(a.conjugate_by(CMatrix::Zero(4, 4)), ShapeError);
}

TEST_CASE("tensor needs matching conjugation flags") {
  const auto k2 = AntilinearOp::complex_conjugation(2);
  const auto t = antilinear::tensor(k2, AntilinearOp{fock::parity(3), true});
  CHECK(t.dimension() == 6);
  CHECK(t.conjugates);
  CHECK_THROWS_AS(antilinear::tensor(k2, AntilinearOp{linalg::identity(2), false}), InvalidOperatorError);
}

TEST_CASE("PT operator per realization commutes with the cubic Hamiltonian") {
  for (const auto r : {fock::Realization::PositionReal, fock::Realization::PositionImaginary}) {
    const CMatrix h = models::cubic_hamiltonian(20, r);
    CHECK(antilinear::commutes_with(antilinear::pt_operator(r, 20), h).residual < 1e-13);
  }
  // The wrong parity choice for the real realization breaks the symmetry.
  const CMatrix h = models::cubic_hamiltonian(20, fock::Realization::PositionReal);
  const auto wrong = antilinear::pt_operator(fock::Realization::PositionReal, 20, antilinear::CoordinateParity::Even);
  CHECK(antilinear::commutes_with(wrong, h).residual > 0.1);
}

TEST_CASE("symmetry search recovers a hidden conjugation symmetry") {
  // H = S R S^-1 with R real and S complex: M = S conj(S)^-1 solves M conj(H) = H M.
  std::mt19937_64 rng(22);
  antilinear::SymmetrySearchOptions options;
  options.prefer_identity = false;
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix r = testing::random_real(5, rng);
    const CMatrix s = testing::random_complex(5, rng) + 3.0 * linalg::identity(5);
    const CMatrix h = s * r * s.inverse();
    const auto a = antilinear::find_antilinear_symmetry(h, 1e-8, options);
    CHECK(antilinear::commutes_with(a, h).residual < 1e-8);
    CHECK(a.linear.norm() == doctest::Approx(std::sqrt(5.0)));
  }
}

TEST_CASE("symmetry search prefers K for real matrices") {
  std::mt19937_64 rng(23);
  const CMatrix h = testing::random_real(6, rng);
  const auto a = antilinear::find_antilinear_symmetry(h, 1e-10);
  CHECK(a.linear == linalg::identity(6));
}

TEST_CASE("conjugation-asymmetric spectrum has no symmetry") {
  CMatrix h(2, 2);
  h << 1.0, 1.0, 0.0, Complex(1.0, 1.0);
  CHECK_THROWS_AS(antilinear::find_antilinear_symmetry(h, 1e-8), NoSymmetryError);
  CHECK_THROWS_AS(antilinear::find_antilinear_symmetry(CMatrix::Zero(2, 3), 1e-8), ShapeError);
}

TEST_CASE("reality test") {
  CMatrix h = linalg::identity(2);
  CHECK(antilinear::is_real(h, 1e-12).real);
  h(0, 1) = Complex(0.0, 1e-6);
  const auto r = antilinear::is_real(h, 1e-8);
  CHECK_FALSE(r.real);
  CHECK(r.max_imag == 1e-6);
}

TEST_CASE("C operator in the unbroken and broken dimer") {
  const auto pt = models::dimer_pt_operator();
  for (const double g : {0.1, 0.5, 0.9}) {
    const CMatrix h = models::dimer_hamiltonian(g, 1.0);
    const auto c = antilinear::build_c_operator(spectral::eigendecompose(h), pt, 1e-10);
    CHECK(c.unbroken);
    CHECK((c.matrix * c.matrix - linalg::identity(2)).norm() < 1e-10);
    CHECK(linalg::commutator(c.matrix, h).norm() < 1e-10);
    CHECK(antilinear::pt_commutator_norm(c.matrix, pt) < 1e-10);
    // The PT norms of the two levels carry opposite signs.
    CHECK(c.signs[0] * c.signs[1] == -1);
  }
  const CMatrix broken = models::dimer_hamiltonian(2.0, 1.0);
  const auto c = antilinear::build_c_operator(spectral::eigendecompose(broken), pt, 1e-10);
  CHECK_FALSE(c.unbroken);
  CHECK((c.matrix * c.matrix - linalg::identity(2)).norm() < 1e-10);
  CHECK(linalg::commutator(c.matrix, broken).norm() < 1e-10);
  CHECK(antilinear::pt_commutator_norm(c.matrix, pt) > 0.1);
}

TEST_CASE("C operator needs a diagonalizable system") {
  const CMatrix ep = models::dimer_hamiltonian(1.0, 1.0);
  CHECK_THROWS_AS(antilinear::build_c_operator(spectral::eigendecompose(ep), models::dimer_pt_operator(), 1e-10),
                  UnsupportedError);
}
