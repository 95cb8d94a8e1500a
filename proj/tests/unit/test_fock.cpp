#include <random>

#include "doctest.h"
#include "nhspec/errors.hpp"
#include "nhspec/fock.hpp"
#include "nhspec/linalg.hpp"

using namespace nhspec;
using fock::Realization;

namespace {

constexpr Realization kAll[] = {Realization::PositionReal, Realization::PositionImaginary,
                                Realization::AntiHermitian};

}  // namespace

TEST_CASE("ladder operators have sqrt(n+1) on the superdiagonal") {
  const auto l = fock::ladder(5);
  for (int k = 0; k < 4; ++k) CHECK(l.lowering(k, k + 1) == Complex(std::sqrt(k + 1.0)));
  CHECK((l.raising - l.lowering.adjoint()).norm() == 0.0);

  // [a, a†] = I except the truncation corner, which carries -(N-1).
  const CMatrix c = linalg::commutator(l.lowering, l.raising);
  CHECK((fock::interior_block(c) - linalg::identity(4)).norm() < 1e-14);
  CHECK(c(4, 4).real() == doctest::Approx(-4.0));
}

TEST_CASE("canonical commutator holds away from the corner for every realization and scale") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dim(2, 40);
  std::uniform_real_distribution<double> scale(0.2, 5.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = dim(rng);
    const double ell = scale(rng);
    for (const auto r : kAll) {
      const auto xp = fock::position_momentum(n, r, ell);
      const CMatrix c = fock::interior_block(linalg::commutator(xp.position, xp.momentum));
      CHECK((c - kI * linalg::identity(n - 1)).norm() < 1e-12 * n);
    }
  }
}

TEST_CASE("realizations have the advertised symmetry") {
  const int n = 12;
  const auto real = fock::position_momentum(n, Realization::PositionReal);
  CHECK(linalg::max_abs_imag(real.position) == 0.0);
  CHECK((real.position - real.position.transpose()).norm() == 0.0);
  CHECK((real.momentum - real.momentum.adjoint()).norm() < 1e-15);

  const auto imag = fock::position_momentum(n, Realization::PositionImaginary);
  CHECK(imag.position.real().norm() == 0.0);
  CHECK((imag.position + imag.position.transpose()).norm() == 0.0);
  CHECK(linalg::max_abs_imag(imag.momentum) == 0.0);

  const auto anti = fock::position_momentum(n, Realization::AntiHermitian);
  CHECK((anti.position + anti.position.adjoint()).norm() < 1e-15);
  CHECK((anti.momentum + anti.momentum.adjoint()).norm() < 1e-15);
}

TEST_CASE("length scale stretches position and shrinks momentum") {
  const auto unit = fock::position_momentum(8, Realization::PositionReal);
  const auto wide = fock::position_momentum(8, Realization::PositionReal, 3.0);
  CHECK((wide.position - 3.0 * unit.position).norm() < 1e-14);
  CHECK((3.0 * wide.momentum - unit.momentum).norm() < 1e-14);
}

TEST_CASE("parity flips the position of the real realization") {
  const CMatrix p = fock::parity(9);
  CHECK((p * p - linalg::identity(9)).norm() == 0.0);
  const auto xp = fock::position_momentum(9, Realization::PositionReal);
  CHECK((p * xp.position * p + xp.position).norm() == 0.0);
  CHECK((p * xp.momentum * p + xp.momentum).norm() == 0.0);
}

TEST_CASE("embed and tensor order modes leftmost slowest") {
  const CMatrix a = fock::ladder(2).lowering;
  const CMatrix b = fock::ladder(3).raising;
  const auto left = fock::embed(a, 0, {2, 3}, {"x", "z"});
  CHECK((left.matrix - linalg::kron(a, linalg::identity(3))).norm() == 0.0);
  const auto right = fock::embed(b, 1, {2, 3});
  CHECK((right.matrix - linalg::kron(linalg::identity(2), b)).norm() == 0.0);

  const auto both = fock::tensor({a, b}, {"x", "z"});
  CHECK((both.matrix - (left * right).matrix).norm() == 0.0);
  CHECK(both.labels == std::vector<std::string>{"x", "z"});
  CHECK(both.dimension() == 6);

  const auto sum = left + right;
  CHECK((sum.matrix - left.matrix - right.matrix).norm() == 0.0);
  CHECK(((2.0 * kI) * left).matrix.isApprox(2.0 * kI * left.matrix));
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(fock::ladder(1), InvalidCutoffError);
  CHECK_THROWS_AS(fock::position_momentum(1, Realization::PositionReal), InvalidCutoffError);
  CHECK_THROWS_AS(fock::position_momentum(4, Realization::PositionReal, 0.0), ParameterError);
  CHECK_THROWS_AS(fock::parity(0), InvalidCutoffError);
  CHECK_THROWS_AS(fock::embed(linalg::identity(2), 2, {2, 3}), IndexError);
  CHECK_THROWS_AS(fock::embed(linalg::identity(2), 1, {2, 3}), ShapeError);
  CHECK_THROWS_AS(fock::tensor({}), ShapeError);
  CHECK_THROWS_AS(fock::realization_from_string("imaginary"), ParameterError);
  const auto x = fock::embed(linalg::identity(2), 0, {2, 3});
  const auto y = fock::embed(linalg::identity(3), 0, {3, 2});
  CHECK_THROWS_AS(x + y, ShapeError);
}

TEST_CASE("realization names round-trip") {
  for (const auto r : kAll) CHECK(fock::realization_from_string(fock::to_string(r)) == r);
}

TEST_CASE("linalg helpers") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  CMatrix m(3, 4);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(g(rng), g(rng));
  CHECK(linalg::unvec(linalg::vec(m), 3, 4) == m);

  CMatrix rank2 = CMatrix::Zero(3, 3);
  rank2(0, 0) = 1.0;
  rank2(1, 1) = 2.0;
  CHECK(linalg::numerical_rank(rank2, 1e-12) == 2);
  const CMatrix ns = linalg::nullspace(rank2, 1e-12);
  REQUIRE(ns.cols() == 1);
  CHECK((rank2 * ns).norm() < 1e-14);
  CHECK(std::abs(ns(2, 0)) == doctest::Approx(1.0));
  CHECK(linalg::condition_number(linalg::identity(5)) == doctest::Approx(1.0));
  CHECK(linalg::kron(linalg::identity(2), linalg::identity(3)) == linalg::identity(6));
}
