#include <algorithm>
#include <random>

#include "doctest.h"
#include "nhspec/antilinear.hpp"
#include "nhspec/linalg.hpp"
#include "nhspec/models.hpp"
#include "nhspec/spectral.hpp"
#include "oracles.hpp"

using namespace nhspec;
using fock::Realization;

namespace {

std::vector<Complex> sorted_spectrum(const CMatrix& h) {
  auto ev = spectral::eigenvalues(h);
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return ev;
}

}  // namespace

TEST_CASE("cubic Hamiltonian in both realizations") {
  const CMatrix b = models::cubic_hamiltonian(16, Realization::PositionImaginary);
  CHECK(linalg::max_abs_imag(b) == 0.0);
  const CMatrix x = models::cubic_hamiltonian(16, Realization::PositionReal);
  CHECK((x - x.adjoint()).norm() > 1.0);
  // Both are truncations of the same operator: spectra agree.
  CHECK(testing::matched_distance(sorted_spectrum(b), sorted_spectrum(x)) < 1e-8);
  CHECK_THROWS_AS(models::cubic_hamiltonian(3, Realization::PositionReal), InvalidCutoffError);
  CHECK(antilinear::commutes_with(models::cubic_pt_operator(16, Realization::PositionReal), x).residual < 1e-13);
}

TEST_CASE("cubic ground state converges with the cutoff") {
  double previous = 1.0;
  const auto oracle = models::cubic_oracle(2000, 8.0);
  for (const int n : {16, 32, 64}) {
    const double err = std::abs(sorted_spectrum(models::cubic_hamiltonian(n, Realization::PositionImaginary))[0] -
                                oracle.eigenvalues[0]);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-4);
}

TEST_CASE("finite-difference oracle reproduces the harmonic oscillator") {
  // -d²/dx² + x² has levels 2k + 1.
  models::OracleOptions options;
  options.eigenvalue_count = 4;
  double previous = 1.0;
  for (const int points : {500, 1000, 2000}) {
    const auto r = models::finite_difference_spectrum(points, 8.0, 1.0, [](double x) { return Complex(x * x); },
                                                      options);
    REQUIRE(r.eigenvalues.size() == 4);
    double err = 0.0;
    for (int k = 0; k < 4; ++k) err = std::max(err, std::abs(r.eigenvalues[static_cast<std::size_t>(k)] - (2.0 * k + 1.0)));
    CHECK(err < previous);
    // Second-order scheme: doubling the grid cuts the error by about 4.
    if (points > 500) CHECK(err < 0.3 * previous);
    previous = err;
    CHECK(r.max_imag < 1e-10);
    CHECK(r.boundary_shift < 1e-6);
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("cubic oracle values and guards") {
  const auto r = models::cubic_oracle(2000, 8.0);
  REQUIRE(r.eigenvalues.size() == 2);
  CHECK(r.eigenvalues[0].real() == doctest::Approx(1.1562).epsilon(1e-4));
  CHECK(r.eigenvalues[1].real() == doctest::Approx(4.1092).epsilon(1e-4));
  CHECK(r.max_imag < 1e-8);
  CHECK_THROWS_AS(models::cubic_oracle(499, 8.0), ResolutionError);
  // A box too small to contain the ground state fails the doubling test.
  CHECK_THROWS_AS(models::cubic_oracle(1000, 1.0), ResolutionError);
}

TEST_CASE("PU parameter validation") {
  CHECK_THROWS_AS(models::PUParams::from_frequencies(0.0, 1.0, 2.0), ParameterError);
  CHECK_THROWS_AS(models::PUParams::from_frequencies(1.0, 0.0, 2.0), ParameterError);
  CHECK_THROWS_AS(models::PUParams::from_frequencies(1.0, Complex(1, 1), 2.0), ParameterError);
  const auto p = models::PUParams::from_alpha_beta(2.0, 1.0, 0.5);
  CHECK(p.omega1 == Complex(1.0, 0.5));
  CHECK(p.omega2 == Complex(1.0, -0.5));
  CHECK(p.frequency_sum_sq() == 1.5);
  CHECK(p.frequency_product_sq() == 1.5625);
}

TEST_CASE("PU regime trichotomy") {
  CHECK(models::pu_regime(models::PUParams::from_frequencies(1.0, 1.0, 2.0)) == models::PURegime::RealFrequencies);
  CHECK(models::pu_regime(models::PUParams::from_alpha_beta(1.0, 1.0, 0.3)) == models::PURegime::ConjugatePair);
  CHECK(models::pu_regime(models::PUParams::from_frequencies(1.0, 1.5, 1.5)) == models::PURegime::EqualFrequencies);
  CHECK(models::pu_regime(models::PUParams::from_alpha_beta(1.0, 1.0, 0.0)) == models::PURegime::EqualFrequencies);
}

TEST_CASE("PU dynamical matrix has characteristic polynomial l^4 + s l^2 + p") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  std::bernoulli_distribution complex_pair(0.5);
  for (int trial = 0; trial < 20; ++trial) {
    const double gamma = u(rng);
    const auto p = complex_pair(rng) ? models::PUParams::from_alpha_beta(gamma, u(rng), u(rng))
                                     : models::PUParams::from_frequencies(gamma, u(rng), u(rng));
    const auto model = models::pu_dynamical_matrix(p);
    CHECK((model.dynamical_matrix - model.symplectic_form * model.coefficient_matrix).norm() == 0.0);
    const auto cp = testing::characteristic_polynomial(model.dynamical_matrix.cast<Complex>());
    REQUIRE(cp.size() == 5);
    const double s = p.frequency_sum_sq(), q = p.frequency_product_sq();
    const double scale = std::max(1.0, std::abs(q));
    CHECK(std::abs(std::complex<double>(cp[0]) - q) < 1e-10 * scale);
    CHECK(std::abs(std::complex<double>(cp[1])) < 1e-10 * scale);
    CHECK(std::abs(std::complex<double>(cp[2]) - s) < 1e-10 * scale);
    CHECK(std::abs(std::complex<double>(cp[3])) < 1e-10 * scale);
    CHECK(std::abs(std::complex<double>(cp[4]) - 1.0) < 1e-12);

    auto freqs = models::normal_mode_frequencies(model);
    REQUIRE(freqs.size() == 2);
    CHECK(testing::matched_distance(freqs, {p.omega1, p.omega2}) < 1e-7);
  }
}

TEST_CASE("PU level formula") {
  const auto p = models::PUParams::from_frequencies(1.0, 1.0, 2.0);
  const auto levels = models::pu_spectrum_formula(p, 2, 1);
  REQUIRE(levels.levels.size() == 6);
  CHECK(levels.levels[0].energy == Complex(1.5));
  CHECK(levels.levels[1].n1 == 0);
  CHECK(levels.levels[1].n2 == 1);
  CHECK(levels.levels[1].energy == Complex(3.5));
  CHECK_FALSE(levels.degenerate_warning);
  CHECK(models::pu_spectrum_formula(models::PUParams::from_frequencies(1.0, 1.0, 1.0), 1, 1).degenerate_warning);
}

TEST_CASE("PU Fock spectrum converges to the level formula") {
  const auto p = models::PUParams::from_frequencies(1.0, 1.0, 2.0);
  double previous = 1.0;
  for (const int n : {10, 16, 24}) {
    const auto h = models::pu_hamiltonian_fock(n, n, p);
    CHECK(h.mode_dims == std::vector<int>{n, n});
    CHECK(h.labels == std::vector<std::string>{"x", "z"});
    const auto ev = sorted_spectrum(h.matrix);
    const double err = testing::matched_distance({ev[0], ev[1], ev[2]}, {1.5, 2.5, 3.5});
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-6);
  CHECK(antilinear::commutes_with(models::pu_pt_operator(16, 16), models::pu_hamiltonian_fock(16, 16, p).matrix)
            .residual < 1e-12);
  CHECK_THROWS_AS(models::pu_hamiltonian_fock(7, 10, p), InvalidCutoffError);
}

TEST_CASE("Hermitian z realization is unbounded below") {
  // With z Hermitian the -z² term makes the truncated spectrum run off to
  // -infinity as the cutoff grows.
  const auto p = models::PUParams::from_frequencies(1.0, 1.0, 2.0);
  models::PURealizations hermitian;
  hermitian.z = Realization::PositionImaginary;
  double previous = 0.0;
  for (const int n : {12, 20, 28}) {
    const double lowest = sorted_spectrum(models::pu_hamiltonian_fock(n, n, p, hermitian).matrix)[0].real();
    CHECK(lowest < previous);
    previous = lowest;
  }
  CHECK(previous < -10.0);
}

TEST_CASE("PU length scales") {
  const auto p = models::PUParams::from_frequencies(1.0, 1.0, 2.0);
  const auto ell = models::pu_length_scales(p);
  CHECK(ell[0] == doctest::Approx(1.0 / std::sqrt(std::sqrt(5.0))));
  CHECK(ell[1] == doctest::Approx(1.0 / std::sqrt(2.0 * std::sqrt(5.0))));
}

TEST_CASE("dimer and harmonic models") {
  const CMatrix h = models::dimer_hamiltonian(0.6, 1.0);
  CHECK(testing::matched_distance(spectral::eigenvalues(h), {0.8, -0.8}) < 1e-14);
  const CMatrix b = models::dimer_hamiltonian(1.0, 0.6);
  CHECK(testing::matched_distance(spectral::eigenvalues(b), {Complex(0, 0.8), Complex(0, -0.8)}) < 1e-14);
  CHECK(antilinear::commutes_with(models::dimer_pt_operator(), h).residual < 1e-15);
  CHECK_THROWS_AS(models::dimer_hamiltonian(-0.1, 1.0), ParameterError);
  CHECK_THROWS_AS(models::dimer_hamiltonian(0.1, -1.0), ParameterError);

  const CMatrix osc = models::harmonic_hamiltonian(5);
  for (Eigen::Index k = 0; k < 5; ++k) CHECK(osc(k, k) == Complex(k + 0.5));
  CHECK(linalg::max_abs(osc - CMatrix(osc.diagonal().asDiagonal())) == 0.0);
  CHECK_THROWS_AS(models::harmonic_hamiltonian(1), InvalidCutoffError);
}
