#include <random>

#include "doctest.h"
#include "nhspec/linalg.hpp"
#include "nhspec/spectral.hpp"
#include "oracles.hpp"

using namespace nhspec;

TEST_CASE("biorthogonal decomposition of random matrices") {
  std::mt19937_64 rng(11);
  for (const int n : {2, 8, 30, 80}) {
    const CMatrix h = testing::random_complex(n, rng);
    const auto sys = spectral::eigendecompose(h);
    REQUIRE(sys.diagonalizable());
    CHECK(sys.residual_ok);
    CHECK(sys.biorthogonality_residual() < 1e-9);
    CHECK(sys.right_residual < 1e-10);
    CHECK(sys.left_residual < 1e-10);
    for (std::size_t i = 0; i < sys.size(); ++i) {
      REQUIRE(sys.pairing[i] >= 0);
      CHECK(std::abs(sys.left_labels[static_cast<std::size_t>(sys.pairing[i])] - std::conj(sys.eigenvalues[i])) <
            1e-12 * h.norm());
      // <L|H = E <L|
      const auto l = sys.left.col(sys.pairing[i]);
      CHECK((l.adjoint() * h - sys.eigenvalues[i] * l.adjoint()).norm() < 1e-9 * h.norm() * l.norm());
    }
    const CMatrix g = sys.overlap_matrix();
    CHECK((g - linalg::identity(n)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("spectrum is invariant under similarity") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix h = testing::random_complex(6, rng);
    const CMatrix s = testing::random_complex(6, rng) + 3.0 * linalg::identity(6);
    const CMatrix similar = s * h * s.inverse();
    CHECK(testing::matched_distance(spectral::eigenvalues(h), spectral::eigenvalues(similar)) < 1e-8);
  }
}

TEST_CASE("defective Jordan block is reported") {
  CMatrix jordan = CMatrix::Zero(2, 2);
  jordan << 1.0, 1.0, 0.0, 1.0;
  const auto sys = spectral::eigendecompose(jordan);
  CHECK_FALSE(sys.diagonalizable());
  REQUIRE(sys.defective_clusters.size() == 1);
  CHECK(sys.defective_clusters[0].algebraic_multiplicity == 2);
  CHECK(sys.defective_clusters[0].geometric_multiplicity == 1);

  const auto report = spectral::defect_report(jordan, 1.0, 1e-8);
  CHECK(report.algebraic_multiplicity == 2);
  CHECK(report.geometric_multiplicity == 1);

  const auto cls = spectral::classify_spectrum(sys, 1e-8, 1e-6);
  CHECK(cls.defective_clusters.size() == 1);
  CHECK(cls.count() == 2);
  CHECK_FALSE(cls.all_real());
}

TEST_CASE("degenerate but diagonalizable spectrum is not defective") {
  const CMatrix id = linalg::identity(3);
  const auto report = spectral::defect_report(id, 1.0, 1e-8);
  CHECK(report.algebraic_multiplicity == 3);
  CHECK(report.geometric_multiplicity == 3);
}

TEST_CASE("classification buckets") {
  const std::vector<Complex> values{1.0, Complex(2, 1), Complex(2, -1), Complex(0, 1e-12), Complex(5, 3)};
  const auto cls = spectral::classify_spectrum(values, 1e-8, 1e-6);
  CHECK(cls.real_singles.size() == 2);
  REQUIRE(cls.conjugate_pairs.size() == 1);
  CHECK(cls.conjugate_pairs[0].upper == Complex(2, 1));
  CHECK(cls.conjugate_pairs[0].lower == Complex(2, -1));
  REQUIRE(cls.leftovers.size() == 1);
  CHECK(cls.unpaired_warning);
  CHECK(cls.count() == values.size());

  const std::vector<Complex> closed{Complex(1, 2), Complex(1, -2), 3.0};
  const auto ok = spectral::classify_spectrum(closed, 1e-8, 1e-6);
  CHECK_FALSE(ok.unpaired_warning);
  CHECK_FALSE(ok.all_real());
}

TEST_CASE("classification counts are a partition for random real matrices") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix h = testing::random_real(9, rng);
    const auto cls = spectral::classify_spectrum(spectral::eigenvalues(h), 1e-8, 1e-6);
    CHECK_FALSE(cls.unpaired_warning);
    CHECK(cls.real_singles.size() + 2 * cls.conjugate_pairs.size() == 9);
  }
}

TEST_CASE("single-linkage clustering and ordering") {
  const std::vector<Complex> values{3.0, 1.0, 1.0 + 4e-7, 1.0 + 8e-7, Complex(3, 1)};
  const auto groups = spectral::cluster_values(values, 5e-7);
  REQUIRE(groups.size() == 3);
  CHECK(groups[0] == std::vector<std::size_t>{1, 2, 3});
  CHECK(groups[1] == std::vector<std::size_t>{0});
  CHECK(groups[2] == std::vector<std::size_t>{4});
  CHECK(spectral::sorted_order(values) == std::vector<std::size_t>{1, 2, 3, 0, 4});
}

TEST_CASE("non-square input is rejected") {
  CHECK_THROWS_AS(spectral::eigendecompose(CMatrix::Zero(2, 3)), ShapeError);
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS(spectral::eigenvalues(bad));
}
