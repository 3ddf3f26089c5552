#include <catch2/catch.hpp>
#include <cmath>

#include "qcorr/eig.hpp"
#include "qcorr/states.hpp"
#include "test_util.hpp"

using namespace qcorr;
using testutil::max_abs_diff;
using testutil::random_hermitian;

namespace {

double reconstruction_residual(const ComplexMatrix& m, const EigResult& eig) {
  const std::size_t n = m.rows();
  ComplexMatrix lambda(n, n);
  for (std::size_t i = 0; i < n; ++i) lambda(i, i) = eig.values[i];
  return max_abs_diff(eig.vectors * lambda * eig.vectors.adjoint(), m);
}

double orthonormality_residual(const EigResult& eig) {
  return max_abs_diff(eig.vectors.adjoint() * eig.vectors,
                      ComplexMatrix::identity(eig.vectors.rows()));
}

}  // namespace

TEST_CASE("diagonal input returns its diagonal", "[eig]") {
  const auto eig = hermitian_eig(ComplexMatrix::diagonal({0.5, 0.5}));
  REQUIRE(eig.values == std::vector<double>{0.5, 0.5});
  REQUIRE(orthonormality_residual(eig) == 0.0);
}

TEST_CASE("eigenvalues come back sorted descending", "[eig]") {
  const auto eig = hermitian_eig(ComplexMatrix::diagonal({0.1, 0.7, 0.2}));
  REQUIRE(eig.values[0] == Approx(0.7).margin(1e-14));
  REQUIRE(eig.values[1] == Approx(0.2).margin(1e-14));
  REQUIRE(eig.values[2] == Approx(0.1).margin(1e-14));
}

TEST_CASE("pseudo-pure Bell state spectrum", "[eig]") {
  // p + (1-p)/4 and (1-p)/4 three-fold at p = 0.5
  const auto rho = pseudo_pure(bell_vector(1), 0.5, {2, 2});
  const auto eig = hermitian_eig(rho.matrix());
  REQUIRE(eig.values[0] == Approx(0.625).margin(1e-12));
  for (int k = 1; k < 4; ++k) REQUIRE(eig.values[k] == Approx(0.125).margin(1e-12));
}

TEST_CASE("bound entangled family spectrum at b = 0.5", "[eig]") {
  const double b = 0.5;
  const auto rho = horodecki_2x4(b);
  const auto eig = hermitian_eig(rho.matrix());
  const double root = std::sqrt(2.0 * b * b - 2.0 * b + 1.0);
  std::vector<double> expected = {(2.0 * b + 1.0 + root) / (14.0 * b + 2.0),
                                  2.0 * b / (7.0 * b + 1.0),
                                  2.0 * b / (7.0 * b + 1.0),
                                  (2.0 * b + 1.0 - root) / (14.0 * b + 2.0),
                                  b / (7.0 * b + 1.0),
                                  0.0,
                                  0.0,
                                  0.0};
  std::sort(expected.begin(), expected.end(), std::greater<double>());
  for (std::size_t k = 0; k < 8; ++k) REQUIRE(eig.values[k] == Approx(expected[k]).margin(1e-12));
}

TEST_CASE("random Hermitian matrices reconstruct", "[eig]") {
  CounterRng rng(42, 0);
  for (int iter = 0; iter < 1000; ++iter) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 7);  // 2..8
    const auto m = random_hermitian(n, rng);
    const auto eig = hermitian_eig(m);
    REQUIRE(reconstruction_residual(m, eig) < 1e-8);
    REQUIRE(orthonormality_residual(eig) < 1e-9);
    for (std::size_t k = 1; k < n; ++k) REQUIRE(eig.values[k - 1] >= eig.values[k]);
  }
}

TEST_CASE("non-Hermitian input is rejected", "[eig]") {
  ComplexMatrix m(2, 2);
  m(0, 1) = 1.0;  // m(1,0) stays 0
  REQUIRE_THROWS_AS(hermitian_eig(m), ValidationError);
  REQUIRE_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), ValidationError);
}
