#include <catch2/catch.hpp>
#include <cmath>

#include "qcorr/entropy.hpp"
#include "qcorr/local_basis.hpp"
#include "qcorr/states.hpp"
#include "test_util.hpp"

using namespace qcorr;
using testutil::random_density;

TEST_CASE("shannon entropy pins", "[entropy]") {
  REQUIRE(shannon(ProbabilityVector({1.0, 0.0, 0.0, 0.0})) == 0.0);
  REQUIRE(shannon(ProbabilityVector({0.25, 0.25, 0.25, 0.25})) == Approx(2.0).margin(1e-14));
  // computational-basis diagonal of the Bell mixture at p = 0.3
  const double p = 0.3;
  const double h = shannon(ProbabilityVector({p / 2, (1 - p) / 2, (1 - p) / 2, p / 2}));
  REQUIRE(h == Approx(1.0 + binary_entropy(p)).margin(1e-12));
}

TEST_CASE("probability vector validation", "[entropy]") {
  REQUIRE_THROWS_AS(ProbabilityVector({0.5, 0.4}), ValidationError);
  REQUIRE_THROWS_AS(ProbabilityVector({1.2, -0.2}), ValidationError);
  REQUIRE(ProbabilityVector({1.0 + 5e-10, -5e-10}).values()[1] == 0.0);
}

TEST_CASE("binary entropy pins and domain", "[entropy]") {
  REQUIRE(binary_entropy(0.5) == Approx(1.0).margin(1e-15));
  REQUIRE(binary_entropy(0.0) == 0.0);
  REQUIRE(binary_entropy(1.0) == 0.0);
  REQUIRE(binary_entropy(0.75) == Approx(0.8112781244591328).margin(1e-12));
  REQUIRE(binary_entropy(0.25) == binary_entropy(0.75));  // symmetry
  REQUIRE_THROWS_AS(binary_entropy(-0.01), ValidationError);
  REQUIRE_THROWS_AS(binary_entropy(1.01), ValidationError);
}

TEST_CASE("shannon is permutation invariant and concave", "[entropy]") {
  CounterRng rng(21, 0);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<double> p(4), q(4);
    double sp = 0, sq = 0;
    for (int i = 0; i < 4; ++i) {
      p[i] = rng.uniform() + 1e-3;
      q[i] = rng.uniform() + 1e-3;
      sp += p[i];
      sq += q[i];
    }
    for (int i = 0; i < 4; ++i) {
      p[i] /= sp;
      q[i] /= sq;
    }
    std::vector<double> perm = {p[2], p[0], p[3], p[1]};
    REQUIRE(shannon(ProbabilityVector(perm)) == Approx(shannon(ProbabilityVector(p))).margin(1e-13));

    std::vector<double> mid(4);
    for (int i = 0; i < 4; ++i) mid[i] = 0.5 * (p[i] + q[i]);
    const double lhs = shannon(ProbabilityVector(mid));
    const double rhs = 0.5 * shannon(ProbabilityVector(p)) + 0.5 * shannon(ProbabilityVector(q));
    REQUIRE(lhs >= rhs - 1e-12);
  }
}

TEST_CASE("von Neumann entropy pins", "[entropy]") {
  REQUIRE(vn_entropy(pseudo_pure(bell_vector(1), 1.0, {2, 2})) == Approx(0.0).margin(1e-12));
  const DensityMatrix mixed(cdouble{0.125, 0.0} * ComplexMatrix::identity(8), {2, 2, 2});
  REQUIRE(vn_entropy(mixed) == Approx(3.0).margin(1e-12));
  for (double p : {0.0, 0.2, 0.5, 0.9}) {
    REQUIRE(vn_entropy(bell_mixture(p)) == Approx(binary_entropy(p)).margin(1e-12));
  }
}

TEST_CASE("von Neumann entropy is unitarily invariant", "[entropy]") {
  CounterRng rng(33, 0);
  for (int iter = 0; iter < 20; ++iter) {
    const auto rho = random_density({2, 2}, rng);
    const auto u = detail::random_unitary(4, rng);
    const DensityMatrix conj(u * rho.matrix() * u.adjoint(), {2, 2});
    REQUIRE(vn_entropy(conj) == Approx(vn_entropy(rho)).margin(1e-9));
  }
}

TEST_CASE("projective dephasing never decreases entropy", "[entropy]") {
  CounterRng rng(34, 0);
  for (int iter = 0; iter < 20; ++iter) {
    const auto rho = random_density({2, 2}, rng);
    const auto basis = random_local_basis(rho.dims(), rng);
    REQUIRE(shannon(projected_distribution(rho, basis)) >= vn_entropy(rho) - 1e-9);
  }
}
