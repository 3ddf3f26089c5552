#include <catch2/catch.hpp>
#include <cmath>

#include "qcorr/entropy.hpp"
#include "qcorr/states.hpp"
#include "test_util.hpp"

using namespace qcorr;
using testutil::max_abs_diff;

TEST_CASE("pseudo-pure limits and spectrum", "[states]") {
  SECTION("p = 0 is maximally mixed") {
    const auto rho = pseudo_pure(bell_vector(1), 0.0, {2, 2});
    REQUIRE(max_abs_diff(rho.matrix(), cdouble{0.25, 0.0} * ComplexMatrix::identity(4)) == 0.0);
  }
  SECTION("p = 1 is a pure projector") {
    const auto rho = pseudo_pure(bell_vector(1), 1.0, {2, 2});
    REQUIRE(vn_entropy(rho) == Approx(0.0).margin(1e-12));
  }
  SECTION("Bell spectrum for generic p") {
    for (double p : {0.1, 0.37, 0.8}) {
      const auto s = pseudo_pure(bell_vector(1), p, {2, 2}).spectrum();
      REQUIRE(s[0] == Approx((1 + 3 * p) / 4).margin(1e-12));
      for (int k = 1; k < 4; ++k) REQUIRE(s[k] == Approx((1 - p) / 4).margin(1e-12));
    }
  }
  SECTION("rejects bad input") {
    REQUIRE_THROWS_AS(pseudo_pure(bell_vector(1), 1.5, {2, 2}), ValidationError);
    REQUIRE_THROWS_AS(pseudo_pure({1.0, 1.0, 0.0, 0.0}, 0.5, {2, 2}), ValidationError);
    REQUIRE_THROWS_AS(pseudo_pure(bell_vector(1), 0.5, {2, 3}), ValidationError);
  }
}

TEST_CASE("bell mixture spectrum", "[states]") {
  const auto s = bell_mixture(0.3).spectrum();
  REQUIRE(s[0] == Approx(0.7).margin(1e-12));
  REQUIRE(s[1] == Approx(0.3).margin(1e-12));
  REQUIRE(s[2] == Approx(0.0).margin(1e-12));
  REQUIRE(s[3] == Approx(0.0).margin(1e-12));
  REQUIRE(vn_entropy(bell_mixture(1.0)) == Approx(0.0).margin(1e-12));
  REQUIRE_THROWS_AS(bell_mixture(-0.1), ValidationError);
}

TEST_CASE("sigma family matrix and spectrum", "[states]") {
  SECTION("p = 0 is the classically correlated diagonal") {
    const auto rho = sigma_state(0.0);
    REQUIRE(max_abs_diff(rho.matrix(), ComplexMatrix::diagonal({0.5, 0.0, 0.0, 0.5})) == 0.0);
  }
  SECTION("spectrum {2p, 1/2-p x2, 0}") {
    for (double p : {0.1, 0.25, 0.45}) {
      const auto s = sigma_state(p).spectrum();
      std::vector<double> expected = {2 * p, 0.5 - p, 0.5 - p, 0.0};
      std::sort(expected.begin(), expected.end(), std::greater<double>());
      for (int k = 0; k < 4; ++k) REQUIRE(s[k] == Approx(expected[k]).margin(1e-12));
    }
  }
  REQUIRE_THROWS_AS(sigma_state(0.6), ValidationError);
}

TEST_CASE("bound entangled family basics", "[states]") {
  SECTION("trace is one across the range") {
    for (int i = 0; i <= 20; ++i) {
      const double b = i / 20.0;
      REQUIRE(std::abs(horodecki_2x4(b).matrix().trace() - cdouble{1.0, 0.0}) < 1e-12);
    }
  }
  SECTION("b = 0 gives the rank-one corner block") {
    const auto s = horodecki_2x4(0.0).spectrum();
    REQUIRE(s[0] == Approx(1.0).margin(1e-12));
    for (int k = 1; k < 8; ++k) REQUIRE(s[k] == Approx(0.0).margin(1e-12));
  }
  SECTION("zero eigenvalue with multiplicity three") {
    for (double b : {0.2, 0.5, 0.9}) {
      const auto s = horodecki_2x4(b).spectrum();
      REQUIRE(s[5] == Approx(0.0).margin(1e-10));
      REQUIRE(s[6] == Approx(0.0).margin(1e-10));
      REQUIRE(s[7] == Approx(0.0).margin(1e-10));
    }
  }
  SECTION("tripartite reading shares the matrix") {
    const auto a = horodecki_2x4(0.4);
    const auto b = horodecki_2x4(0.4, {2, 2, 2});
    REQUIRE(max_abs_diff(a.matrix(), b.matrix()) == 0.0);
    REQUIRE(b.dims() == std::vector<std::size_t>{2, 2, 2});
  }
  REQUIRE_THROWS_AS(horodecki_2x4(1.2), ValidationError);
  REQUIRE_THROWS_AS(horodecki_2x4(0.5, {4, 2}), ValidationError);
}

TEST_CASE("pseudo-GHZ spectra and reductions", "[states]") {
  for (double p : {0.0, 0.4, 1.0}) {
    const auto rho = pseudo_ghz(p, 3);
    const auto s = rho.spectrum();
    REQUIRE(s[0] == Approx((1 + 7 * p) / 8).margin(1e-12));
    for (int k = 1; k < 8; ++k) REQUIRE(s[k] == Approx((1 - p) / 8).margin(1e-12));
    for (std::size_t k = 0; k < 3; ++k) {
      const auto r = partial_trace(rho, {k}).spectrum();
      REQUIRE(r[0] == Approx(0.5).margin(1e-12));
      REQUIRE(r[1] == Approx(0.5).margin(1e-12));
    }
  }
  REQUIRE(pseudo_ghz(0.0, 3).spectrum()[0] == Approx(0.125).margin(1e-12));
  REQUIRE_THROWS_AS(pseudo_ghz(0.5, 2), ValidationError);
}

TEST_CASE("classical state constructions", "[states]") {
  SECTION("uniform coefficients give the complete mixture") {
    CounterRng rng(3, 1);
    const auto bases = random_local_basis({2, 2}, rng);
    const auto rho = classical_state({0.25, 0.25, 0.25, 0.25}, bases);
    REQUIRE(max_abs_diff(rho.matrix(), cdouble{0.25, 0.0} * ComplexMatrix::identity(4)) < 1e-12);
  }
  SECTION("identity bases give a diagonal matrix") {
    const auto rho = classical_state({0.4, 0.3, 0.2, 0.1}, LocalBasis::identity({2, 2}));
    REQUIRE(max_abs_diff(rho.matrix(), ComplexMatrix::diagonal({0.4, 0.3, 0.2, 0.1})) < 1e-15);
  }
  SECTION("|+->-basis form reproduces the balanced Bell mixture") {
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix h(2, 2);
    h(0, 0) = s;
    h(1, 0) = s;
    h(0, 1) = s;
    h(1, 1) = -s;
    const LocalBasis bases({h, h});
    // weight 1/2 on |++>, 1/2 on |-->
    const auto rho = classical_state({0.5, 0.0, 0.0, 0.5}, bases);
    REQUIRE(max_abs_diff(rho.matrix(), bell_mixture(0.5).matrix()) < 1e-12);
  }
  SECTION("off-diagonals vanish after undoing the constructing bases") {
    CounterRng rng(8, 2);
    const auto bases = random_local_basis({2, 2, 2}, rng);
    std::vector<double> coeffs = {0.2, 0.05, 0.1, 0.15, 0.125, 0.175, 0.09, 0.11};
    const auto rho = classical_state(coeffs, bases);
    const auto u = bases.product_unitary();
    const auto back = u.adjoint() * rho.matrix() * u;
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        if (i != j) REQUIRE(std::abs(back(i, j)) < 1e-12);
  }
  SECTION("weight validation") {
    REQUIRE_THROWS_AS(classical_state({0.5, 0.5, 0.5, -0.5}, LocalBasis::identity({2, 2})),
                      ValidationError);
    REQUIRE_THROWS_AS(classical_state({0.5, 0.1}, LocalBasis::identity({2, 2})), ValidationError);
  }
}

TEST_CASE("random classical states are valid and non-degenerate", "[states]") {
  for (std::uint64_t seed : {0, 1, 2}) {
    const auto rho = random_classical_state({2, 2, 2}, seed);
    const auto s = rho.spectrum();
    for (std::size_t k = 1; k < s.size(); ++k) REQUIRE(s[k - 1] - s[k] > 1e-4);
  }
}
