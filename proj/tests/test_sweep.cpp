#include <catch2/catch.hpp>
#include <sstream>

#include "qcorr/entropy.hpp"
#include "qcorr/sweep.hpp"

using namespace qcorr;

TEST_CASE("sweep grid construction", "[sweep]") {
  SweepSpec spec;
  spec.param_start = 0.0;
  spec.param_end = 1.0;
  spec.param_step = 0.25;
  const auto grid = sweep_grid(spec);
  REQUIRE(grid.size() == 5);
  REQUIRE(grid.front() == 0.0);
  REQUIRE(grid.back() == Approx(1.0).margin(1e-12));

  spec.param_step = -0.1;
  REQUIRE_THROWS_AS(sweep_grid(spec), ValidationError);
  spec.param_step = 1e-9;
  REQUIRE_THROWS_AS(sweep_grid(spec), ValidationError);  // over 10^6 points
}

TEST_CASE("Bell mixture sweep tracks 1 - H(p)", "[sweep]") {
  SweepSpec spec;
  spec.state.family = StateFamily::bell_mixture;
  spec.param_start = 0.0;
  spec.param_end = 1.0;
  spec.param_step = 0.25;
  spec.measures = {Measure::D, Measure::G};
  spec.trials = 40'000;
  spec.seed = 0;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    const double analytic = 1.0 - binary_entropy(row.param);
    REQUIRE(row.values[0] >= analytic - 1e-12);
    REQUIRE(row.values[0] <= analytic + 5e-3);
    REQUIRE(row.values[1] == Approx(analytic).margin(1e-9));
    REQUIRE(row.trials_used == 40'000);
  }
}

TEST_CASE("bound entangled sweep has an all-zero negativity column", "[sweep]") {
  SweepSpec spec;
  spec.state.family = StateFamily::horodecki_2x4;
  spec.param_start = 0.0;
  spec.param_end = 1.0;
  spec.param_step = 0.05;
  spec.measures = {Measure::negativity_min, Measure::negativity_max};
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 21);
  for (const auto& row : rows) {
    REQUIRE(row.values[0] <= 1e-9);
    REQUIRE(row.values[1] <= 1e-9);
  }
}

TEST_CASE("pseudo-pure D sweep rises with p", "[sweep]") {
  SweepSpec spec;
  spec.state.family = StateFamily::pseudo_pure;
  spec.param_start = 0.2;
  spec.param_end = 0.8;
  spec.param_step = 0.3;
  spec.measures = {Measure::D};
  spec.trials = 4'000;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 3);
  // monotone up to search noise
  REQUIRE(rows[1].values[0] >= rows[0].values[0] - 1e-2);
  REQUIRE(rows[2].values[0] >= rows[1].values[0] - 1e-2);
  REQUIRE(rows[2].values[0] > rows[0].values[0]);
}

TEST_CASE("bound entangled D stays clearly positive at b = 0.2", "[sweep]") {
  // estimates only ever overshoot the true value, so a small trial budget
  // is enough to witness positivity
  SweepSpec spec;
  spec.state.family = StateFamily::horodecki_2x4;
  spec.param_start = 0.2;
  spec.param_end = 0.2;
  spec.param_step = 1.0;
  spec.measures = {Measure::D};
  spec.trials = 2'000;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 1);
  REQUIRE(rows[0].values[0] > 0.05);
}

TEST_CASE("pseudo-GHZ negativity extremes stay ordered", "[sweep]") {
  SweepSpec spec;
  spec.state.family = StateFamily::pseudo_ghz;
  spec.state.n_qubits = 3;
  spec.param_start = 0.0;
  spec.param_end = 1.0;
  spec.param_step = 0.2;
  spec.measures = {Measure::negativity_min, Measure::negativity_max};
  const auto rows = run_sweep(spec);
  for (const auto& row : rows) REQUIRE(row.values[0] <= row.values[1] + 1e-15);
}

TEST_CASE("CSV output is stable and deterministic", "[sweep]") {
  SweepSpec spec;
  spec.state.family = StateFamily::sigma_p;
  spec.param_start = 0.0;
  spec.param_end = 0.5;
  spec.param_step = 0.125;
  spec.measures = {Measure::G, Measure::negativity_max};
  spec.trials = 100;
  const auto rows = run_sweep(spec);

  std::ostringstream a, b;
  write_csv(a, spec, rows);
  write_csv(b, spec, run_sweep(spec));
  REQUIRE(a.str() == b.str());

  std::istringstream lines(a.str());
  std::string header;
  std::getline(lines, header);
  REQUIRE(header == "param,G,negativity_max,trials,seed");
}

TEST_CASE("measure name parsing", "[sweep]") {
  REQUIRE(parse_measure("D") == Measure::D);
  REQUIRE(parse_measure("negativity_min") == Measure::negativity_min);
  REQUIRE_THROWS_AS(parse_measure("bogus"), ValidationError);
  REQUIRE_THROWS_AS(parse_family("bogus"), ValidationError);
}
