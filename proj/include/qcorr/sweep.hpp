#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "qcorr/errors.hpp"
#include "qcorr/measure_d.hpp"
#include "qcorr/measure_g.hpp"
#include "qcorr/negativity.hpp"
#include "qcorr/state_spec.hpp"

namespace qcorr {

enum class Measure { D, G, negativity_min, negativity_max };

inline Measure parse_measure(const std::string& name) {
  if (name == "D") return Measure::D;
  if (name == "G") return Measure::G;
  if (name == "negativity_min") return Measure::negativity_min;
  if (name == "negativity_max") return Measure::negativity_max;
  throw ValidationError("unknown measure '" + name + "' (use D, G, negativity_min, negativity_max)");
}

inline std::string measure_column(Measure m) {
  switch (m) {
    case Measure::D: return "D";
    case Measure::G: return "G";
    case Measure::negativity_min: return "negativity_min";
    case Measure::negativity_max: return "negativity_max";
  }
  return "?";
}

/// Parameter sweep over one state family. The grid is start, start+step, ...
/// up to end inclusive (within half a step of floating slack).
struct SweepSpec {
  StateSpec state;  // parameter field is overwritten per grid point
  double param_start = 0.0;
  double param_end = 1.0;
  double param_step = 0.05;
  std::vector<Measure> measures{Measure::D, Measure::G};
  std::uint64_t trials = 0;  // 0 -> default_d_trials(d_tot)
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::uint64_t partition_budget = GOptions{}.partition_budget;
};

struct SweepRow {
  double param = 0.0;
  std::vector<double> values;  // aligned with SweepSpec::measures
  std::uint64_t trials_used = 0;
  std::uint64_t seed = 0;
};

inline std::vector<double> sweep_grid(const SweepSpec& spec) {
  if (!(spec.param_step > 0.0)) throw ValidationError("sweep: step must be positive");
  if (spec.param_end < spec.param_start) throw ValidationError("sweep: end below start");
  const double span = (spec.param_end - spec.param_start) / spec.param_step;
  const auto steps = static_cast<std::uint64_t>(span + 1e-9) + 1;
  if (steps > 1'000'000) throw ValidationError("sweep: grid exceeds 10^6 points");
  std::vector<double> grid(steps);
  for (std::uint64_t i = 0; i < steps; ++i) {
    grid[i] = spec.param_start + static_cast<double>(i) * spec.param_step;
  }
  return grid;
}

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  const bool wants_d = std::find(spec.measures.begin(), spec.measures.end(), Measure::D) !=
                       spec.measures.end();
  const bool wants_g = std::find(spec.measures.begin(), spec.measures.end(), Measure::G) !=
                       spec.measures.end();
  const bool wants_neg =
      std::find(spec.measures.begin(), spec.measures.end(), Measure::negativity_min) !=
          spec.measures.end() ||
      std::find(spec.measures.begin(), spec.measures.end(), Measure::negativity_max) !=
          spec.measures.end();

  for (double param : sweep_grid(spec)) {
    StateSpec ss = spec.state;
    ss.parameter = param;
    const DensityMatrix rho = make_state(ss);

    SweepRow row;
    row.param = param;
    row.seed = spec.seed;
    row.trials_used = spec.trials != 0 ? spec.trials : default_d_trials(rho.dim());

    DEstimate d;
    GResult g;
    NegativityExtremes neg;
    if (wants_d) {
      d = estimate_D(rho, DOptions{row.trials_used, spec.seed, spec.workers});
    }
    if (wants_g) {
      g = compute_G(rho, GOptions{spec.partition_budget, true});
    }
    if (wants_neg) {
      neg = negativity_extremes(rho);
    }
    for (Measure m : spec.measures) {
      switch (m) {
        case Measure::D: row.values.push_back(d.value); break;
        case Measure::G: row.values.push_back(g.value); break;
        case Measure::negativity_min: row.values.push_back(neg.min); break;
        case Measure::negativity_max: row.values.push_back(neg.max); break;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Nine significant digits; the header names are a documented contract.
inline void write_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  out << "param";
  for (Measure m : spec.measures) out << "," << measure_column(m);
  out << ",trials,seed\n";
  char buf[64];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.9g", row.param);
    out << buf;
    for (double v : row.values) {
      std::snprintf(buf, sizeof buf, "%.9g", v);
      out << "," << buf;
    }
    out << "," << row.trials_used << "," << row.seed << "\n";
  }
}

}  // namespace qcorr
