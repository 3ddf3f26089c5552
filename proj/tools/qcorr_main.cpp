// qcorr: entropic nonclassical-correlation measures for density matrices.
//
// Subcommands:
//   measure   compute D, G, negativity extremes and spectra for one state
//   sweep     run a parameter sweep over a state family, emitting CSV
//   validate  check a density-matrix file against the format and invariants
//
// Exit codes: 0 ok, 1 usage error, 2 invalid input, 3 resource budget exceeded.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qcorr/qcorr.hpp"

namespace {

using nlohmann::json;
using namespace qcorr;

std::string fmt9(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

unsigned worker_cap() {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (const char* env = std::getenv("QCORR_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && cap >= 1) workers = std::min<unsigned long>(workers, cap);
  }
  return workers;
}

struct CommonFlags {
  std::string family;
  std::string file;
  double p = -1.0;
  double b = -1.0;
  std::size_t n_qubits = 3;
  bool tripartite = false;
  std::vector<std::string> measures;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t partition_budget = GOptions{}.partition_budget;
  std::string out;
  bool as_json = false;
};

void add_state_flags(CLI::App* cmd, CommonFlags& flags, bool for_sweep) {
  if (for_sweep) {
    cmd->add_option("--family", flags.family, "state family to sweep")->required();
  } else {
    cmd->add_option("--family", flags.family,
                    "state family: pseudo_pure | bell_mixture | sigma_p | horodecki_2x4 | "
                    "pseudo_ghz | classical");
    cmd->add_option("--file", flags.file, "density-matrix file (or psi vector for pseudo_pure)");
    cmd->add_option("--p", flags.p, "family parameter p");
    cmd->add_option("--b", flags.b, "family parameter b (horodecki_2x4)");
  }
  cmd->add_option("--n-qubits", flags.n_qubits, "qubit count for pseudo_ghz/classical families");
  cmd->add_flag("--tripartite", flags.tripartite, "read horodecki_2x4 as a 2x2x2 state");
  cmd->add_option("--measures", flags.measures,
                  "comma-separated subset of D,G,negativity_min,negativity_max")
      ->delimiter(',');
  cmd->add_option("--trials", flags.trials, "random-basis trials for D (0 = dimension default)");
  cmd->add_option("--seed", flags.seed, "random seed (default 0)");
  cmd->add_option("--partition-budget", flags.partition_budget,
                  "largest partition enumeration allowed for G");
  cmd->add_option("--out", flags.out, "write the report/CSV here instead of stdout");
}

StateSpec spec_from_flags(const CommonFlags& flags) {
  StateSpec spec;
  if (!flags.file.empty() && flags.family.empty()) {
    spec.family = StateFamily::file;
    spec.source_path = flags.file;
  } else if (!flags.family.empty()) {
    spec.family = parse_family(flags.family);
    if (spec.family == StateFamily::file && flags.file.empty()) {
      throw ValidationError("--family file needs --file PATH");
    }
    if (!flags.file.empty()) spec.source_path = flags.file;
  } else {
    throw ValidationError("pass --family NAME or --file PATH");
  }
  if (flags.p >= 0.0 && flags.b >= 0.0) {
    throw ValidationError("pass either --p or --b, not both");
  }
  spec.parameter = flags.p >= 0.0 ? flags.p : (flags.b >= 0.0 ? flags.b : 0.0);
  spec.n_qubits = flags.n_qubits;
  spec.tripartite = flags.tripartite;
  spec.seed = flags.seed;
  return spec;
}

std::vector<Measure> measures_from_flags(const CommonFlags& flags) {
  if (flags.measures.empty()) {
    return {Measure::D, Measure::G, Measure::negativity_min, Measure::negativity_max};
  }
  std::vector<Measure> out;
  for (const auto& name : flags.measures) out.push_back(parse_measure(name));
  return out;
}

std::string describe_state(const StateSpec& spec) {
  std::string s = family_name(spec.family);
  switch (spec.family) {
    case StateFamily::bell_mixture:
    case StateFamily::sigma_p:
    case StateFamily::pseudo_pure:
    case StateFamily::pseudo_ghz:
      s += " (p = " + fmt9(spec.parameter) + ")";
      break;
    case StateFamily::horodecki_2x4:
      s += " (b = " + fmt9(spec.parameter) + ")";
      break;
    case StateFamily::classical:
      s += " (seed = " + std::to_string(spec.seed) + ")";
      break;
    case StateFamily::file:
      s += " (" + spec.source_path.value_or("?") + ")";
      break;
  }
  return s;
}

int run_measure(const CommonFlags& flags) {
  const StateSpec spec = spec_from_flags(flags);
  const auto measures = measures_from_flags(flags);
  const DensityMatrix rho = make_state(spec);

  const std::uint64_t trials = flags.trials != 0 ? flags.trials : default_d_trials(rho.dim());
  const unsigned workers = worker_cap();

  const bool wants_d = std::find(measures.begin(), measures.end(), Measure::D) != measures.end();
  const bool wants_g = std::find(measures.begin(), measures.end(), Measure::G) != measures.end();
  const bool wants_neg =
      std::find(measures.begin(), measures.end(), Measure::negativity_min) != measures.end() ||
      std::find(measures.begin(), measures.end(), Measure::negativity_max) != measures.end();

  const Spectrum spectrum = rho.spectrum();
  const double s_vn = vn_entropy(rho);
  std::vector<Spectrum> reduced;
  for (std::size_t k = 0; k < rho.num_subsystems(); ++k) {
    reduced.push_back(partial_trace(rho, {k}).spectrum());
  }

  std::optional<DEstimate> d;
  std::optional<GResult> g;
  std::optional<NegativityExtremes> neg;
  if (wants_d) d = estimate_D(rho, DOptions{trials, flags.seed, workers});
  if (wants_g) g = compute_G(rho, GOptions{flags.partition_budget, true});
  if (wants_neg) neg = negativity_extremes(rho);

  std::ofstream file_out;
  if (!flags.out.empty()) {
    file_out.open(flags.out);
    if (!file_out) throw Error("cannot open '" + flags.out + "' for writing");
  }
  std::ostream& os = flags.out.empty() ? std::cout : file_out;

  if (flags.as_json) {
    json doc;
    doc["state"]["description"] = describe_state(spec);
    doc["state"]["family"] = family_name(spec.family);
    doc["state"]["dims"] = rho.dims();
    if (spec.family != StateFamily::file && spec.family != StateFamily::classical) {
      doc["state"]["parameter"] = spec.parameter;
    }
    if (spec.source_path) doc["state"]["source"] = *spec.source_path;
    doc["defaults"]["trials"] = trials;
    doc["defaults"]["seed"] = flags.seed;
    doc["defaults"]["partition_budget"] = flags.partition_budget;
    doc["defaults"]["workers"] = workers;
    doc["s_vn"] = s_vn;
    doc["spectrum"] = spectrum.values();
    for (const auto& r : reduced) doc["reduced_spectra"].push_back(r.values());
    if (d) {
      doc["D"] = {{"value", d->value},
                  {"min_diag_entropy", d->min_diag_entropy},
                  {"vn", d->vn},
                  {"trials", d->trials_used},
                  {"seed", d->seed}};
    }
    if (g) {
      doc["G"] = {{"value", g->value},
                  {"per_subsystem", g->per_subsystem},
                  {"argmax_subsystem", g->argmax_subsystem + 1}};
    }
    if (neg) {
      doc["negativity"] = {{"min", neg->min},
                           {"max", neg->max},
                           {"arg_min", neg->arg_min.label()},
                           {"arg_max", neg->arg_max.label()}};
    }
    os << doc.dump(2) << "\n";
    return 0;
  }

  os << "state: " << describe_state(spec) << ", dims = [";
  for (std::size_t k = 0; k < rho.dims().size(); ++k) os << (k ? " " : "") << rho.dims()[k];
  os << "]\n";
  os << "defaults: trials " << trials << ", seed " << flags.seed << ", workers " << workers
     << ", partition budget " << flags.partition_budget << "\n";
  os << "spectrum:";
  for (double v : spectrum.values()) os << " " << fmt9(v);
  os << "\nS_vN: " << fmt9(s_vn) << "\n";
  for (std::size_t k = 0; k < reduced.size(); ++k) {
    os << "reduced spectrum " << (k + 1) << ":";
    for (double v : reduced[k].values()) os << " " << fmt9(v);
    os << "\n";
  }
  if (d) {
    os << "D: " << fmt9(d->value) << "  (min diagonal entropy " << fmt9(d->min_diag_entropy)
       << ", trials " << d->trials_used << ", seed " << d->seed << ", workers " << workers
       << ")\n";
  }
  if (g) {
    os << "G: " << fmt9(g->value) << "  (F per subsystem:";
    for (std::size_t k = 0; k < g->per_subsystem.size(); ++k) {
      os << " " << (k + 1) << "=" << fmt9(g->per_subsystem[k]);
    }
    os << "; argmax subsystem " << (g->argmax_subsystem + 1) << ")\n";
  }
  if (neg) {
    os << "negativity: min " << fmt9(neg->min) << " (split " << neg->arg_min.label() << "), max "
       << fmt9(neg->max) << " (split " << neg->arg_max.label() << ")\n";
  }
  return 0;
}

int run_sweep_cmd(const CommonFlags& flags, double from, double to, double step) {
  SweepSpec spec;
  spec.state.family = parse_family(flags.family);
  if (spec.state.family == StateFamily::file) {
    throw ValidationError("sweep needs a parametric family, not 'file'");
  }
  spec.state.n_qubits = flags.n_qubits;
  spec.state.tripartite = flags.tripartite;
  spec.state.seed = flags.seed;
  spec.param_start = from;
  spec.param_end = to;
  spec.param_step = step;
  spec.measures = measures_from_flags(flags);
  spec.trials = flags.trials;
  spec.seed = flags.seed;
  spec.workers = worker_cap();
  spec.partition_budget = flags.partition_budget;

  const auto rows = run_sweep(spec);
  if (flags.out.empty()) {
    write_csv(std::cout, spec, rows);
  } else {
    std::ofstream out(flags.out);
    if (!out) throw Error("cannot open '" + flags.out + "' for writing");
    write_csv(out, spec, rows);
    if (!out) throw Error("write to '" + flags.out + "' failed");
  }
  return 0;
}

int run_validate(const std::string& path) {
  RawDensityFile raw;
  try {
    raw = load_density_raw(path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }

  std::cout << "file: " << path << "\ndims:";
  for (std::size_t d : raw.dims) std::cout << " " << d;
  std::cout << "\n";

  bool ok = raw.mat.all_finite();
  if (!ok) std::cout << "entries: non-finite values present  FAIL\n";

  const double herm = hermiticity_residual(raw.mat);
  const bool herm_ok = herm <= tol::hermitian;
  std::cout << "hermiticity residual: " << fmt9(herm) << "  (tolerance 1e-10)  "
            << (herm_ok ? "PASS" : "FAIL") << "\n";
  ok = ok && herm_ok;

  const double tr = std::abs(raw.mat.trace() - cdouble{1.0, 0.0});
  const bool tr_ok = tr <= tol::trace;
  std::cout << "trace residual: " << fmt9(tr) << "  (tolerance 1e-10)  "
            << (tr_ok ? "PASS" : "FAIL") << "\n";
  ok = ok && tr_ok;

  if (herm_ok) {
    const auto eig = hermitian_eig(symmetrized(raw.mat));
    const double min_eig = eig.values.back();
    const bool psd_ok = min_eig >= -tol::psd;
    std::cout << "smallest eigenvalue: " << fmt9(min_eig) << "  (floor -1e-09)  "
              << (psd_ok ? "PASS" : "FAIL") << "\n";
    ok = ok && psd_ok;
  } else {
    std::cout << "smallest eigenvalue: skipped (matrix not Hermitian)\n";
  }

  std::cout << (ok ? "valid density matrix" : "invalid density matrix") << "\n";
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropic nonclassical-correlation measures for density matrices"};
  app.require_subcommand(1);

  CommonFlags measure_flags;
  auto* measure_cmd = app.add_subcommand("measure", "compute measures for one state");
  add_state_flags(measure_cmd, measure_flags, false);
  measure_cmd->add_flag("--json", measure_flags.as_json, "machine-readable output");

  CommonFlags sweep_flags;
  double from = 0.0, to = 1.0, step = 0.05;
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep a family parameter, emit CSV");
  add_state_flags(sweep_cmd, sweep_flags, true);
  sweep_cmd->add_option("--from", from, "first parameter value")->required();
  sweep_cmd->add_option("--to", to, "last parameter value")->required();
  sweep_cmd->add_option("--step", step, "grid step")->required();

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "check a density-matrix file");
  validate_cmd->add_option("path", validate_path, "file to check")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (measure_cmd->parsed()) return run_measure(measure_flags);
    if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_flags, from, to, step);
    if (validate_cmd->parsed()) return run_validate(validate_path);
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
