#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>
#include <utility>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/local_basis.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

struct DOptions {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0 -> hardware concurrency
  // Per-trial annealed polish: refine_steps re-orthonormalized Gaussian
  // perturbations of the trial's start basis, with the step size shrinking
  // geometrically. One-shot sampling alone stalls near the optimum (the
  // winning basin shrinks quadratically with the entropy gap), so each trial
  // descends locally; all draws still come from the trial's own stream.
  int refine_steps = 24;
  double refine_step0 = 0.35;
  double refine_shrink = 0.72;
};

struct DEstimate {
  double value = 0.0;             // max(0, min_diag_entropy - vn), bits
  double min_diag_entropy = 0.0;  // best Shannon entropy found, bits
  double vn = 0.0;                // von Neumann entropy, bits
  LocalBasis best_basis;
  std::uint64_t trials_used = 0;
  std::uint64_t seed = 0;
};

/// Trial-count policy: 4e4 up to dimension 4, then x10 per doubling.
inline std::uint64_t default_d_trials(std::size_t d_tot) {
  std::uint64_t trials = 40'000;
  for (std::size_t d = 4; d < d_tot; d *= 2) trials *= 10;
  return trials;
}

namespace detail {

// Shannon entropy of the projected diagonal, skipping the ProbabilityVector
// wrapper; scratch buffers persist across the search loop.
struct DiagEntropyScratch {
  std::vector<double> diag;
  std::vector<cdouble> column;
  std::vector<std::size_t> dg, da;
};

inline double diag_entropy(const DensityMatrix& rho, const LocalBasis& basis,
                           DiagEntropyScratch& scratch) {
  projected_diagonal(rho.matrix(), basis, rho.dims(), scratch.diag, scratch.column, scratch.dg,
                     scratch.da);
  double h = 0.0;
  for (double p : scratch.diag) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

struct DCandidate {
  double entropy = std::numeric_limits<double>::infinity();
  std::uint64_t rank = 0;  // 0 identity, 1 reduced-eigenvector, 2+t trial t
  LocalBasis basis;

  // Running-minimum order: lower entropy wins, exact ties go to the earlier
  // candidate, so reductions are associative and worker-count independent.
  bool better_than(const DCandidate& other) const {
    if (entropy != other.entropy) return entropy < other.entropy;
    return rank < other.rank;
  }
};

}  // namespace detail

/// Upper-bound estimate of the measure D: the minimum, over an identity warm
/// start, a reduced-eigenvector warm start and `trials` random restarts (each
/// a random product basis followed by an annealed local polish), of the
/// projective-outcome Shannon entropy, minus the von Neumann entropy.
/// Deterministic for fixed (seed, trials) regardless of worker count: trial t
/// draws its randomness from (seed, t) alone.
inline DEstimate estimate_D(const DensityMatrix& rho, const DOptions& opts = {}) {
  const std::vector<std::size_t>& dims = rho.dims();

  detail::DCandidate best;
  detail::DiagEntropyScratch scratch;

  // warm start 1: identity local basis
  best.basis = LocalBasis::identity(dims);
  best.entropy = detail::diag_entropy(rho, best.basis, scratch);
  best.rank = 0;

  // warm start 2: per-subsystem eigenvector bases of the reduced states;
  // exact for states with a product eigenbasis and non-degenerate marginals
  {
    std::vector<ComplexMatrix> us;
    us.reserve(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) {
      us.push_back(hermitian_eig(partial_trace(rho, {k}).matrix()).vectors);
    }
    detail::DCandidate eig_start;
    eig_start.basis = LocalBasis(std::move(us));
    eig_start.entropy = detail::diag_entropy(rho, eig_start.basis, scratch);
    eig_start.rank = 1;
    if (eig_start.better_than(best)) best = std::move(eig_start);
  }

  const std::uint64_t trials = opts.trials;
  if (trials > 0) {
    unsigned workers = opts.workers != 0 ? opts.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers > trials) workers = static_cast<unsigned>(trials);

    std::vector<detail::DCandidate> worker_best(workers);
    auto run_range = [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
      detail::DiagEntropyScratch local_scratch;
      detail::DCandidate local;
      for (std::uint64_t t = lo; t < hi; ++t) {
        CounterRng rng(opts.seed, t);
        LocalBasis basis = random_local_basis(dims, rng);
        double h = detail::diag_entropy(rho, basis, local_scratch);
        double step = opts.refine_step0;
        for (int s = 0; s < opts.refine_steps; ++s, step *= opts.refine_shrink) {
          LocalBasis cand = perturbed_local_basis(basis, step, rng);
          const double hc = detail::diag_entropy(rho, cand, local_scratch);
          if (hc < h) {
            h = hc;
            basis = std::move(cand);
          }
        }
        if (h < local.entropy) {
          local.entropy = h;
          local.rank = 2 + t;
          local.basis = std::move(basis);
        }
      }
      worker_best[w] = std::move(local);
    };

    if (workers == 1) {
      run_range(0, 0, trials);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      const std::uint64_t chunk = trials / workers;
      const std::uint64_t rem = trials % workers;
      std::uint64_t lo = 0;
      for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t hi = lo + chunk + (w < rem ? 1 : 0);
        pool.emplace_back(run_range, w, lo, hi);
        lo = hi;
      }
      for (auto& th : pool) th.join();
    }
    for (auto& cand : worker_best) {
      if (cand.entropy < std::numeric_limits<double>::infinity() && cand.better_than(best)) {
        best = std::move(cand);
      }
    }
  }

  DEstimate out;
  out.min_diag_entropy = best.entropy;
  out.vn = vn_entropy(rho);
  out.value = std::max(0.0, out.min_diag_entropy - out.vn);
  out.best_basis = std::move(best.basis);
  out.trials_used = trials;
  out.seed = opts.seed;
  return out;
}

}  // namespace qcorr
