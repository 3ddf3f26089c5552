#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_set>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/errors.hpp"

namespace qcorr {

/// Equal-size blocks of global-spectrum indices, canonical form: blocks are
/// listed by ascending minimum element and each block's members ascend.
struct PartitionAssignment {
  std::vector<std::vector<std::size_t>> blocks;
};

/// Number of canonical partitions of n indices into k equal blocks:
/// n! / ((n/k)!^k k!). Saturates at uint64 max on overflow.
inline std::uint64_t partition_count(std::size_t n, std::size_t k) {
  if (k == 0 || n % k != 0) {
    throw ValidationError("partition_count: block count " + std::to_string(k) +
                          " does not divide " + std::to_string(n));
  }
  const std::size_t s = n / k;
  // anchored product: C(n-1, s-1) C(n-s-1, s-1) ... ; each factor counts the
  // companions of the smallest unplaced index
  std::uint64_t total = 1;
  for (std::size_t level = 0; level < k; ++level) {
    const std::size_t remaining = n - level * s;
    std::uint64_t choose = 1;
    for (std::size_t i = 1; i < s; ++i) {
      // incremental binomial C(remaining-1, i) from C(remaining-1, i-1)
      const std::uint64_t num = remaining - i;
      if (choose > std::numeric_limits<std::uint64_t>::max() / num) {
        return std::numeric_limits<std::uint64_t>::max();
      }
      choose = choose * num / i;
    }
    if (choose != 0 && total > std::numeric_limits<std::uint64_t>::max() / choose) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= choose;
  }
  return total;
}

/// Lazy lexicographic enumeration of canonical equal-block partitions. The
/// smallest unplaced index anchors each successive block; its companions run
/// through combinations in lexicographic order, so every canonical partition
/// appears exactly once.
class EqualBlockPartitions {
 public:
  EqualBlockPartitions(std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (k == 0 || n % k != 0) {
      throw ValidationError("EqualBlockPartitions: block count " + std::to_string(k) +
                            " does not divide " + std::to_string(n));
    }
    s_ = n / k;
  }

  /// Fills `out` with the next partition; false once exhausted.
  bool next(PartitionAssignment& out) {
    if (done_) return false;
    if (levels_.empty()) {
      std::vector<std::size_t> all(n_);
      for (std::size_t i = 0; i < n_; ++i) all[i] = i;
      if (!descend(std::move(all))) {
        done_ = true;
        return false;
      }
    } else if (!advance()) {
      done_ = true;
      return false;
    }
    emit(out);
    return true;
  }

  void reset() {
    levels_.clear();
    done_ = false;
  }

 private:
  struct Level {
    std::vector<std::size_t> avail;   // unplaced indices entering this level, ascending
    std::vector<std::size_t> choice;  // positions into avail[1:] of the anchor's companions
  };

  // push levels with the lexicographically first choice until k blocks exist
  bool descend(std::vector<std::size_t> avail) {
    while (levels_.size() < k_) {
      Level lvl;
      lvl.avail = std::move(avail);
      lvl.choice.resize(s_ - 1);
      for (std::size_t i = 0; i + 1 < s_; ++i) lvl.choice[i] = i;  // positions 0..s-2
      avail = remaining_after(lvl);
      levels_.push_back(std::move(lvl));
    }
    return true;
  }

  // indices of avail not used by (anchor + choice)
  std::vector<std::size_t> remaining_after(const Level& lvl) const {
    std::vector<std::size_t> rest;
    rest.reserve(lvl.avail.size() - s_);
    std::size_t c = 0;
    for (std::size_t pos = 1; pos < lvl.avail.size(); ++pos) {
      if (c < lvl.choice.size() && lvl.choice[c] == pos - 1) {
        ++c;
      } else {
        rest.push_back(lvl.avail[pos]);
      }
    }
    return rest;
  }

  // odometer step: advance the deepest combination that can move
  bool advance() {
    for (std::size_t depth = levels_.size(); depth-- > 0;) {
      Level& lvl = levels_[depth];
      const std::size_t pool = lvl.avail.size() - 1;  // companions pool size
      // next combination of (s_-1) positions out of pool, lexicographic
      bool moved = false;
      for (std::size_t i = lvl.choice.size(); i-- > 0;) {
        if (lvl.choice[i] < pool - (lvl.choice.size() - i)) {
          ++lvl.choice[i];
          for (std::size_t j = i + 1; j < lvl.choice.size(); ++j) {
            lvl.choice[j] = lvl.choice[j - 1] + 1;
          }
          moved = true;
          break;
        }
      }
      if (moved) {
        std::vector<std::size_t> avail = remaining_after(lvl);
        levels_.resize(depth + 1);
        return descend(std::move(avail));
      }
    }
    return false;
  }

  void emit(PartitionAssignment& out) const {
    out.blocks.resize(k_);
    for (std::size_t depth = 0; depth < k_; ++depth) {
      const Level& lvl = levels_[depth];
      auto& block = out.blocks[depth];
      block.clear();
      block.push_back(lvl.avail[0]);
      for (std::size_t pos : lvl.choice) block.push_back(lvl.avail[pos + 1]);
    }
  }

  std::size_t n_, k_, s_ = 0;
  std::vector<Level> levels_;
  bool done_ = false;
};

/// Block sums of a spectrum under a partition; a valid distribution whenever
/// the spectrum is one.
inline ProbabilityVector mimic_spectrum(const Spectrum& spectrum,
                                        const PartitionAssignment& partition) {
  std::vector<double> sums;
  sums.reserve(partition.blocks.size());
  std::vector<bool> seen(spectrum.size(), false);
  for (const auto& block : partition.blocks) {
    double s = 0.0;
    for (std::size_t idx : block) {
      if (idx >= spectrum.size() || seen[idx]) {
        throw ValidationError("mimic_spectrum: partition does not cover the spectrum indices");
      }
      seen[idx] = true;
      s += spectrum[idx];
    }
    sums.push_back(s);
  }
  for (bool b : seen) {
    if (!b) throw ValidationError("mimic_spectrum: partition does not cover the spectrum indices");
  }
  return ProbabilityVector(std::move(sums));
}

struct GOptions {
  std::uint64_t partition_budget = 100'000'000;
  bool prune = true;  // skip partitions whose block-sum multiset was already scored
};

struct SubsystemUncertainty {
  double value = 0.0;
  PartitionAssignment best_partition;
};

namespace detail {

struct SumKeyHash {
  std::size_t operator()(const std::vector<std::int64_t>& key) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::int64_t v : key) {
      h ^= static_cast<std::size_t>(v);
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

// min over canonical partitions of |H(block sums) - genuine_entropy|
inline SubsystemUncertainty partition_game(const std::vector<double>& global_spectrum,
                                           double genuine_entropy, std::size_t n_blocks,
                                           const GOptions& opts) {
  const std::size_t n = global_spectrum.size();
  const std::uint64_t count = partition_count(n, n_blocks);
  if (count > opts.partition_budget) {
    throw BudgetError("partition enumeration needs " + std::to_string(count) +
                      " partitions, exceeding the budget of " +
                      std::to_string(opts.partition_budget));
  }

  EqualBlockPartitions gen(n, n_blocks);
  PartitionAssignment part;
  std::vector<double> sums(n_blocks);
  std::vector<std::int64_t> key(n_blocks);
  std::unordered_set<std::vector<std::int64_t>, SumKeyHash> seen;

  SubsystemUncertainty best;
  best.value = std::numeric_limits<double>::infinity();
  while (gen.next(part)) {
    for (std::size_t b = 0; b < n_blocks; ++b) {
      double s = 0.0;
      for (std::size_t idx : part.blocks[b]) s += global_spectrum[idx];
      sums[b] = s;
    }
    if (opts.prune) {
      for (std::size_t b = 0; b < n_blocks; ++b) {
        key[b] = static_cast<std::int64_t>(std::llround(sums[b] * 1e12));
      }
      std::sort(key.begin(), key.end());
      if (!seen.insert(key).second) continue;
    }
    double mimic_entropy = 0.0;
    for (double s : sums) {
      if (s > 0.0) mimic_entropy -= s * std::log2(s);
    }
    const double v = std::abs(mimic_entropy - genuine_entropy);
    if (v < best.value) {
      best.value = v;
      best.best_partition = part;
    }
  }
  return best;
}

}  // namespace detail

/// Minimum uncertainty of the eigenvalue-mimic game for subsystem k (0-based):
/// min over equal-block partitions of the global spectrum of the absolute gap
/// between the mimic entropy and the genuine reduced-spectrum entropy.
inline SubsystemUncertainty subsystem_uncertainty(const DensityMatrix& rho, std::size_t k,
                                                  const GOptions& opts = {}) {
  if (k >= rho.num_subsystems()) {
    throw ValidationError("subsystem_uncertainty: subsystem index out of range");
  }
  const Spectrum global = rho.spectrum();
  const Spectrum reduced = partial_trace(rho, {k}).spectrum();
  return detail::partition_game(global.values(), detail::shannon_bits(reduced.values()),
                                rho.dims()[k], opts);
}

struct GResult {
  double value = 0.0;                  // max over subsystems, bits
  std::vector<double> per_subsystem;   // F_k for each subsystem
  std::size_t argmax_subsystem = 0;    // 0-based, first index attaining the max
  std::vector<PartitionAssignment> best_partitions;
};

/// Exact, deterministic measure G: max over subsystems of the partition-game
/// minimum. Depends on the state only through its global and reduced spectra,
/// hence invariant under local unitaries up to eigensolver noise.
inline GResult compute_G(const DensityMatrix& rho, const GOptions& opts = {}) {
  if (rho.num_subsystems() < 2) {
    throw ValidationError("compute_G: need at least 2 subsystems");
  }
  const Spectrum global = rho.spectrum();
  GResult out;
  out.value = -1.0;
  for (std::size_t k = 0; k < rho.num_subsystems(); ++k) {
    const Spectrum reduced = partial_trace(rho, {k}).spectrum();
    auto f = detail::partition_game(global.values(), detail::shannon_bits(reduced.values()),
                                    rho.dims()[k], opts);
    if (f.value > out.value) {
      out.value = f.value;
      out.argmax_subsystem = k;
    }
    out.per_subsystem.push_back(f.value);
    out.best_partitions.push_back(std::move(f.best_partition));
  }
  return out;
}

}  // namespace qcorr
