#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/eig.hpp"
#include "qcorr/errors.hpp"

namespace qcorr {

/// Two-block grouping of subsystem indices (0-based). Canonical form keeps
/// subsystem 0 on side A, which halves the splittings without loss.
struct Bipartition {
  std::vector<std::size_t> side_a;
  std::vector<std::size_t> side_b;

  static Bipartition of(std::vector<std::size_t> side_a, std::size_t num_subsystems) {
    std::sort(side_a.begin(), side_a.end());
    side_a.erase(std::unique(side_a.begin(), side_a.end()), side_a.end());
    Bipartition split;
    split.side_a = std::move(side_a);
    for (std::size_t k = 0; k < num_subsystems; ++k) {
      if (!std::binary_search(split.side_a.begin(), split.side_a.end(), k)) {
        split.side_b.push_back(k);
      }
    }
    if (split.side_a.empty() || split.side_b.empty()) {
      throw ValidationError("Bipartition: both sides must be nonempty");
    }
    for (std::size_t k : split.side_a) {
      if (k >= num_subsystems) {
        throw ValidationError("Bipartition: subsystem index " + std::to_string(k) +
                              " out of range");
      }
    }
    return split;
  }

  std::string label() const {
    std::string s;
    for (std::size_t k : side_a) s += std::to_string(k + 1);
    s += "|";
    for (std::size_t k : side_b) s += std::to_string(k + 1);
    return s;
  }
};

/// All canonical bipartitions (side A contains subsystem 0): 2^(m-1) - 1.
inline std::vector<Bipartition> canonical_bipartitions(std::size_t num_subsystems) {
  if (num_subsystems < 2) {
    throw ValidationError("canonical_bipartitions: need at least 2 subsystems");
  }
  std::vector<Bipartition> out;
  const std::size_t rest = num_subsystems - 1;
  for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << rest); ++mask) {
    std::vector<std::size_t> side_a{0};
    for (std::size_t k = 0; k < rest; ++k) {
      if (mask & (std::size_t{1} << k)) side_a.push_back(k + 1);
    }
    out.push_back(Bipartition::of(std::move(side_a), num_subsystems));
  }
  return out;
}

/// Negativity (||PT||_1 - 1)/2 = sum of |negative eigenvalues| of the partial
/// transpose over side B. Nonnegative by clamping of the tiny numerical band.
inline double negativity(const DensityMatrix& rho, const Bipartition& split) {
  const ComplexMatrix pt = partial_transpose(rho, split.side_b);
  double neg = 0.0;
  for (double v : hermitian_eig(pt).values) {
    if (v < 0.0) neg -= v;
  }
  return std::max(neg, 0.0);
}

/// Bipartite shorthand: transpose the second subsystem.
inline double negativity(const DensityMatrix& rho) {
  if (rho.num_subsystems() != 2) {
    throw ValidationError("negativity: state is not bipartite; pass a Bipartition");
  }
  return negativity(rho, Bipartition::of({0}, 2));
}

struct NegativityExtremes {
  double min = 0.0;
  double max = 0.0;
  Bipartition arg_min;
  Bipartition arg_max;
};

/// Extremes over all canonical bipartite splittings.
inline NegativityExtremes negativity_extremes(const DensityMatrix& rho) {
  const auto splits = canonical_bipartitions(rho.num_subsystems());
  NegativityExtremes out;
  bool first = true;
  for (const auto& split : splits) {
    const double n = negativity(rho, split);
    if (first || n < out.min) {
      out.min = n;
      out.arg_min = split;
    }
    if (first || n > out.max) {
      out.max = n;
      out.arg_max = split;
    }
    first = false;
  }
  return out;
}

}  // namespace qcorr
