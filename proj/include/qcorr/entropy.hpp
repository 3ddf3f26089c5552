#pragma once

#include <cmath>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/errors.hpp"

namespace qcorr {

/// Clamped probability distribution: entries in [0,1], sum within 1e-9 of 1.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
    double sum = 0.0;
    for (double& p : probs_) {
      if (p < 0.0) {
        if (p < -tol::clamp_band) {
          throw ValidationError("ProbabilityVector: entry " + detail::fmt_residual(p) +
                                " below the -1e-09 clamp band");
        }
        p = 0.0;
      } else if (p > 1.0) {
        if (p > 1.0 + tol::clamp_band) {
          throw ValidationError("ProbabilityVector: entry " + detail::fmt_residual(p) +
                                " exceeds 1");
        }
        p = 1.0;
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol::prob_sum) {
      throw ValidationError("ProbabilityVector: sum residual |sum - 1| = " +
                            detail::fmt_residual(std::abs(sum - 1.0)) + " exceeds 1e-09");
    }
  }

  const std::vector<double>& values() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

namespace detail {

// -sum p log2 p over a raw range, 0 log 0 := 0 by branch (exact at boundary).
inline double shannon_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

}  // namespace detail

/// Shannon entropy in bits.
inline double shannon(const ProbabilityVector& p) { return detail::shannon_bits(p.values()); }

/// Binary entropy H(x) = -x log2 x - (1-x) log2 (1-x) in bits, H(0)=H(1)=0.
inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ValidationError("binary_entropy: argument " + detail::fmt_residual(x) +
                          " outside [0, 1]");
  }
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

/// Von Neumann entropy in bits: Shannon entropy of the spectrum.
inline double vn_entropy(const DensityMatrix& rho) {
  return detail::shannon_bits(rho.spectrum().values());
}

inline double shannon(const Spectrum& s) { return detail::shannon_bits(s.values()); }

}  // namespace qcorr
