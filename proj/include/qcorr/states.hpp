#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/local_basis.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

namespace detail {

inline void require_param(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

inline ComplexMatrix projector(const std::vector<cdouble>& psi) {
  ComplexMatrix p(psi.size(), psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) p(i, j) = psi[i] * std::conj(psi[j]);
  return p;
}

inline double norm_of(const std::vector<cdouble>& psi) {
  double s = 0.0;
  for (const auto& a : psi) s += std::norm(a);
  return std::sqrt(s);
}

}  // namespace detail

/// (|00...0> + |11...1>)/sqrt(2) over n qubits.
inline std::vector<cdouble> ghz_vector(std::size_t n_qubits) {
  std::vector<cdouble> psi(std::size_t{1} << n_qubits, cdouble{0.0, 0.0});
  psi.front() = 1.0 / std::sqrt(2.0);
  psi.back() = 1.0 / std::sqrt(2.0);
  return psi;
}

/// Two-qubit Bell vectors: |b1> = (|00>+|11>)/sqrt(2), |b2> = (|01>+|10>)/sqrt(2).
inline std::vector<cdouble> bell_vector(int which) {
  const double s = 1.0 / std::sqrt(2.0);
  if (which == 1) return {s, 0.0, 0.0, s};
  if (which == 2) return {0.0, s, s, 0.0};
  throw ValidationError("bell_vector: index must be 1 or 2");
}

/// Pseudo-pure state p|psi><psi| + (1-p) I/d.
inline DensityMatrix pseudo_pure(const std::vector<cdouble>& psi, double p,
                                 std::vector<std::size_t> dims) {
  detail::require_param(p >= 0.0 && p <= 1.0,
                        "pseudo_pure: p = " + std::to_string(p) + " outside [0, 1]");
  const double nrm = detail::norm_of(psi);
  if (std::abs(nrm - 1.0) > 1e-10) {
    throw ValidationError("pseudo_pure: state vector norm residual " +
                          detail::fmt_residual(std::abs(nrm - 1.0)) + " exceeds 1e-10");
  }
  const std::size_t d = psi.size();
  ComplexMatrix m = detail::projector(psi);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = p * m(i, j);
  const double mix = (1.0 - p) / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) += mix;
  return DensityMatrix(std::move(m), std::move(dims));
}

/// p|b1><b1| + (1-p)|b2><b2|, two qubits.
inline DensityMatrix bell_mixture(double p) {
  detail::require_param(p >= 0.0 && p <= 1.0,
                        "bell_mixture: p = " + std::to_string(p) + " outside [0, 1]");
  const ComplexMatrix b1 = detail::projector(bell_vector(1));
  const ComplexMatrix b2 = detail::projector(bell_vector(2));
  return DensityMatrix(cdouble{p, 0.0} * b1 + cdouble{1.0 - p, 0.0} * b2, {2, 2});
}

/// Two-qubit mixture of |00>, |11> and (|01>+|10>)/sqrt(2):
/// diagonal (1/2-p, p, p, 1/2-p) with central off-diagonal entries p.
inline DensityMatrix sigma_state(double p) {
  detail::require_param(p >= 0.0 && p <= 0.5,
                        "sigma_state: p = " + std::to_string(p) + " outside [0, 1/2]");
  ComplexMatrix m(4, 4);
  m(0, 0) = 0.5 - p;
  m(1, 1) = p;
  m(2, 2) = p;
  m(3, 3) = 0.5 - p;
  m(1, 2) = p;
  m(2, 1) = p;
  return DensityMatrix(std::move(m), {2, 2});
}

/// The 2x4 bound entangled family, normalization 1/(7b+1). The same 8x8
/// matrix can carry dims {2,4} or {2,2,2}; only the metadata differs.
inline DensityMatrix horodecki_2x4(double b, std::vector<std::size_t> dims = {2, 4}) {
  detail::require_param(b >= 0.0 && b <= 1.0,
                        "horodecki_2x4: b = " + std::to_string(b) + " outside [0, 1]");
  if (!(dims == std::vector<std::size_t>{2, 4} || dims == std::vector<std::size_t>{2, 2, 2})) {
    throw ValidationError("horodecki_2x4: dims must be {2,4} or {2,2,2}");
  }
  const double n = 1.0 / (7.0 * b + 1.0);
  const double half = (1.0 + b) / 2.0;
  const double root = std::sqrt(std::max(0.0, 1.0 - b * b)) / 2.0;
  ComplexMatrix m(8, 8);
  for (std::size_t i : {0, 1, 2, 3, 5, 6}) m(i, i) = b;
  m(4, 4) = half;
  m(7, 7) = half;
  m(0, 5) = b;
  m(5, 0) = b;
  m(1, 6) = b;
  m(6, 1) = b;
  m(2, 7) = b;
  m(7, 2) = b;
  m(4, 7) = root;
  m(7, 4) = root;
  return DensityMatrix(cdouble{n, 0.0} * m, std::move(dims));
}

/// n-qubit pseudo-pure GHZ state, n >= 3.
inline DensityMatrix pseudo_ghz(double p, std::size_t n_qubits) {
  detail::require_param(n_qubits >= 3, "pseudo_ghz: need at least 3 qubits");
  detail::require_param(p >= 0.0 && p <= 1.0,
                        "pseudo_ghz: p = " + std::to_string(p) + " outside [0, 1]");
  return pseudo_pure(ghz_vector(n_qubits), p, std::vector<std::size_t>(n_qubits, 2));
}

/// State with the product eigenbasis given by `bases` and eigenvalues given
/// by the coefficient tensor (flattened big-endian over the basis dims):
/// sum_c coeffs[c] |e_c><e_c| with |e_c> the c-th product basis vector.
inline DensityMatrix classical_state(const std::vector<double>& coeffs, const LocalBasis& bases) {
  const std::vector<std::size_t> dims = bases.dims();
  std::size_t d = 1;
  for (std::size_t dk : dims) d *= dk;
  if (coeffs.size() != d) {
    throw ValidationError("classical_state: coefficient count " + std::to_string(coeffs.size()) +
                          " does not match total dimension " + std::to_string(d));
  }
  double sum = 0.0;
  for (double c : coeffs) {
    if (c < 0.0) throw ValidationError("classical_state: negative coefficient");
    sum += c;
  }
  if (std::abs(sum - 1.0) > tol::prob_sum) {
    throw ValidationError("classical_state: coefficient sum residual " +
                          detail::fmt_residual(std::abs(sum - 1.0)) + " exceeds 1e-09");
  }

  const ComplexMatrix u = bases.product_unitary();
  ComplexMatrix m(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    if (coeffs[c] == 0.0) continue;
    for (std::size_t i = 0; i < d; ++i) {
      const cdouble ui = coeffs[c] * u(i, c);
      if (ui == cdouble{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < d; ++j) m(i, j) += ui * std::conj(u(j, c));
    }
  }
  return DensityMatrix(std::move(m), dims);
}

/// Random product-eigenbasis state: Haar-ish random local bases and a
/// coefficient tensor resampled until every pairwise coefficient and
/// marginal gap clears 1e-3, keeping the reduced spectra non-degenerate.
inline DensityMatrix random_classical_state(const std::vector<std::size_t>& dims,
                                            std::uint64_t seed) {
  CounterRng rng(seed, 0xC1A5511Cull);
  const LocalBasis bases = random_local_basis(dims, rng);
  std::size_t d = 1;
  for (std::size_t dk : dims) d *= dk;

  std::vector<double> coeffs(d);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    double sum = 0.0;
    for (double& c : coeffs) {
      c = 0.05 + rng.uniform();
      sum += c;
    }
    for (double& c : coeffs) c /= sum;

    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i)
      for (std::size_t j = i + 1; j < d && ok; ++j)
        if (std::abs(coeffs[i] - coeffs[j]) < 1e-3) ok = false;

    // marginals per subsystem must stay distinct as well
    std::vector<std::size_t> digits;
    for (std::size_t k = 0; k < dims.size() && ok; ++k) {
      std::vector<double> marginal(dims[k], 0.0);
      for (std::size_t c = 0; c < d; ++c) {
        detail::index_to_digits(c, dims, digits);
        marginal[digits[k]] += coeffs[c];
      }
      for (std::size_t i = 0; i < dims[k] && ok; ++i)
        for (std::size_t j = i + 1; j < dims[k] && ok; ++j)
          if (std::abs(marginal[i] - marginal[j]) < 1e-3) ok = false;
    }
    if (ok) break;
  }
  return classical_state(coeffs, bases);
}

}  // namespace qcorr
