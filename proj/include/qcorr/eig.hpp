#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qcorr/errors.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

struct EigResult {
  std::vector<double> values;  // real eigenvalues, sorted descending
  ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

namespace detail {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr int kMaxJacobiSweeps = 100;

// One complex Jacobi rotation annihilating m(p,q). Updates m in place
// (m <- J† m J) and accumulates J into v (v <- v J). J differs from the
// identity only in the (p,q) plane:
//   column p <- c*col_p + s*col_q,   column q <- -conj(s)*col_p + c*col_q
// with c real, |s|^2 + c^2 = 1 and phase(s) = -phase(m(p,q)).
inline void jacobi_rotate(ComplexMatrix& m, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cdouble apq = m(p, q);
  const double abs_apq = std::abs(apq);
  if (abs_apq == 0.0) return;

  const double app = m(p, p).real();
  const double aqq = m(q, q).real();
  // annihilation condition: t^2 - 2 theta t - 1 = 0, small-magnitude root
  const double theta = (aqq - app) / (2.0 * abs_apq);
  double t;
  if (std::abs(theta) > 1e154) {
    // asymptotic form, avoids theta^2 overflow
    t = -1.0 / (2.0 * theta);
  } else {
    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta > 0.0) t = -t;
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const cdouble s = (t * c / abs_apq) * std::conj(apq);

  const std::size_t n = m.rows();
  // m <- m J (columns p, q)
  for (std::size_t k = 0; k < n; ++k) {
    const cdouble mkp = m(k, p);
    const cdouble mkq = m(k, q);
    m(k, p) = c * mkp + s * mkq;
    m(k, q) = -std::conj(s) * mkp + c * mkq;
  }
  // m <- J† m (rows p, q)
  for (std::size_t k = 0; k < n; ++k) {
    const cdouble mpk = m(p, k);
    const cdouble mqk = m(q, k);
    m(p, k) = c * mpk + std::conj(s) * mqk;
    m(q, k) = -s * mpk + c * mqk;
  }
  // exact zeros on the annihilated pair; diagonal is real by construction
  m(p, q) = 0.0;
  m(q, p) = 0.0;
  m(p, p) = cdouble{m(p, p).real(), 0.0};
  m(q, q) = cdouble{m(q, q).real(), 0.0};

  for (std::size_t k = 0; k < n; ++k) {
    const cdouble vkp = v(k, p);
    const cdouble vkq = v(k, q);
    v(k, p) = c * vkp + s * vkq;
    v(k, q) = -std::conj(s) * vkp + c * vkq;
  }
}

inline double off_diagonal_norm_sq(const ComplexMatrix& m) {
  double off = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) off += std::norm(m(i, j));
  return 2.0 * off;
}

}  // namespace detail

/// Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi
/// rotations. Eigenvalues come back sorted descending, eigenvectors as the
/// matching columns of a unitary matrix. Throws ValidationError if the input
/// is not Hermitian within 1e-10 and ConvergenceError if the sweep budget is
/// exhausted (not observed for the dimensions this library targets).
inline EigResult hermitian_eig(const ComplexMatrix& input) {
  if (!input.is_square()) {
    throw ValidationError("hermitian_eig: matrix is not square");
  }
  const double herm = hermiticity_residual(input);
  if (!(herm <= detail::kHermitianTol)) {
    throw ValidationError("hermitian_eig: matrix is not Hermitian: max |M - M†| = " +
                          std::to_string(herm) + " exceeds 1e-10");
  }

  const std::size_t n = input.rows();
  ComplexMatrix m = symmetrized(input);
  ComplexMatrix v = ComplexMatrix::identity(n);

  double scale_sq = 0.0;
  for (const auto& e : m.entries()) scale_sq += std::norm(e);
  const double stop = scale_sq * 1e-30 + 1e-300;

  if (n > 1) {
    int sweep = 0;
    while (detail::off_diagonal_norm_sq(m) > stop) {
      if (++sweep > detail::kMaxJacobiSweeps) {
        throw ConvergenceError("hermitian_eig: Jacobi iteration did not converge within " +
                               std::to_string(detail::kMaxJacobiSweeps) + " sweeps");
      }
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(m, v, p, q);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m(a, a).real() > m(b, b).real(); });

  EigResult out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = m(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace qcorr
