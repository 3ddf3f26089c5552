#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "qcorr/density.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/matrix.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

/// One unitary per subsystem; column j of unitary k is the j-th basis vector
/// of subsystem k's complete orthonormal basis.
class LocalBasis {
 public:
  LocalBasis() = default;  // empty placeholder, filled by move assignment

  explicit LocalBasis(std::vector<ComplexMatrix> unitaries) : unitaries_(std::move(unitaries)) {
    for (const auto& u : unitaries_) {
      const double r = unitarity_residual(u);
      if (!(r <= 1e-10)) {
        throw ValidationError("LocalBasis: max |U†U - I| = " + detail::fmt_residual(r) +
                              " exceeds 1e-10");
      }
    }
  }

  static LocalBasis identity(const std::vector<std::size_t>& dims) {
    std::vector<ComplexMatrix> us;
    us.reserve(dims.size());
    for (std::size_t d : dims) us.push_back(ComplexMatrix::identity(d));
    return LocalBasis(std::move(us));
  }

  const std::vector<ComplexMatrix>& unitaries() const { return unitaries_; }
  std::size_t num_subsystems() const { return unitaries_.size(); }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    d.reserve(unitaries_.size());
    for (const auto& u : unitaries_) d.push_back(u.rows());
    return d;
  }

  /// Product unitary over the whole system, leftmost subsystem first.
  ComplexMatrix product_unitary() const {
    ComplexMatrix full = unitaries_.front();
    for (std::size_t k = 1; k < unitaries_.size(); ++k) full = kron(full, unitaries_[k]);
    return full;
  }

  static double unitarity_residual(const ComplexMatrix& u) {
    if (!u.is_square()) return std::numeric_limits<double>::infinity();
    double r = 0.0;
    for (std::size_t i = 0; i < u.cols(); ++i) {
      for (std::size_t j = 0; j < u.cols(); ++j) {
        cdouble dot = 0.0;
        for (std::size_t k = 0; k < u.rows(); ++k) dot += std::conj(u(k, i)) * u(k, j);
        if (i == j) dot -= 1.0;
        r = std::max(r, std::abs(dot));
      }
    }
    return r;
  }

 private:
  std::vector<ComplexMatrix> unitaries_;
};

namespace detail {

// Modified Gram-Schmidt over the columns of `u` in place, with one
// re-orthogonalization pass. A column whose pre-normalization norm falls
// under 1e-8 is replaced by a fresh Gaussian draw and retried.
inline void orthonormalize_columns(ComplexMatrix& u, CounterRng& rng) {
  const std::size_t d = u.rows();
  std::vector<cdouble> v(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) v[i] = u(i, j);
    for (;;) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t prev = 0; prev < j; ++prev) {
          cdouble dot = 0.0;
          for (std::size_t i = 0; i < d; ++i) dot += std::conj(u(i, prev)) * v[i];
          for (std::size_t i = 0; i < d; ++i) v[i] -= dot * u(i, prev);
        }
      }
      double norm_sq = 0.0;
      for (const auto& x : v) norm_sq += std::norm(x);
      const double norm = std::sqrt(norm_sq);
      if (norm >= 1e-8) {
        for (std::size_t i = 0; i < d; ++i) u(i, j) = v[i] / norm;
        break;
      }
      // degenerate column; restart it from a fresh draw
      for (std::size_t i = 0; i < d; ++i) v[i] = cdouble{rng.normal(), rng.normal()};
    }
  }
}

// Gaussian fill + Gram-Schmidt: approximately Haar for this library's needs.
inline ComplexMatrix random_unitary(std::size_t d, CounterRng& rng) {
  ComplexMatrix u(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      u(i, j) = cdouble{re, im};
    }
  }
  orthonormalize_columns(u, rng);
  return u;
}

}  // namespace detail

/// Independent Gaussian + Gram-Schmidt random unitary per subsystem.
inline LocalBasis random_local_basis(const std::vector<std::size_t>& dims, CounterRng& rng) {
  std::vector<ComplexMatrix> us;
  us.reserve(dims.size());
  for (std::size_t d : dims) us.push_back(detail::random_unitary(d, rng));
  return LocalBasis(std::move(us));
}

/// Gaussian perturbation of every subsystem unitary, re-orthonormalized:
/// U_k -> GS(U_k + tau G_k). Shrinks smoothly onto the input as tau -> 0.
inline LocalBasis perturbed_local_basis(const LocalBasis& basis, double tau, CounterRng& rng) {
  std::vector<ComplexMatrix> us;
  us.reserve(basis.num_subsystems());
  for (const auto& q : basis.unitaries()) {
    ComplexMatrix m = q;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        m(i, j) += tau * cdouble{rng.normal(), rng.normal()};
      }
    }
    detail::orthonormalize_columns(m, rng);
    us.push_back(std::move(m));
  }
  return LocalBasis(std::move(us));
}

namespace detail {

// Diagonal of (U1 x ... x Um)† rho (U1 x ... x Um) without forming the
// conjugated matrix: entry g costs one quadratic form v† rho v with
// v = column g of the product unitary.
inline void projected_diagonal(const ComplexMatrix& rho, const LocalBasis& basis,
                               const std::vector<std::size_t>& dims, std::vector<double>& out,
                               std::vector<cdouble>& column, std::vector<std::size_t>& digits_g,
                               std::vector<std::size_t>& digits_a) {
  const std::size_t d = rho.rows();
  out.resize(d);
  column.resize(d);
  for (std::size_t g = 0; g < d; ++g) {
    index_to_digits(g, dims, digits_g);
    for (std::size_t a = 0; a < d; ++a) {
      index_to_digits(a, dims, digits_a);
      cdouble amp = 1.0;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        amp *= basis.unitaries()[k](digits_a[k], digits_g[k]);
      }
      column[a] = amp;
    }
    cdouble acc = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
      const cdouble ca = std::conj(column[a]);
      for (std::size_t b = 0; b < d; ++b) acc += ca * rho(a, b) * column[b];
    }
    out[g] = acc.real();
  }
}

}  // namespace detail

/// Outcome distribution of projective measurements in the given product
/// basis: the diagonal of (⊗U)† rho (⊗U), clamped.
inline ProbabilityVector projected_distribution(const DensityMatrix& rho, const LocalBasis& basis) {
  if (basis.dims() != rho.dims()) {
    throw ValidationError("projected_distribution: basis dimensions do not match state dimensions");
  }
  std::vector<double> diag;
  std::vector<cdouble> column;
  std::vector<std::size_t> dg, da;
  detail::projected_diagonal(rho.matrix(), basis, rho.dims(), diag, column, dg, da);
  return ProbabilityVector(std::move(diag));
}

}  // namespace qcorr
