#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "qcorr/eig.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/matrix.hpp"

namespace qcorr {

namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-9;          // smallest eigenvalue must be >= -psd
inline constexpr double clamp_band = 1e-9;   // values in [-clamp_band, 0) clamp to 0
inline constexpr double prob_sum = 1e-9;
}  // namespace tol

namespace detail {

inline std::string fmt_residual(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace detail

/// Sorted (descending), clamped eigenvalue list of a (reduced) density
/// matrix. Values in [-1e-9, 0) clamp to zero; anything below that band is a
/// genuine PSD violation and throws.
class Spectrum {
 public:
  static Spectrum from_eigenvalues(std::vector<double> values) {
    double sum = 0.0;
    for (double& v : values) {
      if (v < 0.0) {
        if (v < -tol::clamp_band) {
          throw ValidationError("Spectrum: eigenvalue " + detail::fmt_residual(v) +
                                " below the -1e-09 clamp band");
        }
        v = 0.0;
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol::prob_sum) {
      throw ValidationError("Spectrum: eigenvalue sum residual |sum - 1| = " +
                            detail::fmt_residual(std::abs(sum - 1.0)) + " exceeds 1e-09");
    }
    std::sort(values.begin(), values.end(), std::greater<double>());
    Spectrum s;
    s.values_ = std::move(values);
    return s;
  }

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  Spectrum() = default;
  std::vector<double> values_;
};

/// Square complex matrix plus an ordered list of subsystem dimensions.
/// Construction validates Hermiticity, unit trace and positive
/// semidefiniteness, then symmetrizes to remove sub-tolerance drift.
/// Subsystem 0 is the leftmost tensor factor; a row index decomposes
/// big-endian over dims.
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix mat, std::vector<std::size_t> dims)
      : mat_(std::move(mat)), dims_(std::move(dims)) {
    validate();
    mat_ = symmetrized(mat_);
  }

  const ComplexMatrix& matrix() const { return mat_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim() const { return mat_.rows(); }
  std::size_t num_subsystems() const { return dims_.size(); }

  /// Clamped, descending eigenvalue list.
  Spectrum spectrum() const { return Spectrum::from_eigenvalues(hermitian_eig(mat_).values); }

 private:
  void validate() const {
    if (!mat_.is_square()) {
      throw ValidationError("DensityMatrix: matrix is not square");
    }
    if (!mat_.all_finite()) {
      throw ValidationError("DensityMatrix: matrix has non-finite entries");
    }
    if (dims_.empty()) {
      throw ValidationError("DensityMatrix: empty subsystem dimension list");
    }
    std::size_t prod = 1;
    for (std::size_t d : dims_) {
      if (d < 2) throw ValidationError("DensityMatrix: subsystem dimensions must be >= 2");
      prod *= d;
    }
    if (prod != mat_.rows()) {
      throw ValidationError("DensityMatrix: product of dims " + std::to_string(prod) +
                            " does not match matrix dimension " + std::to_string(mat_.rows()));
    }
    const double herm = hermiticity_residual(mat_);
    if (herm > tol::hermitian) {
      throw ValidationError("DensityMatrix: not Hermitian: max |M - M†| = " +
                            detail::fmt_residual(herm) + " exceeds 1e-10");
    }
    const double tr_res = std::abs(mat_.trace() - cdouble{1.0, 0.0});
    if (tr_res > tol::trace) {
      throw ValidationError("DensityMatrix: trace residual |Tr - 1| = " +
                            detail::fmt_residual(tr_res) + " exceeds 1e-10");
    }
    const auto eig = hermitian_eig(symmetrized(mat_));
    const double min_eig = eig.values.empty() ? 0.0 : eig.values.back();
    if (min_eig < -tol::psd) {
      throw ValidationError("DensityMatrix: not positive semidefinite: smallest eigenvalue " +
                            detail::fmt_residual(min_eig) + " below -1e-09");
    }
  }

  ComplexMatrix mat_;
  std::vector<std::size_t> dims_;
};

namespace detail {

// Row-index <-> digit conversion, big-endian over dims.
inline void index_to_digits(std::size_t index, const std::vector<std::size_t>& dims,
                            std::vector<std::size_t>& digits) {
  digits.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

inline std::size_t digits_to_index(const std::vector<std::size_t>& digits,
                                   const std::vector<std::size_t>& dims) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

}  // namespace detail

/// Reduced density matrix over the subsystems in `keep` (0-based, any order;
/// output factors follow ascending subsystem index).
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
  const auto& dims = rho.dims();
  if (keep.empty()) throw ValidationError("partial_trace: keep set is empty");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  for (std::size_t k : keep) {
    if (k >= dims.size()) {
      throw ValidationError("partial_trace: subsystem index " + std::to_string(k) +
                            " out of range for " + std::to_string(dims.size()) + " subsystems");
    }
  }

  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);
  }
  if (traced.empty()) return rho;

  std::vector<std::size_t> keep_dims, traced_dims;
  for (std::size_t k : keep) keep_dims.push_back(dims[k]);
  for (std::size_t k : traced) traced_dims.push_back(dims[k]);
  const std::size_t d_keep = std::accumulate(keep_dims.begin(), keep_dims.end(), std::size_t{1},
                                             std::multiplies<>());
  const std::size_t d_traced = std::accumulate(traced_dims.begin(), traced_dims.end(),
                                               std::size_t{1}, std::multiplies<>());

  ComplexMatrix out(d_keep, d_keep);
  std::vector<std::size_t> rk, ck, t, full_row(dims.size()), full_col(dims.size());
  for (std::size_t r = 0; r < d_keep; ++r) {
    detail::index_to_digits(r, keep_dims, rk);
    for (std::size_t c = 0; c < d_keep; ++c) {
      detail::index_to_digits(c, keep_dims, ck);
      cdouble acc = 0.0;
      for (std::size_t tt = 0; tt < d_traced; ++tt) {
        detail::index_to_digits(tt, traced_dims, t);
        for (std::size_t k = 0; k < keep.size(); ++k) {
          full_row[keep[k]] = rk[k];
          full_col[keep[k]] = ck[k];
        }
        for (std::size_t k = 0; k < traced.size(); ++k) {
          full_row[traced[k]] = t[k];
          full_col[traced[k]] = t[k];
        }
        acc += rho.matrix()(detail::digits_to_index(full_row, dims),
                            detail::digits_to_index(full_col, dims));
      }
      out(r, c) = acc;
    }
  }
  return DensityMatrix(std::move(out), std::move(keep_dims));
}

/// Transpose of one subsystem's indices; Hermitian and trace preserving but
/// generally not PSD, hence the plain-matrix return type.
inline ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem) {
  const auto& dims = rho.dims();
  if (subsystem >= dims.size()) {
    throw ValidationError("partial_transpose: subsystem index " + std::to_string(subsystem) +
                          " out of range for " + std::to_string(dims.size()) + " subsystems");
  }
  const std::size_t d = rho.dim();
  ComplexMatrix out(d, d);
  std::vector<std::size_t> r_dig, c_dig;
  for (std::size_t r = 0; r < d; ++r) {
    detail::index_to_digits(r, dims, r_dig);
    for (std::size_t c = 0; c < d; ++c) {
      detail::index_to_digits(c, dims, c_dig);
      std::swap(r_dig[subsystem], c_dig[subsystem]);
      out(detail::digits_to_index(r_dig, dims), detail::digits_to_index(c_dig, dims)) =
          rho.matrix()(r, c);
      std::swap(r_dig[subsystem], c_dig[subsystem]);
    }
  }
  return out;
}

/// Composition of single-subsystem partial transposes (they commute).
inline ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                       const std::vector<std::size_t>& subsystems) {
  const auto& dims = rho.dims();
  for (std::size_t k : subsystems) {
    if (k >= dims.size()) {
      throw ValidationError("partial_transpose: subsystem index " + std::to_string(k) +
                            " out of range for " + std::to_string(dims.size()) + " subsystems");
    }
  }
  const std::size_t d = rho.dim();
  ComplexMatrix out(d, d);
  std::vector<std::size_t> r_dig, c_dig;
  for (std::size_t r = 0; r < d; ++r) {
    detail::index_to_digits(r, dims, r_dig);
    for (std::size_t c = 0; c < d; ++c) {
      detail::index_to_digits(c, dims, c_dig);
      for (std::size_t k : subsystems) std::swap(r_dig[k], c_dig[k]);
      out(detail::digits_to_index(r_dig, dims), detail::digits_to_index(c_dig, dims)) =
          rho.matrix()(r, c);
      for (std::size_t k : subsystems) std::swap(r_dig[k], c_dig[k]);
    }
  }
  return out;
}

}  // namespace qcorr
