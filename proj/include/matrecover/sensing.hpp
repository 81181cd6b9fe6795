#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "matrecover/core/types.hpp"

namespace matrecover {

enum class SensingKind : std::uint32_t { gaussian = 0, subsampled_dct = 1, sparse_rademacher = 2 };

std::string_view to_string(SensingKind kind);
SensingKind parse_sensing_kind(std::string_view name);

/// Random n x s measurement operator Y. Measurements of a signal v are Y^T v.
///
/// gaussian:          entries i.i.d. N(0, 1/s).
/// subsampled_dct:    s distinct columns of the orthonormal n-point DCT-II
///                    (transposed), scaled by sqrt(n/s).
/// sparse_rademacher: xi nonzeros in each row of Y, values +-xi^{-1/2}.
///
/// Construction is a pure function of (n, s, kind, seed, xi). Instances are
/// immutable and safe to share between threads.
class SensingOperator {
 public:
  static SensingOperator build(Index n, Index s, SensingKind kind, std::uint64_t seed,
                               std::optional<Index> xi = std::nullopt);

  Index n() const { return n_; }
  Index s() const { return s_; }
  SensingKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  Index xi() const { return xi_; }

  /// Y^T v (length s).
  Vector adjoint_apply(const Eigen::Ref<const Vector>& v) const;
  /// Y w (length n).
  Vector forward_apply(const Eigen::Ref<const Vector>& w) const;

  /// Y^T v for v supported on `support` with values `values`.
  Vector adjoint_apply_sparse(const std::vector<Index>& support, const Eigen::Ref<const Vector>& values) const;

  /// M Y for a sparse M with n columns (result rows x s).
  Matrix right_multiply(const SparseMatrix& m) const;

  /// Explicit n x s matrix.
  Matrix to_dense() const;

  /// Retained DCT row indices (subsampled_dct only), sorted.
  const std::vector<Index>& dct_rows() const { return dct_rows_; }

 private:
  SensingOperator() = default;

  Index n_ = 0;
  Index s_ = 0;
  SensingKind kind_ = SensingKind::gaussian;
  std::uint64_t seed_ = 0;
  Index xi_ = 0;

  Matrix yt_;                         // gaussian: s x n, Y^T
  std::vector<Index> dct_rows_;       // subsampled_dct
  SparseMatrix sparse_yt_;            // sparse_rademacher: s x n, Y^T
  SparseMatrix sparse_y_;             // sparse_rademacher: n x s
};

/// Orthonormal DCT-II of x: (Tx)_k = c_k sum_j x_j cos(pi k (2j+1) / 2n).
Vector dct2_orthonormal(const Eigen::Ref<const Vector>& x);
/// Inverse (transpose) of dct2_orthonormal.
Vector dct3_orthonormal(const Eigen::Ref<const Vector>& x);

}  // namespace matrecover
