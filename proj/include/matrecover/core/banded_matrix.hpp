#pragma once

#include "matrecover/core/types.hpp"

namespace matrecover {

/// Upper and lower bandwidth of a banded matrix.
struct Bandwidth {
  Index upper = 0;
  Index lower = 0;

  static Bandwidth symmetric(Index k) { return {k, k}; }
  Index width() const { return 1 + upper + lower; }
  friend bool operator==(const Bandwidth&, const Bandwidth&) = default;
};

/// Square matrix whose entries (i, j) are stored iff -lower <= j - i <= upper.
/// Everything outside the band is identically zero.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(Index n, Bandwidth bw);

  /// Keeps the in-band part of a dense square matrix.
  static BandedMatrix from_dense(const Matrix& dense, Bandwidth bw);

  Index size() const { return n_; }
  Bandwidth bandwidth() const { return bw_; }
  Index upper_bandwidth() const { return bw_.upper; }
  Index lower_bandwidth() const { return bw_.lower; }

  bool in_band(Index i, Index j) const {
    const Index d = j - i;
    return i >= 0 && i < n_ && j >= 0 && j < n_ && d <= bw_.upper && d >= -bw_.lower;
  }

  /// Entry (i, j); zero outside the band.
  double operator()(Index i, Index j) const { return in_band(i, j) ? band_(i, j - i + bw_.lower) : 0.0; }

  /// Mutable access to an in-band entry. Throws InputError outside the band.
  double& at(Index i, Index j);

  Vector apply(const Eigen::Ref<const Vector>& x) const;
  Matrix apply_block(const Eigen::Ref<const Matrix>& x) const;

  SparseMatrix to_sparse() const;
  Matrix to_dense() const;
  BandedMatrix transpose() const;

  /// Raw band storage: row i, column (j - i + lower).
  const Matrix& storage() const { return band_; }

 private:
  Index n_ = 0;
  Bandwidth bw_{};
  Matrix band_;
};

}  // namespace matrecover
