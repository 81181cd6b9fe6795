#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>

#include "matrecover/core/types.hpp"

namespace matrecover {

class BandedMatrix;

/// Square black-box operator x -> Bx, the only access path to B.
///
/// Copies are handles: they share the apply function and the matvec counter.
/// apply() may be called concurrently; the counter is atomic and advances by
/// one per vector (by s for a block of s columns).
class LinearOperator {
 public:
  using ApplyFn = std::function<void(const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y)>;

  LinearOperator(Index n, ApplyFn fn, bool symmetric_hint = false);

  static LinearOperator from_sparse(SparseMatrix a, bool symmetric_hint = false);
  static LinearOperator from_dense(Matrix a, bool symmetric_hint = false);
  static LinearOperator from_banded(BandedMatrix a, bool symmetric_hint = false);

  Index size() const { return n_; }
  bool symmetric_hint() const { return symmetric_; }

  Vector apply(const Eigen::Ref<const Vector>& x) const;
  void apply(const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) const;

  /// Applies the operator to every column of x. Columns are processed by the
  /// worker pool when the block is wide enough.
  Matrix apply_block(const Eigen::Ref<const Matrix>& x) const;

  std::uint64_t matvec_count() const { return count_->load(std::memory_order_relaxed); }
  void reset_count() const { count_->store(0, std::memory_order_relaxed); }

 private:
  Index n_;
  std::shared_ptr<const ApplyFn> fn_;
  std::shared_ptr<std::atomic<std::uint64_t>> count_;
  bool symmetric_;
};

}  // namespace matrecover
