#pragma once

#include <cstdint>

#include "matrecover/core/banded_matrix.hpp"
#include "matrecover/core/linear_operator.hpp"
#include "matrecover/core/types.hpp"

namespace matrecover {

/// Vectors of length n^2 are indexed (a, b) -> a n + b. The perfect shuffle
/// swaps the pair: (P x)(b, a) = x(a, b), so P (A kron I) P^T = I kron A.
class PerfectShuffle {
 public:
  explicit PerfectShuffle(Index n);
  Index block() const { return n_; }
  Index size() const { return n_ * n_; }
  Index map(Index idx) const { return (idx % n_) * n_ + idx / n_; }
  Vector apply(const Eigen::Ref<const Vector>& x) const;
  Vector apply_transpose(const Eigen::Ref<const Vector>& x) const { return apply(x); }

 private:
  Index n_;
};

/// Block dimension n for an operator of size n^2; throws for non-squares.
Index kron_block_size(Index total);

struct KronSumRecovery {
  BandedMatrix A1_shifted;  ///< A1 + A2(0,0) I
  BandedMatrix A2_shifted;  ///< A2 + A1(0,0) I
  Vector diagonal;          ///< diagonal of A1 kron I + I kron A2
  std::uint64_t matvecs_used = 0;

  /// A1' kron I + I kron A2' - A1'(0,0) I.
  SparseMatrix assemble() const;
};

/// Recovers A1 (+) A2 = A1 kron I + I kron A2 from 2 + 2 k1 + 2 k2 matvecs.
KronSumRecovery kron_sum_recover(const LinearOperator& mvp, Index k1, Index k2);
/// Same with independent upper and lower bandwidths per factor.
KronSumRecovery kron_sum_recover(const LinearOperator& mvp, Bandwidth bw1, Bandwidth bw2);

struct KronExpRecovery {
  BandedMatrix F1;  ///< approximates exp(A2)(0,0) exp(A1)
  BandedMatrix F2;  ///< approximates exp(A2) / exp(A2)(0,0)
  std::uint64_t matvecs_used = 0;
  Index s1 = 0;
  Index s2 = 0;

  /// (F1 kron F2) x.
  Vector apply(const Eigen::Ref<const Vector>& x) const;
  Matrix to_dense() const;
};

/// Recovers exp(A1 (+) A2) = exp(A1) kron exp(A2) in factored form from
/// s1 + s2 matvecs. Even block sizes are bumped to the next odd value.
KronExpRecovery kron_exp_recover(const LinearOperator& mvp, Index s1, Index s2);

}  // namespace matrecover
