#pragma once

#include <cstdint>
#include <optional>

#include "matrecover/core/banded_matrix.hpp"
#include "matrecover/core/linear_operator.hpp"
#include "matrecover/core/types.hpp"

namespace matrecover {

/// Periodic identity: column j holds ones at the rows r with r = j (mod s).
/// Block sizes above n are allowed; the surplus columns are zero.
struct ProbingMatrix {
  Index n = 0;
  Index s = 0;

  ProbingMatrix(Index n_, Index s_);
  Vector column(Index j) const;
  Matrix to_dense() const;
};

/// B applied to every probe column: exactly s matvecs. Entry (i, j) equals
/// the sum over t of B(i, j + s t).
Matrix probe_apply(const LinearOperator& mvp, Index s);

struct BandSpec {
  enum class Mode { exact_banded, symmetric_decay, asymmetric_decay };

  Mode mode = Mode::exact_banded;
  Index k1 = 0;  ///< exact: upper bandwidth
  Index k2 = 0;  ///< exact: lower bandwidth
  Index s0 = 0;  ///< symmetric: half width
  Index b1 = 0;  ///< asymmetric: kept upper width
  Index b2 = 0;  ///< asymmetric: kept lower width
  double lambda1 = 0.5;
  double lambda2 = 0.5;
  bool rounded_up = false;  ///< an even block size was bumped to the next odd one

  static BandSpec exact(Index k1, Index k2);
  static BandSpec symmetric(Index s0);
  /// Symmetric decay from a block size; even s becomes s + 1.
  static BandSpec symmetric_block(Index s);
  /// b1 = floor(c / ln(1/lambda1)), b2 = floor(c / ln(1/lambda2)).
  static BandSpec asymmetric(double lambda1, double lambda2, double c);

  Index block_size() const;
  Bandwidth output_bandwidth() const;
};

/// Half width with ||B_hat - B||_2 <= eps for |B_ij| <= C lambda^|i-j|:
/// ceil((ln(36 C) - ln eps) / ln(1/lambda)).
Index s0_for_accuracy(double c, double lambda, double eps);

/// 4 C lambda^(s0+1) / (1 - lambda): 2-norm bound for symmetric decay recovery.
double decay_norm_bound(double c, double lambda, Index s0);
/// 2 C lambda^(s0+1) / (1 - lambda^s): entrywise bound for the same.
double decay_max_bound(double c, double lambda, Index s0);

/// Shift t with j + s t in [i - k2, i + k1] and inside [0, n); nullopt if none.
std::optional<Index> alias_shift_banded(Index n, Index i, Index j, Index s, Index k1, Index k2);
/// Valid t minimizing |j + s t - i|; s must be odd.
std::optional<Index> alias_shift_symmetric(Index n, Index i, Index j, Index s);
/// Valid t minimizing |j + s t - i - ((s-1)/2)(L2 - L1)/(L1 + L2)| with
/// L1 = ln(1/lambda1) (upper side) and L2 = ln(1/lambda2) (lower side).
/// Ties: smallest |t|, then smallest t.
std::optional<Index> alias_shift_asymmetric(Index n, Index i, Index j, Index s, double lambda1, double lambda2);

struct BandRecovery {
  BandedMatrix B_hat;
  Index s = 0;
  std::uint64_t matvecs_used = 0;
  bool s_rounded = false;
  Matrix probes;  ///< B applied to the probing matrix, n x s
};

/// Places probe sums back into a banded matrix.
BandedMatrix bamram_reconstruct(const Matrix& probes, const BandSpec& spec);

BandRecovery bamram_recover(const LinearOperator& mvp, const BandSpec& spec);

/// Recovers B from an operator applying B^T; spec describes B.
BandRecovery bamram_recover_columns(const LinearOperator& mvp_transpose, const BandSpec& spec);

struct ErrorEstimate {
  double value = 0.0;
  bool degenerate = false;
  std::uint64_t matvecs_used = 0;
};

/// ||B_hat X - B X||_2 / ||B X||_2 for an n x n_probes gaussian X drawn from
/// `seed`. If B X = 0 the value is 0 when B_hat X = 0 too, else +inf with the
/// degenerate flag set.
ErrorEstimate bamram_error_estimate(const BandedMatrix& B_hat, const LinearOperator& mvp, Index n_probes = 5,
                                    std::uint64_t seed = 0);

}  // namespace matrecover
