#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "matrecover/core/linear_operator.hpp"
#include "matrecover/core/types.hpp"
#include "matrecover/greedy.hpp"
#include "matrecover/sensing.hpp"

namespace matrecover {

struct SpamramConfig {
  Index k = 1;
  Index s = 0;  ///< 0 selects ceil(2k ln(n/k)), capped at n
  SensingKind sensing = SensingKind::gaussian;
  std::optional<Index> xi;
  std::uint64_t seed = 0;
  NihtConfig niht;  ///< niht.k is overwritten with k
  Index fresh_probes = 0;
};

/// ceil(2k ln(n/k)) capped at n, and at least k.
Index spamram_default_s(Index n, Index k);

struct RecoveryReport {
  SparseMatrix B_hat;
  std::uint64_t matvecs_used = 0;
  double delta_RE = 0.0;
  Vector per_row_residuals;
  std::vector<int> per_row_iterations;
  Index failed_rows = 0;
  Index s = 0;
  Index k = 0;
  Matrix measurements;  ///< F_s = B Y, n x s
};

/// Recovers the rows of B from F_s = B Y, one sparse solve per row.
RecoveryReport spamram_recover(const LinearOperator& mvp, const SpamramConfig& cfg);

/// Same, with a caller-supplied solver for the rows.
RecoveryReport spamram_recover(const LinearOperator& mvp, const SpamramConfig& cfg, const SparseSolver& solver);

/// Recovers B column by column from an operator applying B^T.
RecoveryReport spamram_recover_columns(const LinearOperator& mvp_transpose, const SpamramConfig& cfg);

/// ||B_hat Y - F_s||_2 / ||F_s||_2, or 0 when F_s = 0.
double spamram_error_estimate(const SparseMatrix& B_hat, const SensingOperator& y_op, const Matrix& F_s);

/// Solves the rows listed in `rows` against stored measurements.
SparseMatrix spamram_solve_rows(const SensingOperator& y_op, const Matrix& F_s, const std::vector<Index>& rows,
                                const SparseSolver& solver, Vector* residuals = nullptr);

struct MeasurementCache {
  Index n = 0;
  Index s = 0;
  std::uint64_t seed = 0;
  SensingKind sensing = SensingKind::gaussian;
  Index xi = 0;
  Matrix F_s;

  SensingOperator rebuild_operator() const;
};

/// Binary layout: "SPMRMEAS", u64 n, u64 s, u64 seed, u32 kind, u32 xi, then
/// n*s little-endian doubles in row-major order.
void save_measurements(const std::filesystem::path& path, const SensingOperator& y_op, const Matrix& F_s);
MeasurementCache load_measurements(const std::filesystem::path& path);

}  // namespace matrecover
