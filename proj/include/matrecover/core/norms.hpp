#pragma once

#include "matrecover/core/types.hpp"

namespace matrecover {

enum class NormMode { exact, power_iteration };

/// Largest dimension accepted by NormMode::exact (dense SVD).
inline constexpr Index kDenseLimit = 4096;

struct NormResult {
  double value = 0.0;
  bool converged = true;
  int iterations = 0;
};

/// Spectral norm. exact runs a dense SVD and needs min(rows, cols) <= 4096;
/// power_iteration runs on M^T M with relative tolerance 1e-6 and at most 500
/// iterations, returning the best iterate and a convergence flag.
NormResult operator_norm_2(const Matrix& m, NormMode mode);
NormResult operator_norm_2(const SparseMatrix& m, NormMode mode);

/// exact below the dense limit, power iteration above it.
double norm2(const Matrix& m);
double norm2(const SparseMatrix& m);

/// Rescales m so that its spectral norm equals target. Throws InputError for a
/// zero matrix or non-positive target.
SparseMatrix scale_to_norm(const SparseMatrix& m, double target);

}  // namespace matrecover
