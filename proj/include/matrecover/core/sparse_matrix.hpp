#pragma once

#include <vector>

#include "matrecover/core/types.hpp"

namespace matrecover {

/// Builds a compressed matrix; duplicate (i, j) entries are summed.
SparseMatrix sparse_from_triplets(Index rows, Index cols, const std::vector<Triplet>& entries);

/// Converts a dense matrix, keeping entries with |value| > drop_tol.
SparseMatrix sparse_from_dense(const Matrix& dense, double drop_tol = 0.0);

/// True when the storage is compressed, indices are in range and strictly
/// increasing within every row.
bool has_canonical_storage(const SparseMatrix& m);

/// Largest number of stored entries in any row.
Index max_row_nnz(const SparseMatrix& m);

}  // namespace matrecover
