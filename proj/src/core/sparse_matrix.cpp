#include "matrecover/core/sparse_matrix.hpp"

namespace matrecover {

SparseMatrix sparse_from_triplets(Index rows, Index cols, const std::vector<Triplet>& entries) {
  require(rows >= 0 && cols >= 0, "negative matrix dimension");
  for (const auto& t : entries) {
    require(t.row() >= 0 && t.row() < rows && t.col() >= 0 && t.col() < cols, "triplet index out of range");
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

SparseMatrix sparse_from_dense(const Matrix& dense, double drop_tol) {
  std::vector<Triplet> entries;
  for (Index i = 0; i < dense.rows(); ++i)
    for (Index j = 0; j < dense.cols(); ++j)
      if (std::abs(dense(i, j)) > drop_tol) entries.emplace_back(i, j, dense(i, j));
  return sparse_from_triplets(dense.rows(), dense.cols(), entries);
}

bool has_canonical_storage(const SparseMatrix& m) {
  if (!m.isCompressed()) return false;
  const auto* outer = m.outerIndexPtr();
  const auto* inner = m.innerIndexPtr();
  for (Index i = 0; i < m.rows(); ++i) {
    for (auto p = outer[i]; p < outer[i + 1]; ++p) {
      if (inner[p] < 0 || inner[p] >= m.cols()) return false;
      if (p > outer[i] && inner[p] <= inner[p - 1]) return false;
    }
  }
  return outer[m.rows()] == m.nonZeros();
}

Index max_row_nnz(const SparseMatrix& m) {
  Index best = 0;
  for (Index i = 0; i < m.outerSize(); ++i) {
    Index count = 0;
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) ++count;
    best = std::max(best, count);
  }
  return best;
}

}  // namespace matrecover
