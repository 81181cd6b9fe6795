#include "matrecover/core/banded_matrix.hpp"

#include <string>
#include <vector>

namespace matrecover {

BandedMatrix::BandedMatrix(Index n, Bandwidth bw) : n_(n), bw_(bw) {
  require(n > 0, "banded matrix dimension must be positive");
  require(bw.upper >= 0 && bw.lower >= 0, "bandwidths must be nonnegative");
  bw_.upper = std::min(bw.upper, n - 1);
  bw_.lower = std::min(bw.lower, n - 1);
  band_ = Matrix::Zero(n, bw_.width());
}

BandedMatrix BandedMatrix::from_dense(const Matrix& dense, Bandwidth bw) {
  require(dense.rows() == dense.cols(), "banded matrix must be square");
  BandedMatrix out(dense.rows(), bw);
  for (Index i = 0; i < out.n_; ++i)
    for (Index j = std::max<Index>(0, i - out.bw_.lower); j <= std::min(out.n_ - 1, i + out.bw_.upper); ++j)
      out.band_(i, j - i + out.bw_.lower) = dense(i, j);
  return out;
}

double& BandedMatrix::at(Index i, Index j) {
  if (!in_band(i, j)) {
    throw InputError("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") lies outside the band");
  }
  return band_(i, j - i + bw_.lower);
}

Vector BandedMatrix::apply(const Eigen::Ref<const Vector>& x) const {
  require(x.size() == n_, "banded apply: dimension mismatch");
  Vector y = Vector::Zero(n_);
  for (Index i = 0; i < n_; ++i) {
    const Index lo = std::max<Index>(0, i - bw_.lower);
    const Index hi = std::min(n_ - 1, i + bw_.upper);
    double acc = 0.0;
    for (Index j = lo; j <= hi; ++j) acc += band_(i, j - i + bw_.lower) * x[j];
    y[i] = acc;
  }
  return y;
}

Matrix BandedMatrix::apply_block(const Eigen::Ref<const Matrix>& x) const {
  require(x.rows() == n_, "banded apply: dimension mismatch");
  Matrix y(n_, x.cols());
  for (Index c = 0; c < x.cols(); ++c) y.col(c) = apply(Vector(x.col(c)));
  return y;
}

SparseMatrix BandedMatrix::to_sparse() const {
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(n_ * bw_.width()));
  for (Index i = 0; i < n_; ++i)
    for (Index j = std::max<Index>(0, i - bw_.lower); j <= std::min(n_ - 1, i + bw_.upper); ++j) {
      const double v = band_(i, j - i + bw_.lower);
      if (v != 0.0) entries.emplace_back(i, j, v);
    }
  SparseMatrix m(n_, n_);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

Matrix BandedMatrix::to_dense() const {
  Matrix d = Matrix::Zero(n_, n_);
  for (Index i = 0; i < n_; ++i)
    for (Index j = std::max<Index>(0, i - bw_.lower); j <= std::min(n_ - 1, i + bw_.upper); ++j)
      d(i, j) = band_(i, j - i + bw_.lower);
  return d;
}

BandedMatrix BandedMatrix::transpose() const {
  BandedMatrix t(n_, {bw_.lower, bw_.upper});
  for (Index i = 0; i < n_; ++i)
    for (Index j = std::max<Index>(0, i - bw_.lower); j <= std::min(n_ - 1, i + bw_.upper); ++j)
      t.at(j, i) = band_(i, j - i + bw_.lower);
  return t;
}

}  // namespace matrecover
