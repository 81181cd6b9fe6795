#include "matrecover/kron.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "matrecover/bamram.hpp"

namespace matrecover {
namespace {

// x -> first block of mvp([x; 0]).
LinearOperator leading_block(const LinearOperator& mvp, Index n) {
  return LinearOperator(n, [mvp, n](const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) {
    Vector full = Vector::Zero(n * n);
    full.head(n) = x;
    y = mvp.apply(full).head(n);
  });
}

// x -> entries (a, 0) of mvp(P^T [x; 0]).
LinearOperator shuffled_block(const LinearOperator& mvp, Index n) {
  return LinearOperator(n, [mvp, n](const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) {
    Vector full = Vector::Zero(n * n);
    for (Index a = 0; a < n; ++a) full[a * n] = x[a];
    const Vector out = mvp.apply(full);
    for (Index a = 0; a < n; ++a) y[a] = out[a * n];
  });
}

}  // namespace

PerfectShuffle::PerfectShuffle(Index n) : n_(n) { require(n >= 1, "shuffle block size must be positive"); }

Vector PerfectShuffle::apply(const Eigen::Ref<const Vector>& x) const {
  require(x.size() == size(), "shuffle: vector length must be n^2");
  Vector y(size());
  for (Index idx = 0; idx < size(); ++idx) y[map(idx)] = x[idx];
  return y;
}

Index kron_block_size(Index total) {
  require(total >= 1, "operator dimension must be positive");
  auto n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(total))));
  while (n * n > total) --n;
  while ((n + 1) * (n + 1) <= total) ++n;
  if (n * n != total) throw InputError("dimension " + std::to_string(total) + " is not a perfect square");
  return n;
}

KronSumRecovery kron_sum_recover(const LinearOperator& mvp, Bandwidth bw1, Bandwidth bw2) {
  const Index n = kron_block_size(mvp.size());
  const std::uint64_t before = mvp.matvec_count();
  KronSumRecovery rec;
  rec.A2_shifted = bamram_recover(leading_block(mvp, n), BandSpec::exact(bw2.upper, bw2.lower)).B_hat;
  rec.A1_shifted = bamram_recover(shuffled_block(mvp, n), BandSpec::exact(bw1.upper, bw1.lower)).B_hat;
  rec.matvecs_used = mvp.matvec_count() - before;

  const double corner = rec.A1_shifted(0, 0);
  rec.diagonal.resize(n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) rec.diagonal[a * n + b] = rec.A1_shifted(a, a) + rec.A2_shifted(b, b) - corner;
  return rec;
}

KronSumRecovery kron_sum_recover(const LinearOperator& mvp, Index k1, Index k2) {
  return kron_sum_recover(mvp, Bandwidth::symmetric(k1), Bandwidth::symmetric(k2));
}

SparseMatrix KronSumRecovery::assemble() const {
  const Index n = A1_shifted.size();
  const SparseMatrix a1 = A1_shifted.to_sparse();
  const SparseMatrix a2 = A2_shifted.to_sparse();
  std::vector<Triplet> entries;
  for (Index a = 0; a < n; ++a) {
    for (SparseMatrix::InnerIterator it(a1, a); it; ++it)
      if (it.col() != a)
        for (Index b = 0; b < n; ++b) entries.emplace_back(a * n + b, it.col() * n + b, it.value());
    for (Index b = 0; b < n; ++b) {
      for (SparseMatrix::InnerIterator it(a2, b); it; ++it)
        if (it.col() != b) entries.emplace_back(a * n + b, a * n + it.col(), it.value());
      const double d = diagonal[a * n + b];
      if (d != 0.0) entries.emplace_back(a * n + b, a * n + b, d);
    }
  }
  SparseMatrix m(n * n, n * n);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

KronExpRecovery kron_exp_recover(const LinearOperator& mvp, Index s1, Index s2) {
  require(s1 >= 1 && s2 >= 1, "block sizes must be positive");
  const Index n = kron_block_size(mvp.size());
  const BandSpec spec1 = BandSpec::symmetric_block(s1);
  const BandSpec spec2 = BandSpec::symmetric_block(s2);
  const std::uint64_t before = mvp.matvec_count();

  KronExpRecovery rec;
  rec.s1 = spec1.block_size();
  rec.s2 = spec2.block_size();
  BandedMatrix g2 = bamram_recover(leading_block(mvp, n), spec2).B_hat;
  rec.F1 = bamram_recover(shuffled_block(mvp, n), spec1).B_hat;
  rec.matvecs_used = mvp.matvec_count() - before;

  const double pivot = g2(0, 0);
  if (pivot == 0.0) throw NumericalError("leading entry of the recovered factor is zero; cannot normalize");
  const Bandwidth bw = g2.bandwidth();
  rec.F2 = BandedMatrix(n, bw);
  for (Index i = 0; i < n; ++i)
    for (Index j = std::max<Index>(0, i - bw.lower); j <= std::min(n - 1, i + bw.upper); ++j)
      rec.F2.at(i, j) = g2(i, j) / pivot;
  return rec;
}

Vector KronExpRecovery::apply(const Eigen::Ref<const Vector>& x) const {
  const Index n = F1.size();
  require(x.size() == n * n, "factored apply: vector length must be n^2");
  // Row-major reshape: X(a, b) = x(a n + b); (F1 kron F2) x = vec(F1 X F2^T).
  Matrix xm(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) xm(a, b) = x[a * n + b];
  const Matrix left = F1.apply_block(xm);
  const Matrix out = F2.apply_block(Matrix(left.transpose())).transpose();
  Vector y(n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) y[a * n + b] = out(a, b);
  return y;
}

Matrix KronExpRecovery::to_dense() const {
  const Matrix f1 = F1.to_dense();
  const Matrix f2 = F2.to_dense();
  const Index n = f1.rows();
  Matrix k(n * n, n * n);
  for (Index a = 0; a < n; ++a)
    for (Index c = 0; c < n; ++c) k.block(a * n, c * n, n, n) = f1(a, c) * f2;
  return k;
}

}  // namespace matrecover
