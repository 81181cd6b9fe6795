#include "matrecover/core/linear_operator.hpp"

#include <string>

#include "matrecover/core/banded_matrix.hpp"
#include "matrecover/core/parallel.hpp"

namespace matrecover {

LinearOperator::LinearOperator(Index n, ApplyFn fn, bool symmetric_hint)
    : n_(n),
      fn_(std::make_shared<const ApplyFn>(std::move(fn))),
      count_(std::make_shared<std::atomic<std::uint64_t>>(0)),
      symmetric_(symmetric_hint) {
  require(n > 0, "operator dimension must be positive");
  require(static_cast<bool>(*fn_), "operator apply function is empty");
}

LinearOperator LinearOperator::from_sparse(SparseMatrix a, bool symmetric_hint) {
  require(a.rows() == a.cols(), "operator matrix must be square");
  a.makeCompressed();
  auto shared = std::make_shared<const SparseMatrix>(std::move(a));
  return LinearOperator(
      shared->rows(), [shared](const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) { y.noalias() = *shared * x; },
      symmetric_hint);
}

LinearOperator LinearOperator::from_dense(Matrix a, bool symmetric_hint) {
  require(a.rows() == a.cols(), "operator matrix must be square");
  auto shared = std::make_shared<const Matrix>(std::move(a));
  return LinearOperator(
      shared->rows(), [shared](const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) { y.noalias() = *shared * x; },
      symmetric_hint);
}

LinearOperator LinearOperator::from_banded(BandedMatrix a, bool symmetric_hint) {
  auto shared = std::make_shared<const BandedMatrix>(std::move(a));
  return LinearOperator(
      shared->size(), [shared](const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) { y = shared->apply(x); },
      symmetric_hint);
}

void LinearOperator::apply(const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) const {
  if (x.size() != n_ || y.size() != n_) {
    throw InputError("operator of size " + std::to_string(n_) + " applied to vector of size " +
                     std::to_string(x.size()));
  }
  (*fn_)(x, y);
  count_->fetch_add(1, std::memory_order_relaxed);
}

Vector LinearOperator::apply(const Eigen::Ref<const Vector>& x) const {
  Vector y(n_);
  apply(x, y);
  return y;
}

Matrix LinearOperator::apply_block(const Eigen::Ref<const Matrix>& x) const {
  require(x.rows() == n_, "block rows do not match operator dimension");
  Matrix y(n_, x.cols());
  parallel_for(x.cols(), [&](Index j) {
    Vector out(n_);
    apply(x.col(j), out);
    y.col(j) = out;
  });
  return y;
}

}  // namespace matrecover
