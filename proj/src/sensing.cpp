#include "matrecover/sensing.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <string>

namespace matrecover {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(Index n) : data(static_cast<double*>(fftw_malloc(sizeof(double) * static_cast<std::size_t>(n)))) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  double* data;
};

void run_r2r(Index n, fftw_r2r_kind kind, const double* in, double* out) {
  FftwBuffer a(n), b(n);
  std::copy(in, in + n, a.data);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_r2r_1d(static_cast<int>(n), a.data, b.data, kind, FFTW_ESTIMATE);
  }
  if (!plan) throw NumericalError("FFTW plan creation failed for n = " + std::to_string(n));
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  std::copy(b.data, b.data + n, out);
}

// Partial Fisher-Yates: `count` distinct values from [0, n).
std::vector<Index> sample_without_replacement(Index n, Index count, std::mt19937_64& rng) {
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index i = 0; i < count; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
  }
  pool.resize(static_cast<std::size_t>(count));
  return pool;
}

}  // namespace

std::string_view to_string(SensingKind kind) {
  switch (kind) {
    case SensingKind::gaussian: return "gaussian";
    case SensingKind::subsampled_dct: return "dct";
    case SensingKind::sparse_rademacher: return "sparse";
  }
  return "unknown";
}

SensingKind parse_sensing_kind(std::string_view name) {
  if (name == "gaussian") return SensingKind::gaussian;
  if (name == "dct" || name == "subsampled_dct") return SensingKind::subsampled_dct;
  if (name == "sparse" || name == "sparse_rademacher") return SensingKind::sparse_rademacher;
  throw InputError("unknown sensing kind '" + std::string(name) + "'");
}

Vector dct2_orthonormal(const Eigen::Ref<const Vector>& x) {
  const Index n = x.size();
  Vector out(n);
  if (n == 0) return out;
  Vector in = x;
  run_r2r(n, FFTW_REDFT10, in.data(), out.data());
  const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  out *= scale;
  out[0] /= std::sqrt(2.0);
  return out;
}

Vector dct3_orthonormal(const Eigen::Ref<const Vector>& x) {
  const Index n = x.size();
  Vector out(n);
  if (n == 0) return out;
  Vector in = x / std::sqrt(2.0 * static_cast<double>(n));
  in[0] = x[0] / std::sqrt(static_cast<double>(n));
  run_r2r(n, FFTW_REDFT01, in.data(), out.data());
  return out;
}

SensingOperator SensingOperator::build(Index n, Index s, SensingKind kind, std::uint64_t seed,
                                       std::optional<Index> xi) {
  require(n >= 1, "sensing dimension must be positive");
  require(s >= 1 && s <= n, "measurement count must satisfy 1 <= s <= n");

  SensingOperator op;
  op.n_ = n;
  op.s_ = s;
  op.kind_ = kind;
  op.seed_ = seed;
  std::mt19937_64 rng(seed);

  switch (kind) {
    case SensingKind::gaussian: {
      std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(s)));
      op.yt_.resize(s, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < s; ++j) op.yt_(j, i) = normal(rng);
      break;
    }
    case SensingKind::subsampled_dct: {
      op.dct_rows_ = sample_without_replacement(n, s, rng);
      std::sort(op.dct_rows_.begin(), op.dct_rows_.end());
      break;
    }
    case SensingKind::sparse_rademacher: {
      const Index x = xi.value_or(std::min<Index>(8, s));
      require(x >= 1 && x <= s, "sparsity parameter xi must satisfy 1 <= xi <= s");
      op.xi_ = x;
      const double value = 1.0 / std::sqrt(static_cast<double>(x));
      std::bernoulli_distribution coin(0.5);
      std::vector<Triplet> entries;
      entries.reserve(static_cast<std::size_t>(n * x));
      for (Index i = 0; i < n; ++i) {
        for (Index c : sample_without_replacement(s, x, rng)) entries.emplace_back(i, c, coin(rng) ? value : -value);
      }
      op.sparse_y_.resize(n, s);
      op.sparse_y_.setFromTriplets(entries.begin(), entries.end());
      op.sparse_y_.makeCompressed();
      op.sparse_yt_ = op.sparse_y_.transpose();
      op.sparse_yt_.makeCompressed();
      break;
    }
  }
  return op;
}

Vector SensingOperator::adjoint_apply(const Eigen::Ref<const Vector>& v) const {
  require(v.size() == n_, "sensing adjoint: expected length " + std::to_string(n_));
  switch (kind_) {
    case SensingKind::gaussian: return yt_ * v;
    case SensingKind::subsampled_dct: {
      const Vector full = dct2_orthonormal(v);
      const double scale = std::sqrt(static_cast<double>(n_) / static_cast<double>(s_));
      Vector out(s_);
      for (Index j = 0; j < s_; ++j) out[j] = scale * full[dct_rows_[static_cast<std::size_t>(j)]];
      return out;
    }
    case SensingKind::sparse_rademacher: return sparse_yt_ * v;
  }
  return {};
}

Vector SensingOperator::forward_apply(const Eigen::Ref<const Vector>& w) const {
  require(w.size() == s_, "sensing forward: expected length " + std::to_string(s_));
  switch (kind_) {
    case SensingKind::gaussian: return yt_.transpose() * w;
    case SensingKind::subsampled_dct: {
      const double scale = std::sqrt(static_cast<double>(n_) / static_cast<double>(s_));
      Vector full = Vector::Zero(n_);
      for (Index j = 0; j < s_; ++j) full[dct_rows_[static_cast<std::size_t>(j)]] = scale * w[j];
      return dct3_orthonormal(full);
    }
    case SensingKind::sparse_rademacher: return sparse_y_ * w;
  }
  return {};
}

Vector SensingOperator::adjoint_apply_sparse(const std::vector<Index>& support,
                                             const Eigen::Ref<const Vector>& values) const {
  require(static_cast<Index>(support.size()) == values.size(), "support and values differ in length");
  if (kind_ == SensingKind::gaussian) {
    Vector out = Vector::Zero(s_);
    for (std::size_t p = 0; p < support.size(); ++p) out.noalias() += values[static_cast<Index>(p)] * yt_.col(support[p]);
    return out;
  }
  Vector dense = Vector::Zero(n_);
  for (std::size_t p = 0; p < support.size(); ++p) dense[support[p]] = values[static_cast<Index>(p)];
  return adjoint_apply(dense);
}

Matrix SensingOperator::right_multiply(const SparseMatrix& m) const {
  require(m.cols() == n_, "right_multiply: column count must equal n");
  switch (kind_) {
    case SensingKind::gaussian: return m * yt_.transpose();
    case SensingKind::sparse_rademacher: return Matrix(m * sparse_y_);
    case SensingKind::subsampled_dct: {
      Matrix out(m.rows(), s_);
      for (Index i = 0; i < m.rows(); ++i) out.row(i) = adjoint_apply(Vector(m.row(i).transpose())).transpose();
      return out;
    }
  }
  return {};
}

Matrix SensingOperator::to_dense() const {
  Matrix y(n_, s_);
  for (Index j = 0; j < s_; ++j) y.col(j) = forward_apply(Vector::Unit(s_, j));
  return y;
}

}  // namespace matrecover
