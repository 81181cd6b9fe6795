#include "matrecover/core/norms.hpp"

#include <cmath>
#include <random>

namespace matrecover {
namespace {

constexpr double kPowerTol = 1e-6;
constexpr int kPowerMaxIters = 500;

template <typename M>
NormResult power_norm(const M& m) {
  NormResult result;
  if (m.rows() == 0 || m.cols() == 0) return result;
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Vector x(m.cols());
  for (auto& v : x) v = normal(rng);
  x.normalize();

  double estimate = 0.0;
  result.converged = false;
  for (int it = 1; it <= kPowerMaxIters; ++it) {
    Vector y = m * x;
    Vector z = m.transpose() * y;
    const double next = std::sqrt(std::max(0.0, x.dot(z)));
    result.iterations = it;
    const double znorm = z.norm();
    if (znorm == 0.0) {
      estimate = 0.0;
      result.converged = true;
      break;
    }
    x = z / znorm;
    if (std::abs(next - estimate) <= kPowerTol * next) {
      estimate = next;
      result.converged = true;
      break;
    }
    estimate = next;
  }
  result.value = estimate;
  return result;
}

}  // namespace

NormResult operator_norm_2(const Matrix& m, NormMode mode) {
  if (mode == NormMode::power_iteration) return power_norm(m);
  require(std::min(m.rows(), m.cols()) <= kDenseLimit, "exact 2-norm limited to dimension 4096");
  NormResult r;
  if (m.size() == 0) return r;
  using Solver = Eigen::SelfAdjointEigenSolver<Matrix>;
  if (m.rows() == m.cols() && m == m.transpose()) {
    r.value = Solver(m, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff();
    return r;
  }
  const Matrix gram = m.rows() >= m.cols() ? Matrix(m.transpose() * m) : Matrix(m * m.transpose());
  r.value = std::sqrt(std::max(0.0, Solver(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff()));
  return r;
}

NormResult operator_norm_2(const SparseMatrix& m, NormMode mode) {
  if (mode == NormMode::power_iteration) return power_norm(m);
  return operator_norm_2(Matrix(m), mode);
}

double norm2(const Matrix& m) {
  return operator_norm_2(m, std::min(m.rows(), m.cols()) <= kDenseLimit ? NormMode::exact : NormMode::power_iteration)
      .value;
}

double norm2(const SparseMatrix& m) {
  return operator_norm_2(m, std::min(m.rows(), m.cols()) <= kDenseLimit ? NormMode::exact : NormMode::power_iteration)
      .value;
}

SparseMatrix scale_to_norm(const SparseMatrix& m, double target) {
  require(target > 0.0, "target norm must be positive");
  const double current = norm2(m);
  require(current > 0.0, "cannot rescale a zero matrix");
  SparseMatrix out = m * (target / current);
  out.makeCompressed();
  return out;
}

}  // namespace matrecover
