#pragma once

#include <memory>
#include <vector>

#include "matrecover/core/types.hpp"
#include "matrecover/sensing.hpp"

namespace matrecover {

struct NihtConfig {
  Index k = 1;
  int max_iters = 100;
  double residual_tol = 1e-10;
  double stagnation_tol = 1e-14;
  double backtrack_shrink = 2.0;
  double backtrack_c = 0.01;

  void validate(Index n, Index s) const;
};

struct CsSolution {
  Vector v_hat;
  int iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
  bool degenerate = false;
};

/// Keeps the k largest-magnitude entries of v; ties go to the lowest index.
Vector hard_threshold(const Eigen::Ref<const Vector>& v, Index k);

/// Best k-term approximation (same as hard_threshold).
inline Vector best_k_term(const Eigen::Ref<const Vector>& v, Index k) { return hard_threshold(v, k); }

/// Indices of the k largest |v_i| in increasing index order (ties: lowest index).
std::vector<Index> top_k_support(const Eigen::Ref<const Vector>& v, Index k);

/// Normalized iterative hard thresholding for y = Y^T v with v k-sparse.
///
/// Starts from v = 0. Every iterate is k-sparse. Stops on relative residual
/// <= residual_tol, on stagnation ||v+ - v|| <= stagnation_tol ||v||, or after
/// max_iters, and returns the iterate with the smallest residual seen.
CsSolution niht_solve(const SensingOperator& y_op, const Eigen::Ref<const Vector>& y, const NihtConfig& cfg);

/// Pluggable sparse recovery backend.
class SparseSolver {
 public:
  virtual ~SparseSolver() = default;
  virtual CsSolution solve(const SensingOperator& y_op, const Eigen::Ref<const Vector>& y) const = 0;
  virtual Index sparsity() const = 0;
};

class NihtSolver final : public SparseSolver {
 public:
  explicit NihtSolver(NihtConfig cfg) : cfg_(cfg) {}
  CsSolution solve(const SensingOperator& y_op, const Eigen::Ref<const Vector>& y) const override {
    return niht_solve(y_op, y, cfg_);
  }
  Index sparsity() const override { return cfg_.k; }
  const NihtConfig& config() const { return cfg_; }

 private:
  NihtConfig cfg_;
};

}  // namespace matrecover
