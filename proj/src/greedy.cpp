#include "matrecover/greedy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace matrecover {
namespace {

constexpr int kMaxBacktracks = 60;

// Magnitude order with lowest-index tie-break; a strict total order.
struct ByMagnitude {
  const double* abs;
  bool operator()(Index a, Index b) const { return abs[a] > abs[b] || (abs[a] == abs[b] && a < b); }
};

void select_top_k(std::vector<Index>& candidates, const double* abs, Index k) {
  const auto kk = static_cast<std::size_t>(k);
  if (candidates.size() > kk) {
    std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(kk), candidates.end(),
                     ByMagnitude{abs});
    candidates.resize(kk);
  }
  std::sort(candidates.begin(), candidates.end());
}

}  // namespace

void NihtConfig::validate(Index n, Index s) const {
  require(k >= 1, "sparsity k must be at least 1");
  require(k <= s && s <= n, "NIHT requires k <= s <= n (k=" + std::to_string(k) + ", s=" + std::to_string(s) +
                                ", n=" + std::to_string(n) + ")");
  require(max_iters >= 1, "max_iters must be at least 1");
  require(residual_tol >= 0.0 && stagnation_tol >= 0.0, "tolerances must be nonnegative");
  require(backtrack_shrink > 1.0, "backtrack_shrink must exceed 1");
  require(backtrack_c > 0.0 && backtrack_c < 1.0, "backtrack_c must lie in (0, 1)");
}

std::vector<Index> top_k_support(const Eigen::Ref<const Vector>& v, Index k) {
  require(k >= 1 && k <= v.size(), "k out of range for hard thresholding");
  const Vector abs = v.cwiseAbs();
  std::vector<Index> idx(static_cast<std::size_t>(v.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  select_top_k(idx, abs.data(), k);
  return idx;
}

Vector hard_threshold(const Eigen::Ref<const Vector>& v, Index k) {
  Vector out = Vector::Zero(v.size());
  for (Index i : top_k_support(v, k)) out[i] = v[i];
  return out;
}

CsSolution niht_solve(const SensingOperator& y_op, const Eigen::Ref<const Vector>& y, const NihtConfig& cfg) {
  const Index n = y_op.n();
  const Index s = y_op.s();
  cfg.validate(n, s);
  require(y.size() == s, "measurement vector length must equal s");

  CsSolution out;
  out.v_hat = Vector::Zero(n);
  const double y_norm = y.norm();
  out.residual_norm = y_norm;
  if (y_norm == 0.0) {
    out.converged = true;
    return out;
  }
  const double target = cfg.residual_tol * y_norm;

  // Current iterate in support form; `support` is sorted.
  std::vector<Index> support;
  Vector values;
  Vector dense_v = Vector::Zero(n);

  Vector residual = y;
  double residual_norm = y_norm;
  Vector g = y_op.forward_apply(residual);
  Vector abs_g(n), abs_w(n);
  std::vector<char> on_support(static_cast<std::size_t>(n), 0);

  std::vector<Index> best_support;
  Vector best_values;
  double best_residual = y_norm;

  std::vector<Index> gamma;  // support used for the step size
  std::vector<Index> off_candidates, candidates, next_support;
  candidates.reserve(static_cast<std::size_t>(2 * cfg.k));

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    abs_g = g.cwiseAbs();
    if (support.empty()) {
      std::vector<Index> all(static_cast<std::size_t>(n));
      std::iota(all.begin(), all.end(), Index{0});
      select_top_k(all, abs_g.data(), cfg.k);
      gamma = std::move(all);
    } else {
      gamma = support;
    }

    Vector g_gamma(static_cast<Index>(gamma.size()));
    for (std::size_t p = 0; p < gamma.size(); ++p) g_gamma[static_cast<Index>(p)] = g[gamma[p]];
    const double num = g_gamma.squaredNorm();
    const double den = y_op.adjoint_apply_sparse(gamma, g_gamma).squaredNorm();
    out.iterations = iter;
    if (den == 0.0 || num == 0.0) {
      out.degenerate = den == 0.0 && num != 0.0;
      if (num == 0.0 && den == 0.0) out.degenerate = residual_norm > target;
      break;
    }
    double mu = num / den;

    // Off-support entries of v + mu g are mu g, so their ranking does not
    // depend on mu: the top k of them are the only ones that can enter.
    off_candidates.clear();
    for (Index i = 0; i < n; ++i)
      if (!on_support[static_cast<std::size_t>(i)]) off_candidates.push_back(i);
    select_top_k(off_candidates, abs_g.data(), std::min<Index>(cfg.k, static_cast<Index>(off_candidates.size())));

    Vector next_values;
    double step_norm = 0.0;
    for (int bt = 0;; ++bt) {
      candidates = support;
      candidates.insert(candidates.end(), off_candidates.begin(), off_candidates.end());
      for (Index i : candidates) abs_w[i] = std::abs(dense_v[i] + mu * g[i]);
      next_support = candidates;
      select_top_k(next_support, abs_w.data(), std::min<Index>(cfg.k, static_cast<Index>(next_support.size())));

      next_values.resize(static_cast<Index>(next_support.size()));
      for (std::size_t p = 0; p < next_support.size(); ++p) {
        const Index i = next_support[p];
        next_values[static_cast<Index>(p)] = dense_v[i] + mu * g[i];
      }

      // Step delta = v+ - v over the union of both supports.
      std::vector<Index> united;
      united.reserve(support.size() + next_support.size());
      std::set_union(support.begin(), support.end(), next_support.begin(), next_support.end(),
                     std::back_inserter(united));
      Vector delta(static_cast<Index>(united.size()));
      {
        std::size_t a = 0;
        for (std::size_t p = 0; p < united.size(); ++p) {
          const Index i = united[p];
          double next = 0.0;
          while (a < next_support.size() && next_support[a] < i) ++a;
          if (a < next_support.size() && next_support[a] == i) next = next_values[static_cast<Index>(a)];
          delta[static_cast<Index>(p)] = next - dense_v[i];
        }
      }
      step_norm = delta.norm();

      if (next_support == support || bt >= kMaxBacktracks) break;
      const double image = y_op.adjoint_apply_sparse(united, delta).squaredNorm();
      if (image == 0.0) break;
      const double omega = (1.0 - cfg.backtrack_c) * delta.squaredNorm() / image;
      if (mu <= omega) break;
      mu /= cfg.backtrack_shrink;
    }

    const double v_norm = values.size() ? values.norm() : 0.0;
    const bool same_support = next_support == support;
    for (Index i : support) {
      dense_v[i] = 0.0;
      on_support[static_cast<std::size_t>(i)] = 0;
    }
    support = next_support;
    values = next_values;
    for (std::size_t p = 0; p < support.size(); ++p) {
      dense_v[support[p]] = values[static_cast<Index>(p)];
      on_support[static_cast<std::size_t>(support[p])] = 1;
    }
    assert(static_cast<Index>(support.size()) <= cfg.k);

    residual = y - y_op.adjoint_apply_sparse(support, values);
    residual_norm = residual.norm();
    if (residual_norm < best_residual) {
      best_residual = residual_norm;
      best_support = support;
      best_values = values;
    }
    if (residual_norm <= target) {
      out.converged = true;
      break;
    }
    if (same_support && step_norm <= cfg.stagnation_tol * v_norm) {
      out.converged = true;
      break;
    }
    g = y_op.forward_apply(residual);
  }

  for (std::size_t p = 0; p < best_support.size(); ++p) out.v_hat[best_support[p]] = best_values[static_cast<Index>(p)];
  out.residual_norm = best_residual;
  if (out.degenerate) out.converged = false;
  return out;
}

}  // namespace matrecover
