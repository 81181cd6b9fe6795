#pragma once

// Dense reference implementations used by the tests. Nothing here calls the
// library's algorithms; only its containers.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

inline Vector random_vector(Index n, std::uint64_t seed) { return random_matrix(n, 1, seed).col(0); }

/// Random (k1, k2)-banded dense matrix.
inline Matrix random_banded(Index n, Index k1, Index k2, std::uint64_t seed) {
  Matrix m = random_matrix(n, n, seed);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (j - i > k1 || i - j > k2) m(i, j) = 0.0;
  return m;
}

/// Symmetric (k, k)-banded with spectral norm `norm`.
inline Matrix random_symmetric_banded(Index n, Index k, double norm, std::uint64_t seed) {
  Matrix m = random_banded(n, k, k, seed);
  Matrix s = m.triangularView<Eigen::Upper>();
  s += Matrix(s.triangularView<Eigen::StrictlyUpper>()).transpose();
  return s * (norm / Eigen::SelfAdjointEigenSolver<Matrix>(s, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().maxCoeff());
}

/// Random symmetric positive definite matrix with eigenvalues in [lo, hi].
inline Matrix random_spd(Index n, double lo, double hi, std::uint64_t seed) {
  const Matrix q = random_matrix(n, n, seed).householderQr().householderQ();
  Vector ev(n);
  for (Index i = 0; i < n; ++i) ev[i] = lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / double(n - 1));
  return q * ev.asDiagonal() * q.transpose();
}

/// B(i, j) = c * lambda^|i - j|.
inline Matrix exact_decay(Index n, double c, double lambda) {
  Matrix b(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) b(i, j) = c * std::pow(lambda, double(std::abs(i - j)));
  return b;
}

/// Materialized probe block: ones at rows r = j (mod s).
inline Matrix probes(Index n, Index s) {
  Matrix p = Matrix::Zero(n, s);
  for (Index r = 0; r < n; ++r) p(r, r % s) = 1.0;
  return p;
}

/// Brute-force alias search over every valid shift; ties broken by |t| then t.
inline std::optional<Index> nearest_alias(Index n, Index j, Index s, double center) {
  std::optional<Index> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (Index t = -n; t <= n; ++t) {
    const Index r = j + s * t;
    if (r < 0 || r >= n) continue;
    const double d = std::abs(double(r) - center);
    if (!best || d < best_dist || (d == best_dist && (std::abs(t) < std::abs(*best) ||
                                                      (std::abs(t) == std::abs(*best) && t < *best)))) {
      best = t;
      best_dist = d;
    }
  }
  return best;
}

/// Shift t with j + s t inside [i - k2, i + k1] and [0, n), by search.
inline std::optional<Index> banded_alias(Index n, Index i, Index j, Index s, Index k1, Index k2) {
  for (Index t = -n; t <= n; ++t) {
    const Index r = j + s * t;
    if (r >= 0 && r < n && r - i <= k1 && i - r <= k2) return t;
  }
  return std::nullopt;
}

/// Orthonormal DCT-II matrix, T(k, j) = c_k cos(pi k (2j + 1) / 2n).
inline Matrix dct_matrix(Index n) {
  Matrix t(n, n);
  for (Index k = 0; k < n; ++k) {
    const double c = k == 0 ? std::sqrt(1.0 / double(n)) : std::sqrt(2.0 / double(n));
    for (Index j = 0; j < n; ++j) t(k, j) = c * std::cos(kPi * double(k) * double(2 * j + 1) / double(2 * n));
  }
  return t;
}

inline double norm2(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const Matrix g = m.rows() >= m.cols() ? Matrix(m.transpose() * m) : Matrix(m * m.transpose());
  return std::sqrt(std::max(0.0, Eigen::SelfAdjointEigenSolver<Matrix>(g, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff()));
}

inline double rel_err(const Matrix& approx, const Matrix& exact) { return norm2(approx - exact) / norm2(exact); }

/// Scaling-and-squaring Pade exponential.
inline Matrix expm(const Matrix& a) { return a.exp(); }
/// Schur-based principal square root.
inline Matrix sqrtm(const Matrix& a) { return a.sqrt(); }
/// Schur-based principal logarithm.
inline Matrix logm(const Matrix& a) { return a.log(); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

/// Best k-term error terms: ||v - v_k||_2 + ||v - v_k||_1 / sqrt(k).
inline double eps_k(const Vector& v, Index k) {
  std::vector<double> mags(v.data(), v.data() + v.size());
  for (auto& m : mags) m = std::abs(m);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double tail2 = 0.0, tail1 = 0.0;
  for (std::size_t i = static_cast<std::size_t>(k); i < mags.size(); ++i) {
    tail2 += mags[i] * mags[i];
    tail1 += mags[i];
  }
  return std::sqrt(tail2) + tail1 / std::sqrt(double(k));
}

/// The 6 x 6 matrix with upper bandwidth 2 and lower bandwidth 1 whose entries
/// are a_i (below), b_i (diagonal), c_i, d_i (above), numbered from 1.
struct SixBySix {
  Matrix a6 = Matrix::Zero(6, 6);
  Matrix probed = Matrix::Zero(6, 4);
  SixBySix() {
    auto a = [](int i) { return 10.0 + i; };
    auto b = [](int i) { return 20.0 + i; };
    auto c = [](int i) { return 30.0 + i; };
    auto d = [](int i) { return 40.0 + i; };
    for (int i = 1; i <= 6; ++i) {
      a6(i - 1, i - 1) = b(i);
      if (i <= 5) a6(i - 1, i) = c(i);
      if (i <= 4) a6(i - 1, i + 1) = d(i);
      if (i <= 5) a6(i, i - 1) = a(i);
    }
    probed << b(1), c(1), d(1), 0,
              a(1), b(2), c(2), d(2),
              d(3), a(2), b(3), c(3),
              c(4), d(4), a(3), b(4),
              b(5), c(5), 0, a(4),
              a(5), b(6), 0, 0;
  }
};

}  // namespace oracle
