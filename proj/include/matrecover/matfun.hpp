#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "matrecover/core/linear_operator.hpp"
#include "matrecover/core/types.hpp"

namespace matrecover {

enum class MatFun { exp, sqrt, log, sqrt1p, log1p };

std::string_view to_string(MatFun f);
MatFun parse_matfun(std::string_view name);

/// Scalar evaluation; throws NumericalError outside the real domain.
double apply_scalar(MatFun f, double x);

struct PolyKrylov {
  Index steps = 20;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

struct Contour {
  Index points = 50;
  std::optional<Interval> interval;  ///< spectrum of the operator f acts on
};

struct MatFunSpec {
  MatFun f = MatFun::exp;
  std::variant<PolyKrylov, Contour> method = PolyKrylov{};

  /// exp: 20 Krylov steps; sqrt, log, sqrt1p, log1p: 50 contour points.
  static MatFunSpec defaults(MatFun f, Index krylov_steps = 20, Index contour_points = 50);
  void validate() const;
};

struct KrylovBasis {
  Matrix V;  ///< n x m, orthonormal columns
  Matrix H;  ///< m x m projection
  double beta = 0.0;
  double residual = 0.0;  ///< norm of the unused next basis direction
  bool breakdown = false;
  bool symmetric = false;
};

/// Arnoldi with full re-orthogonalization. Stops early on breakdown.
KrylovBasis arnoldi(const LinearOperator& op, const Eigen::Ref<const Vector>& b, Index m);
/// Lanczos with full re-orthogonalization; H is symmetric tridiagonal.
KrylovBasis lanczos(const LinearOperator& op, const Eigen::Ref<const Vector>& b, Index m);

/// beta V f(H) e1. Lanczos when the operator is flagged symmetric, Arnoldi
/// otherwise.
Vector krylov_apply(const LinearOperator& op, const Eigen::Ref<const Vector>& b, MatFun f, Index m);

/// Quadrature nodes for f(A) = sum_j weight_j (z_j I - A)^{-1} (imaginary part
/// taken), obtained from a conformal map of the square-root plane.
struct ContourRule {
  std::vector<std::complex<double>> nodes;    ///< z_j
  std::vector<std::complex<double>> weights;  ///< f(z_j) dz_j scaled
  static ContourRule build(MatFun f, Index points, Interval interval);
};

/// Solves (z_j I - A) x_j = b for every node z_j.
using ShiftedSolve = std::function<std::vector<ComplexVector>(const std::vector<std::complex<double>>& nodes,
                                                              const Eigen::Ref<const Vector>& b)>;

/// Multi-shift conjugate gradients on the SPD seed A for (A + sigma_j I) x = b.
struct ShiftedCgResult {
  std::vector<ComplexVector> solutions;
  int iterations = 0;
  double worst_residual = 0.0;
  std::complex<double> worst_shift{};
  bool converged = false;
};
ShiftedCgResult shifted_cg_solve(const LinearOperator& a, const Eigen::Ref<const Vector>& b,
                                 const std::vector<std::complex<double>>& shifts, double tol = 1e-12,
                                 int max_iters = 1000);

/// f(A) b by contour quadrature; f in {sqrt, log}. Uses multi-shift CG.
Vector contour_apply(const LinearOperator& op, const Eigen::Ref<const Vector>& b, MatFun f, Index points,
                     Interval interval);
/// Same, with a caller-provided resolvent solver.
Vector contour_apply(const Eigen::Ref<const Vector>& b, MatFun f, Index points, Interval interval,
                     const ShiftedSolve& solve);

struct SpectrumEstimate {
  Interval interval;
  double ritz_low = 0.0;
  double ritz_high = 0.0;
  bool confident = false;
};

/// Extremal Lanczos Ritz values widened by 0.9 (low) and 1.1 (high).
SpectrumEstimate estimate_spectrum_interval(const LinearOperator& op, Index probe_steps = 60,
                                            std::uint64_t seed = 0);

/// Operator x -> f(A) x, matvec-only. Inner A matvecs accrue on `a`.
LinearOperator matfun_operator(const LinearOperator& a, const MatFunSpec& spec);
/// Operator x -> f(A) x with sparse direct solves for the contour path.
LinearOperator matfun_operator(const LinearOperator& a, const SparseMatrix& explicit_a, const MatFunSpec& spec);

/// Dense reference f(A): eigendecomposition for symmetric A, Schur-based
/// otherwise.
Matrix dense_matrix_function(const Matrix& a, MatFun f);

}  // namespace matrecover
