#include "matrecover/matfun.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace matrecover {
namespace {

constexpr double kBreakdownTol = 1e-13;

[[noreturn]] void domain_error(MatFun f, double value) {
  std::ostringstream msg;
  msg.precision(17);
  msg << to_string(f) << " is undefined at eigenvalue " << value;
  throw NumericalError(msg.str());
}

// Gram-Schmidt against the first `count` columns of v, twice.
void orthogonalize(const Matrix& v, Index count, Vector& w, Eigen::Ref<Vector> coeffs) {
  coeffs.head(count).setZero();
  for (int pass = 0; pass < 2; ++pass) {
    const Vector h = v.leftCols(count).transpose() * w;
    w.noalias() -= v.leftCols(count) * h;
    coeffs.head(count) += h;
  }
}

KrylovBasis build_basis(const LinearOperator& op, const Eigen::Ref<const Vector>& b, Index m, bool symmetric) {
  const Index n = op.size();
  require(b.size() == n, "Krylov start vector has the wrong length");
  require(m >= 1, "Krylov step count must be positive");
  const double beta = b.norm();
  require(beta > 0.0, "Krylov start vector must be nonzero");
  m = std::min(m, n);

  KrylovBasis basis;
  basis.symmetric = symmetric;
  basis.beta = beta;
  Matrix v(n, m);
  Matrix h = Matrix::Zero(m, m);
  v.col(0) = b / beta;
  Index steps = m;
  Vector w(n);
  Vector coeffs(m);
  for (Index j = 0; j < m; ++j) {
    op.apply(v.col(j), w);
    const double w_norm = w.norm();
    orthogonalize(v, j + 1, w, coeffs);
    if (symmetric) {
      h(j, j) = coeffs[j];
    } else {
      h.col(j).head(j + 1) = coeffs.head(j + 1);
    }
    const double next = w.norm();
    basis.residual = next;
    if (next <= kBreakdownTol * w_norm || w_norm == 0.0) {
      basis.breakdown = true;
      steps = j + 1;
      break;
    }
    if (j + 1 == m) break;
    h(j + 1, j) = next;
    if (symmetric) h(j, j + 1) = next;
    v.col(j + 1) = w / next;
  }
  basis.V = v.leftCols(steps);
  basis.H = h.topLeftCorner(steps, steps);
  return basis;
}

Vector projected_function(const KrylovBasis& basis, MatFun f) {
  const Index m = basis.H.rows();
  if (basis.symmetric) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(basis.H);
    Vector fvals(m);
    for (Index i = 0; i < m; ++i) fvals[i] = apply_scalar(f, es.eigenvalues()[i]);
    const Matrix& q = es.eigenvectors();
    return q * fvals.cwiseProduct(q.row(0).transpose());
  }
  Matrix h = basis.H;
  if (f == MatFun::sqrt1p || f == MatFun::log1p) h += Matrix::Identity(m, m);
  if (f != MatFun::exp) {
    const Eigen::VectorXcd ev = h.eigenvalues();
    for (Index i = 0; i < m; ++i) {
      const auto lam = ev[i];
      if (std::abs(lam.imag()) <= 1e-14 * std::abs(lam) && lam.real() <= 0.0) domain_error(f, lam.real());
    }
  }
  Matrix fh;
  switch (f) {
    case MatFun::exp: fh = h.exp(); break;
    case MatFun::sqrt:
    case MatFun::sqrt1p: fh = h.sqrt(); break;
    case MatFun::log:
    case MatFun::log1p: fh = h.log(); break;
  }
  return fh.col(0);
}

}  // namespace

std::string_view to_string(MatFun f) {
  switch (f) {
    case MatFun::exp: return "exp";
    case MatFun::sqrt: return "sqrt";
    case MatFun::log: return "log";
    case MatFun::sqrt1p: return "sqrt1p";
    case MatFun::log1p: return "log1p";
  }
  return "unknown";
}

MatFun parse_matfun(std::string_view name) {
  if (name == "exp") return MatFun::exp;
  if (name == "sqrt") return MatFun::sqrt;
  if (name == "log") return MatFun::log;
  if (name == "sqrt1p") return MatFun::sqrt1p;
  if (name == "log1p") return MatFun::log1p;
  throw InputError("unknown matrix function '" + std::string(name) + "'");
}

double apply_scalar(MatFun f, double x) {
  switch (f) {
    case MatFun::exp: return std::exp(x);
    case MatFun::sqrt:
      if (!(x >= 0.0)) domain_error(f, x);
      return std::sqrt(x);
    case MatFun::log:
      if (!(x > 0.0)) domain_error(f, x);
      return std::log(x);
    case MatFun::sqrt1p:
      if (!(x >= -1.0)) domain_error(f, x);
      return std::sqrt(1.0 + x);
    case MatFun::log1p:
      if (!(x > -1.0)) domain_error(f, x);
      return std::log1p(x);
  }
  return 0.0;
}

MatFunSpec MatFunSpec::defaults(MatFun f, Index krylov_steps, Index contour_points) {
  MatFunSpec spec;
  spec.f = f;
  if (f == MatFun::exp) {
    spec.method = PolyKrylov{krylov_steps};
  } else {
    spec.method = Contour{contour_points, std::nullopt};
  }
  return spec;
}

void MatFunSpec::validate() const {
  if (const auto* k = std::get_if<PolyKrylov>(&method)) {
    require(k->steps >= 1, "Krylov step count must be positive");
    return;
  }
  const auto& c = std::get<Contour>(method);
  require(f != MatFun::exp, "contour integration is only available for sqrt and log variants");
  require(c.points >= 1, "contour point count must be positive");
  if (c.interval) {
    require(c.interval->low > 0.0 && c.interval->low <= c.interval->high,
            "contour interval must satisfy 0 < low <= high");
  }
}

KrylovBasis arnoldi(const LinearOperator& op, const Eigen::Ref<const Vector>& b, Index m) {
  return build_basis(op, b, m, false);
}

KrylovBasis lanczos(const LinearOperator& op, const Eigen::Ref<const Vector>& b, Index m) {
  return build_basis(op, b, m, true);
}

Vector krylov_apply(const LinearOperator& op, const Eigen::Ref<const Vector>& b, MatFun f, Index m) {
  const KrylovBasis basis = build_basis(op, b, m, op.symmetric_hint());
  return basis.beta * (basis.V * projected_function(basis, f));
}

Matrix dense_matrix_function(const Matrix& a, MatFun f) {
  require(a.rows() == a.cols(), "matrix function needs a square matrix");
  const Index n = a.rows();
  const double scale = a.cwiseAbs().maxCoeff();
  const bool symmetric = (a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * std::max(scale, 1e-300);
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    Vector fvals(n);
    for (Index i = 0; i < n; ++i) fvals[i] = apply_scalar(f, es.eigenvalues()[i]);
    const Matrix& q = es.eigenvectors();
    return q * fvals.asDiagonal() * q.transpose();
  }
  Matrix shifted = a;
  if (f == MatFun::sqrt1p || f == MatFun::log1p) shifted += Matrix::Identity(n, n);
  switch (f) {
    case MatFun::exp: return a.exp();
    case MatFun::sqrt:
    case MatFun::sqrt1p: return shifted.sqrt();
    case MatFun::log:
    case MatFun::log1p: return shifted.log();
  }
  return {};
}

}  // namespace matrecover
