#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "matrecover/matfun.hpp"

namespace matrecover {
namespace {

using Complex = std::complex<double>;
using ComplexSparse = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegenerateRatio = 1.0 + 1e-8;

struct Jacobi {
  Complex sn, cn, dn;
};

// sn, cn, dn at x + iy from the real-argument functions via the addition
// formulas with the complementary modulus.
Jacobi jacobi_complex(double x, double y, double k, double kp) {
  double c = 0.0, d = 0.0, c1 = 0.0, d1 = 0.0;
  const double s = boost::math::jacobi_elliptic(k, x, &c, &d);
  const double s1 = boost::math::jacobi_elliptic(kp, y, &c1, &d1);
  const double k2 = k * k;
  const double delta = c1 * c1 + k2 * s * s * s1 * s1;
  return {Complex(s * d1, c * d * s1 * c1) / delta, Complex(c * c1, -s * d * s1 * d1) / delta,
          Complex(d * c1 * d1, -k2 * s * c * s1) / delta};
}

bool is_contour_function(MatFun f) { return f == MatFun::sqrt || f == MatFun::log; }

MatFun base_function(MatFun f) {
  if (f == MatFun::sqrt1p) return MatFun::sqrt;
  if (f == MatFun::log1p) return MatFun::log;
  return f;
}

LinearOperator shifted_identity(const LinearOperator& a) {
  return LinearOperator(
      a.size(),
      [a](const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) {
        a.apply(x, y);
        y += x;
      },
      a.symmetric_hint());
}

Vector combine(const ContourRule& rule, const std::vector<ComplexVector>& resolvents, Index n) {
  Vector out = Vector::Zero(n);
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const Complex w = rule.weights[j];
    out += w.real() * resolvents[j].imag() + w.imag() * resolvents[j].real();
  }
  return out;
}

Vector apply_rule(const LinearOperator& op, const Eigen::Ref<const Vector>& b, const ContourRule& rule) {
  require(b.size() == op.size(), "contour apply: vector has the wrong length");
  std::vector<Complex> shifts(rule.nodes.size());
  for (std::size_t j = 0; j < shifts.size(); ++j) shifts[j] = -rule.nodes[j];
  ShiftedCgResult cg = shifted_cg_solve(op, b, shifts);
  if (!cg.converged) {
    std::ostringstream msg;
    msg << "shifted CG did not converge: worst shift " << cg.worst_shift << ", relative residual "
        << cg.worst_residual;
    throw NumericalError(msg.str());
  }
  for (auto& x : cg.solutions) x = -x;
  return combine(rule, cg.solutions, op.size());
}

}  // namespace

ContourRule ContourRule::build(MatFun f, Index points, Interval interval) {
  require(is_contour_function(f), "contour quadrature is defined for sqrt and log");
  require(points >= 1, "contour point count must be positive");
  require(interval.low > 0.0 && interval.low <= interval.high, "contour interval must satisfy 0 < low <= high");
  double lo = interval.low;
  double hi = interval.high;
  if (hi / lo < kDegenerateRatio) {
    lo *= 0.99;
    hi *= 1.01;
  }
  // Quadrature runs in the plane of w = sqrt(z).
  const double wlo = std::sqrt(lo);
  const double whi = std::sqrt(hi);
  const double r = std::sqrt(whi / wlo);
  const double k = (r - 1.0) / (r + 1.0);
  const double kp = 2.0 * std::sqrt(r) / (r + 1.0);
  const double big_k = boost::math::ellint_1(k);
  const double big_kp = boost::math::ellint_1(kp);
  const double center = std::sqrt(wlo * whi);
  const double step = 2.0 * big_k / static_cast<double>(points);

  ContourRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(points));
  rule.weights.reserve(static_cast<std::size_t>(points));
  for (Index j = 1; j <= points; ++j) {
    const double x = -big_k + (static_cast<double>(j) - 0.5) * step;
    const Jacobi e = jacobi_complex(x, 0.5 * big_kp, k, kp);
    const Complex denom = 1.0 / k - e.sn;
    const Complex w = center * (1.0 / k + e.sn) / denom;
    const Complex dw = center * (2.0 / k) * e.cn * e.dn / (denom * denom);
    const Complex fz = f == MatFun::sqrt ? w : 2.0 * std::log(w);
    rule.nodes.push_back(w * w);
    rule.weights.push_back(-(step / kPi) * fz * 2.0 * w * dw);
  }
  return rule;
}

ShiftedCgResult shifted_cg_solve(const LinearOperator& a, const Eigen::Ref<const Vector>& b,
                                 const std::vector<Complex>& shifts, double tol, int max_iters) {
  const Index n = a.size();
  require(b.size() == n, "shifted CG: right-hand side has the wrong length");
  const std::size_t count = shifts.size();
  ShiftedCgResult res;
  res.solutions.assign(count, ComplexVector::Zero(n));
  const double b_norm = b.norm();
  if (b_norm == 0.0 || count == 0) {
    res.converged = true;
    return res;
  }

  Vector r = b;
  Vector p = b;
  Vector ap(n);
  std::vector<ComplexVector> ps(count, b.cast<Complex>());
  std::vector<Complex> zeta(count, 1.0), zeta_prev(count, 1.0);
  std::vector<char> done(count, 0);
  double alpha_prev = 1.0;
  double beta_prev = 0.0;
  double rr = r.squaredNorm();
  const double target = tol * b_norm;

  for (int it = 1; it <= max_iters; ++it) {
    a.apply(p, ap);
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) throw NumericalError("shifted CG: operator is not positive definite");
    const double alpha = rr / pap;
    std::vector<Complex> zeta_next(count);
    for (std::size_t q = 0; q < count; ++q) {
      if (done[q]) continue;
      const Complex den = alpha * beta_prev * (zeta_prev[q] - zeta[q]) +
                          zeta_prev[q] * alpha_prev * (1.0 + shifts[q] * alpha);
      zeta_next[q] = zeta[q] * zeta_prev[q] * alpha_prev / den;
      const Complex alpha_s = alpha * zeta_next[q] / zeta[q];
      res.solutions[q] += alpha_s * ps[q];
    }
    r -= alpha * ap;
    const double rr_next = r.squaredNorm();
    const double beta = rr_next / rr;
    const double r_norm = std::sqrt(rr_next);

    bool all_done = true;
    res.worst_residual = 0.0;
    for (std::size_t q = 0; q < count; ++q) {
      if (done[q]) continue;
      const Complex ratio = zeta_next[q] / zeta[q];
      const Complex beta_s = beta * ratio * ratio;
      ps[q] = zeta_next[q] * r.cast<Complex>() + beta_s * ps[q];
      zeta_prev[q] = zeta[q];
      zeta[q] = zeta_next[q];
      const double resid = std::abs(zeta[q]) * r_norm;
      if (resid <= target) {
        done[q] = 1;
      } else {
        all_done = false;
        if (resid > res.worst_residual) {
          res.worst_residual = resid;
          res.worst_shift = shifts[q];
        }
      }
    }
    res.iterations = it;
    if (all_done || r_norm == 0.0) {
      res.converged = true;
      res.worst_residual = 0.0;
      return res;
    }
    p = r + beta * p;
    rr = rr_next;
    alpha_prev = alpha;
    beta_prev = beta;
  }
  res.worst_residual /= b_norm;
  return res;
}

Vector contour_apply(const Eigen::Ref<const Vector>& b, MatFun f, Index points, Interval interval,
                     const ShiftedSolve& solve) {
  const ContourRule rule = ContourRule::build(f, points, interval);
  return combine(rule, solve(rule.nodes, b), b.size());
}

Vector contour_apply(const LinearOperator& op, const Eigen::Ref<const Vector>& b, MatFun f, Index points,
                     Interval interval) {
  return apply_rule(op, b, ContourRule::build(f, points, interval));
}

SpectrumEstimate estimate_spectrum_interval(const LinearOperator& op, Index probe_steps, std::uint64_t seed) {
  require(probe_steps >= 1, "probe step count must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector start(op.size());
  for (auto& v : start) v = normal(rng);
  const KrylovBasis basis = lanczos(op, start, probe_steps);
  Eigen::SelfAdjointEigenSolver<Matrix> es(basis.H);
  const Index m = basis.H.rows();
  SpectrumEstimate est;
  est.ritz_low = es.eigenvalues()[0];
  est.ritz_high = es.eigenvalues()[m - 1];
  est.interval = {0.9 * est.ritz_low, 1.1 * est.ritz_high};
  const double res_low = basis.residual * std::abs(es.eigenvectors()(m - 1, 0));
  const double res_high = basis.residual * std::abs(es.eigenvectors()(m - 1, m - 1));
  const double scale = std::max(std::abs(est.ritz_low), std::abs(est.ritz_high));
  est.confident = basis.breakdown || (res_low <= 0.1 * std::abs(est.ritz_low) && res_high <= 1e-2 * scale);
  return est;
}

LinearOperator matfun_operator(const LinearOperator& a, const MatFunSpec& spec) {
  spec.validate();
  const MatFun f = spec.f;
  if (const auto* k = std::get_if<PolyKrylov>(&spec.method)) {
    const Index steps = k->steps;
    return LinearOperator(
        a.size(),
        [a, f, steps](const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) {
          if (x.isZero(0.0)) {
            y.setZero();
            return;
          }
          y = krylov_apply(a, x, f, steps);
        },
        a.symmetric_hint());
  }
  const auto& c = std::get<Contour>(spec.method);
  require(a.symmetric_hint(), "contour methods need a symmetric positive definite operator");
  const LinearOperator base = (f == MatFun::sqrt1p || f == MatFun::log1p) ? shifted_identity(a) : a;
  const Interval interval = c.interval ? *c.interval : estimate_spectrum_interval(base).interval;
  require(interval.low > 0.0, "estimated spectrum is not positive; the operator is not positive definite");
  auto rule = std::make_shared<const ContourRule>(ContourRule::build(base_function(f), c.points, interval));
  return LinearOperator(
      a.size(),
      [base, rule](const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) {
        if (x.isZero(0.0)) {
          y.setZero();
          return;
        }
        y = apply_rule(base, x, *rule);
      },
      true);
}

LinearOperator matfun_operator(const LinearOperator& a, const SparseMatrix& explicit_a, const MatFunSpec& spec) {
  spec.validate();
  require(explicit_a.rows() == a.size() && explicit_a.cols() == a.size(), "explicit matrix does not match operator");
  if (std::holds_alternative<PolyKrylov>(spec.method)) return matfun_operator(a, spec);

  const MatFun f = spec.f;
  const auto& c = std::get<Contour>(spec.method);
  require(a.symmetric_hint(), "contour methods need a symmetric positive definite operator");
  const bool shifted = f == MatFun::sqrt1p || f == MatFun::log1p;
  const LinearOperator base = shifted ? shifted_identity(a) : a;
  const Interval interval = c.interval ? *c.interval : estimate_spectrum_interval(base).interval;
  require(interval.low > 0.0, "estimated spectrum is not positive; the operator is not positive definite");
  const Index n = a.size();

  struct Factorizations {
    ContourRule rule;
    std::vector<std::unique_ptr<Eigen::SparseLU<ComplexSparse>>> lu;
  };
  auto state = std::make_shared<Factorizations>();
  state->rule = ContourRule::build(base_function(f), c.points, interval);
  ComplexSparse base_matrix = explicit_a.cast<Complex>();
  if (shifted) {
    ComplexSparse eye(n, n);
    eye.setIdentity();
    base_matrix += eye;
  }
  for (const Complex z : state->rule.nodes) {
    ComplexSparse shifted_matrix(n, n);
    shifted_matrix.setIdentity();
    shifted_matrix *= z;
    shifted_matrix -= base_matrix;
    shifted_matrix.makeCompressed();
    auto lu = std::make_unique<Eigen::SparseLU<ComplexSparse>>();
    lu->compute(shifted_matrix);
    if (lu->info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "sparse factorization failed at contour node " << z;
      throw NumericalError(msg.str());
    }
    state->lu.push_back(std::move(lu));
  }

  return LinearOperator(
      n,
      [state, n](const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) {
        const ComplexVector rhs = x.cast<Complex>();
        std::vector<ComplexVector> sols(state->lu.size());
        for (std::size_t j = 0; j < sols.size(); ++j) sols[j] = state->lu[j]->solve(rhs);
        y = combine(state->rule, sols, n);
      },
      true);
}

}  // namespace matrecover
