#include "matrecover/bamram.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "matrecover/core/norms.hpp"
#include "matrecover/core/parallel.hpp"

namespace matrecover {
namespace {

constexpr std::uint64_t kEstimateSalt = 0xd1b54a32d192ed03ULL;

Index floor_div(Index a, Index b) {
  Index q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Index positive_mod(Index a, Index b) {
  const Index r = a % b;
  return r < 0 ? r + b : r;
}

void check_indices(Index n, Index i, Index j, Index s) {
  require(n >= 1 && s >= 1, "dimension and block size must be positive");
  require(i >= 0 && i < n, "row index out of range");
  require(j >= 0 && j < s, "probe column out of range");
}

// Valid shift whose target j + s t is nearest to `center`.
std::optional<Index> nearest_alias(Index n, Index j, Index s, double center) {
  if (j >= n) return std::nullopt;
  const Index t_max = (n - 1 - j) / s;
  const auto base = static_cast<Index>(std::floor((center - static_cast<double>(j)) / static_cast<double>(s)));
  Index best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (Index cand : {base, base + 1}) {
    const Index t = std::clamp<Index>(cand, 0, t_max);
    const double dist = std::abs(static_cast<double>(j + s * t) - center);
    const bool better = dist < best_dist ||
                        (dist == best_dist && (std::abs(t) < std::abs(best) || (std::abs(t) == std::abs(best) && t < best)));
    if (best < 0 || better) {
      best = t;
      best_dist = dist;
    }
  }
  return best;
}

double asymmetric_offset(Index s, double lambda1, double lambda2) {
  const double l1 = std::log(1.0 / lambda1);
  const double l2 = std::log(1.0 / lambda2);
  return 0.5 * static_cast<double>(s - 1) * (l2 - l1) / (l1 + l2);
}

}  // namespace

ProbingMatrix::ProbingMatrix(Index n_, Index s_) : n(n_), s(s_) {
  require(n >= 1, "probe dimension must be positive");
  require(s >= 1, "block size must be positive");
}

Vector ProbingMatrix::column(Index j) const {
  require(j >= 0 && j < s, "probe column out of range");
  Vector e = Vector::Zero(n);
  for (Index r = j; r < n; r += s) e[r] = 1.0;
  return e;
}

Matrix ProbingMatrix::to_dense() const {
  Matrix p(n, s);
  for (Index j = 0; j < s; ++j) p.col(j) = column(j);
  return p;
}

Matrix probe_apply(const LinearOperator& mvp, Index s) {
  const ProbingMatrix probes(mvp.size(), s);
  Matrix out(mvp.size(), s);
  parallel_for(s, [&](Index j) {
    Vector y(mvp.size());
    mvp.apply(probes.column(j), y);
    out.col(j) = y;
  });
  return out;
}

BandSpec BandSpec::exact(Index k1, Index k2) {
  require(k1 >= 0 && k2 >= 0, "bandwidths must be nonnegative");
  BandSpec b;
  b.mode = Mode::exact_banded;
  b.k1 = k1;
  b.k2 = k2;
  return b;
}

BandSpec BandSpec::symmetric(Index s0) {
  require(s0 >= 0, "half width must be nonnegative");
  BandSpec b;
  b.mode = Mode::symmetric_decay;
  b.s0 = s0;
  return b;
}

BandSpec BandSpec::symmetric_block(Index s) {
  require(s >= 1, "block size must be positive");
  BandSpec b = symmetric(s / 2);
  b.rounded_up = s % 2 == 0;
  return b;
}

BandSpec BandSpec::asymmetric(double lambda1, double lambda2, double c) {
  require(lambda1 > 0.0 && lambda1 < 1.0 && lambda2 > 0.0 && lambda2 < 1.0, "decay rates must lie in (0, 1)");
  require(c > 0.0, "decay constant c must be positive");
  BandSpec b;
  b.mode = Mode::asymmetric_decay;
  b.lambda1 = lambda1;
  b.lambda2 = lambda2;
  b.b1 = static_cast<Index>(std::floor(c / std::log(1.0 / lambda1)));
  b.b2 = static_cast<Index>(std::floor(c / std::log(1.0 / lambda2)));
  return b;
}

Index BandSpec::block_size() const {
  switch (mode) {
    case Mode::exact_banded: return 1 + k1 + k2;
    case Mode::symmetric_decay: return 2 * s0 + 1;
    case Mode::asymmetric_decay: return b1 + b2 + 1;
  }
  return 0;
}

Bandwidth BandSpec::output_bandwidth() const {
  switch (mode) {
    case Mode::exact_banded: return {k1, k2};
    case Mode::symmetric_decay: return {s0, s0};
    case Mode::asymmetric_decay: return {b1, b2};
  }
  return {};
}

Index s0_for_accuracy(double c, double lambda, double eps) {
  require(c > 0.0 && eps > 0.0, "constant and accuracy must be positive");
  require(lambda > 0.0 && lambda < 1.0, "decay rate must lie in (0, 1)");
  const double raw = (std::log(36.0 * c) - std::log(eps)) / std::log(1.0 / lambda);
  return std::max<Index>(0, static_cast<Index>(std::ceil(raw)));
}

double decay_norm_bound(double c, double lambda, Index s0) {
  return 4.0 * c * std::pow(lambda, static_cast<double>(s0 + 1)) / (1.0 - lambda);
}

double decay_max_bound(double c, double lambda, Index s0) {
  return 2.0 * c * std::pow(lambda, static_cast<double>(s0 + 1)) / (1.0 - std::pow(lambda, static_cast<double>(2 * s0 + 1)));
}

std::optional<Index> alias_shift_banded(Index n, Index i, Index j, Index s, Index k1, Index k2) {
  check_indices(n, i, j, s);
  require(k1 >= 0 && k2 >= 0 && s == 1 + k1 + k2, "exact banded probing needs s = 1 + k1 + k2");
  const Index lo = i - k2;
  const Index r = lo + positive_mod(j - lo, s);
  if (r < 0 || r >= n) return std::nullopt;
  return floor_div(r - j, s);
}

std::optional<Index> alias_shift_symmetric(Index n, Index i, Index j, Index s) {
  check_indices(n, i, j, s);
  require(s % 2 == 1, "symmetric alias shift needs an odd block size");
  return nearest_alias(n, j, s, static_cast<double>(i));
}

std::optional<Index> alias_shift_asymmetric(Index n, Index i, Index j, Index s, double lambda1, double lambda2) {
  check_indices(n, i, j, s);
  require(lambda1 > 0.0 && lambda1 < 1.0 && lambda2 > 0.0 && lambda2 < 1.0, "decay rates must lie in (0, 1)");
  if (lambda1 == lambda2) return nearest_alias(n, j, s, static_cast<double>(i));
  return nearest_alias(n, j, s, static_cast<double>(i) + asymmetric_offset(s, lambda1, lambda2));
}

BandedMatrix bamram_reconstruct(const Matrix& probes, const BandSpec& spec) {
  const Index n = probes.rows();
  const Index s = spec.block_size();
  require(probes.cols() == s, "probe block has " + std::to_string(probes.cols()) + " columns, spec needs " +
                                  std::to_string(s));
  BandedMatrix out(n, spec.output_bandwidth());
  const Bandwidth bw = out.bandwidth();
  const double offset =
      spec.mode == BandSpec::Mode::asymmetric_decay ? asymmetric_offset(s, spec.lambda1, spec.lambda2) : 0.0;
  const bool shifted = spec.mode == BandSpec::Mode::asymmetric_decay && spec.lambda1 != spec.lambda2;

  parallel_for(n, [&](Index i) {
    for (Index j = 0; j < std::min(s, n); ++j) {
      std::optional<Index> t;
      switch (spec.mode) {
        case BandSpec::Mode::exact_banded: t = alias_shift_banded(n, i, j, s, spec.k1, spec.k2); break;
        case BandSpec::Mode::symmetric_decay: t = nearest_alias(n, j, s, static_cast<double>(i)); break;
        case BandSpec::Mode::asymmetric_decay:
          t = nearest_alias(n, j, s, static_cast<double>(i) + (shifted ? offset : 0.0));
          break;
      }
      if (!t) continue;
      const Index r = j + s * *t;
      const Index d = r - i;
      if (d > bw.upper || d < -bw.lower) continue;
      out.at(i, r) = probes(i, j);
    }
  });
  return out;
}

BandRecovery bamram_recover(const LinearOperator& mvp, const BandSpec& spec) {
  BandRecovery rec;
  rec.s = spec.block_size();
  rec.s_rounded = spec.rounded_up;
  const std::uint64_t before = mvp.matvec_count();
  rec.probes = probe_apply(mvp, rec.s);
  rec.matvecs_used = mvp.matvec_count() - before;
  rec.B_hat = bamram_reconstruct(rec.probes, spec);
  return rec;
}

BandRecovery bamram_recover_columns(const LinearOperator& mvp_transpose, const BandSpec& spec) {
  BandSpec flipped = spec;
  std::swap(flipped.k1, flipped.k2);
  std::swap(flipped.b1, flipped.b2);
  std::swap(flipped.lambda1, flipped.lambda2);
  BandRecovery rec = bamram_recover(mvp_transpose, flipped);
  rec.B_hat = rec.B_hat.transpose();
  return rec;
}

ErrorEstimate bamram_error_estimate(const BandedMatrix& B_hat, const LinearOperator& mvp, Index n_probes,
                                    std::uint64_t seed) {
  require(n_probes >= 1, "at least one probe is required");
  require(B_hat.size() == mvp.size(), "estimate: dimension mismatch");
  const Index n = mvp.size();
  std::mt19937_64 rng(seed ^ kEstimateSalt);
  std::normal_distribution<double> normal;
  Matrix x(n, n_probes);
  for (Index j = 0; j < n_probes; ++j)
    for (Index i = 0; i < n; ++i) x(i, j) = normal(rng);

  ErrorEstimate est;
  const std::uint64_t before = mvp.matvec_count();
  const Matrix bx = mvp.apply_block(x);
  est.matvecs_used = mvp.matvec_count() - before;
  const Matrix diff = B_hat.apply_block(x) - bx;
  const double denom = norm2(bx);
  if (denom == 0.0) {
    if (diff.isZero(0.0)) return est;
    est.value = std::numeric_limits<double>::infinity();
    est.degenerate = true;
    return est;
  }
  est.value = norm2(diff) / denom;
  return est;
}

}  // namespace matrecover
