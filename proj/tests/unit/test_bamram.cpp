#include <doctest.h>

#include "matrecover/bamram.hpp"
#include "matrecover/core/sparse_matrix.hpp"
#include "oracles.hpp"

using namespace matrecover;

namespace {

LinearOperator dense_op(const Matrix& m) { return LinearOperator::from_dense(m); }

double one_norm(const Matrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }
double inf_norm(const Matrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

TEST_CASE("probe apply: identity operator") {
  const Matrix p = probe_apply(dense_op(Matrix::Identity(10, 10)), 3);
  CHECK(p == oracle::probes(10, 3));
  CHECK(ProbingMatrix(10, 3).to_dense() == oracle::probes(10, 3));
}

TEST_CASE("probe apply: six by six example") {
  const oracle::SixBySix ex;
  const LinearOperator op = dense_op(ex.a6);
  const Matrix p = probe_apply(op, 4);
  CHECK(op.matvec_count() == 4);
  CHECK(p == ex.probed);
  // row 3 (1-based) is [d3, a2, b3, c3]
  CHECK(p(2, 0) == 43.0);
  CHECK(p(2, 1) == 12.0);
  CHECK(p(2, 2) == 23.0);
  CHECK(p(2, 3) == 33.0);
}

TEST_CASE("probe apply: dense random 20x20, s=6") {
  const Matrix b = oracle::random_matrix(20, 20, 3);
  const Matrix p = probe_apply(dense_op(b), 6);
  CHECK((p - b * oracle::probes(20, 6)).cwiseAbs().maxCoeff() <= 1e-14 * b.cwiseAbs().maxCoeff() * 4);
}

TEST_CASE("probe apply: aliasing identity against explicit sums") {
  for (Index n : {7, 31, 100}) {
    for (Index s : {1, 2, 5, 9}) {
      const Matrix b = oracle::random_matrix(n, n, std::uint64_t(n * 100 + s));
      const Matrix p = probe_apply(dense_op(b), s);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < s; ++j) {
          double sum = 0.0;
          for (Index t = 0; j + s * t < n; ++t) sum += b(i, j + s * t);
          CHECK(std::abs(p(i, j) - sum) <= 1e-12);
        }
    }
  }
}

TEST_CASE("probe apply: block sizes beyond n give zero columns") {
  const Matrix b = oracle::random_matrix(4, 4, 1);
  const LinearOperator op = dense_op(b);
  const Matrix p = probe_apply(op, 6);
  CHECK(op.matvec_count() == 6);
  CHECK(p.leftCols(4) == b);
  CHECK(p.rightCols(2).isZero(0.0));
}

TEST_CASE("alias shift: banded examples") {
  CHECK(alias_shift_banded(6, 2, 0, 4, 2, 1) == Index{1});
  CHECK(alias_shift_banded(6, 4, 0, 4, 2, 1) == Index{1});
  CHECK(alias_shift_banded(6, 0, 0, 4, 2, 1) == Index{0});
  CHECK(!alias_shift_banded(6, 5, 3, 4, 2, 1).has_value());
  CHECK_THROWS_AS(alias_shift_banded(6, 0, 0, 5, 2, 1), InputError);
}

TEST_CASE("alias shift: banded agrees with search") {
  for (Index n : {5, 13, 40})
    for (Index k1 = 0; k1 <= 3; ++k1)
      for (Index k2 = 0; k2 <= 3; ++k2) {
        const Index s = 1 + k1 + k2;
        for (Index i = 0; i < n; ++i)
          for (Index j = 0; j < s; ++j) CHECK(alias_shift_banded(n, i, j, s, k1, k2) == oracle::banded_alias(n, i, j, s, k1, k2));
      }
}

TEST_CASE("alias shift: symmetric") {
  // i=10, j=2, s=5 in 1-based terms
  const auto t = alias_shift_symmetric(20, 9, 1, 5);
  REQUIRE(t.has_value());
  CHECK(*t == 2);
  CHECK(1 + 5 * *t == 11);
  for (Index s : {1, 3, 7})
    for (Index i = 0; i < s; ++i) CHECK(alias_shift_symmetric(30, i, i, s) == Index{0});
  for (Index n : {3, 10, 33})
    for (Index s : {1, 3, 5, 11})
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < s; ++j) CHECK(alias_shift_symmetric(n, i, j, s) == oracle::nearest_alias(n, j, s, double(i)));
  CHECK_THROWS_AS(alias_shift_symmetric(10, 0, 0, 4), InputError);
}

TEST_CASE("alias shift: asymmetric") {
  for (Index i = 0; i < 64; ++i)
    for (Index j = 0; j < 7; ++j) CHECK(alias_shift_asymmetric(64, i, j, 7, 0.4, 0.4) == alias_shift_symmetric(64, i, j, 7));

  const double l1 = std::log(1.0 / 0.1), l2 = std::log(1.0 / 0.9);
  const double offset = 4.0 * (l2 - l1) / (l1 + l2);
  double mean_offset = 0.0;
  for (Index i = 0; i < 64; ++i)
    for (Index j = 0; j < 9; ++j) {
      const auto t = alias_shift_asymmetric(64, i, j, 9, 0.1, 0.9);
      CHECK(t == oracle::nearest_alias(64, j, 9, double(i) + offset));
      mean_offset += double(j + 9 * *t - i);
    }
  CHECK(mean_offset / (64.0 * 9.0) < -1.0);

  // even block with a tie: rows 8 and 12 are both two away from row 10
  CHECK(alias_shift_asymmetric(20, 10, 0, 4, 0.5, 0.5) == Index{2});
  CHECK(oracle::nearest_alias(20, 0, 4, 10.0) == Index{2});
}

TEST_CASE("band spec block sizes") {
  CHECK(BandSpec::exact(2, 1).block_size() == 4);
  CHECK(BandSpec::symmetric(10).block_size() == 21);
  const BandSpec even = BandSpec::symmetric_block(8);
  CHECK(even.rounded_up);
  CHECK(even.block_size() == 9);
  CHECK(!BandSpec::symmetric_block(9).rounded_up);
  const BandSpec asym = BandSpec::asymmetric(0.1, 0.9, 5.0);
  CHECK(asym.b1 == 2);
  CHECK(asym.b2 == 47);
  CHECK(asym.block_size() == 50);
  CHECK(s0_for_accuracy(1.0, 0.5, 1e-8) == Index(std::ceil((std::log(36.0) + 8 * std::log(10.0)) / std::log(2.0))));
}

TEST_CASE("bamram: six by six example is recovered exactly") {
  const oracle::SixBySix ex;
  const BandRecovery rec = bamram_recover(dense_op(ex.a6), BandSpec::exact(2, 1));
  CHECK(rec.matvecs_used == 4);
  CHECK(rec.B_hat.to_dense() == ex.a6);
}

TEST_CASE("bamram: exact banded recovery on random triples") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = std::uniform_int_distribution<Index>(1, 120)(rng);
    const Index k1 = std::uniform_int_distribution<Index>(0, 6)(rng);
    const Index k2 = std::uniform_int_distribution<Index>(0, 6)(rng);
    const Matrix b = oracle::random_banded(n, k1, k2, rng());
    const LinearOperator op = LinearOperator::from_sparse(sparse_from_dense(b));
    const BandRecovery rec = bamram_recover(op, BandSpec::exact(k1, k2));
    CHECK(rec.matvecs_used == static_cast<std::uint64_t>(1 + k1 + k2));
    CHECK((rec.B_hat.to_dense() - b).norm() <= 1e-13 * std::max(b.norm(), 1e-300));
  }
}

TEST_CASE("bamram: column recovery through the transpose") {
  const Matrix b = oracle::random_banded(50, 3, 1, 8);
  const BandRecovery rec = bamram_recover_columns(dense_op(b.transpose()), BandSpec::exact(3, 1));
  CHECK((rec.B_hat.to_dense() - b).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("bamram: exact decay bound at s0=10, lambda=0.5") {
  const Matrix b = oracle::exact_decay(256, 1.0, 0.5);
  const BandRecovery rec = bamram_recover(dense_op(b), BandSpec::symmetric(10));
  CHECK(rec.matvecs_used == 21);
  CHECK(rec.B_hat.bandwidth() == Bandwidth{10, 10});
  const double err = oracle::norm2(rec.B_hat.to_dense() - b);
  CHECK(err <= std::pow(2.0, -8));
  CHECK(decay_norm_bound(1.0, 0.5, 10) == doctest::Approx(std::pow(2.0, -8)));
}

TEST_CASE("bamram: max-norm law and row/column sums on exact decay") {
  for (double lambda : {0.3, 0.5, 0.8}) {
    const Matrix b = oracle::exact_decay(128, 1.5, lambda);
    for (Index s0 = 2; s0 <= 12; ++s0) {
      const Matrix e = bamram_recover(dense_op(b), BandSpec::symmetric(s0)).B_hat.to_dense() - b;
      CHECK(e.cwiseAbs().maxCoeff() <= decay_max_bound(1.5, lambda, s0) * (1 + 1e-12));
      // attained with equality up to rounding
      const double bound = decay_norm_bound(1.5, lambda, s0);
      CHECK(one_norm(e) <= bound + 1e-13);
      CHECK(inf_norm(e) <= bound + 1e-13);
      CHECK(oracle::norm2(e) <= std::sqrt(one_norm(e) * inf_norm(e)) * (1 + 1e-12));
    }
  }
}

TEST_CASE("bamram: asymmetric placement beats symmetric on lopsided decay") {
  const Index n = 200;
  Matrix b(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) b(i, j) = j >= i ? std::pow(0.1, double(j - i)) : std::pow(0.7, double(i - j));
  const BandSpec asym = BandSpec::asymmetric(0.1, 0.7, 6.0);
  const Index s = asym.block_size();
  REQUIRE(s % 2 == 1);
  const double e_asym = oracle::norm2(bamram_recover(dense_op(b), asym).B_hat.to_dense() - b);
  const double e_sym = oracle::norm2(bamram_recover(dense_op(b), BandSpec::symmetric_block(s)).B_hat.to_dense() - b);
  CHECK(e_asym < 0.1 * e_sym);
  const BandedMatrix out = bamram_recover(dense_op(b), asym).B_hat;
  CHECK(out.bandwidth() == Bandwidth{asym.b1, asym.b2});
}

TEST_CASE("bamram: error estimate") {
  const Matrix b = oracle::random_banded(60, 2, 2, 5);
  const LinearOperator op = dense_op(b);
  const BandRecovery rec = bamram_recover(op, BandSpec::exact(2, 2));
  const ErrorEstimate est = bamram_error_estimate(rec.B_hat, op, 5, 11);
  CHECK(est.value <= 1e-12);
  CHECK(est.matvecs_used == 5);
  CHECK(bamram_error_estimate(BandedMatrix(60, {0, 0}), op, 5, 11).value == doctest::Approx(1.0));

  const LinearOperator zero = dense_op(Matrix::Zero(60, 60));
  CHECK(bamram_error_estimate(BandedMatrix(60, {0, 0}), zero).value == 0.0);
  const ErrorEstimate inf = bamram_error_estimate(rec.B_hat, zero);
  CHECK(inf.degenerate);
  CHECK(std::isinf(inf.value));
  CHECK_THROWS_AS(bamram_error_estimate(rec.B_hat, op, 0), InputError);
}

TEST_CASE("bamram: exp of a banded matrix, s0 = 20") {
  const Matrix a = oracle::random_symmetric_banded(1024, 2, 0.5, 42);
  const Matrix e = oracle::expm(a);
  const BandRecovery rec = bamram_recover(dense_op(e), BandSpec::symmetric(20));
  CHECK(oracle::rel_err(rec.B_hat.to_dense(), e) <= 1e-6);
}
