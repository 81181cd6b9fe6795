#include <doctest.h>

#include "matrecover/greedy.hpp"
#include "oracles.hpp"

using namespace matrecover;

namespace {

Vector planted_signal(Index n, Index k, std::uint64_t seed, bool unit_values) {
  std::mt19937_64 rng(seed);
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::shuffle(idx.begin(), idx.end(), rng);
  std::normal_distribution<double> normal;
  std::bernoulli_distribution coin(0.5);
  Vector v = Vector::Zero(n);
  for (Index c = 0; c < k; ++c) v[idx[static_cast<std::size_t>(c)]] = unit_values ? (coin(rng) ? 1.0 : -1.0) : normal(rng);
  return v;
}

}  // namespace

TEST_CASE("hard threshold examples") {
  Vector v(4);
  v << 3, -5, 1, 0;
  Vector expect(4);
  expect << 3, -5, 0, 0;
  CHECK(hard_threshold(v, 2) == expect);

  Vector sparse = Vector::Zero(6);
  sparse[1] = 2.0;
  sparse[4] = -1.0;
  CHECK(hard_threshold(sparse, 3) == sparse);

  Vector tie(2);
  tie << 2, -2;
  const Vector kept = hard_threshold(tie, 1);
  CHECK(kept[0] == 2.0);
  CHECK(kept[1] == 0.0);
  CHECK((kept.array() != 0.0).count() == 1);

  CHECK_THROWS_AS(hard_threshold(v, 0), InputError);
  CHECK_THROWS_AS(hard_threshold(v, 5), InputError);
  CHECK(best_k_term(v, 2) == hard_threshold(v, 2));
}

TEST_CASE("hard threshold keeps a set of largest magnitudes") {
  const Vector v = oracle::random_vector(200, 17);
  const Vector h = hard_threshold(v, 20);
  std::vector<double> mags(v.data(), v.data() + v.size());
  for (auto& m : mags) m = std::abs(m);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  CHECK((h.array() != 0.0).count() == 20);
  for (Index i = 0; i < 200; ++i)
    if (h[i] != 0.0) {
      CHECK(h[i] == v[i]);
      CHECK(std::abs(v[i]) >= mags[19]);
    }
}

TEST_CASE("niht: zero measurements") {
  const SensingOperator y = SensingOperator::build(100, 20, SensingKind::gaussian, 1);
  const CsSolution sol = niht_solve(y, Vector::Zero(20), NihtConfig{.k = 3});
  CHECK(sol.v_hat.isZero(0.0));
  CHECK(sol.iterations == 0);
  CHECK(sol.converged);
}

TEST_CASE("niht: configuration checks") {
  const SensingOperator y = SensingOperator::build(100, 20, SensingKind::gaussian, 1);
  CHECK_THROWS_AS(niht_solve(y, Vector::Ones(20), NihtConfig{.k = 21}), InputError);
  CHECK_THROWS_AS(niht_solve(y, Vector::Ones(19), NihtConfig{.k = 2}), InputError);
  CHECK_THROWS_AS(niht_solve(y, Vector::Ones(20), NihtConfig{.k = 2, .max_iters = 0}), InputError);
  CHECK_THROWS_AS(niht_solve(y, Vector::Ones(20), NihtConfig{.k = 2, .backtrack_shrink = 1.0}), InputError);
}

TEST_CASE("niht: exact recovery of 5-sparse +-1 signals, n=256, s=64") {
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SensingOperator y = SensingOperator::build(256, 64, SensingKind::gaussian, 1000 + seed);
    const Vector v = planted_signal(256, 5, seed, true);
    const CsSolution sol = niht_solve(y, y.adjoint_apply(v), NihtConfig{.k = 5});
    CHECK(sol.iterations <= 100);
    CHECK((sol.v_hat.array() != 0.0).count() <= 5);
    if ((sol.v_hat - v).norm() <= 1e-8 * v.norm()) ++successes;
  }
  CHECK(successes >= 95);
}

TEST_CASE("niht: other ensembles recover easy instances") {
  for (auto kind : {SensingKind::subsampled_dct, SensingKind::sparse_rademacher}) {
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SensingOperator y = SensingOperator::build(256, 80, kind, 50 + seed);
      const Vector v = planted_signal(256, 5, seed, true);
      const CsSolution sol = niht_solve(y, y.adjoint_apply(v), NihtConfig{.k = 5, .max_iters = 300});
      if ((sol.v_hat - v).norm() <= 1e-8 * v.norm()) ++successes;
    }
    CHECK(successes >= 18);
  }
}

TEST_CASE("niht: guarantee audit on noisy signals") {
  const NihtConfig cfg{.k = 5};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SensingOperator y = SensingOperator::build(256, 64, SensingKind::gaussian, 2000 + seed);
    Vector v = planted_signal(256, 5, seed, true);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-1e-3, 1e-3);
    for (Index i = 0; i < v.size(); ++i) v[i] += noise(rng);
    const Vector meas = y.adjoint_apply(v);
    const CsSolution sol = niht_solve(y, meas, cfg);
    const double bound = 9.0 * oracle::eps_k(v, 5) + cfg.residual_tol * meas.norm();
    CHECK((v - sol.v_hat).norm() <= bound);
  }
}

TEST_CASE("niht: residual is reported for the returned iterate") {
  const SensingOperator y = SensingOperator::build(300, 40, SensingKind::gaussian, 4);
  const Vector v = planted_signal(300, 12, 4, false);
  const Vector meas = y.adjoint_apply(v);
  const CsSolution sol = niht_solve(y, meas, NihtConfig{.k = 12, .max_iters = 30});
  CHECK(sol.residual_norm == doctest::Approx((meas - y.adjoint_apply(sol.v_hat)).norm()).epsilon(1e-12));
  CHECK(sol.residual_norm <= meas.norm());
  CHECK((sol.v_hat.array() != 0.0).count() <= 12);
}

TEST_CASE("niht: solver interface") {
  const NihtSolver solver(NihtConfig{.k = 3});
  const SparseSolver& base = solver;
  CHECK(base.sparsity() == 3);
  const SensingOperator y = SensingOperator::build(64, 24, SensingKind::gaussian, 2);
  Vector v = Vector::Zero(64);
  v[5] = 1.0;
  v[20] = -2.0;
  const CsSolution sol = base.solve(y, y.adjoint_apply(v));
  CHECK((sol.v_hat - v).norm() <= 1e-8);
}
