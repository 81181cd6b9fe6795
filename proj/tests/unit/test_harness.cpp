#include <doctest.h>

#include <sstream>

#include "matrecover/harness.hpp"
#include "oracles.hpp"

using namespace matrecover;

TEST_CASE("matrix source parsing") {
  const MatrixSource b = MatrixSource::parse("banded:100,3,2.5");
  CHECK(b.kind == MatrixSource::Kind::synthetic_banded);
  CHECK(b.n == 100);
  CHECK(b.k == 3);
  CHECK(b.norm == 2.5);

  const MatrixSource s = MatrixSource::parse("sparse:1024,1/1024,1");
  CHECK(s.kind == MatrixSource::Kind::synthetic_sparse);
  CHECK(s.density == doctest::Approx(1.0 / 1024));
  CHECK(MatrixSource::parse("sparse:50,0.1,1").density == 0.1);

  const MatrixSource m = MatrixSource::parse("mm:data/x.mtx");
  CHECK(m.kind == MatrixSource::Kind::matrix_market);
  CHECK(m.path == "data/x.mtx");

  for (const char* bad : {"", "banded:10,2", "banded:a,2,1", "tri:10,1,1", "sparse:10,0.1", "mm:"})
    CHECK_THROWS_AS(MatrixSource::parse(bad), InputError);
  CHECK(parse_algorithm("bamram") == Algorithm::bamram);
  CHECK_THROWS_AS(parse_algorithm("xyz"), InputError);
}

TEST_CASE("synthetic banded matrix") {
  const SparseMatrix a = synthetic_banded(200, 4, 3.0, 1);
  const Matrix d(a);
  CHECK((d - d.transpose()).isZero(0.0));
  CHECK(oracle::norm2(d) == doctest::Approx(3.0).epsilon(1e-8));
  for (Index i = 0; i < 200; ++i)
    for (Index j = 0; j < 200; ++j)
      if (std::abs(i - j) > 4) CHECK(d(i, j) == 0.0);
  CHECK(Matrix(synthetic_banded(200, 4, 3.0, 1)) == d);
  CHECK(Matrix(synthetic_banded(200, 4, 3.0, 2)) != d);
  CHECK_THROWS_AS(synthetic_banded(5, 5, 1.0, 0), InputError);
}

TEST_CASE("synthetic sparse matrix") {
  const Index n = 1024;
  const double density = 8.0 / 1024;
  const SparseMatrix a = synthetic_sparse(n, density, 1.0, 3);
  const Matrix d(a);
  CHECK((d - d.transpose()).isZero(0.0));
  CHECK(oracle::norm2(d) == doctest::Approx(1.0).epsilon(1e-8));
  long long upper = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) upper += d(i, j) != 0.0;
  const double expected = density * double(n) * double(n + 1) / 2.0;
  CHECK(std::abs(double(upper) - expected) <= 5.0 * std::sqrt(expected));
  CHECK_THROWS_AS(synthetic_sparse(10, 0.0, 1.0, 0), InputError);
  CHECK(Matrix(synthetic_sparse(10, 1.0, 1.0, 0)).cwiseAbs().minCoeff() > 0.0);
}

TEST_CASE("sweep seeds differ per point") {
  CHECK(sweep_seed(1, 10) != sweep_seed(1, 11));
  CHECK(sweep_seed(1, 10) != sweep_seed(2, 10));
  CHECK(sweep_seed(7, 3) == sweep_seed(7, 3));
}

TEST_CASE("bamram experiment on a banded matrix") {
  ExperimentSpec spec;
  spec.source = MatrixSource::parse("banded:120,2,1");
  spec.algorithm = Algorithm::bamram;
  spec.sweep = {3, 5, 7};
  spec.seed = 4;
  const auto rows = run_experiment(spec);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].matvecs == 3);
  CHECK(*rows[0].relative_error > 1e-3);
  CHECK(*rows[1].relative_error <= 1e-13);
  CHECK(rows[1].delta_RE <= 1e-13);
  CHECK(*rows[2].relative_error <= 1e-13);
  CHECK(rows[0].inner_matvecs == 3 + 5);
}

TEST_CASE("experiment with a function and determinism") {
  ExperimentSpec spec;
  spec.source = MatrixSource::parse("sparse:200,0.02,1");
  spec.function = MatFun::exp;
  spec.algorithm = Algorithm::spamram;
  spec.sweep = {40, 80};
  spec.seed = 9;
  const auto a = run_experiment(spec);
  const auto b = run_experiment(spec);
  REQUIRE(a.size() == 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(*a[i].relative_error == *b[i].relative_error);
    CHECK(a[i].delta_RE == b[i].delta_RE);
    CHECK(a[i].matvecs == b[i].matvecs);
    CHECK(a[i].inner_matvecs == a[i].matvecs * 20);
  }
  CHECK(*a[1].relative_error < *a[0].relative_error);
}

TEST_CASE("experiment rejects bad sweeps") {
  ExperimentSpec spec;
  spec.source = MatrixSource::parse("banded:50,1,1");
  spec.sweep = {};
  CHECK_THROWS_AS(run_experiment(spec), InputError);
  spec.sweep = {5, 3};
  CHECK_THROWS_AS(run_experiment(spec), InputError);
  spec.sweep = {51};
  CHECK_THROWS_AS(run_experiment(spec), InputError);
}

TEST_CASE("csv output") {
  std::vector<ExperimentRow> rows(2);
  rows[0].s = 5;
  rows[0].relative_error = 0.125;
  rows[0].delta_RE = 0.25;
  rows[0].matvecs = 5;
  rows[0].seconds = 0.5;
  rows[1].s = 7;
  rows[1].delta_RE = 1e-3;
  rows[1].matvecs = 7;
  std::ostringstream out;
  write_csv(out, rows);
  CHECK(out.str() ==
        "s,relative_error,delta_RE,matvecs,seconds\n"
        "5,1.2500000000e-01,2.5000000000e-01,5,0.500000\n"
        "7,,1.0000000000e-03,7,0.000000\n");
}
