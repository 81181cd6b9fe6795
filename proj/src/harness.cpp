#include "matrecover/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>

#include "matrecover/bamram.hpp"
#include "matrecover/core/linear_operator.hpp"
#include "matrecover/core/matrix_market.hpp"
#include "matrecover/core/norms.hpp"
#include "matrecover/spamram.hpp"

namespace matrecover {
namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("cannot parse " + what + " from '" + text + "'");
  }
  if (used != text.size()) throw InputError("cannot parse " + what + " from '" + text + "'");
  return v;
}

Index parse_index(const std::string& text, const std::string& what) {
  const double v = parse_number(text, what);
  if (v != std::floor(v) || v < 0) throw InputError(what + " must be a nonnegative integer, got '" + text + "'");
  return static_cast<Index>(v);
}

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool is_symmetric(const SparseMatrix& a) {
  if (a.rows() != a.cols()) return false;
  const SparseMatrix t = a.transpose();
  return (a - t).norm() == 0.0;
}

}  // namespace

MatrixSource MatrixSource::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("matrix source needs a kind prefix: '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  MatrixSource src;
  if (kind == "mm") {
    if (rest.empty()) throw InputError("mm: source needs a path");
    src.kind = Kind::matrix_market;
    src.path = rest;
    return src;
  }
  const auto fields = split(rest, ',');
  if (fields.size() != 3) throw InputError("'" + text + "' needs three comma-separated fields");
  src.n = parse_index(fields[0], "n");
  src.norm = parse_number(fields[2], "norm");
  if (kind == "banded") {
    src.kind = Kind::synthetic_banded;
    src.k = parse_index(fields[1], "bandwidth");
  } else if (kind == "sparse") {
    src.kind = Kind::synthetic_sparse;
    const auto slash = fields[1].find('/');
    if (slash != std::string::npos) {
      src.density = parse_number(fields[1].substr(0, slash), "density") /
                    parse_number(fields[1].substr(slash + 1), "density");
    } else {
      src.density = parse_number(fields[1], "density");
    }
  } else {
    throw InputError("unknown matrix source kind '" + kind + "'");
  }
  return src;
}

std::string MatrixSource::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::synthetic_banded: out << "banded:" << n << ',' << k << ',' << norm; break;
    case Kind::synthetic_sparse: out << "sparse:" << n << ',' << density << ',' << norm; break;
    case Kind::matrix_market: out << "mm:" << path; break;
  }
  return out.str();
}

SparseMatrix synthetic_banded(Index n, Index k, double norm, std::uint64_t seed) {
  require(n >= 1, "dimension must be positive");
  require(k < n, "bandwidth must be smaller than n");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Triplet> entries;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j <= std::min(n - 1, i + k); ++j) {
      const double v = normal(rng);
      entries.emplace_back(i, j, v);
      if (j != i) entries.emplace_back(j, i, v);
    }
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();
  return scale_to_norm(a, norm);
}

SparseMatrix synthetic_sparse(Index n, double density, double norm, std::uint64_t seed) {
  require(n >= 1, "dimension must be positive");
  require(density > 0.0 && density <= 1.0, "density must lie in (0, 1]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Triplet> entries;
  if (density == 1.0) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) {
        const double v = normal(rng);
        entries.emplace_back(i, j, v);
        if (j != i) entries.emplace_back(j, i, v);
      }
  } else {
    // Walk the upper triangle row by row, skipping geometric gaps.
    std::geometric_distribution<long long> gap(density);
    const long long total = static_cast<long long>(n) * (n + 1) / 2;
    long long pos = gap(rng);
    Index row = 0;
    long long row_start = 0;
    while (pos < total) {
      while (pos >= row_start + (n - row)) {
        row_start += n - row;
        ++row;
      }
      const Index col = row + static_cast<Index>(pos - row_start);
      const double v = normal(rng);
      entries.emplace_back(row, col, v);
      if (col != row) entries.emplace_back(col, row, v);
      pos += 1 + gap(rng);
    }
  }
  SparseMatrix a(n, n);
  a.setFromTriplets(entries.begin(), entries.end());
  a.makeCompressed();
  if (a.nonZeros() == 0) throw InputError("synthetic sparse matrix came out empty; raise the density");
  return scale_to_norm(a, norm);
}

SparseMatrix synthesize_matrix(const MatrixSource& source, std::uint64_t seed) {
  switch (source.kind) {
    case MatrixSource::Kind::synthetic_banded: return synthetic_banded(source.n, source.k, source.norm, seed);
    case MatrixSource::Kind::synthetic_sparse: return synthetic_sparse(source.n, source.density, source.norm, seed);
    case MatrixSource::Kind::matrix_market: {
      SparseMatrix a = matrix_market_read(source.path);
      require(a.rows() == a.cols(), "matrix " + source.path + " is not square");
      return a;
    }
  }
  return {};
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "spamram") return Algorithm::spamram;
  if (name == "bamram") return Algorithm::bamram;
  throw InputError("unknown algorithm '" + name + "'");
}

std::uint64_t sweep_seed(std::uint64_t seed, Index s) { return mix(seed ^ mix(static_cast<std::uint64_t>(s))); }

double relative_error_2(const Matrix& approx, const Matrix& exact) {
  const double denom = norm2(exact);
  const double num = norm2(Matrix(approx - exact));
  if (denom == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / denom;
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
  require(!spec.sweep.empty(), "the s sweep is empty");
  for (std::size_t i = 1; i < spec.sweep.size(); ++i)
    require(spec.sweep[i] > spec.sweep[i - 1], "the s sweep must be strictly increasing");
  require(spec.krylov_steps >= 1 && spec.contour_points >= 1, "inner method parameters must be positive");
  require(spec.niht_iters >= 1, "NIHT iteration cap must be positive");

  const SparseMatrix a = synthesize_matrix(spec.source, spec.seed);
  const Index n = a.rows();
  for (Index s : spec.sweep) require(s >= 1 && s <= n, "sweep value " + std::to_string(s) + " outside [1, n]");
  if (spec.oracle && n > kDenseLimit) {
    throw InputError("dense oracle needs n <= " + std::to_string(kDenseLimit) + "; pass --oracle none");
  }

  const bool symmetric = is_symmetric(a);
  const LinearOperator a_op = LinearOperator::from_sparse(a, symmetric);
  LinearOperator b_op = a_op;
  if (spec.function) {
    const MatFunSpec fspec = MatFunSpec::defaults(*spec.function, spec.krylov_steps, spec.contour_points);
    b_op = matfun_operator(a_op, a, fspec);
  }

  std::optional<Matrix> exact;
  if (spec.oracle) exact = spec.function ? dense_matrix_function(Matrix(a), *spec.function) : Matrix(a);
  std::optional<double> exact_norm;
  if (exact) exact_norm = norm2(*exact);

  std::vector<ExperimentRow> rows;
  for (Index s : spec.sweep) {
    ExperimentRow row;
    row.s = s;
    const std::uint64_t seed_s = sweep_seed(spec.seed, s);
    const std::uint64_t inner_before = a_op.matvec_count();
    Matrix approx;
    const auto start = std::chrono::steady_clock::now();
    if (spec.algorithm == Algorithm::spamram) {
      SpamramConfig cfg;
      cfg.k = spec.k.value_or(std::max<Index>(1, s / 8));
      require(cfg.k <= s, "sparsity k exceeds s");
      cfg.s = s;
      cfg.sensing = spec.sensing;
      cfg.seed = seed_s;
      cfg.niht.max_iters = spec.niht_iters;
      const RecoveryReport rep = spamram_recover(b_op, cfg);
      row.delta_RE = rep.delta_RE;
      row.matvecs = rep.matvecs_used;
      if (exact) approx = Matrix(rep.B_hat);
    } else {
      const BandRecovery rec = bamram_recover(b_op, BandSpec::symmetric_block(s));
      row.matvecs = rec.matvecs_used;
      row.delta_RE = bamram_error_estimate(rec.B_hat, b_op, 5, seed_s).value;
      if (exact) approx = rec.B_hat.to_dense();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    row.inner_matvecs = a_op.matvec_count() - inner_before;
    if (exact) {
      const double num = norm2(Matrix(approx - *exact));
      row.relative_error = *exact_norm == 0.0 ? (num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                                              : num / *exact_norm;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "s,relative_error,delta_RE,matvecs,seconds\n";
  char buf[64];
  for (const auto& r : rows) {
    out << r.s << ',';
    if (r.relative_error) {
      std::snprintf(buf, sizeof(buf), "%.10e", *r.relative_error);
      out << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.10e", r.delta_RE);
    out << ',' << buf << ',' << r.matvecs << ',';
    std::snprintf(buf, sizeof(buf), "%.6f", r.seconds);
    out << buf << '\n';
  }
}

}  // namespace matrecover
