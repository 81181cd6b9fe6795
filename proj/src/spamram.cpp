#include "matrecover/spamram.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <string>

#include "matrecover/core/norms.hpp"
#include "matrecover/core/parallel.hpp"
#include "matrecover/core/sparse_matrix.hpp"

namespace matrecover {
namespace {

constexpr char kMagic[8] = {'S', 'P', 'M', 'R', 'M', 'E', 'A', 'S'};
constexpr std::uint64_t kFreshSeedSalt = 0x9e3779b97f4a7c15ULL;

static_assert(std::endian::native == std::endian::little, "measurement cache assumes a little-endian host");

template <typename T>
void write_pod(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in, const std::string& path) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) throw InputError("truncated measurement file " + path);
  return value;
}

double fresh_estimate(const SparseMatrix& B_hat, const LinearOperator& mvp, Index probes, std::uint64_t seed) {
  const Index n = mvp.size();
  std::mt19937_64 rng(seed ^ kFreshSeedSalt);
  std::normal_distribution<double> normal;
  Matrix x(n, probes);
  for (Index j = 0; j < probes; ++j)
    for (Index i = 0; i < n; ++i) x(i, j) = normal(rng);
  const Matrix bx = mvp.apply_block(x);
  const double denom = norm2(bx);
  if (denom == 0.0) return 0.0;
  return norm2(Matrix(B_hat * x - bx)) / denom;
}

}  // namespace

Index spamram_default_s(Index n, Index k) {
  require(k >= 1 && k <= n, "sparsity k must satisfy 1 <= k <= n");
  const double raw = std::ceil(2.0 * static_cast<double>(k) * std::log(static_cast<double>(n) / static_cast<double>(k)));
  return std::clamp<Index>(static_cast<Index>(raw), k, n);
}

double spamram_error_estimate(const SparseMatrix& B_hat, const SensingOperator& y_op, const Matrix& F_s) {
  require(B_hat.rows() == F_s.rows() && B_hat.cols() == y_op.n() && F_s.cols() == y_op.s(),
          "error estimate: inconsistent shapes");
  const double denom = norm2(F_s);
  if (denom == 0.0) return 0.0;
  return norm2(Matrix(y_op.right_multiply(B_hat) - F_s)) / denom;
}

SparseMatrix spamram_solve_rows(const SensingOperator& y_op, const Matrix& F_s, const std::vector<Index>& rows,
                                const SparseSolver& solver, Vector* residuals) {
  require(F_s.cols() == y_op.s(), "measurement width must equal s");
  for (Index r : rows) require(r >= 0 && r < F_s.rows(), "row index out of range");
  const auto count = static_cast<Index>(rows.size());
  std::vector<CsSolution> solutions(rows.size());
  parallel_for(count, [&](Index p) {
    solutions[static_cast<std::size_t>(p)] = solver.solve(y_op, F_s.row(rows[static_cast<std::size_t>(p)]).transpose());
  });
  std::vector<Triplet> entries;
  if (residuals) *residuals = Vector::Zero(count);
  for (Index p = 0; p < count; ++p) {
    const auto& sol = solutions[static_cast<std::size_t>(p)];
    for (Index j = 0; j < sol.v_hat.size(); ++j)
      if (sol.v_hat[j] != 0.0) entries.emplace_back(rows[static_cast<std::size_t>(p)], j, sol.v_hat[j]);
    if (residuals) (*residuals)[p] = sol.residual_norm;
  }
  return sparse_from_triplets(F_s.rows(), y_op.n(), entries);
}

RecoveryReport spamram_recover(const LinearOperator& mvp, const SpamramConfig& cfg, const SparseSolver& solver) {
  const Index n = mvp.size();
  const Index k = solver.sparsity();
  require(k >= 1 && k <= n, "sparsity k must satisfy 1 <= k <= n");
  const Index s = cfg.s == 0 ? spamram_default_s(n, k) : cfg.s;
  require(s >= k && s <= n, "measurement count must satisfy k <= s <= n");
  require(cfg.fresh_probes >= 0, "fresh_probes must be nonnegative");

  const SensingOperator y_op = SensingOperator::build(n, s, cfg.sensing, cfg.seed, cfg.xi);
  const Matrix y_dense = y_op.to_dense();

  RecoveryReport report;
  report.s = s;
  report.k = k;
  const std::uint64_t before = mvp.matvec_count();
  report.measurements = mvp.apply_block(y_dense);

  std::vector<CsSolution> solutions(static_cast<std::size_t>(n));
  parallel_for(n, [&](Index i) {
    solutions[static_cast<std::size_t>(i)] = solver.solve(y_op, report.measurements.row(i).transpose());
  });

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(n * k));
  report.per_row_residuals.resize(n);
  report.per_row_iterations.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const auto& sol = solutions[static_cast<std::size_t>(i)];
    for (Index j = 0; j < n; ++j)
      if (sol.v_hat[j] != 0.0) entries.emplace_back(i, j, sol.v_hat[j]);
    report.per_row_residuals[i] = sol.residual_norm;
    report.per_row_iterations[static_cast<std::size_t>(i)] = sol.iterations;
    if (!sol.converged) ++report.failed_rows;
  }
  report.B_hat = sparse_from_triplets(n, n, entries);

  if (cfg.fresh_probes > 0) {
    report.delta_RE = fresh_estimate(report.B_hat, mvp, cfg.fresh_probes, cfg.seed);
  } else {
    report.delta_RE = spamram_error_estimate(report.B_hat, y_op, report.measurements);
  }
  report.matvecs_used = mvp.matvec_count() - before;
  return report;
}

RecoveryReport spamram_recover(const LinearOperator& mvp, const SpamramConfig& cfg) {
  NihtConfig niht = cfg.niht;
  niht.k = cfg.k;
  return spamram_recover(mvp, cfg, NihtSolver(niht));
}

RecoveryReport spamram_recover_columns(const LinearOperator& mvp_transpose, const SpamramConfig& cfg) {
  RecoveryReport report = spamram_recover(mvp_transpose, cfg);
  SparseMatrix transposed = report.B_hat.transpose();
  transposed.makeCompressed();
  report.B_hat = std::move(transposed);
  return report;
}

SensingOperator MeasurementCache::rebuild_operator() const {
  return SensingOperator::build(n, s, sensing, seed, sensing == SensingKind::sparse_rademacher ? std::optional(xi)
                                                                                               : std::nullopt);
}

void save_measurements(const std::filesystem::path& path, const SensingOperator& y_op, const Matrix& F_s) {
  require(F_s.rows() == y_op.n() && F_s.cols() == y_op.s(), "measurement matrix must be n x s");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write measurement file " + path.string());
  out.write(kMagic, sizeof(kMagic));
  write_pod<std::uint64_t>(out, static_cast<std::uint64_t>(y_op.n()));
  write_pod<std::uint64_t>(out, static_cast<std::uint64_t>(y_op.s()));
  write_pod<std::uint64_t>(out, y_op.seed());
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(y_op.kind()));
  write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(y_op.xi()));
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> row_major = F_s;
  out.write(reinterpret_cast<const char*>(row_major.data()),
            static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(row_major.size())));
  if (!out) throw InputError("write failed for " + path.string());
}

MeasurementCache load_measurements(const std::filesystem::path& path) {
  const std::string name = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open measurement file " + name);
  char magic[8];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw InputError("not a measurement file: " + name);
  }
  MeasurementCache cache;
  cache.n = static_cast<Index>(read_pod<std::uint64_t>(in, name));
  cache.s = static_cast<Index>(read_pod<std::uint64_t>(in, name));
  cache.seed = read_pod<std::uint64_t>(in, name);
  const auto kind = read_pod<std::uint32_t>(in, name);
  if (kind > static_cast<std::uint32_t>(SensingKind::sparse_rademacher)) throw InputError("unknown sensing kind in " + name);
  cache.sensing = static_cast<SensingKind>(kind);
  cache.xi = static_cast<Index>(read_pod<std::uint32_t>(in, name));
  require(cache.n > 0 && cache.s > 0 && cache.s <= cache.n, "invalid dimensions in " + name);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> row_major(cache.n, cache.s);
  if (!in.read(reinterpret_cast<char*>(row_major.data()),
               static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(row_major.size())))) {
    throw InputError("truncated measurement file " + name);
  }
  cache.F_s = row_major;
  return cache;
}

}  // namespace matrecover
