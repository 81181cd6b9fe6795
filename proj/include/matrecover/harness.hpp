#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "matrecover/core/types.hpp"
#include "matrecover/matfun.hpp"
#include "matrecover/sensing.hpp"

namespace matrecover {

/// banded:n,k,norm | sparse:n,density,norm | mm:PATH
struct MatrixSource {
  enum class Kind { synthetic_banded, synthetic_sparse, matrix_market };

  Kind kind = Kind::synthetic_banded;
  Index n = 0;
  Index k = 0;
  double density = 0.0;
  double norm = 1.0;
  std::string path;

  static MatrixSource parse(const std::string& text);
  std::string describe() const;
};

/// Symmetric random matrix for the synthetic kinds, scaled to the requested
/// 2-norm; reads the file for matrix_market.
SparseMatrix synthesize_matrix(const MatrixSource& source, std::uint64_t seed);

/// Symmetric k-banded matrix with N(0,1) entries in the band, scaled.
SparseMatrix synthetic_banded(Index n, Index k, double norm, std::uint64_t seed);
/// Symmetric matrix with each upper-triangle entry present with probability
/// `density`, N(0,1) values, scaled.
SparseMatrix synthetic_sparse(Index n, double density, double norm, std::uint64_t seed);

enum class Algorithm { spamram, bamram };
Algorithm parse_algorithm(const std::string& name);

struct ExperimentSpec {
  MatrixSource source;
  std::optional<MatFun> function;  ///< nullopt is the identity
  Algorithm algorithm = Algorithm::bamram;
  std::vector<Index> sweep;
  std::uint64_t seed = 0;
  Index krylov_steps = 20;
  Index contour_points = 50;
  std::optional<Index> k;  ///< SpaMRAM sparsity; default floor(s / 8)
  SensingKind sensing = SensingKind::gaussian;
  bool oracle = true;
  int niht_iters = 100;
};

struct ExperimentRow {
  Index s = 0;
  std::optional<double> relative_error;
  double delta_RE = 0.0;
  std::uint64_t matvecs = 0;
  std::uint64_t inner_matvecs = 0;
  double seconds = 0.0;
};

/// Seed used for sweep point s.
std::uint64_t sweep_seed(std::uint64_t seed, Index s);

/// Runs the sweep point by point. Throws InputError for bad specs and
/// NumericalError when a computation fails.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

/// Header `s,relative_error,delta_RE,matvecs,seconds` plus one line per row.
void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);

/// ||approx - exact||_2 / ||exact||_2 (0 when both vanish).
double relative_error_2(const Matrix& approx, const Matrix& exact);

}  // namespace matrecover
