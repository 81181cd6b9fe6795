// recover: sweep SpaMRAM or BaMRAM over measurement counts and write CSV.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "matrecover/harness.hpp"

namespace {

std::vector<matrecover::Index> parse_sweep(const std::string& text) {
  std::vector<matrecover::Index> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw matrecover::InputError("bad sweep entry '" + item + "'");
    }
    if (used != item.size() || v < 1) throw matrecover::InputError("bad sweep entry '" + item + "'");
    out.push_back(static_cast<matrecover::Index>(v));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recover a sparse or banded approximation of a matrix from matvecs"};
  std::string algo, matrix, function = "id", sweep, out_path, sensing = "gaussian", oracle = "dense";
  std::uint64_t seed = 0;
  long long krylov_steps = 20, contour_points = 50, k = 0;
  int niht_iters = 100;

  app.add_option("--algo", algo, "spamram or bamram")->required()->check(CLI::IsMember({"spamram", "bamram"}));
  app.add_option("--matrix", matrix, "banded:n,k,norm | sparse:n,density,norm | mm:PATH")->required();
  app.add_option("--function", function, "id, exp, sqrt, log, sqrt1p or log1p")
      ->check(CLI::IsMember({"id", "exp", "sqrt", "log", "sqrt1p", "log1p"}));
  app.add_option("--sweep", sweep, "comma-separated measurement counts")->required();
  app.add_option("--seed", seed, "random seed");
  app.add_option("--krylov-steps", krylov_steps, "polynomial Krylov steps")->check(CLI::PositiveNumber);
  app.add_option("--contour-points", contour_points, "contour quadrature points")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "CSV output file")->required();
  app.add_option("--k", k, "SpaMRAM sparsity (default s/8)")->check(CLI::PositiveNumber);
  app.add_option("--sensing", sensing, "gaussian, dct or sparse")
      ->check(CLI::IsMember({"gaussian", "dct", "sparse"}));
  app.add_option("--oracle", oracle, "dense or none")->check(CLI::IsMember({"dense", "none"}));
  app.add_option("--niht-iters", niht_iters, "NIHT iteration cap")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    matrecover::ExperimentSpec spec;
    spec.source = matrecover::MatrixSource::parse(matrix);
    if (function != "id") spec.function = matrecover::parse_matfun(function);
    spec.algorithm = matrecover::parse_algorithm(algo);
    spec.sweep = parse_sweep(sweep);
    spec.seed = seed;
    spec.krylov_steps = krylov_steps;
    spec.contour_points = contour_points;
    if (k > 0) spec.k = k;
    spec.sensing = matrecover::parse_sensing_kind(sensing);
    spec.oracle = oracle == "dense";
    spec.niht_iters = niht_iters;

    const auto rows = matrecover::run_experiment(spec);
    std::ofstream out(out_path);
    if (!out) throw matrecover::InputError("cannot write " + out_path);
    matrecover::write_csv(out, rows);
    for (const auto& r : rows) {
      std::cerr << "s=" << r.s << " matvecs=" << r.matvecs << " inner_matvecs=" << r.inner_matvecs
                << " delta_RE=" << r.delta_RE;
      if (r.relative_error) std::cerr << " relative_error=" << *r.relative_error;
      std::cerr << '\n';
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
