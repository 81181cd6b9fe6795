#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "matrecover/matrecover.hpp"

namespace py = pybind11;
using namespace matrecover;

namespace {

// Python callables may be invoked from worker threads; the GIL is taken per call.
LinearOperator from_callable(Index n, py::function fn, bool symmetric) {
  // released with the GIL held, wherever the last copy dies
  std::shared_ptr<py::function> holder(new py::function(std::move(fn)), [](py::function* p) {
    py::gil_scoped_acquire gil;
    delete p;
  });
  auto apply = [holder, n](const Eigen::Ref<const Vector>& x, Eigen::Ref<Vector> y) {
    py::gil_scoped_acquire gil;
    const Vector out = (*holder)(Vector(x)).cast<Vector>();
    if (out.size() != n) throw InputError("matvec callback returned a vector of the wrong length");
    y = out;
  };
  return LinearOperator(n, apply, symmetric);
}

BandSpec make_spec(std::optional<Index> k1, std::optional<Index> k2, std::optional<Index> s0, std::optional<Index> s,
                   std::optional<std::pair<double, double>> lambdas, double c) {
  if (k1 || k2) return BandSpec::exact(k1.value_or(0), k2.value_or(k1.value_or(0)));
  if (s0) return BandSpec::symmetric(*s0);
  if (lambdas) return BandSpec::asymmetric(lambdas->first, lambdas->second, c);
  if (s) return BandSpec::symmetric_block(*s);
  throw InputError("pass k1/k2, s0, s, or lambdas");
}

}  // namespace

PYBIND11_MODULE(_matrecover, m) {
  m.doc() = "Matrix recovery from matrix-vector products";

  py::class_<LinearOperator>(m, "Operator")
      .def(py::init(&from_callable), py::arg("n"), py::arg("matvec"), py::arg("symmetric") = false)
      .def_static("from_dense", &LinearOperator::from_dense, py::arg("a"), py::arg("symmetric") = false)
      .def_static("from_sparse", &LinearOperator::from_sparse, py::arg("a"), py::arg("symmetric") = false)
      .def_property_readonly("n", &LinearOperator::size)
      .def_property_readonly("symmetric", &LinearOperator::symmetric_hint)
      .def_property_readonly("matvec_count", &LinearOperator::matvec_count)
      .def("reset_count", &LinearOperator::reset_count)
      .def("apply", py::overload_cast<const Eigen::Ref<const Vector>&>(&LinearOperator::apply, py::const_),
           py::call_guard<py::gil_scoped_release>())
      .def("apply_block", &LinearOperator::apply_block, py::call_guard<py::gil_scoped_release>());

  py::class_<BandedMatrix>(m, "BandedMatrix")
      .def_property_readonly("n", &BandedMatrix::size)
      .def_property_readonly("upper_bandwidth", &BandedMatrix::upper_bandwidth)
      .def_property_readonly("lower_bandwidth", &BandedMatrix::lower_bandwidth)
      .def("__call__", &BandedMatrix::operator())
      .def("to_dense", &BandedMatrix::to_dense)
      .def("to_sparse", &BandedMatrix::to_sparse);

  py::class_<BandRecovery>(m, "BandRecovery")
      .def_readonly("B_hat", &BandRecovery::B_hat)
      .def_readonly("s", &BandRecovery::s)
      .def_readonly("matvecs_used", &BandRecovery::matvecs_used)
      .def_readonly("s_rounded", &BandRecovery::s_rounded)
      .def_readonly("probes", &BandRecovery::probes);

  m.def("probe_apply", &probe_apply, py::arg("op"), py::arg("s"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "bamram_recover",
      [](const LinearOperator& op, std::optional<Index> k1, std::optional<Index> k2, std::optional<Index> s0,
         std::optional<Index> s, std::optional<std::pair<double, double>> lambdas, double c) {
        const BandSpec spec = make_spec(k1, k2, s0, s, lambdas, c);
        py::gil_scoped_release nogil;
        return bamram_recover(op, spec);
      },
      py::arg("op"), py::kw_only(), py::arg("k1") = py::none(), py::arg("k2") = py::none(),
      py::arg("s0") = py::none(), py::arg("s") = py::none(), py::arg("lambdas") = py::none(), py::arg("c") = 10.0);
  m.def(
      "bamram_error_estimate",
      [](const BandedMatrix& b_hat, const LinearOperator& op, Index n_probes, std::uint64_t seed) {
        return bamram_error_estimate(b_hat, op, n_probes, seed).value;
      },
      py::arg("B_hat"), py::arg("op"), py::arg("n_probes") = 5, py::arg("seed") = 0,
      py::call_guard<py::gil_scoped_release>());
  m.def("s0_for_accuracy", &s0_for_accuracy, py::arg("c"), py::arg("lam"), py::arg("eps"));

  py::class_<SensingOperator>(m, "SensingOperator")
      .def_static(
          "build",
          [](Index n, Index s, const std::string& kind, std::uint64_t seed, std::optional<Index> xi) {
            return SensingOperator::build(n, s, parse_sensing_kind(kind), seed, xi);
          },
          py::arg("n"), py::arg("s"), py::arg("kind") = "gaussian", py::arg("seed") = 0, py::arg("xi") = py::none())
      .def_property_readonly("n", &SensingOperator::n)
      .def_property_readonly("s", &SensingOperator::s)
      .def("adjoint_apply", &SensingOperator::adjoint_apply)
      .def("forward_apply", &SensingOperator::forward_apply)
      .def("to_dense", &SensingOperator::to_dense);

  py::class_<CsSolution>(m, "CsSolution")
      .def_readonly("v_hat", &CsSolution::v_hat)
      .def_readonly("iterations", &CsSolution::iterations)
      .def_readonly("residual_norm", &CsSolution::residual_norm)
      .def_readonly("converged", &CsSolution::converged);

  m.def("hard_threshold", &hard_threshold, py::arg("v"), py::arg("k"));
  m.def(
      "niht_solve",
      [](const SensingOperator& y_op, const Vector& y, Index k, int max_iters) {
        NihtConfig cfg;
        cfg.k = k;
        cfg.max_iters = max_iters;
        return niht_solve(y_op, y, cfg);
      },
      py::arg("Y"), py::arg("y"), py::arg("k"), py::arg("max_iters") = 100, py::call_guard<py::gil_scoped_release>());

  py::class_<RecoveryReport>(m, "RecoveryReport")
      .def_readonly("B_hat", &RecoveryReport::B_hat)
      .def_readonly("matvecs_used", &RecoveryReport::matvecs_used)
      .def_readonly("delta_RE", &RecoveryReport::delta_RE)
      .def_readonly("failed_rows", &RecoveryReport::failed_rows)
      .def_readonly("s", &RecoveryReport::s)
      .def_readonly("k", &RecoveryReport::k);

  m.def(
      "spamram_recover",
      [](const LinearOperator& op, Index k, Index s, const std::string& sensing, std::uint64_t seed, int max_iters) {
        SpamramConfig cfg;
        cfg.k = k;
        cfg.s = s;
        cfg.sensing = parse_sensing_kind(sensing);
        cfg.seed = seed;
        cfg.niht.max_iters = max_iters;
        py::gil_scoped_release nogil;
        return spamram_recover(op, cfg);
      },
      py::arg("op"), py::arg("k"), py::arg("s") = 0, py::arg("sensing") = "gaussian", py::arg("seed") = 0,
      py::arg("max_iters") = 100);
  m.def("spamram_default_s", &spamram_default_s, py::arg("n"), py::arg("k"));

  m.def(
      "matfun_operator",
      [](const LinearOperator& op, const std::string& f, Index krylov_steps, Index contour_points,
         std::optional<std::pair<double, double>> interval) {
        MatFunSpec spec = MatFunSpec::defaults(parse_matfun(f), krylov_steps, contour_points);
        if (interval) {
          auto* c = std::get_if<Contour>(&spec.method);
          if (!c) throw InputError("an interval only applies to contour functions");
          c->interval = Interval{interval->first, interval->second};
        }
        py::gil_scoped_release nogil;
        return matfun_operator(op, spec);
      },
      py::arg("op"), py::arg("f"), py::arg("krylov_steps") = 20, py::arg("contour_points") = 50,
      py::arg("interval") = py::none());
  m.def("dense_matrix_function", [](const Matrix& a, const std::string& f) {
    return dense_matrix_function(a, parse_matfun(f));
  });

  m.def(
      "kron_sum_recover",
      [](const LinearOperator& op, Index k1, Index k2) { return kron_sum_recover(op, k1, k2).assemble(); },
      py::arg("op"), py::arg("k1"), py::arg("k2"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "kron_exp_recover",
      [](const LinearOperator& op, Index s1, Index s2) {
        const KronExpRecovery rec = kron_exp_recover(op, s1, s2);
        return py::make_tuple(rec.F1.to_dense(), rec.F2.to_dense());
      },
      py::arg("op"), py::arg("s1"), py::arg("s2"));

  m.def(
      "run_experiment",
      [](const std::string& matrix, const std::string& function, const std::string& algorithm,
         const std::vector<Index>& sweep, std::uint64_t seed, bool oracle) {
        ExperimentSpec spec;
        spec.source = MatrixSource::parse(matrix);
        if (function != "id") spec.function = parse_matfun(function);
        spec.algorithm = parse_algorithm(algorithm);
        spec.sweep = sweep;
        spec.seed = seed;
        spec.oracle = oracle;
        std::vector<ExperimentRow> rows;
        {
          py::gil_scoped_release nogil;
          rows = run_experiment(spec);
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["s"] = r.s;
          d["relative_error"] = r.relative_error ? py::cast(*r.relative_error) : py::none();
          d["delta_RE"] = r.delta_RE;
          d["matvecs"] = r.matvecs;
          d["seconds"] = r.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("matrix"), py::arg("function") = "id", py::arg("algorithm") = "bamram", py::arg("sweep"),
      py::arg("seed") = 0, py::arg("oracle") = true);
}
