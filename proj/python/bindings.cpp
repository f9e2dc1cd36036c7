#include <sstream>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "holosym/auxalg.hpp"
#include "holosym/classification.hpp"
#include "holosym/cli.hpp"
#include "holosym/curvature.hpp"
#include "holosym/errors.hpp"
#include "holosym/report.hpp"
#include "holosym/symmetry.hpp"
#include "holosym/verification.hpp"

namespace py = pybind11;
using namespace holosym;

namespace {

py::array_t<double> to_numpy(const Tensor& t) {
  std::vector<py::ssize_t> shape(t.rank(), t.dim());
  py::array_t<double> out(shape);
  auto src = t.data();
  std::copy(src.begin(), src.end(), out.mutable_data());
  return out;
}

PointFrame frame_at(const std::string& id, const Vector& p) { return point_frame(make_chart(id), p); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Curvature tensors and symmetry classification on Kaehler charts";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<NotCurvatureDependentError>(m, "NotCurvatureDependentError", PyExc_ValueError);

  m.def("catalog", [] {
    Json list = Json::array();
    for (const CatalogEntry& e : catalog_entries()) list.push_back(to_json(e));
    return list.dump();
  });

  py::class_<Chart>(m, "Chart")
      .def(py::init([](const std::string& id) { return make_chart(id); }), py::arg("id"))
      .def_property_readonly("name", &Chart::name)
      .def_property_readonly("dim", &Chart::dim)
      .def_property_readonly("params", &Chart::params)
      .def_property_readonly("sample_radius", &Chart::sample_radius)
      .def("contains", &Chart::contains)
      .def("metric", [](const Chart& c, const Vector& p) { return c.metric_jet(p, 0).g; })
      .def("complex_structure", &Chart::complex_structure)
      .def("sample_point", [](const Chart& c, std::uint64_t seed) {
        Rng rng(seed);
        return c.sample_point(rng);
      });

  m.def("riemann", [](const std::string& id, const Vector& p) { return to_numpy(frame_at(id, p).riemann); });
  m.def("nabla_riemann",
        [](const std::string& id, const Vector& p) { return to_numpy(frame_at(id, p).nabla_riemann); });
  m.def("rr", [](const std::string& id, const Vector& p) { return to_numpy(compute_rr(frame_at(id, p))); });
  m.def("tachibana",
        [](const std::string& id, const Vector& p) { return to_numpy(compute_tachibana(frame_at(id, p))); });
  m.def("complex_tachibana", [](const std::string& id, const Vector& p) {
    return to_numpy(compute_complex_tachibana(frame_at(id, p)));
  });
  m.def("pi_dot_pi", [](const Matrix& g, const Matrix& J) { return to_numpy(compute_pi_dot_pi(g, J)); });
  m.def("sectional_curvature", [](const std::string& id, const Vector& p, const Vector& v, const Vector& w) {
    return sectional_curvature(frame_at(id, p), Plane{v, w, false});
  });

  m.def(
      "classify",
      [](const std::string& id, const Vector& p, int samples, std::uint64_t seed, double tol) {
        return to_json(classify_point(make_chart(id), p, {samples, seed}, tol)).dump();
      },
      py::arg("id"), py::arg("point"), py::arg("samples") = 500, py::arg("seed") = 0, py::arg("tol") = 1e-8);

  m.def(
      "run_suite",
      [](const std::string& suite, std::vector<std::string> manifolds, int points, int samples,
         std::uint64_t seed, std::optional<double> tol, std::vector<int> dims) {
        SuiteOptions opts;
        opts.manifolds = std::move(manifolds);
        opts.dims = std::move(dims);
        opts.config.points = points;
        opts.config.samples = samples;
        opts.config.seed = seed;
        opts.config.tol = tol;
        return to_json(run_suite(suite, opts)).dump();
      },
      py::arg("suite"), py::arg("manifolds") = std::vector<std::string>{}, py::arg("points") = 5,
      py::arg("samples") = 500, py::arg("seed") = 0, py::arg("tol") = std::nullopt,
      py::arg("dims") = std::vector<int>{});

  m.def("suite_ids", &suite_ids);

  m.def(
      "certify_auxalg",
      [](int dim, int rank, bool drop_j, std::uint64_t seed) {
        AuxAlgOptions o;
        o.dim = dim;
        o.rank = rank;
        o.drop_j_invariance = drop_j;
        o.seed = seed;
        const AuxAlgResult r = certify_holomorphic_determination(o);
        py::dict d;
        d["orbit_variables"] = r.orbit_variables;
        d["dim_w"] = r.dim_w;
        d["rank_e"] = r.rank_e;
        d["samples"] = r.samples;
        d["certified"] = r.certified();
        return d;
      },
      py::arg("dim"), py::arg("rank") = 6, py::arg("drop_j") = false, py::arg("seed") = 0);

  m.def("cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "holosym");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
