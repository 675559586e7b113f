#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "siolab/clifford.hpp"
#include "siolab/error.hpp"
#include "siolab/field.hpp"
#include "siolab/geometry.hpp"
#include "siolab/growth.hpp"
#include "siolab/harness/config.hpp"
#include "siolab/harness/experiments.hpp"
#include "siolab/holder.hpp"
#include "siolab/kernels.hpp"
#include "siolab/operators.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace siolab;

namespace {

// JSON crosses the boundary as text; the Python side wraps it in json.loads/dumps.
json parse(const std::string& s) { return json::parse(s); }

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_array(const std::vector<double>& v, std::size_t rows, std::size_t cols) {
  Array a({rows, cols});
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

Array vector_array(const std::vector<double>& v) {
  Array a(std::vector<py::ssize_t>{static_cast<py::ssize_t>(v.size())});
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

Array points_array(const std::vector<geometry::Point>& p, int dim) {
  Array a({p.size(), static_cast<std::size_t>(dim)});
  auto r = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (int m = 0; m < dim; ++m) r(i, m) = p[i][m];
  return a;
}

std::vector<geometry::Point> to_points(const Array& a) {
  if (a.ndim() != 2 || a.shape(1) < 1 || a.shape(1) > 3) throw DimensionError("points must be an (m, 2) or (m, 3) array");
  std::vector<geometry::Point> p(a.shape(0), geometry::Point{0, 0, 0});
  auto r = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i)
    for (py::ssize_t m = 0; m < a.shape(1); ++m) p[i][m] = r(i, m);
  return p;
}

// (N,) or (N, width) samples.
BoundaryField to_field(const Array& a, std::size_t nodes) {
  if (a.ndim() != 1 && a.ndim() != 2) throw DimensionError("field must be a 1-d or 2-d array");
  if (static_cast<std::size_t>(a.shape(0)) != nodes) throw DimensionError("field length does not match the mesh");
  BoundaryField f(nodes, a.ndim() == 1 ? 1 : static_cast<int>(a.shape(1)));
  std::copy(a.data(), a.data() + f.data.size(), f.data.begin());
  return f;
}

Array field_array(const BoundaryField& f) {
  if (f.width == 1) return vector_array(f.data);
  return to_array(f.data, f.size(), f.width);
}

ops::OperatorSpec op_from(const std::string& spec, int n) { return ops::OperatorSpec::from_json(parse(spec), n); }

BoundaryField widen(const BoundaryField& f, const ops::OperatorSpec& op, int n) {
  if (op.kernel_width() > 1 && f.width == 1) return f.as_multivector(n);
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "siolab core bindings";

  static py::exception<Error> error(m, "SiolabError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      PyErr_SetObject(exc.ptr(), py::make_tuple(e.kind(), e.what()).ptr());
    } catch (const json::exception& e) {
      py::object exc = error;
      PyErr_SetObject(exc.ptr(), py::make_tuple("json", e.what()).ptr());
    }
  });

  // growth
  py::class_<growth::GrowthFunction>(m, "GrowthFunction")
      .def_static("from_json", [](const std::string& s) { return growth::GrowthFunction::from_json(parse(s)); })
      .def("to_json", [](const growth::GrowthFunction& g) { return g.to_json().dump(); })
      .def("__call__", &growth::GrowthFunction::eval)
      .def("extend", &growth::GrowthFunction::extend)
      .def("describe", &growth::GrowthFunction::describe)
      .def_property_readonly("D", &growth::GrowthFunction::D)
      .def("__repr__", [](const growth::GrowthFunction& g) { return "<GrowthFunction " + g.describe() + ">"; });
  m.def("zygmund_transform", [](const growth::GrowthFunction& g, double t) { return growth::zygmund_transform(g, t); });
  m.def("w_omega", [](const growth::GrowthFunction& g, double t) { return growth::w_omega(g, t); });
  m.def("dilation_indices", [](const growth::GrowthFunction& g) {
    const auto ix = growth::dilation_indices(g);
    return py::make_tuple(ix.i_lower, ix.i_upper);
  });
  m.def("analyze", [](const growth::GrowthFunction& g) { return growth::analyze(g).to_json().dump(); });

  // clifford
  m.def("clifford_product", [](int n, const std::vector<double>& u, const std::vector<double>& v) {
    return clifford::gproduct(clifford::Multivector(n, u), clifford::Multivector(n, v)).coeffs();
  });
  m.def("blade_name", &clifford::blade_name);

  // geometry
  py::class_<geometry::BoundaryMesh>(m, "BoundaryMesh")
      .def_property_readonly("dim", [](const geometry::BoundaryMesh& b) { return b.dim; })
      .def_property_readonly("nodes", [](const geometry::BoundaryMesh& b) { return points_array(b.nodes, b.dim); })
      .def_property_readonly("normals", [](const geometry::BoundaryMesh& b) { return points_array(b.normals, b.dim); })
      .def_property_readonly("weights", [](const geometry::BoundaryMesh& b) { return vector_array(b.weights); })
      .def_property_readonly("panel_h", [](const geometry::BoundaryMesh& b) { return b.panel_h; })
      .def("total_measure", &geometry::BoundaryMesh::total_measure)
      .def("__len__", &geometry::BoundaryMesh::size);
  m.def("build_mesh", [](const std::string& spec, int N) {
    return geometry::build_mesh(geometry::DomainSpec::from_json(parse(spec)), N);
  });
  m.def("distance_to_boundary", [](const geometry::BoundaryMesh& mesh, const Array& pts) {
    std::vector<double> d;
    for (const auto& p : to_points(pts)) d.push_back(geometry::distance_to_boundary(mesh, p));
    return d;
  });
  m.def("sample_probes", [](const geometry::BoundaryMesh& mesh, int count, double rho_min, std::uint64_t seed, bool exterior) {
    return points_array(geometry::sample_probes(mesh, count, rho_min, seed, exterior), mesh.dim);
  }, py::arg("mesh"), py::arg("count"), py::arg("rho_min"), py::arg("seed") = 1, py::arg("exterior") = false);

  // kernels and operators
  m.def("theta", [](const std::string& field) { return kernels::theta(kernels::DoubleLayerField::from_json(parse(field))); });
  m.def("pv_boundary", [](const std::string& op, const geometry::BoundaryMesh& mesh, const Array& f) {
    const auto o = op_from(op, mesh.dim);
    return field_array(ops::pv_boundary(o, mesh, widen(to_field(f, mesh.size()), o, mesh.dim)));
  });
  m.def("potential", [](const std::string& op, const geometry::BoundaryMesh& mesh, const Array& f, const Array& pts) {
    const auto o = op_from(op, mesh.dim);
    const auto P = ops::potential(o, mesh, widen(to_field(f, mesh.size()), o, mesh.dim), to_points(pts));
    return to_array(P.values, P.points.size(), P.width);
  });
  m.def("riesz_via_clifford", [](const geometry::BoundaryMesh& mesh) {
    const auto r = ops::riesz_via_clifford(mesh);
    std::vector<double> out;
    for (std::size_t i = 0; i < mesh.size(); ++i)
      for (const auto& c : r.components) out.push_back(c.data[i]);
    return to_array(out, mesh.size(), r.components.size());
  });
  m.def("clifford_involution_check", [](const geometry::BoundaryMesh& mesh, const Array& f) {
    return ops::clifford_involution_check(mesh, to_field(f, mesh.size()));
  });

  // holder
  m.def("seminorm", [](const Array& pts, const Array& f, const growth::GrowthFunction& g) {
    const auto P = to_points(pts);
    return holder::seminorm(P, to_field(f, P.size()), g).to_json().dump();
  });

  // harness
  m.def("experiment_names", &harness::experiment_names);
  m.def("parse_config", [](const std::string& text) { return harness::parse_config_text(text).dump(); });
  m.def("run_experiment", [](const std::string& tree, const std::vector<std::string>& overrides) {
    auto j = parse(tree);
    for (const auto& o : overrides) harness::apply_override(j, o);
    const auto cfg = harness::ExperimentConfig::from_json(j);
    py::gil_scoped_release release;
    return harness::run(cfg).to_json().dump();
  });
  m.def("write_artifacts", [](const std::string& report, const std::string& dir) {
    return harness::write_artifacts(harness::ExperimentReport::from_json(parse(report)), dir);
  });
  m.def("plot", [](const std::string& report, const std::string& kind) {
    return harness::plot(harness::ExperimentReport::from_json(parse(report)), kind);
  });
  m.def("git_blob_hash", &harness::git_blob_hash);
  m.attr("__version__") = "0.1.0";
}
