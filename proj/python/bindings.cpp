// Python bindings for the main operations: mesh generation and I/O, shape
// regularity, manufactured-benchmark solves, convergence studies, and
// element-level matrices.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "c1vem/analysis.hpp"
#include "c1vem/assembly.hpp"
#include "c1vem/element.hpp"
#include "c1vem/mesh.hpp"

namespace py = pybind11;
using namespace c1vem;

namespace {

Polygon polygon_from_array(const Eigen::MatrixX2d& pts) {
  Polygon poly;
  poly.reserve(pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i) poly.emplace_back(pts(i, 0), pts(i, 1));
  return poly;
}

Eigen::MatrixX2d vertices_array(const PolygonalMesh& mesh) {
  Eigen::MatrixX2d out(mesh.n_vertices(), 2);
  for (int v = 0; v < mesh.n_vertices(); ++v) out.row(v) = mesh.vertex(v).transpose();
  return out;
}

PlateModel make_model(double rigidity, double nu) {
  PlateModel model;
  model.bending_rigidity = rigidity;
  model.poisson_ratio = nu;
  model.validate();
  return model;
}

ErrorReport solve_plate(const PolygonalMesh& mesh, const std::string& element, double rigidity,
                        double nu, bool zero_load) {
  const ElementSpec spec = ElementSpec::from_name(element);
  const ManufacturedCase benchmark = manufactured_square(rigidity);
  PlateModel model = make_model(rigidity, nu);
  if (zero_load)
    model.load = [](const Vec2&) { return 0.0; };
  else
    model.load = benchmark.load;
  const SolveResult sol = solve(assemble(mesh, spec, model));
  return compute_errors(benchmark, mesh, spec, sol.solution, sol.residual);
}

ConvergenceTable run_convergence(const std::vector<PolygonalMesh>& meshes,
                                 const std::string& element, double rigidity, double nu) {
  const ElementSpec spec = ElementSpec::from_name(element);
  const ManufacturedCase benchmark = manufactured_square(rigidity);
  PlateModel model = make_model(rigidity, nu);
  model.load = benchmark.load;
  return convergence_study(benchmark, meshes, spec, model);
}

Eigen::MatrixXd local_stiffness(const Eigen::MatrixX2d& polygon, const std::string& element,
                                double rigidity, double nu) {
  const LocalElement el(polygon_from_array(polygon), ElementSpec::from_name(element),
                        make_model(rigidity, nu));
  return el.stiffness();
}

Eigen::MatrixXd local_projector(const Eigen::MatrixX2d& polygon, const std::string& element,
                                double rigidity, double nu) {
  const LocalElement el(polygon_from_array(polygon), ElementSpec::from_name(element),
                        make_model(rigidity, nu));
  return el.projector();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C1 virtual element solver for the clamped Kirchhoff-Love plate";

  py::register_exception<Error>(m, "C1VemError", PyExc_RuntimeError);

  py::class_<PolygonalMesh>(m, "PolygonalMesh")
      .def_property_readonly("n_vertices", &PolygonalMesh::n_vertices)
      .def_property_readonly("n_cells", &PolygonalMesh::n_cells)
      .def_property_readonly("n_edges", &PolygonalMesh::n_edges)
      .def("vertices", &vertices_array, "vertex coordinates, shape (n_vertices, 2)")
      .def("cell", [](const PolygonalMesh& mesh, int c) { return mesh.cell(c); },
           py::arg("index"))
      .def("h_max", &PolygonalMesh::h_max)
      .def("h_mean", &PolygonalMesh::h_mean)
      .def("total_area", &PolygonalMesh::total_area)
      .def("__repr__", [](const PolygonalMesh& mesh) {
        std::ostringstream ss;
        ss << "PolygonalMesh(" << mesh.n_vertices() << " vertices, " << mesh.n_cells()
           << " cells)";
        return ss.str();
      });

  py::class_<ShapeRegularityReport>(m, "ShapeRegularityReport")
      .def_readonly("rho_star", &ShapeRegularityReport::rho_star)
      .def_readonly("min_edge_ratio", &ShapeRegularityReport::min_edge_ratio)
      .def_readonly("h_max", &ShapeRegularityReport::h_max)
      .def_readonly("h_mean", &ShapeRegularityReport::h_mean);

  py::class_<ErrorReport>(m, "ErrorReport")
      .def_readonly("h", &ErrorReport::h)
      .def_readonly("n_dofs", &ErrorReport::n_dofs)
      .def_readonly("rel_l2", &ErrorReport::rel_l2)
      .def_readonly("rel_h1", &ErrorReport::rel_h1)
      .def_readonly("rel_h2", &ErrorReport::rel_h2)
      .def_readonly("residual", &ErrorReport::residual)
      .def("__repr__", [](const ErrorReport& r) {
        std::ostringstream ss;
        ss << "ErrorReport(h=" << r.h << ", n_dofs=" << r.n_dofs << ", rel_l2=" << r.rel_l2
           << ", rel_h1=" << r.rel_h1 << ", rel_h2=" << r.rel_h2 << ")";
        return ss.str();
      });

  py::class_<ConvergenceTable>(m, "ConvergenceTable")
      .def_readonly("rows", &ConvergenceTable::rows)
      .def_readonly("slope_l2", &ConvergenceTable::ls_slope_l2)
      .def_readonly("slope_h1", &ConvergenceTable::ls_slope_h1)
      .def_readonly("slope_h2", &ConvergenceTable::ls_slope_h2)
      .def("finest_slope_l2", &ConvergenceTable::finest_slope_l2)
      .def("finest_slope_h1", &ConvergenceTable::finest_slope_h1)
      .def("finest_slope_h2", &ConvergenceTable::finest_slope_h2)
      .def("csv", [](const ConvergenceTable& t) {
        std::ostringstream ss;
        write_csv(ss, t);
        return ss.str();
      });

  m.def("build_uniform_triangle_mesh", &build_uniform_triangle_mesh, py::arg("subdivisions"),
        "N x N x 2 right triangles on the unit square");
  m.def("build_voronoi_mesh", &build_voronoi_mesh, py::arg("n_cells"), py::arg("seed"),
        py::arg("lloyd_iters") = 0,
        "clipped Voronoi tessellation of the unit square, deterministic per seed");
  m.def("read_mesh", py::overload_cast<const std::string&>(&read_mesh), py::arg("path"));
  m.def("write_mesh", py::overload_cast<const PolygonalMesh&, const std::string&>(&write_mesh),
        py::arg("mesh"), py::arg("path"));
  m.def("check_shape_regularity", &check_shape_regularity, py::arg("mesh"));

  m.def("solve_plate", &solve_plate, py::arg("mesh"), py::arg("element") = "vem31",
        py::arg("D") = 1.0, py::arg("nu") = 0.3, py::arg("zero_load") = false,
        "solve the manufactured clamped-plate benchmark and report relative errors");
  m.def("convergence_study", &run_convergence, py::arg("meshes"), py::arg("element") = "vem31",
        py::arg("D") = 1.0, py::arg("nu") = 0.3);

  m.def("local_stiffness", &local_stiffness, py::arg("polygon"), py::arg("element") = "vem31",
        py::arg("D") = 1.0, py::arg("nu") = 0.3,
        "local stiffness matrix of one polygonal cell (CCW vertices)");
  m.def("local_projector", &local_projector, py::arg("polygon"), py::arg("element") = "vem31",
        py::arg("D") = 1.0, py::arg("nu") = 0.3,
        "energy projector onto P_k: dof vector -> polynomial coefficients");

  m.def("manufactured_value", [](double x, double y) {
    return manufactured_square(1.0).value(Vec2(x, y));
  }, py::arg("x"), py::arg("y"), "exact benchmark displacement at a point");

  m.attr("__version__") = "0.1.0";
}
