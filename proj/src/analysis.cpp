#include "c1vem/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "c1vem/quadrature.hpp"

namespace c1vem {

ManufacturedCase manufactured_square(double bending_rigidity) {
  // w = a(x) a(y) with a(t) = t^2 (t-1)^2; clamped-compatible on the unit square.
  auto a = [](double t) { return t * t * (t - 1.0) * (t - 1.0); };
  auto da = [](double t) { return 2.0 * t * (t - 1.0) * (2.0 * t - 1.0); };
  auto dda = [](double t) { return 12.0 * t * t - 12.0 * t + 2.0; };
  constexpr double d4a = 24.0;

  ManufacturedCase c;
  c.name = "square-bubble";
  c.value = [=](const Vec2& p) { return a(p.x()) * a(p.y()); };
  c.gradient = [=](const Vec2& p) {
    return Vec2(da(p.x()) * a(p.y()), a(p.x()) * da(p.y()));
  };
  c.hessian = [=](const Vec2& p) {
    Eigen::Matrix2d H;
    H(0, 0) = dda(p.x()) * a(p.y());
    H(1, 1) = a(p.x()) * dda(p.y());
    H(0, 1) = H(1, 0) = da(p.x()) * da(p.y());
    return H;
  };
  c.load = [=](const Vec2& p) {
    return bending_rigidity *
           (d4a * a(p.y()) + 2.0 * dda(p.x()) * dda(p.y()) + a(p.x()) * d4a);
  };
  return c;
}

std::pair<double, double> boundary_trace_magnitude(const ManufacturedCase& c,
                                                   int samples_per_side) {
  double max_value = 0.0, max_normal = 0.0;
  const Vec2 normals[4] = {{0, -1}, {1, 0}, {0, 1}, {-1, 0}};
  for (int side = 0; side < 4; ++side) {
    for (int i = 0; i < samples_per_side; ++i) {
      const double t = (i + 0.5) / samples_per_side;
      Vec2 p;
      switch (side) {
        case 0: p = Vec2(t, 0); break;
        case 1: p = Vec2(1, t); break;
        case 2: p = Vec2(t, 1); break;
        default: p = Vec2(0, t); break;
      }
      max_value = std::max(max_value, std::abs(c.value(p)));
      max_normal = std::max(max_normal, std::abs(c.gradient(p).dot(normals[side])));
    }
  }
  return {max_value, max_normal};
}

Eigen::VectorXd interpolate(const ManufacturedCase& c, const PolygonalMesh& mesh,
                            const ElementSpec& spec) {
  DofMap map = number_dofs(mesh, spec);
  Eigen::VectorXd dofs = Eigen::VectorXd::Zero(map.total());
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    dofs[map.vertex_dof(v, 0)] = c.value(mesh.vertex(v));
    const Vec2 g = c.gradient(mesh.vertex(v));
    dofs[map.vertex_dof(v, 1)] = g.x();
    dofs[map.vertex_dof(v, 2)] = g.y();
  }
  if (spec.has_edge_moments()) {
    for (int e = 0; e < mesh.n_edges(); ++e) {
      const MeshEdge& edge = mesh.edge(e);
      const EdgeFrame frame(mesh.vertex(edge.a), mesh.vertex(edge.b));
      const SegmentRule rule = segment_rule(frame.a, frame.b, 8);
      double moment = 0.0;
      for (int q = 0; q < rule.size(); ++q)
        moment += rule.weights[q] * c.gradient(rule.points[q]).dot(frame.normal);
      dofs[map.edge_dof(e)] = moment;
    }
  }
  return dofs;
}

ErrorReport compute_errors(const ManufacturedCase& c, const PolygonalMesh& mesh,
                           const ElementSpec& spec, const Eigen::VectorXd& solution,
                           double residual) {
  DofMap map = number_dofs(mesh, spec);
  if (solution.size() != map.total())
    throw Error("compute_errors: solution length does not match the dof map");

  PlateModel model;  // coefficients are irrelevant for the projection geometry
  model.load = nullptr;

  double num_l2 = 0, num_h1 = 0, num_h2 = 0;
  double den_l2 = 0, den_h1 = 0, den_h2 = 0;
  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const LocalElement element(mesh.cell_polygon(cell), spec, model);
    const auto locs = cell_dof_indices(mesh, spec, cell);
    Eigen::VectorXd local(locs.size());
    for (std::size_t i = 0; i < locs.size(); ++i)
      local[i] = locs[i].second * solution[locs[i].first];
    const Eigen::VectorXd coeffs = element.projector() * local;

    const PolygonQuadrature rule = polygon_quadrature(mesh.cell_polygon(cell), 2 * spec.k + 4);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q];
      const Vec2& x = rule.points[q];
      const double wex = c.value(x);
      const Vec2 gex = c.gradient(x);
      const Eigen::Matrix2d hex = c.hessian(x);
      const double wh = poly_value(element.basis(), coeffs, x);
      const Vec2 gh = poly_gradient(element.basis(), coeffs, x);
      const Eigen::Matrix2d hh = poly_hessian(element.basis(), coeffs, x);
      num_l2 += w * (wex - wh) * (wex - wh);
      num_h1 += w * (gex - gh).squaredNorm();
      num_h2 += w * (hex - hh).squaredNorm();
      den_l2 += w * wex * wex;
      den_h1 += w * gex.squaredNorm();
      den_h2 += w * hex.squaredNorm();
    }
  }

  ErrorReport report;
  report.h = mesh.h_max();
  report.n_dofs = map.total();
  report.rel_l2 = std::sqrt(num_l2 / den_l2);
  report.rel_h1 = std::sqrt(num_h1 / den_h1);
  report.rel_h2 = std::sqrt(num_h2 / den_h2);
  report.residual = residual;
  return report;
}

namespace {

double least_squares_slope(const std::vector<double>& h, const std::vector<double>& err) {
  const int n = static_cast<int>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

void fit_slopes(ConvergenceTable& table) {
  table.pair_slope_l2.clear();
  table.pair_slope_h1.clear();
  table.pair_slope_h2.clear();
  if (!table.has_slopes()) return;

  std::vector<double> h, l2, h1, h2;
  for (const ErrorReport& r : table.rows) {
    h.push_back(r.h);
    l2.push_back(r.rel_l2);
    h1.push_back(r.rel_h1);
    h2.push_back(r.rel_h2);
  }
  table.ls_slope_l2 = least_squares_slope(h, l2);
  table.ls_slope_h1 = least_squares_slope(h, h1);
  table.ls_slope_h2 = least_squares_slope(h, h2);
  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    const double dh = std::log(h[i] / h[i + 1]);
    table.pair_slope_l2.push_back(std::log(l2[i] / l2[i + 1]) / dh);
    table.pair_slope_h1.push_back(std::log(h1[i] / h1[i + 1]) / dh);
    table.pair_slope_h2.push_back(std::log(h2[i] / h2[i + 1]) / dh);
  }
}

ConvergenceTable convergence_study(const ManufacturedCase& c,
                                   const std::vector<PolygonalMesh>& meshes,
                                   const ElementSpec& spec, const PlateModel& model,
                                   bool single_thread) {
  ConvergenceTable table;
  PlateModel with_load = model;
  if (!with_load.load) with_load.load = c.load;
  for (std::size_t i = 0; i < meshes.size(); ++i) {
    try {
      const GlobalSystem system = assemble(meshes[i], spec, with_load, single_thread);
      const SolveResult sol = solve(system);
      table.rows.push_back(compute_errors(c, meshes[i], spec, sol.solution, sol.residual));
    } catch (const Error& e) {
      throw SolveError("mesh " + std::to_string(i) + ": " + e.what());
    }
  }
  fit_slopes(table);
  return table;
}

void write_csv(std::ostream& out, const ConvergenceTable& table) {
  char buf[256];
  out << "h,n_dofs,rel_L2,rel_H1,rel_H2,residual\n";
  for (const ErrorReport& r : table.rows) {
    std::snprintf(buf, sizeof(buf), "%.12g,%d,%.12g,%.12g,%.12g,%.12g\n", r.h, r.n_dofs, r.rel_l2,
                  r.rel_h1, r.rel_h2, r.residual);
    out << buf;
  }
  if (table.has_slopes()) {
    std::snprintf(buf, sizeof(buf), "# slope_L2=%.6g slope_H1=%.6g slope_H2=%.6g\n",
                  table.ls_slope_l2, table.ls_slope_h1, table.ls_slope_h2);
    out << buf;
  }
}

}  // namespace c1vem
