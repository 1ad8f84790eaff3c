#include "c1vem/assembly.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

#include "c1vem/errors.hpp"

namespace c1vem {

int DofMap::n_constrained() const {
  int n = 0;
  for (char c : constrained) n += c != 0;
  return n;
}

DofMap number_dofs(const PolygonalMesh& mesh, const ElementSpec& spec) {
  spec.validate();
  DofMap map;
  map.spec = spec;
  map.n_vertices = mesh.n_vertices();
  map.n_edges = mesh.n_edges();
  map.constrained.assign(map.total(), 0);
  return map;
}

std::vector<char> apply_clamped_bc(const PolygonalMesh& mesh, DofMap& dofs) {
  std::vector<char> constrained(dofs.total(), 0);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    if (!mesh.vertex_on_boundary(v)) continue;
    // w = 0 along the boundary kills the tangential derivative; with the
    // normal derivative clamped too the whole gradient vanishes (at corners
    // the two tangents span the plane).
    for (int c = 0; c < 3; ++c) constrained[dofs.vertex_dof(v, c)] = 1;
  }
  if (dofs.spec.has_edge_moments()) {
    for (int e = 0; e < mesh.n_edges(); ++e)
      if (mesh.edge_on_boundary(e)) constrained[dofs.edge_dof(e)] = 1;
  }
  dofs.constrained = constrained;
  return constrained;
}

std::vector<std::pair<int, double>> cell_dof_indices(const PolygonalMesh& mesh,
                                                     const ElementSpec& spec, int c) {
  const auto& loop = mesh.cell(c);
  const int nv = static_cast<int>(loop.size());
  std::vector<std::pair<int, double>> out;
  out.reserve(spec.n_local_dofs(nv));
  for (int i = 0; i < nv; ++i)
    for (int comp = 0; comp < 3; ++comp) out.emplace_back(3 * loop[i] + comp, 1.0);
  if (spec.has_edge_moments()) {
    const int base = 3 * mesh.n_vertices();
    for (const auto& [edge_id, sign] : mesh.cell_edges(c))
      out.emplace_back(base + edge_id, static_cast<double>(sign));
  }
  return out;
}

namespace {

int thread_budget() {
  const unsigned hw = std::thread::hardware_concurrency();
  int n = hw > 0 ? static_cast<int>(hw) : 1;
  if (const char* env = std::getenv("C1VEM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = static_cast<int>(std::min<long>(v, 256));
  }
  return n;
}

struct CellContribution {
  Eigen::MatrixXd stiffness;
  Eigen::VectorXd load;
  std::string error;
};

}  // namespace

GlobalSystem assemble(const PolygonalMesh& mesh, const ElementSpec& spec, const PlateModel& model,
                      bool single_thread) {
  spec.validate();
  model.validate();

  const int n_cells = mesh.n_cells();
  std::vector<CellContribution> local(n_cells);

  auto compute_range = [&](int begin, int end) {
    for (int c = begin; c < end; ++c) {
      try {
        LocalElement element(mesh.cell_polygon(c), spec, model);
        local[c].stiffness = element.stiffness();
        local[c].load = model.load ? element.load_vector()
                                   : Eigen::VectorXd::Zero(element.n_dofs());
      } catch (const std::exception& e) {
        local[c].error = e.what();
      }
    }
  };

  const int n_threads = single_thread ? 1 : std::min(thread_budget(), std::max(n_cells, 1));
  if (n_threads <= 1 || n_cells < 2 * n_threads) {
    compute_range(0, n_cells);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    const int chunk = (n_cells + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(n_cells, begin + chunk);
      if (begin < end) workers.emplace_back(compute_range, begin, end);
    }
    for (auto& w : workers) w.join();
  }
  for (int c = 0; c < n_cells; ++c)
    if (!local[c].error.empty())
      throw SolveError("cell " + std::to_string(c) + ": " + local[c].error);

  GlobalSystem system;
  system.dofs = number_dofs(mesh, spec);
  apply_clamped_bc(mesh, system.dofs);

  const int total = system.dofs.total();
  system.free_index.assign(total, -1);
  int n_free = 0;
  for (int d = 0; d < total; ++d)
    if (!system.dofs.constrained[d]) system.free_index[d] = n_free++;

  // Serial scatter in cell order keeps results bitwise reproducible.
  std::vector<Eigen::Triplet<double>> triplets;
  system.rhs = Eigen::VectorXd::Zero(n_free);
  for (int c = 0; c < n_cells; ++c) {
    const auto map = cell_dof_indices(mesh, spec, c);
    const int n = static_cast<int>(map.size());
    for (int i = 0; i < n; ++i) {
      const int gi = system.free_index[map[i].first];
      if (gi < 0) continue;
      system.rhs[gi] += map[i].second * local[c].load[i];
      for (int j = 0; j < n; ++j) {
        const int gj = system.free_index[map[j].first];
        if (gj < 0) continue;
        triplets.emplace_back(gi, gj, map[i].second * map[j].second * local[c].stiffness(i, j));
      }
    }
  }
  system.matrix.resize(n_free, n_free);
  system.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return system;
}

SolveResult solve(const GlobalSystem& system) {
  SolveResult result;
  const int total = system.dofs.total();
  result.solution = Eigen::VectorXd::Zero(total);

  const int n_free = static_cast<int>(system.rhs.size());
  if (n_free == 0) return result;

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> chol(system.matrix);
  if (chol.info() != Eigen::Success)
    throw SolveError("system not SPD (assembly or boundary-condition bug)");
  Eigen::VectorXd x = chol.solve(system.rhs);
  // one step of iterative refinement
  x += chol.solve(system.rhs - system.matrix * x);

  const double rhs_norm = system.rhs.norm();
  const double res = (system.matrix * x - system.rhs).norm();
  result.residual = rhs_norm > 0.0 ? res / rhs_norm : res;

  for (int d = 0; d < total; ++d)
    if (system.free_index[d] >= 0) result.solution[d] = x[system.free_index[d]];
  return result;
}

}  // namespace c1vem
