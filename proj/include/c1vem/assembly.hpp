// Global dof numbering, clamped boundary conditions, sparse SPD assembly and
// the direct solve.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <utility>
#include <vector>

#include "c1vem/element.hpp"
#include "c1vem/mesh.hpp"

namespace c1vem {

/// Global numbering of the C1 degrees of freedom: three per vertex (value,
/// d/dx, d/dy) followed by one normal-derivative moment per edge for k=3.
struct DofMap {
  ElementSpec spec;
  int n_vertices = 0;
  int n_edges = 0;
  std::vector<char> constrained;  ///< filled by apply_clamped_bc

  int vertex_dof(int v, int comp) const { return 3 * v + comp; }
  int edge_dof(int e) const { return 3 * n_vertices + e; }
  int total() const { return 3 * n_vertices + (spec.has_edge_moments() ? n_edges : 0); }
  int n_constrained() const;
  int n_free() const { return total() - n_constrained(); }
};

DofMap number_dofs(const PolygonalMesh& mesh, const ElementSpec& spec);

/// Marks the clamped set: all three dofs of boundary vertices plus the
/// normal-moment dofs of boundary edges (k=3). Returns the flags and stores
/// them in the map.
std::vector<char> apply_clamped_bc(const PolygonalMesh& mesh, DofMap& dofs);

/// Cell-local dof -> (global dof, sign) in the element's local order. The
/// sign is -1 for a moment dof whose edge the cell traverses against the
/// stored direction, +1 otherwise.
std::vector<std::pair<int, double>> cell_dof_indices(const PolygonalMesh& mesh,
                                                     const ElementSpec& spec, int c);

/// Symmetric system over free dofs after eliminating the homogeneous clamped
/// constraints.
struct GlobalSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  DofMap dofs;
  std::vector<int> free_index;  ///< global dof -> free index, -1 if constrained
};

/// Computes element matrices in parallel (capped by the C1VEM_THREADS
/// environment variable, or forced serial with single_thread) and scatters
/// them serially in cell order, so results are bitwise reproducible. Element
/// failures are rethrown as SolveError with the cell index attached.
GlobalSystem assemble(const PolygonalMesh& mesh, const ElementSpec& spec, const PlateModel& model,
                      bool single_thread = false);

struct SolveResult {
  Eigen::VectorXd solution;  ///< over all dofs, constrained entries zero
  double residual = 0.0;     ///< |A x - b| / |b| on the free system
};

/// Sparse Cholesky solve; throws SolveError("system not SPD") when the
/// factorization fails, which signals an assembly or boundary-condition bug.
SolveResult solve(const GlobalSystem& system);

}  // namespace c1vem
