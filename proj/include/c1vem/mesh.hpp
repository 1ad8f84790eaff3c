// Polygonal meshes of a planar domain: construction, validation, generators
// for the two benchmark families (uniform right triangles and clipped Voronoi
// tessellations of the unit square), shape-regularity reporting, and a
// line-oriented text file format.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "c1vem/errors.hpp"
#include "c1vem/geometry.hpp"

namespace c1vem {

/// Mesh edge. `a -> b` is the traversal direction of the left cell; the
/// stored normal convention is the tangent rotated by -90 degrees, which is
/// the outward normal of the left cell. Boundary edges have right < 0.
struct MeshEdge {
  int a = -1, b = -1;
  int left = -1, right = -1;
  bool boundary() const { return right < 0; }
};

/// Immutable conforming polygonal mesh. Cells are simple counter-clockwise
/// vertex loops; every edge is shared by one (boundary) or two (interior)
/// cells; boundary edges form closed loops. Safe to share across threads.
class PolygonalMesh {
public:
  /// Builds and validates a mesh from vertex coordinates and cell loops.
  /// Throws Error on any violated structural invariant.
  static PolygonalMesh from_cells(std::vector<Vec2> vertices, std::vector<std::vector<int>> cells);

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_cells() const { return static_cast<int>(cells_.size()); }
  int n_edges() const { return static_cast<int>(edges_.size()); }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<int>& cell(int c) const { return cells_[c]; }
  const MeshEdge& edge(int e) const { return edges_[e]; }
  const std::vector<MeshEdge>& edges() const { return edges_; }

  Polygon cell_polygon(int c) const;

  /// Edges incident to cell c in loop order; the sign is +1 when the cell
  /// traverses the edge in its stored a -> b direction.
  const std::vector<std::pair<int, int>>& cell_edges(int c) const { return cell_edges_[c]; }

  bool vertex_on_boundary(int v) const { return boundary_vertex_[v] != 0; }
  bool edge_on_boundary(int e) const { return edges_[e].boundary(); }

  double cell_area(int c) const { return cell_areas_[c]; }
  double cell_diameter(int c) const { return cell_diameters_[c]; }
  double total_area() const;
  double h_max() const;
  double h_mean() const;

private:
  PolygonalMesh() = default;
  void build_edges();

  std::vector<Vec2> vertices_;
  std::vector<std::vector<int>> cells_;
  std::vector<MeshEdge> edges_;
  std::vector<std::vector<std::pair<int, int>>> cell_edges_;
  std::vector<char> boundary_vertex_;
  std::vector<double> cell_areas_;
  std::vector<double> cell_diameters_;
};

/// Shape-regularity summary over all cells.
struct ShapeRegularityReport {
  double rho_star = 0.0;        ///< largest rho with every cell star-shaped w.r.t. a ball of radius rho*h_K
  double min_edge_ratio = 0.0;  ///< min over cells of (shortest edge)/h_K
  double h_max = 0.0;
  double h_mean = 0.0;
};

/// N x N x 2 right triangles on the unit square. (N+1)^2 vertices, 2 N^2
/// cells, every cell diameter sqrt(2)/N.
PolygonalMesh build_uniform_triangle_mesh(int subdivisions);

/// Clipped Voronoi tessellation of the unit square from n_cells seed points
/// drawn uniformly at random (mt19937_64). Deterministic for a fixed
/// (n_cells, seed, lloyd_iters). Throws DegenerateCellError if a clipped cell
/// collapses below the area tolerance; callers retry with another seed or
/// more Lloyd iterations.
PolygonalMesh build_voronoi_mesh(int n_cells, std::uint64_t seed, int lloyd_iters = 0);

/// Per-cell star-shapedness via the kernel of each cell (grid-search ball
/// radius); reports rho_star = 0 for a non-star-shaped cell instead of failing.
ShapeRegularityReport check_shape_regularity(const PolygonalMesh& mesh);

/// Text format: header "c1vem-mesh 1", vertex block, cell block. Coordinates
/// are written with %.17g so a round trip is bit-exact. Edges and boundary
/// flags are derived on load, never stored.
void write_mesh(const PolygonalMesh& mesh, std::ostream& out);
void write_mesh(const PolygonalMesh& mesh, const std::string& path);
PolygonalMesh read_mesh(std::istream& in);
PolygonalMesh read_mesh(const std::string& path);

}  // namespace c1vem
