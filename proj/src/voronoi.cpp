// Clipped Voronoi tessellation of the unit square by half-plane intersection
// with the perpendicular bisectors, with optional Lloyd relaxation. O(n) per
// cell after sorting neighbours by distance, which is plenty at the scales
// this solver targets (<= a few thousand cells).
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "c1vem/mesh.hpp"

namespace c1vem {

namespace {

// 53-bit uniform in [0, 1); avoids std::uniform_real_distribution, whose
// output is implementation-defined and would break cross-platform mesh
// determinism.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Polygon unit_square() {
  return {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
}

// Voronoi cell of seed i: the unit square clipped by the bisector of every
// other seed. Neighbours are processed nearest first so clipping can stop as
// soon as the remaining bisectors cannot reach the cell.
Polygon voronoi_cell(const std::vector<Vec2>& seeds, int i) {
  const Vec2 p = seeds[i];
  std::vector<std::pair<double, int>> order;
  order.reserve(seeds.size() - 1);
  for (int j = 0; j < static_cast<int>(seeds.size()); ++j)
    if (j != i) order.emplace_back((seeds[j] - p).squaredNorm(), j);
  std::sort(order.begin(), order.end());

  Polygon cell = unit_square();
  for (const auto& [d2, j] : order) {
    double reach2 = 0.0;
    for (const Vec2& v : cell) reach2 = std::max(reach2, (v - p).squaredNorm());
    if (d2 >= 4.0 * reach2) break;
    const Vec2 q = seeds[j];
    const Vec2 n = q - p;
    const double c = 0.5 * (q.squaredNorm() - p.squaredNorm());
    cell = clip_half_plane(cell, n, c);
    if (cell.size() < 3) break;
  }
  return cell;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;  // smaller index wins, keeps merging deterministic
  }
};

}  // namespace

PolygonalMesh build_voronoi_mesh(int n_cells, std::uint64_t seed, int lloyd_iters) {
  if (n_cells < 1) throw Error("build_voronoi_mesh: n_cells must be >= 1");
  if (lloyd_iters < 0) throw Error("build_voronoi_mesh: negative Lloyd iteration count");

  std::mt19937_64 rng(seed);
  std::vector<Vec2> seeds(n_cells);
  for (Vec2& s : seeds) {
    s.x() = uniform01(rng);
    s.y() = uniform01(rng);
  }

  std::vector<Polygon> raw(n_cells);
  for (int iter = 0; iter <= lloyd_iters; ++iter) {
    for (int i = 0; i < n_cells; ++i) {
      raw[i] = voronoi_cell(seeds, i);
      if (raw[i].size() < 3 || std::abs(signed_area(raw[i])) < 1e-12)
        throw DegenerateCellError("build_voronoi_mesh: cell " + std::to_string(i) +
                                  " collapsed; retry with another seed or more Lloyd iterations");
    }
    if (iter < lloyd_iters)
      for (int i = 0; i < n_cells; ++i) seeds[i] = polygon_centroid(raw[i]);
  }

  // Merge coincident vertices across cells (independent clips of the same
  // Voronoi vertex differ by roundoff) via a snap grid.
  const double snap_tol = 1e-12;
  std::vector<Vec2> vertices;
  std::vector<std::vector<int>> loops(n_cells);
  std::map<std::pair<long long, long long>, std::vector<int>> grid;
  auto grid_key = [snap_tol](const Vec2& p) {
    return std::make_pair(static_cast<long long>(std::floor(p.x() / snap_tol)),
                          static_cast<long long>(std::floor(p.y() / snap_tol)));
  };
  auto vertex_id = [&](const Vec2& p) {
    const auto [kx, ky] = grid_key(p);
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid.find({kx + dx, ky + dy});
        if (it == grid.end()) continue;
        for (int id : it->second)
          if ((vertices[id] - p).cwiseAbs().maxCoeff() <= snap_tol) return id;
      }
    }
    vertices.push_back(p);
    grid[{kx, ky}].push_back(static_cast<int>(vertices.size()) - 1);
    return static_cast<int>(vertices.size()) - 1;
  };
  for (int i = 0; i < n_cells; ++i)
    for (const Vec2& p : raw[i]) loops[i].push_back(vertex_id(p));

  // Random tessellations can carry edges far below the element scale; merge
  // their endpoints so the dof layout stays well posed.
  UnionFind uf(static_cast<int>(vertices.size()));
  for (int i = 0; i < n_cells; ++i) {
    const double h = polygon_diameter(raw[i]);
    const int m = static_cast<int>(loops[i].size());
    for (int v = 0; v < m; ++v) {
      const int a = loops[i][v];
      const int b = loops[i][(v + 1) % m];
      if ((vertices[a] - vertices[b]).norm() < 1e-9 * h) uf.unite(a, b);
    }
  }

  std::vector<std::vector<int>> cells(n_cells);
  std::vector<int> compact(vertices.size(), -1);
  std::vector<Vec2> used;
  for (int i = 0; i < n_cells; ++i) {
    for (int id : loops[i]) {
      const int root = uf.find(id);
      if (!cells[i].empty() && cells[i].back() == root) continue;
      cells[i].push_back(root);
    }
    while (cells[i].size() > 1 && cells[i].front() == cells[i].back()) cells[i].pop_back();
    if (cells[i].size() < 3)
      throw DegenerateCellError("build_voronoi_mesh: cell " + std::to_string(i) +
                                " collapsed; retry with another seed or more Lloyd iterations");
    for (int& id : cells[i]) {
      if (compact[id] < 0) {
        compact[id] = static_cast<int>(used.size());
        used.push_back(vertices[id]);
      }
      id = compact[id];
    }
  }

  return PolygonalMesh::from_cells(std::move(used), std::move(cells));
}

}  // namespace c1vem
