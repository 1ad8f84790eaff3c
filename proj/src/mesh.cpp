#include "c1vem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace c1vem {

PolygonalMesh PolygonalMesh::from_cells(std::vector<Vec2> vertices,
                                        std::vector<std::vector<int>> cells) {
  PolygonalMesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.cells_ = std::move(cells);

  const int nv = mesh.n_vertices();
  if (mesh.cells_.empty()) throw Error("mesh has no cells");
  if (nv < 3) throw Error("mesh has fewer than 3 vertices");

  mesh.cell_areas_.resize(mesh.n_cells());
  mesh.cell_diameters_.resize(mesh.n_cells());
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto& loop = mesh.cells_[c];
    if (loop.size() < 3) throw Error("cell " + std::to_string(c) + " has fewer than 3 vertices");
    std::vector<int> sorted = loop;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 0 || sorted.back() >= nv)
      throw Error("cell " + std::to_string(c) + " references an out-of-range vertex");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("cell " + std::to_string(c) + " repeats a vertex");

    const Polygon poly = mesh.cell_polygon(c);
    const double area = signed_area(poly);
    if (area <= 0.0)
      throw Error("cell " + std::to_string(c) + " is not counter-clockwise (signed area <= 0)");
    if (!polygon_is_simple(poly))
      throw Error("cell " + std::to_string(c) + " is self-intersecting");
    mesh.cell_areas_[c] = area;
    mesh.cell_diameters_[c] = polygon_diameter(poly);
  }

  mesh.build_edges();
  return mesh;
}

void PolygonalMesh::build_edges() {
  std::map<std::pair<int, int>, int> edge_of;
  cell_edges_.assign(n_cells(), {});
  for (int c = 0; c < n_cells(); ++c) {
    const auto& loop = cells_[c];
    const int m = static_cast<int>(loop.size());
    cell_edges_[c].reserve(m);
    for (int i = 0; i < m; ++i) {
      const int a = loop[i];
      const int b = loop[(i + 1) % m];
      const auto key = std::minmax(a, b);
      auto it = edge_of.find(key);
      if (it == edge_of.end()) {
        MeshEdge e;
        e.a = a;
        e.b = b;
        e.left = c;
        edge_of.emplace(key, static_cast<int>(edges_.size()));
        cell_edges_[c].emplace_back(static_cast<int>(edges_.size()), +1);
        edges_.push_back(e);
      } else {
        MeshEdge& e = edges_[it->second];
        if (e.right >= 0)
          throw Error("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                      ") is shared by more than two cells");
        if (e.a != b || e.b != a)
          throw Error("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                      ") is traversed in the same direction by both cells");
        e.right = c;
        cell_edges_[c].emplace_back(it->second, -1);
      }
    }
  }

  boundary_vertex_.assign(n_vertices(), 0);
  std::vector<int> boundary_degree(n_vertices(), 0);
  for (const MeshEdge& e : edges_) {
    if (!e.boundary()) continue;
    boundary_vertex_[e.a] = boundary_vertex_[e.b] = 1;
    ++boundary_degree[e.a];
    ++boundary_degree[e.b];
  }
  for (int v = 0; v < n_vertices(); ++v) {
    if (boundary_vertex_[v] && boundary_degree[v] != 2)
      throw Error("boundary edges do not form closed loops at vertex " + std::to_string(v));
  }
}

Polygon PolygonalMesh::cell_polygon(int c) const {
  Polygon poly;
  poly.reserve(cells_[c].size());
  for (int v : cells_[c]) poly.push_back(vertices_[v]);
  return poly;
}

double PolygonalMesh::total_area() const {
  double a = 0.0;
  for (double v : cell_areas_) a += v;
  return a;
}

double PolygonalMesh::h_max() const {
  double h = 0.0;
  for (double d : cell_diameters_) h = std::max(h, d);
  return h;
}

double PolygonalMesh::h_mean() const {
  double h = 0.0;
  for (double d : cell_diameters_) h += d;
  return h / n_cells();
}

PolygonalMesh build_uniform_triangle_mesh(int subdivisions) {
  const int N = subdivisions;
  if (N < 1) throw Error("build_uniform_triangle_mesh: subdivisions must be >= 1");
  std::vector<Vec2> vertices;
  vertices.reserve((N + 1) * (N + 1));
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= N; ++i)
      vertices.emplace_back(static_cast<double>(i) / N, static_cast<double>(j) / N);

  auto vid = [N](int i, int j) { return j * (N + 1) + i; };
  std::vector<std::vector<int>> cells;
  cells.reserve(2 * N * N);
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      cells.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  return PolygonalMesh::from_cells(std::move(vertices), std::move(cells));
}

namespace {

// Largest ball radius such that the cell is star-shaped with respect to every
// point of the ball: the Chebyshev depth of the cell's kernel, found by a
// coarse grid over the bounding box followed by local refinement.
double star_ball_radius(const Polygon& poly) {
  const int n = static_cast<int>(poly.size());
  // inward half-plane (unit normal, offset) per edge line
  std::vector<std::pair<Vec2, double>> lines;
  lines.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % n];
    const Vec2 d = b - a;
    const double len = d.norm();
    if (len == 0.0) continue;
    const Vec2 inward(-d.y() / len, d.x() / len);  // left of a->b for a CCW loop
    lines.emplace_back(inward, inward.dot(a));
  }
  auto depth = [&lines](const Vec2& x) {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& [nrm, c] : lines) r = std::min(r, nrm.dot(x) - c);
    return r;
  };

  auto [lo, hi] = bounding_box(poly);
  Vec2 best_point = 0.5 * (lo + hi);
  double best = depth(best_point);
  const int grid = 129;
  for (int j = 0; j < grid; ++j) {
    for (int i = 0; i < grid; ++i) {
      const Vec2 x(lo.x() + (hi.x() - lo.x()) * i / (grid - 1.0),
                   lo.y() + (hi.y() - lo.y()) * j / (grid - 1.0));
      const double r = depth(x);
      if (r > best) {
        best = r;
        best_point = x;
      }
    }
  }
  Vec2 half = 0.5 * (hi - lo) / (grid - 1.0) * 2.0;
  for (int pass = 0; pass < 4; ++pass) {
    const int fine = 17;
    Vec2 center = best_point;
    for (int j = 0; j < fine; ++j) {
      for (int i = 0; i < fine; ++i) {
        const Vec2 x(center.x() + half.x() * (2.0 * i / (fine - 1.0) - 1.0),
                     center.y() + half.y() * (2.0 * j / (fine - 1.0) - 1.0));
        const double r = depth(x);
        if (r > best) {
          best = r;
          best_point = x;
        }
      }
    }
    half *= 2.0 / (fine - 1.0);
  }
  return std::max(best, 0.0);
}

}  // namespace

ShapeRegularityReport check_shape_regularity(const PolygonalMesh& mesh) {
  ShapeRegularityReport report;
  report.rho_star = std::numeric_limits<double>::infinity();
  report.min_edge_ratio = std::numeric_limits<double>::infinity();
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const Polygon poly = mesh.cell_polygon(c);
    const double h = mesh.cell_diameter(c);
    report.rho_star = std::min(report.rho_star, star_ball_radius(poly) / h);
    const int m = static_cast<int>(poly.size());
    for (int i = 0; i < m; ++i) {
      const double len = (poly[(i + 1) % m] - poly[i]).norm();
      report.min_edge_ratio = std::min(report.min_edge_ratio, len / h);
    }
  }
  report.h_max = mesh.h_max();
  report.h_mean = mesh.h_mean();
  return report;
}

void write_mesh(const PolygonalMesh& mesh, std::ostream& out) {
  char buf[64];
  out << "c1vem-mesh 1\n";
  out << "vertices " << mesh.n_vertices() << "\n";
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    std::snprintf(buf, sizeof(buf), "%.17g", mesh.vertex(v).x());
    out << buf << ' ';
    std::snprintf(buf, sizeof(buf), "%.17g", mesh.vertex(v).y());
    out << buf << '\n';
  }
  out << "cells " << mesh.n_cells() << "\n";
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto& loop = mesh.cell(c);
    out << loop.size();
    for (int v : loop) out << ' ' << v;
    out << '\n';
  }
}

void write_mesh(const PolygonalMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_mesh(mesh, out);
  if (!out) throw Error("write to '" + path + "' failed");
}

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      // skip blank lines
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw MeshFormatError(what, line_no); }
};

}  // namespace

PolygonalMesh read_mesh(std::istream& in) {
  LineReader reader{in};
  std::string line;

  if (!reader.next(line)) reader.fail("empty mesh file");
  {
    std::istringstream ss(line);
    std::string magic;
    int version = 0;
    if (!(ss >> magic >> version) || magic != "c1vem-mesh" || version != 1)
      reader.fail("expected header 'c1vem-mesh 1'");
  }

  long n_vertices = -1;
  if (!reader.next(line)) reader.fail("missing vertex count");
  {
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag >> n_vertices) || tag != "vertices" || n_vertices < 0)
      reader.fail("expected 'vertices <count>'");
  }
  std::vector<Vec2> vertices(n_vertices);
  for (long v = 0; v < n_vertices; ++v) {
    if (!reader.next(line)) reader.fail("unexpected end of file in vertex block");
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y)) reader.fail("malformed vertex " + std::to_string(v));
    std::string extra;
    if (ss >> extra) reader.fail("trailing tokens after vertex " + std::to_string(v));
    vertices[v] = Vec2(x, y);
  }

  long n_cells = -1;
  if (!reader.next(line)) reader.fail("missing cell count");
  {
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag >> n_cells) || tag != "cells" || n_cells < 0)
      reader.fail("expected 'cells <count>'");
  }
  if (n_cells == 0) reader.fail("mesh has no cells");

  std::vector<std::vector<int>> cells(n_cells);
  for (long c = 0; c < n_cells; ++c) {
    if (!reader.next(line)) reader.fail("unexpected end of file in cell block");
    std::istringstream ss(line);
    long count = 0;
    if (!(ss >> count) || count < 3) reader.fail("cell " + std::to_string(c) + ": bad vertex count");
    cells[c].resize(count);
    for (long i = 0; i < count; ++i) {
      long idx;
      if (!(ss >> idx)) reader.fail("cell " + std::to_string(c) + ": missing vertex index");
      if (idx < 0 || idx >= n_vertices)
        reader.fail("cell " + std::to_string(c) + " references out-of-range vertex " +
                    std::to_string(idx));
      cells[c][i] = static_cast<int>(idx);
    }
    std::string extra;
    if (ss >> extra) reader.fail("cell " + std::to_string(c) + ": trailing tokens");
  }

  try {
    return PolygonalMesh::from_cells(std::move(vertices), std::move(cells));
  } catch (const Error& e) {
    throw MeshFormatError(e.what(), reader.line_no);
  }
}

PolygonalMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return read_mesh(in);
}

}  // namespace c1vem
