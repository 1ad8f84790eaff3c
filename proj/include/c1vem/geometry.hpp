// Planar polygon primitives shared by the mesh and quadrature layers.
#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace c1vem {

using Vec2 = Eigen::Vector2d;

/// Counter-clockwise vertex loop without a repeated end vertex.
using Polygon = std::vector<Vec2>;

double signed_area(const Polygon& poly);

/// Area centroid (not the vertex average).
Vec2 polygon_centroid(const Polygon& poly);

/// Maximum pairwise vertex distance.
double polygon_diameter(const Polygon& poly);

std::pair<Vec2, Vec2> bounding_box(const Polygon& poly);

/// Intersection of a convex polygon with the half-plane {x : n.dot(x) <= c}.
Polygon clip_half_plane(const Polygon& poly, const Vec2& n, double c);

/// True if no two non-adjacent edges of the loop cross.
bool polygon_is_simple(const Polygon& poly);

}  // namespace c1vem
