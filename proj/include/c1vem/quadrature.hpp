// Gauss rules on segments and exact polynomial quadrature on polygons.
#pragma once

#include <Eigen/Dense>

#include "c1vem/geometry.hpp"

namespace c1vem {

/// Gauss-Legendre rule on [-1, 1]; weights sum to 2.
struct EdgeQuadrature {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule, exact through degree 2n-1. Valid for 1 <= n <= 30.
EdgeQuadrature gauss_legendre(int n);

/// Gauss rule mapped onto the segment [a, b]; integrates in arclength.
struct SegmentRule {
  std::vector<Vec2> points;
  Eigen::VectorXd arclength;  ///< parameter of each point in [0, |b - a|]
  Eigen::VectorXd weights;    ///< sum to |b - a|
  int size() const { return static_cast<int>(weights.size()); }
};
SegmentRule segment_rule(const Vec2& a, const Vec2& b, int n);

/// Positive-weight rule on a polygon.
struct PolygonQuadrature {
  std::vector<Vec2> points;
  Eigen::VectorXd weights;  ///< positive, sum to the polygon area
  int size() const { return static_cast<int>(weights.size()); }
};

/// Rule exact for bivariate polynomials up to `degree`, built by fanning the
/// polygon into triangles around its centroid and collapsing a tensor Gauss
/// rule onto each triangle. Throws DegenerateCellError if |area| < 1e-14.
PolygonQuadrature polygon_quadrature(const Polygon& cell, int degree);

}  // namespace c1vem
