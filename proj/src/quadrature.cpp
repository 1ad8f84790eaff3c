#include "c1vem/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "c1vem/errors.hpp"

namespace c1vem {

EdgeQuadrature gauss_legendre(int n) {
  if (n < 1 || n > 30) throw Error("gauss_legendre: point count out of range [1, 30]");
  EdgeQuadrature rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on the Legendre recurrence, starting from the Chebyshev
  // root estimates; symmetric pairs computed once.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // one clean-up pass for the weight at the converged node
    {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

SegmentRule segment_rule(const Vec2& a, const Vec2& b, int n) {
  const EdgeQuadrature gl = gauss_legendre(n);
  const double length = (b - a).norm();
  SegmentRule rule;
  rule.points.resize(n);
  rule.arclength.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = 0.5 * (gl.nodes[i] + 1.0);  // [0, 1]
    rule.points[i] = a + t * (b - a);
    rule.arclength[i] = t * length;
    rule.weights[i] = 0.5 * length * gl.weights[i];
  }
  return rule;
}

namespace {

// Collapsed tensor rule on the triangle (p0, p1, p2), exact for total degree
// <= degree. The simplex map xi = u(1-v), eta = uv has Jacobian u, so the
// integrand gains one degree in u.
void append_triangle_rule(const Vec2& p0, const Vec2& p1, const Vec2& p2, int degree,
                          std::vector<Vec2>& points, std::vector<double>& weights) {
  const double jac =
      (p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y());
  const int n_u = degree / 2 + 2;  // 2 n_u - 1 >= degree + 1
  const int n_v = degree / 2 + 1;  // 2 n_v - 1 >= degree
  const EdgeQuadrature gu = gauss_legendre(n_u);
  const EdgeQuadrature gv = gauss_legendre(n_v);
  for (int i = 0; i < n_u; ++i) {
    const double u = 0.5 * (gu.nodes[i] + 1.0);
    const double wu = 0.5 * gu.weights[i];
    for (int j = 0; j < n_v; ++j) {
      const double v = 0.5 * (gv.nodes[j] + 1.0);
      const double wv = 0.5 * gv.weights[j];
      const double xi = u * (1.0 - v);
      const double eta = u * v;
      points.push_back(p0 + xi * (p1 - p0) + eta * (p2 - p0));
      weights.push_back(wu * wv * u * jac);
    }
  }
}

}  // namespace

PolygonQuadrature polygon_quadrature(const Polygon& cell, int degree) {
  if (cell.size() < 3) throw DegenerateCellError("polygon_quadrature: fewer than 3 vertices");
  if (degree < 0) throw Error("polygon_quadrature: negative degree");
  const double area = signed_area(cell);
  if (std::abs(area) < 1e-14) throw DegenerateCellError("polygon_quadrature: degenerate polygon");

  const Vec2 c = polygon_centroid(cell);
  std::vector<Vec2> points;
  std::vector<double> weights;
  const int n = static_cast<int>(cell.size());
  points.reserve(static_cast<std::size_t>(n) * (degree + 2) * (degree + 2) / 4);
  weights.reserve(points.capacity());
  for (int i = 0; i < n; ++i) append_triangle_rule(c, cell[i], cell[(i + 1) % n], degree, points, weights);

  PolygonQuadrature rule;
  rule.points = std::move(points);
  rule.weights = Eigen::Map<Eigen::VectorXd>(weights.data(), static_cast<int>(weights.size()));
  return rule;
}

}  // namespace c1vem
