#include <cmath>

#include "c1vem/errors.hpp"
#include "c1vem/quadrature.hpp"
#include "doctest.h"

using namespace c1vem;

namespace {

double integrate_monomial_1d(const EdgeQuadrature& rule, int power) {
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], power);
  return s;
}

double integrate(const PolygonQuadrature& rule, int px, int py) {
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i)
    s += rule.weights[i] * std::pow(rule.points[i].x(), px) * std::pow(rule.points[i].y(), py);
  return s;
}

const Polygon kUnitSquare = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};

}  // namespace

TEST_CASE("gauss_legendre small rules match the analytic nodes") {
  const EdgeQuadrature g1 = gauss_legendre(1);
  CHECK(g1.nodes[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g1.weights[0] == doctest::Approx(2.0));

  const EdgeQuadrature g2 = gauss_legendre(2);
  CHECK(g2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(g2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(g2.weights[0] == doctest::Approx(1.0));
  CHECK(g2.weights[1] == doctest::Approx(1.0));
}

TEST_CASE("gauss_legendre(5) integrates t^8 to 2/9") {
  const EdgeQuadrature g5 = gauss_legendre(5);
  CHECK(std::abs(integrate_monomial_1d(g5, 8) - 2.0 / 9.0) < 1e-14);
}

TEST_CASE("gauss_legendre rejects out-of-range point counts") {
  CHECK_THROWS_AS(gauss_legendre(0), Error);
  CHECK_THROWS_AS(gauss_legendre(31), Error);
}

TEST_CASE("gauss_legendre exactness sweep over the full range") {
  // odd monomials vanish by symmetry; even ones integrate to 2/(p+1)
  for (int n = 1; n <= 30; ++n) {
    const EdgeQuadrature rule = gauss_legendre(n);
    CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    for (int p = 0; p <= 2 * n - 1; ++p) {
      const double exact = (p % 2 == 0) ? 2.0 / (p + 1.0) : 0.0;
      CHECK(std::abs(integrate_monomial_1d(rule, p) - exact) < 1e-12);
    }
  }
}

TEST_CASE("segment_rule integrates arclength monomials") {
  const Vec2 a(0.25, -1.0), b(1.25, 1.0);
  const double length = (b - a).norm();
  const SegmentRule rule = segment_rule(a, b, 6);
  CHECK(rule.weights.sum() == doctest::Approx(length).epsilon(1e-14));
  double s3 = 0.0;
  for (int i = 0; i < rule.size(); ++i) s3 += rule.weights[i] * std::pow(rule.arclength[i], 3);
  CHECK(s3 == doctest::Approx(std::pow(length, 4) / 4.0).epsilon(1e-13));
}

TEST_CASE("polygon_quadrature: unit square area and x^2 moment") {
  const PolygonQuadrature r0 = polygon_quadrature(kUnitSquare, 0);
  CHECK(r0.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));

  const PolygonQuadrature r2 = polygon_quadrature(kUnitSquare, 2);
  CHECK(std::abs(integrate(r2, 2, 0) - 1.0 / 3.0) < 1e-13);
}

TEST_CASE("polygon_quadrature: regular hexagon area is 3*sqrt(3)/2") {
  Polygon hex;
  for (int i = 0; i < 6; ++i) {
    const double a = std::numbers::pi / 3.0 * i;
    hex.emplace_back(std::cos(a), std::sin(a));
  }
  const PolygonQuadrature rule = polygon_quadrature(hex, 0);
  CHECK(std::abs(rule.weights.sum() - 3.0 * std::sqrt(3.0) / 2.0) < 1e-12);
}

TEST_CASE("polygon_quadrature rejects degenerate polygons") {
  const Polygon sliver = {Vec2(0, 0), Vec2(1, 0), Vec2(0.5, 1e-16)};
  CHECK_THROWS_AS(polygon_quadrature(sliver, 2), DegenerateCellError);
}

TEST_CASE("polygon_quadrature exactness sweep on square, triangle, hexagon") {
  // Exact integrals on [0,1]^2 are separable: 1/((px+1)(py+1)). The triangle
  // and hexagon are checked against a much higher-order rule of the same
  // family applied to a reference evaluation (independent fan from another
  // anchor would change nothing; instead compare with analytic simplex
  // integrals).
  for (int degree = 0; degree <= 8; ++degree) {
    const PolygonQuadrature rule = polygon_quadrature(kUnitSquare, degree);
    for (int px = 0; px + 0 <= degree; ++px) {
      for (int py = 0; px + py <= degree; ++py) {
        const double exact = 1.0 / ((px + 1.0) * (py + 1.0));
        CHECK(std::abs(integrate(rule, px, py) - exact) <= 1e-12 * std::max(1.0, exact));
      }
    }
  }

  // reference simplex: int x^p y^q = p! q! / (p+q+2)!
  const Polygon simplex = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
  auto factorial = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  for (int degree = 0; degree <= 8; ++degree) {
    const PolygonQuadrature rule = polygon_quadrature(simplex, degree);
    for (int px = 0; px <= degree; ++px) {
      for (int py = 0; px + py <= degree; ++py) {
        const double exact = factorial(px) * factorial(py) / factorial(px + py + 2);
        CHECK(std::abs(integrate(rule, px, py) - exact) <= 1e-12);
      }
    }
  }

  // weights stay positive on a generic hexagon
  Polygon hex;
  for (int i = 0; i < 6; ++i) {
    const double a = std::numbers::pi / 3.0 * i + 0.3;
    hex.emplace_back(0.2 + 1.3 * std::cos(a), -0.1 + 0.9 * std::sin(a));
  }
  const PolygonQuadrature rule = polygon_quadrature(hex, 6);
  CHECK(rule.weights.minCoeff() > 0.0);
  CHECK(rule.weights.sum() == doctest::Approx(signed_area(hex)).epsilon(1e-13));
}
