#include "support.hpp"

#include <cmath>

#include "c1vem/mesh.hpp"
#include "c1vem/quadrature.hpp"

namespace c1vem::testing {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

double shape_quality(const Polygon& poly) {
  const double h = polygon_diameter(poly);
  const int n = static_cast<int>(poly.size());
  double min_edge = h;
  for (int i = 0; i < n; ++i)
    min_edge = std::min(min_edge, (poly[(i + 1) % n] - poly[i]).norm());
  const double area = signed_area(poly);
  if (area <= 0.0) return 0.0;
  return std::min(min_edge / h, area / (h * h));
}

}  // namespace

Polygon random_triangle(Rng& rng) {
  for (;;) {
    Polygon tri = {Vec2(uniform(rng, 0, 1), uniform(rng, 0, 1)),
                   Vec2(uniform(rng, 0, 1), uniform(rng, 0, 1)),
                   Vec2(uniform(rng, 0, 1), uniform(rng, 0, 1))};
    if (signed_area(tri) < 0.0) std::swap(tri[1], tri[2]);
    if (shape_quality(tri) > 0.12) return tri;
  }
}

Polygon random_square(Rng& rng) {
  const Vec2 center(uniform(rng, -1, 1), uniform(rng, -1, 1));
  const double half = uniform(rng, 0.05, 0.6);
  const double angle = uniform(rng, 0, 1.6);
  const Vec2 u(std::cos(angle), std::sin(angle));
  const Vec2 v(-u.y(), u.x());
  return {center - half * u - half * v, center + half * u - half * v,
          center + half * u + half * v, center - half * u + half * v};
}

Polygon random_voronoi_cell(Rng& rng) {
  for (;;) {
    const std::uint64_t seed = rng();
    PolygonalMesh mesh = build_voronoi_mesh(24, seed, 1);
    for (int c = 0; c < mesh.n_cells(); ++c) {
      const Polygon poly = mesh.cell_polygon(c);
      if ((poly.size() == 5 || poly.size() == 6) && shape_quality(poly) > 0.1) return poly;
    }
  }
}

Polygon random_voronoi_pentagon(Rng& rng) {
  for (;;) {
    const Polygon poly = random_voronoi_cell(rng);
    if (poly.size() == 5) return poly;
  }
}

Polygon random_h1_polygon(Rng& rng) {
  switch (rng() % 3) {
    case 0: return random_triangle(rng);
    case 1: return random_square(rng);
    default: return random_voronoi_cell(rng);
  }
}

namespace {

// cubic through p(0), p'(0), p(L), p'(L) via a Vandermonde solve
Eigen::VectorXd cubic_from_endpoint_data(double L, double v0, double d0, double v1, double d1) {
  Eigen::Matrix4d A;
  A << 1, 0, 0, 0,
       0, 1, 0, 0,
       1, L, L * L, L * L * L,
       0, 1, 2 * L, 3 * L * L;
  return A.fullPivLu().solve(Eigen::Vector4d(v0, d0, v1, d1));
}

double eval_poly1(const Eigen::VectorXd& c, double s) {
  double v = 0.0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * s + c[i];
  return v;
}

Eigen::VectorXd derive_poly1(const Eigen::VectorXd& c) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(std::max<int>(1, static_cast<int>(c.size()) - 1));
  for (int i = 1; i < c.size(); ++i) d[i - 1] = i * c[i];
  return d;
}

}  // namespace

double energy_pairing_oracle(const Polygon& cell, const ElementSpec& spec, const PlateModel& model,
                             const ScaledMonomialBasis& basis, const Eigen::VectorXd& poly_coeffs,
                             const Eigen::VectorXd& dofs) {
  const double D = model.bending_rigidity;
  const double nu = model.poisson_ratio;
  const int nv = static_cast<int>(cell.size());
  const EdgeQuadrature gauss = gauss_legendre(16);

  double total = 0.0;
  for (int e = 0; e < nv; ++e) {
    const Vec2& a = cell[e];
    const Vec2& b = cell[(e + 1) % nv];
    const double L = (b - a).norm();
    const Vec2 t = (b - a) / L;
    const Vec2 n(t.y(), -t.x());

    const double va = dofs[3 * e];
    const Vec2 ga(dofs[3 * e + 1], dofs[3 * e + 2]);
    const int j = (e + 1) % nv;
    const double vb = dofs[3 * j];
    const Vec2 gb(dofs[3 * j + 1], dofs[3 * j + 2]);

    const Eigen::VectorXd value = cubic_from_endpoint_data(L, va, ga.dot(t), vb, gb.dot(t));
    const Eigen::VectorXd value_ds = derive_poly1(value);

    Eigen::VectorXd normal;
    if (spec.has_edge_moments()) {
      // quadratic through the endpoint normal derivatives with prescribed moment
      Eigen::Matrix3d A;
      A << 1, 0, 0,
           1, L, L * L,
           L, L * L / 2.0, L * L * L / 3.0;
      normal = A.fullPivLu().solve(
          Eigen::Vector3d(ga.dot(n), gb.dot(n), dofs[3 * nv + e]));
    } else {
      normal = Eigen::Vector2d(ga.dot(n), (gb.dot(n) - ga.dot(n)) / L);
    }

    for (int q = 0; q < gauss.size(); ++q) {
      const double s = 0.5 * (gauss.nodes[q] + 1.0) * L;
      const double w = 0.5 * L * gauss.weights[q];
      const Vec2 x = a + s * t;
      Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
      Vec2 lap_grad = Vec2::Zero();
      for (int i = 0; i < poly_coeffs.size(); ++i) {
        H += poly_coeffs[i] * basis.hessian(i, x);
        lap_grad += poly_coeffs[i] * basis.laplacian_gradient(i, x);
      }
      const double m_nn = D * ((1.0 - nu) * n.dot(H * n) + nu * H.trace());
      const double m_nt = D * (1.0 - nu) * t.dot(H * n);
      total += w * (m_nn * eval_poly1(normal, s) + m_nt * eval_poly1(value_ds, s) -
                    D * lap_grad.dot(n) * eval_poly1(value, s));
    }
  }
  return total;
}

double biharmonic_fd(const std::function<double(const Vec2&)>& w, const Vec2& x, double step) {
  auto stencil = [&](double h) {
    const double c = w(x);
    const double e = w(x + Vec2(h, 0)), ww = w(x - Vec2(h, 0));
    const double nn = w(x + Vec2(0, h)), ss = w(x - Vec2(0, h));
    const double ne = w(x + Vec2(h, h)), nw = w(x + Vec2(-h, h));
    const double se = w(x + Vec2(h, -h)), sw = w(x + Vec2(-h, -h));
    const double e2 = w(x + Vec2(2 * h, 0)), w2 = w(x - Vec2(2 * h, 0));
    const double n2 = w(x + Vec2(0, 2 * h)), s2 = w(x - Vec2(0, 2 * h));
    return (20.0 * c - 8.0 * (e + ww + nn + ss) + 2.0 * (ne + nw + se + sw) +
            (e2 + w2 + n2 + s2)) /
           (h * h * h * h);
  };
  const double coarse = stencil(step);
  const double fine = stencil(step / 2.0);
  return (4.0 * fine - coarse) / 3.0;  // the stencil error is O(step^2)
}

}  // namespace c1vem::testing
