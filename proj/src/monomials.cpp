#include "c1vem/monomials.hpp"

#include <cmath>

#include "c1vem/errors.hpp"
#include "c1vem/quadrature.hpp"

namespace c1vem {

namespace {

// integer power with 0^0 = 1, exact zeros for zero base
double ipow(double x, int p) {
  if (p <= 0) return 1.0;
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// d-th derivative factor of X^p: p (p-1) ... (p-d+1) X^{p-d}, zero when p < d
double dpow(double x, int p, int d) {
  if (p < d) return 0.0;
  double f = 1.0;
  for (int i = 0; i < d; ++i) f *= (p - i);
  return f * ipow(x, p - d);
}

}  // namespace

ScaledMonomialBasis::ScaledMonomialBasis(const Vec2& centroid, double h, int degree)
    : centroid_(centroid), h_(h), degree_(degree) {
  if (h <= 0.0) throw Error("ScaledMonomialBasis: nonpositive length scale");
  if (degree < 0) throw Error("ScaledMonomialBasis: negative degree");
  powers_.reserve(poly_space_dim(degree));
  for (int d = 0; d <= degree; ++d)
    for (int px = d; px >= 0; --px) powers_.emplace_back(px, d - px);
}

double ScaledMonomialBasis::value(int i, const Vec2& x) const {
  const auto [px, py] = powers_[i];
  const Vec2 s = (x - centroid_) / h_;
  return ipow(s.x(), px) * ipow(s.y(), py);
}

Vec2 ScaledMonomialBasis::gradient(int i, const Vec2& x) const {
  const auto [px, py] = powers_[i];
  const Vec2 s = (x - centroid_) / h_;
  return Vec2(dpow(s.x(), px, 1) * ipow(s.y(), py), ipow(s.x(), px) * dpow(s.y(), py, 1)) / h_;
}

Eigen::Matrix2d ScaledMonomialBasis::hessian(int i, const Vec2& x) const {
  const auto [px, py] = powers_[i];
  const Vec2 s = (x - centroid_) / h_;
  const double h2 = h_ * h_;
  Eigen::Matrix2d H;
  H(0, 0) = dpow(s.x(), px, 2) * ipow(s.y(), py);
  H(1, 1) = ipow(s.x(), px) * dpow(s.y(), py, 2);
  H(0, 1) = H(1, 0) = dpow(s.x(), px, 1) * dpow(s.y(), py, 1);
  return H / h2;
}

double ScaledMonomialBasis::laplacian(int i, const Vec2& x) const {
  const Eigen::Matrix2d H = hessian(i, x);
  return H(0, 0) + H(1, 1);
}

Vec2 ScaledMonomialBasis::laplacian_gradient(int i, const Vec2& x) const {
  const auto [px, py] = powers_[i];
  const Vec2 s = (x - centroid_) / h_;
  const double h3 = h_ * h_ * h_;
  // d/dx (m_xx + m_yy) and d/dy (m_xx + m_yy)
  const double gx = dpow(s.x(), px, 3) * ipow(s.y(), py) + dpow(s.x(), px, 1) * dpow(s.y(), py, 2);
  const double gy = dpow(s.x(), px, 2) * dpow(s.y(), py, 1) + ipow(s.x(), px) * dpow(s.y(), py, 3);
  return Vec2(gx, gy) / h3;
}

double poly_value(const ScaledMonomialBasis& basis, const Eigen::VectorXd& coeffs, const Vec2& x) {
  double v = 0.0;
  for (int i = 0; i < coeffs.size(); ++i) v += coeffs[i] * basis.value(i, x);
  return v;
}

Vec2 poly_gradient(const ScaledMonomialBasis& basis, const Eigen::VectorXd& coeffs, const Vec2& x) {
  Vec2 g = Vec2::Zero();
  for (int i = 0; i < coeffs.size(); ++i) g += coeffs[i] * basis.gradient(i, x);
  return g;
}

Eigen::Matrix2d poly_hessian(const ScaledMonomialBasis& basis, const Eigen::VectorXd& coeffs,
                             const Vec2& x) {
  Eigen::Matrix2d H = Eigen::Matrix2d::Zero();
  for (int i = 0; i < coeffs.size(); ++i) H += coeffs[i] * basis.hessian(i, x);
  return H;
}

Eigen::VectorXd monomial_moments(const Polygon& cell, const ScaledMonomialBasis& basis,
                                 int up_to_degree) {
  if (up_to_degree > basis.degree()) throw Error("monomial_moments: degree exceeds basis degree");
  const int n = poly_space_dim(up_to_degree);
  const PolygonQuadrature rule = polygon_quadrature(cell, up_to_degree < 0 ? 0 : up_to_degree);
  Eigen::VectorXd moments = Eigen::VectorXd::Zero(n);
  for (int q = 0; q < rule.size(); ++q)
    for (int i = 0; i < n; ++i) moments[i] += rule.weights[q] * basis.value(i, rule.points[q]);
  return moments;
}

Eigen::MatrixXd mass_matrix(const Polygon& cell, const ScaledMonomialBasis& basis, int row_degree,
                            int col_degree) {
  if (row_degree > basis.degree() || col_degree > basis.degree())
    throw Error("mass_matrix: degree exceeds basis degree");
  const int nr = poly_space_dim(row_degree);
  const int nc = poly_space_dim(col_degree);
  const PolygonQuadrature rule = polygon_quadrature(cell, row_degree + col_degree);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nr, nc);
  Eigen::VectorXd vr(nr), vc(nc);
  for (int q = 0; q < rule.size(); ++q) {
    for (int i = 0; i < nr; ++i) vr[i] = basis.value(i, rule.points[q]);
    for (int j = 0; j < nc; ++j) vc[j] = basis.value(j, rule.points[q]);
    M += rule.weights[q] * vr * vc.transpose();
  }
  return M;
}

Eigen::VectorXd l2_project_polynomial(const Polygon& cell, const ScaledMonomialBasis& basis,
                                      const Eigen::VectorXd& coeffs, int source_degree,
                                      int target_degree) {
  if (coeffs.size() != poly_space_dim(source_degree))
    throw Error("l2_project_polynomial: coefficient count does not match source degree");
  const Eigen::MatrixXd cross = mass_matrix(cell, basis, target_degree, source_degree);
  const Eigen::MatrixXd gram = mass_matrix(cell, basis, target_degree, target_degree);
  Eigen::LDLT<Eigen::MatrixXd> fac(gram);
  if (fac.info() != Eigen::Success)
    throw Error("l2_project_polynomial: singular Gram matrix (degenerate cell geometry)");
  return fac.solve(cross * coeffs);
}

}  // namespace c1vem
