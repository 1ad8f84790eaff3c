// Scaled monomial bases and polynomial calculus on polygons.
//
// The basis functions m_i(x) = ((x - centroid)/h)^{alpha_i} span P_degree on a
// cell with diameter h. The (x - centroid)/h scaling keeps Gram matrices
// uniformly conditioned under mesh refinement.
#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "c1vem/geometry.hpp"

namespace c1vem {

/// dim P_degree in two variables; 0 for negative degree.
inline int poly_space_dim(int degree) {
  return degree < 0 ? 0 : (degree + 1) * (degree + 2) / 2;
}

/// Monomials ordered by total degree, x-power descending within a degree:
/// 1, X, Y, X^2, XY, Y^2, ... where X = (x - cx)/h, Y = (y - cy)/h.
class ScaledMonomialBasis {
public:
  ScaledMonomialBasis(const Vec2& centroid, double h, int degree);

  int degree() const { return degree_; }
  int size() const { return poly_space_dim(degree_); }
  const Vec2& centroid() const { return centroid_; }
  double scale() const { return h_; }
  std::pair<int, int> exponents(int i) const { return powers_[i]; }

  double value(int i, const Vec2& x) const;
  Vec2 gradient(int i, const Vec2& x) const;
  Eigen::Matrix2d hessian(int i, const Vec2& x) const;
  double laplacian(int i, const Vec2& x) const;
  /// Gradient of the Laplacian (third derivatives).
  Vec2 laplacian_gradient(int i, const Vec2& x) const;

private:
  Vec2 centroid_;
  double h_;
  int degree_;
  std::vector<std::pair<int, int>> powers_;
};

/// Evaluation of a polynomial given by basis coefficients.
double poly_value(const ScaledMonomialBasis& basis, const Eigen::VectorXd& coeffs, const Vec2& x);
Vec2 poly_gradient(const ScaledMonomialBasis& basis, const Eigen::VectorXd& coeffs, const Vec2& x);
Eigen::Matrix2d poly_hessian(const ScaledMonomialBasis& basis, const Eigen::VectorXd& coeffs, const Vec2& x);

/// Integrals of every basis monomial of total degree <= up_to_degree over the cell.
Eigen::VectorXd monomial_moments(const Polygon& cell, const ScaledMonomialBasis& basis, int up_to_degree);

/// Mass matrix (int_K m_i m_j) with rows over P_row_degree and columns over P_col_degree.
Eigen::MatrixXd mass_matrix(const Polygon& cell, const ScaledMonomialBasis& basis, int row_degree, int col_degree);

/// L2 projection of a polynomial (coefficients over P_source_degree) onto
/// P_target_degree via the Gram system. Projecting a P_m polynomial onto P_m
/// reproduces it.
Eigen::VectorXd l2_project_polynomial(const Polygon& cell, const ScaledMonomialBasis& basis,
                                      const Eigen::VectorXd& coeffs, int source_degree,
                                      int target_degree);

}  // namespace c1vem
