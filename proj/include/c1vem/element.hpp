// Everything local to one polygon: the C1 degree-of-freedom layout, edge
// trace reconstruction, the energy projector onto P_k, the L2 projector onto
// P_{k-2}, stabilization, and the local stiffness matrix and load vector.
//
// A local function is never evaluated pointwise; all computations route
// through its degrees of freedom. For accuracy degree k the dofs are, in
// order: per vertex (value, d/dx, d/dy), then for k=3 one zeroth moment of
// the normal derivative per edge. Edge moments follow the outward-normal
// convention of the cell; the assembler flips signs for cells that traverse
// an edge against its stored direction.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

#include "c1vem/errors.hpp"
#include "c1vem/geometry.hpp"
#include "c1vem/monomials.hpp"

namespace c1vem {

/// Physical coefficients and load of the plate problem. The bending rigidity
/// absorbs Young modulus and thickness and is never split back out.
struct PlateModel {
  double bending_rigidity = 1.0;  ///< D > 0
  double poisson_ratio = 0.3;     ///< nu in [0, 0.5)
  std::function<double(const Vec2&)> load;  ///< transversal load density f(x)

  void validate() const;  ///< throws Error on out-of-range coefficients
};

/// Accuracy degree k in {2, 3} with the derived trace degrees. k=2 and k=3
/// are the elements named vem31 and vem32 (value traces of degree r=3 with
/// normal-derivative traces of degree s=1 and s=2 respectively).
struct ElementSpec {
  int k = 2;

  static ElementSpec vem31() { return {2}; }
  static ElementSpec vem32() { return {3}; }
  static ElementSpec from_name(const std::string& name);  ///< "vem31" | "vem32"

  int trace_degree() const { return 3; }        ///< r = max(3, k)
  int normal_degree() const { return k - 1; }   ///< s
  int interior_degree() const { return k - 4; } ///< m; negative means no interior dofs
  bool has_edge_moments() const { return k == 3; }
  int poly_dim() const { return poly_space_dim(k); }
  int n_local_dofs(int n_vertices) const {
    return 3 * n_vertices + (has_edge_moments() ? n_vertices : 0);
  }
  std::string name() const { return k == 2 ? "vem31" : "vem32"; }

  void validate() const;  ///< throws Error unless k in {2, 3}
};

/// Oriented edge geometry. The normal is the tangent rotated by -90 degrees,
/// i.e. the outward normal when a -> b follows a counter-clockwise loop.
struct EdgeFrame {
  Vec2 a, b;
  double length;
  Vec2 tangent, normal;

  EdgeFrame(const Vec2& a, const Vec2& b);  ///< throws Error on zero length

  Vec2 point_at(double s) const { return a + s * tangent; }
};

/// Univariate polynomial in the arclength parameter, power-basis coefficients.
struct Poly1 {
  Eigen::VectorXd c;

  double operator()(double s) const;
  Poly1 derivative() const;
};

/// The unique cubic on the edge matching endpoint values and endpoint
/// tangential derivatives (gradients dotted with the unit tangent).
Poly1 edge_value_trace(const EdgeFrame& e, double value_a, const Vec2& grad_a, double value_b,
                       const Vec2& grad_b);

/// Normal-derivative trace: for k=2 the linear interpolant of the endpoint
/// normal derivatives; for k=3 the unique quadratic matching them plus the
/// prescribed zeroth moment (the raw integral of dv/dn over the edge).
Poly1 edge_normal_trace(const EdgeFrame& e, const ElementSpec& spec, const Vec2& grad_a,
                        const Vec2& grad_b, double moment = 0.0);

/// Projectors, stabilization, stiffness and load on a single cell. All
/// members are pure functions of (cell, spec, model); instances are immutable
/// and safe to use from several threads.
class LocalElement {
public:
  LocalElement(Polygon cell, ElementSpec spec, PlateModel model);

  const Polygon& cell() const { return cell_; }
  const ElementSpec& spec() const { return spec_; }
  const PlateModel& model() const { return model_; }
  const ScaledMonomialBasis& basis() const { return basis_; }
  const std::vector<EdgeFrame>& edges() const { return edges_; }
  double diameter() const { return basis_.scale(); }
  double area() const { return area_; }
  int n_vertices() const { return static_cast<int>(cell_.size()); }
  int n_dofs() const { return n_dofs_; }

  /// Energy projector Pi onto P_k, (poly_dim x n_dofs): dof vector ->
  /// coefficients. Reproduces every polynomial of degree <= k.
  const Eigen::MatrixXd& projector() const { return projector_; }

  /// L2 projector onto P_{k-2}, (poly_space_dim(k-2) x n_dofs), computed as
  /// the L2 projection of the energy projection; the moment identities of the
  /// local space make this the true L2 projection of the virtual function.
  const Eigen::MatrixXd& l2_projector() const { return l2_projector_; }

  /// Dof-scalar-product stabilization, vanishing on dofs of P_k polynomials.
  const Eigen::MatrixXd& stabilization() const { return stabilization_; }

  /// Local stiffness: consistency part plus stabilization. Symmetric positive
  /// semidefinite with kernel exactly the dofs of P_1.
  const Eigen::MatrixXd& stiffness() const { return stiffness_; }

  /// Dofs of every basis monomial, (n_dofs x poly_dim).
  const Eigen::MatrixXd& polynomial_dofs() const { return polynomial_dofs_; }

  /// Gram matrix of the energy bilinear form on P_k x P_k.
  const Eigen::MatrixXd& energy_gram() const { return energy_gram_; }

  /// Row q, column j holds the energy pairing of basis monomial q with the
  /// virtual function of dof j, evaluated by parts from edge traces alone.
  const Eigen::MatrixXd& dof_energy_pairing() const { return dof_energy_pairing_; }

  /// Load vector (f_loc)_j = int_K f (Pi0 basis_j); exact for polynomial f up
  /// to the internal quadrature degree 2k+2.
  Eigen::VectorXd load_vector() const;

  /// Interpolation dofs of a smooth function given with its gradient.
  Eigen::VectorXd dof_values_of(const std::function<double(const Vec2&)>& w,
                                const std::function<Vec2(const Vec2&)>& grad_w) const;

  Eigen::VectorXd dofs_of_polynomial(const Eigen::VectorXd& coeffs) const {
    return polynomial_dofs_ * coeffs;
  }

  /// Local dof index helpers (vertex-major, then edge moments).
  int vertex_dof(int local_vertex, int comp) const { return 3 * local_vertex + comp; }
  int edge_moment_dof(int local_edge) const { return 3 * n_vertices() + local_edge; }

private:
  void build();

  Polygon cell_;
  ElementSpec spec_;
  PlateModel model_;
  ScaledMonomialBasis basis_;
  std::vector<EdgeFrame> edges_;
  double area_ = 0.0;
  int n_dofs_ = 0;

  Eigen::MatrixXd energy_gram_;
  Eigen::MatrixXd dof_energy_pairing_;
  Eigen::MatrixXd projector_;
  Eigen::MatrixXd polynomial_dofs_;
  Eigen::MatrixXd stabilization_;
  Eigen::MatrixXd stiffness_;
  Eigen::MatrixXd l2_projector_;
};

}  // namespace c1vem
