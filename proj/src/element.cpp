#include "c1vem/element.hpp"

#include <cmath>

#include "c1vem/errors.hpp"
#include "c1vem/quadrature.hpp"

namespace c1vem {

void PlateModel::validate() const {
  if (!(bending_rigidity > 0.0)) throw Error("PlateModel: bending rigidity must be positive");
  if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5))
    throw Error("PlateModel: Poisson ratio must lie in [0, 0.5)");
}

void ElementSpec::validate() const {
  if (k != 2 && k != 3) throw Error("ElementSpec: accuracy degree must be 2 or 3");
}

ElementSpec ElementSpec::from_name(const std::string& name) {
  if (name == "vem31") return vem31();
  if (name == "vem32") return vem32();
  throw Error("unknown element '" + name + "' (expected vem31 or vem32)");
}

EdgeFrame::EdgeFrame(const Vec2& a_, const Vec2& b_) : a(a_), b(b_) {
  length = (b - a).norm();
  if (length <= 0.0) throw Error("EdgeFrame: zero-length edge");
  tangent = (b - a) / length;
  normal = Vec2(tangent.y(), -tangent.x());  // outward for a CCW loop
}

double Poly1::operator()(double s) const {
  double v = 0.0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * s + c[i];
  return v;
}

Poly1 Poly1::derivative() const {
  const int n = static_cast<int>(c.size());
  Poly1 d;
  d.c = Eigen::VectorXd::Zero(std::max(n - 1, 1));
  for (int i = 1; i < n; ++i) d.c[i - 1] = i * c[i];
  return d;
}

Poly1 edge_value_trace(const EdgeFrame& e, double value_a, const Vec2& grad_a, double value_b,
                       const Vec2& grad_b) {
  const double L = e.length;
  const double da = grad_a.dot(e.tangent);
  const double db = grad_b.dot(e.tangent);
  Poly1 p;
  p.c = Eigen::VectorXd(4);
  p.c[0] = value_a;
  p.c[1] = da;
  p.c[2] = 3.0 * (value_b - value_a) / (L * L) - (2.0 * da + db) / L;
  p.c[3] = 2.0 * (value_a - value_b) / (L * L * L) + (da + db) / (L * L);
  return p;
}

Poly1 edge_normal_trace(const EdgeFrame& e, const ElementSpec& spec, const Vec2& grad_a,
                        const Vec2& grad_b, double moment) {
  const double L = e.length;
  const double ga = grad_a.dot(e.normal);
  const double gb = grad_b.dot(e.normal);
  Poly1 g;
  if (!spec.has_edge_moments()) {
    g.c = Eigen::VectorXd(2);
    g.c[0] = ga;
    g.c[1] = (gb - ga) / L;
  } else {
    // quadratic with endpoint values and prescribed raw moment over the edge
    g.c = Eigen::VectorXd(3);
    g.c[0] = ga;
    g.c[2] = 3.0 * (ga + gb) / (L * L) - 6.0 * moment / (L * L * L);
    g.c[1] = (gb - ga) / L - g.c[2] * L;
  }
  return g;
}

namespace {

ScaledMonomialBasis make_basis(const Polygon& cell, int degree) {
  if (cell.size() < 3) throw DegenerateCellError("LocalElement: fewer than 3 vertices");
  const double area = signed_area(cell);
  if (area <= 1e-14) throw DegenerateCellError("LocalElement: degenerate or misoriented cell");
  return ScaledMonomialBasis(polygon_centroid(cell), polygon_diameter(cell), degree);
}

// Traces of one local dof restricted to one edge.
struct DofTrace {
  int dof;
  Poly1 value;
  Poly1 value_ds;
  Poly1 normal;
};

}  // namespace

LocalElement::LocalElement(Polygon cell, ElementSpec spec, PlateModel model)
    : cell_(std::move(cell)), spec_(spec), model_(std::move(model)),
      basis_(make_basis(cell_, spec.k)) {
  spec_.validate();
  model_.validate();
  area_ = signed_area(cell_);
  const int nv = n_vertices();
  edges_.reserve(nv);
  for (int i = 0; i < nv; ++i) edges_.emplace_back(cell_[i], cell_[(i + 1) % nv]);
  n_dofs_ = spec_.n_local_dofs(nv);
  build();
}

void LocalElement::build() {
  const int nv = n_vertices();
  const int nk = spec_.poly_dim();
  const double D = model_.bending_rigidity;
  const double nu = model_.poisson_ratio;
  const double h = basis_.scale();
  const int n_gauss = spec_.k == 2 ? 4 : 5;

  // Energy Gram on P_k x P_k; integrands are products of Hessians, degree 2k-4.
  energy_gram_ = Eigen::MatrixXd::Zero(nk, nk);
  {
    const PolygonQuadrature rule = polygon_quadrature(cell_, std::max(0, 2 * spec_.k - 4));
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q];
      std::vector<Eigen::Matrix2d> hess(nk);
      for (int b = 0; b < nk; ++b) hess[b] = basis_.hessian(b, rule.points[q]);
      for (int a = 0; a < nk; ++a) {
        for (int b = a; b < nk; ++b) {
          const double v = D * ((1.0 - nu) * (hess[a].array() * hess[b].array()).sum() +
                                nu * hess[a].trace() * hess[b].trace());
          energy_gram_(a, b) += w * v;
          if (b != a) energy_gram_(b, a) += w * v;
        }
      }
    }
  }

  // Boundary pairing a(m_q, v_j) by parts, plus the boundary-average
  // constraints that pin the P_1 part of the projection. For k <= 3 the
  // biharmonic of every basis monomial vanishes, so only edge terms remain.
  dof_energy_pairing_ = Eigen::MatrixXd::Zero(nk, n_dofs_);
  Eigen::MatrixXd constraints = Eigen::MatrixXd::Zero(3, nk);
  Eigen::MatrixXd constraint_rhs = Eigen::MatrixXd::Zero(3, n_dofs_);

  for (int e = 0; e < nv; ++e) {
    const EdgeFrame& edge = edges_[e];
    const int va = e;
    const int vb = (e + 1) % nv;

    std::vector<DofTrace> traces;
    traces.reserve(7);
    auto add = [&](int dof, const Poly1& value, const Poly1& normal) {
      traces.push_back({dof, value, value.derivative(), normal});
    };
    const Vec2 zero = Vec2::Zero();
    const Vec2 ex(1, 0), ey(0, 1);
    const Poly1 zero_poly{Eigen::VectorXd::Zero(1)};
    add(vertex_dof(va, 0), edge_value_trace(edge, 1, zero, 0, zero),
        edge_normal_trace(edge, spec_, zero, zero));
    add(vertex_dof(va, 1), edge_value_trace(edge, 0, ex, 0, zero),
        edge_normal_trace(edge, spec_, ex, zero));
    add(vertex_dof(va, 2), edge_value_trace(edge, 0, ey, 0, zero),
        edge_normal_trace(edge, spec_, ey, zero));
    add(vertex_dof(vb, 0), edge_value_trace(edge, 0, zero, 1, zero),
        edge_normal_trace(edge, spec_, zero, zero));
    add(vertex_dof(vb, 1), edge_value_trace(edge, 0, zero, 0, ex),
        edge_normal_trace(edge, spec_, zero, ex));
    add(vertex_dof(vb, 2), edge_value_trace(edge, 0, zero, 0, ey),
        edge_normal_trace(edge, spec_, zero, ey));
    if (spec_.has_edge_moments())
      add(edge_moment_dof(e), zero_poly, edge_normal_trace(edge, spec_, zero, zero, 1.0));

    const SegmentRule rule = segment_rule(edge.a, edge.b, n_gauss);
    const Vec2& n = edge.normal;
    const Vec2& t = edge.tangent;
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q];
      const Vec2& x = rule.points[q];
      const double s = rule.arclength[q];
      for (int b = 0; b < nk; ++b) {
        const Eigen::Matrix2d H = basis_.hessian(b, x);
        const double m_nn = D * ((1.0 - nu) * n.dot(H * n) + nu * H.trace());
        const double m_nt = D * (1.0 - nu) * t.dot(H * n);
        const double shear_n = D * basis_.laplacian_gradient(b, x).dot(n);
        for (const DofTrace& tr : traces)
          dof_energy_pairing_(b, tr.dof) +=
              w * (m_nn * tr.normal(s) + m_nt * tr.value_ds(s) - shear_n * tr.value(s));
        constraints(0, b) += w * basis_.value(b, x);
        constraints.block<2, 1>(1, b) += w * basis_.gradient(b, x);
      }
      for (const DofTrace& tr : traces) {
        constraint_rhs(0, tr.dof) += w * tr.value(s);
        constraint_rhs.block<2, 1>(1, tr.dof) += w * (tr.normal(s) * n + tr.value_ds(s) * t);
      }
    }
  }

  // Saddle system [G C^T; C 0] with the constraint rows equilibrated against
  // the Gram scale; the multiplier block is discarded.
  {
    const double gscale = energy_gram_.cwiseAbs().maxCoeff();
    const double cscale = std::max(constraints.cwiseAbs().maxCoeff(), 1e-300);
    const double gamma = gscale > 0.0 ? gscale / cscale : 1.0;
    Eigen::MatrixXd saddle = Eigen::MatrixXd::Zero(nk + 3, nk + 3);
    saddle.topLeftCorner(nk, nk) = energy_gram_;
    saddle.block(nk, 0, 3, nk) = gamma * constraints;
    saddle.block(0, nk, nk, 3) = gamma * constraints.transpose();
    Eigen::MatrixXd rhs(nk + 3, n_dofs_);
    rhs.topRows(nk) = dof_energy_pairing_;
    rhs.bottomRows(3) = gamma * constraint_rhs;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(saddle);
    if (!lu.isInvertible())
      throw Error("energy projector: singular constrained system (degenerate cell geometry)");
    projector_ = lu.solve(rhs).topRows(nk);
  }

  // Dofs of every basis monomial.
  polynomial_dofs_ = Eigen::MatrixXd::Zero(n_dofs_, nk);
  for (int v = 0; v < nv; ++v) {
    for (int b = 0; b < nk; ++b) {
      polynomial_dofs_(vertex_dof(v, 0), b) = basis_.value(b, cell_[v]);
      const Vec2 g = basis_.gradient(b, cell_[v]);
      polynomial_dofs_(vertex_dof(v, 1), b) = g.x();
      polynomial_dofs_(vertex_dof(v, 2), b) = g.y();
    }
  }
  if (spec_.has_edge_moments()) {
    for (int e = 0; e < nv; ++e) {
      const SegmentRule rule = segment_rule(edges_[e].a, edges_[e].b, n_gauss);
      for (int q = 0; q < rule.size(); ++q)
        for (int b = 0; b < nk; ++b)
          polynomial_dofs_(edge_moment_dof(e), b) +=
              rule.weights[q] * basis_.gradient(b, rule.points[q]).dot(edges_[e].normal);
    }
  }

  // Stabilization: scaled dof scalar product of (I - dofs of projection).
  // Derivative-type dofs are premultiplied by h (moments also divided by the
  // edge length) so every entry carries the dimension of a displacement, and
  // the D/h^2 factor matches the scaling of the energy form.
  Eigen::VectorXd dof_scale = Eigen::VectorXd::Ones(n_dofs_);
  for (int v = 0; v < nv; ++v) {
    dof_scale[vertex_dof(v, 1)] = h;
    dof_scale[vertex_dof(v, 2)] = h;
  }
  if (spec_.has_edge_moments())
    for (int e = 0; e < nv; ++e) dof_scale[edge_moment_dof(e)] = h / edges_[e].length;

  const Eigen::MatrixXd defect =
      Eigen::MatrixXd::Identity(n_dofs_, n_dofs_) - polynomial_dofs_ * projector_;
  const Eigen::MatrixXd scaled = dof_scale.asDiagonal() * defect;
  stabilization_ = (model_.bending_rigidity / (h * h)) * scaled.transpose() * scaled;

  Eigen::MatrixXd k_loc = projector_.transpose() * energy_gram_ * projector_ + stabilization_;
  stiffness_ = 0.5 * (k_loc + k_loc.transpose());

  // L2 projector onto P_{k-2} through the energy projection; the moment
  // conditions of the local space make the two projections share moments up
  // to degree k-2.
  {
    const int low = spec_.k - 2;
    const Eigen::MatrixXd gram = mass_matrix(cell_, basis_, low, low);
    const Eigen::MatrixXd cross = mass_matrix(cell_, basis_, low, spec_.k);
    l2_projector_ = gram.ldlt().solve(cross * projector_);
  }
}

Eigen::VectorXd LocalElement::load_vector() const {
  if (!model_.load) throw Error("LocalElement::load_vector: model has no load function");
  const int low_dim = poly_space_dim(spec_.k - 2);
  const PolygonQuadrature rule = polygon_quadrature(cell_, 2 * spec_.k + 2);
  Eigen::VectorXd weighted = Eigen::VectorXd::Zero(low_dim);
  for (int q = 0; q < rule.size(); ++q) {
    const double fw = rule.weights[q] * model_.load(rule.points[q]);
    for (int b = 0; b < low_dim; ++b) weighted[b] += fw * basis_.value(b, rule.points[q]);
  }
  return l2_projector_.transpose() * weighted;
}

Eigen::VectorXd LocalElement::dof_values_of(const std::function<double(const Vec2&)>& w,
                                            const std::function<Vec2(const Vec2&)>& grad_w) const {
  Eigen::VectorXd dofs = Eigen::VectorXd::Zero(n_dofs_);
  for (int v = 0; v < n_vertices(); ++v) {
    dofs[vertex_dof(v, 0)] = w(cell_[v]);
    const Vec2 g = grad_w(cell_[v]);
    dofs[vertex_dof(v, 1)] = g.x();
    dofs[vertex_dof(v, 2)] = g.y();
  }
  if (spec_.has_edge_moments()) {
    for (int e = 0; e < n_vertices(); ++e) {
      const SegmentRule rule = segment_rule(edges_[e].a, edges_[e].b, 8);
      double moment = 0.0;
      for (int q = 0; q < rule.size(); ++q)
        moment += rule.weights[q] * grad_w(rule.points[q]).dot(edges_[e].normal);
      dofs[edge_moment_dof(e)] = moment;
    }
  }
  return dofs;
}

}  // namespace c1vem
