// Manufactured solutions, error norms of the projected discrete solution, and
// convergence-rate fitting.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "c1vem/assembly.hpp"
#include "c1vem/element.hpp"
#include "c1vem/mesh.hpp"

namespace c1vem {

/// Exact solution with derivatives and matching load f = D * biharmonic(w).
struct ManufacturedCase {
  std::string name;
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;
  std::function<Eigen::Matrix2d(const Vec2&)> hessian;
  std::function<double(const Vec2&)> load;
};

/// w(x, y) = x^2 (x-1)^2 y^2 (y-1)^2 on the unit square: clamped-compatible
/// (w and dw/dn vanish on the boundary), with the analytic load for the given
/// bending rigidity.
ManufacturedCase manufactured_square(double bending_rigidity);

/// Max of |w| and |dw/dn| sampled at n points per side of the unit square;
/// used to verify clamped compatibility.
std::pair<double, double> boundary_trace_magnitude(const ManufacturedCase& c, int samples_per_side);

/// Global dof vector of the interpolant: every dof functional applied to w.
Eigen::VectorXd interpolate(const ManufacturedCase& c, const PolygonalMesh& mesh,
                            const ElementSpec& spec);

/// Relative errors of one discrete solution against the exact one.
struct ErrorReport {
  double h = 0.0;       ///< max cell diameter
  int n_dofs = 0;
  double rel_l2 = 0.0;
  double rel_h1 = 0.0;  ///< gradient seminorm
  double rel_h2 = 0.0;  ///< Hessian seminorm
  double residual = 0.0;
};

/// Per cell the discrete solution is replaced by its energy projection onto
/// P_k (the computable representative) and the L2/H1/H2 distances to the
/// exact solution are accumulated with a degree 2k+4 rule. Reference norms of
/// the exact solution are computed by the same quadrature pipeline, so a zero
/// solution yields relative errors exactly 1.
ErrorReport compute_errors(const ManufacturedCase& c, const PolygonalMesh& mesh,
                           const ElementSpec& spec, const Eigen::VectorXd& solution,
                           double residual = 0.0);

/// Error rows ordered by decreasing h with fitted slopes. Slopes are present
/// only when the table has at least two rows.
struct ConvergenceTable {
  std::vector<ErrorReport> rows;

  bool has_slopes() const { return rows.size() >= 2; }
  double ls_slope_l2 = 0.0, ls_slope_h1 = 0.0, ls_slope_h2 = 0.0;  ///< log-log least squares
  std::vector<double> pair_slope_l2, pair_slope_h1, pair_slope_h2; ///< consecutive pairs

  double finest_slope_l2() const { return pair_slope_l2.empty() ? 0.0 : pair_slope_l2.back(); }
  double finest_slope_h1() const { return pair_slope_h1.empty() ? 0.0 : pair_slope_h1.back(); }
  double finest_slope_h2() const { return pair_slope_h2.empty() ? 0.0 : pair_slope_h2.back(); }
};

/// Computes slopes for rows already ordered by decreasing h.
void fit_slopes(ConvergenceTable& table);

/// Solves every mesh and fits slopes. Solver errors propagate with the mesh
/// index attached.
ConvergenceTable convergence_study(const ManufacturedCase& c,
                                   const std::vector<PolygonalMesh>& meshes,
                                   const ElementSpec& spec, const PlateModel& model,
                                   bool single_thread = false);

/// CSV with header "h,n_dofs,rel_L2,rel_H1,rel_H2,residual", one row per mesh
/// and a trailing "# slope_L2=... slope_H1=... slope_H2=..." comment when
/// slopes are available (least-squares fits).
void write_csv(std::ostream& out, const ConvergenceTable& table);

}  // namespace c1vem
