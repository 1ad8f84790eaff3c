// Shared test utilities: random shape-regular polygons and independent
// oracles for the quantities under test.
#pragma once

#include <functional>
#include <random>

#include "c1vem/element.hpp"
#include "c1vem/geometry.hpp"
#include "c1vem/monomials.hpp"

namespace c1vem::testing {

using Rng = std::mt19937_64;

Polygon random_triangle(Rng& rng);
Polygon random_square(Rng& rng);
/// A pentagon or hexagon harvested from a random Voronoi tessellation.
Polygon random_voronoi_cell(Rng& rng);
Polygon random_voronoi_pentagon(Rng& rng);
/// Mixture of the three families above.
Polygon random_h1_polygon(Rng& rng);

/// Energy pairing a^K(p, v_delta) evaluated by parts from the dof vector's
/// edge traces. Independent of the production element: traces come from small
/// Vandermonde solves and the boundary terms use a dense 16-point Gauss loop.
double energy_pairing_oracle(const Polygon& cell, const ElementSpec& spec, const PlateModel& model,
                             const ScaledMonomialBasis& basis, const Eigen::VectorXd& poly_coeffs,
                             const Eigen::VectorXd& dofs);

/// 13-point finite-difference biharmonic, Richardson-extrapolated once.
double biharmonic_fd(const std::function<double(const Vec2&)>& w, const Vec2& x, double step);

}  // namespace c1vem::testing
