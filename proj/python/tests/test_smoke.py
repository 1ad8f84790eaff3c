"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import c1vem


def test_triangle_mesh_counts():
    mesh = c1vem.build_uniform_triangle_mesh(4)
    assert mesh.n_vertices == 25
    assert mesh.n_cells == 32
    assert math.isclose(mesh.h_max(), math.sqrt(2.0) / 4.0, rel_tol=1e-12)
    assert math.isclose(mesh.total_area(), 1.0, abs_tol=1e-12)
    assert mesh.vertices().shape == (25, 2)


def test_voronoi_determinism_and_area():
    a = c1vem.build_voronoi_mesh(50, seed=7)
    b = c1vem.build_voronoi_mesh(50, seed=7)
    assert a.n_cells == 50
    assert np.array_equal(a.vertices(), b.vertices())
    assert math.isclose(a.total_area(), 1.0, abs_tol=1e-12)


def test_mesh_round_trip(tmp_path):
    mesh = c1vem.build_voronoi_mesh(12, seed=3, lloyd_iters=1)
    path = str(tmp_path / "mesh.msh")
    c1vem.write_mesh(mesh, path)
    copy = c1vem.read_mesh(path)
    assert copy.n_vertices == mesh.n_vertices
    assert np.array_equal(copy.vertices(), mesh.vertices())


def test_bad_mesh_raises(tmp_path):
    path = tmp_path / "broken.msh"
    path.write_text("c1vem-mesh 1\nvertices 1\n0 0\ncells 0\n")
    with pytest.raises(c1vem.C1VemError):
        c1vem.read_mesh(str(path))


def test_shape_regularity():
    rep = c1vem.check_shape_regularity(c1vem.build_uniform_triangle_mesh(8))
    assert rep.rho_star > 0.1
    assert 0.0 < rep.min_edge_ratio <= 1.0
    assert math.isclose(rep.h_max, math.sqrt(2.0) / 8.0, rel_tol=1e-12)


def test_manufactured_value():
    assert math.isclose(c1vem.manufactured_value(0.5, 0.5), 1.0 / 256.0, rel_tol=1e-14)
    assert c1vem.manufactured_value(0.0, 0.3) == 0.0


def test_solve_plate():
    mesh = c1vem.build_uniform_triangle_mesh(8)
    report = c1vem.solve_plate(mesh, element="vem31")
    assert report.n_dofs == 3 * 81
    assert report.residual < 1e-10
    assert 0.0 < report.rel_l2 < 0.1
    assert 0.0 < report.rel_h2 < 0.5

    zero = c1vem.solve_plate(mesh, element="vem31", zero_load=True)
    assert zero.rel_l2 == pytest.approx(1.0)


def test_convergence_slopes():
    meshes = [c1vem.build_uniform_triangle_mesh(n) for n in (4, 8, 16)]
    table = c1vem.convergence_study(meshes, element="vem31")
    assert len(table.rows) == 3
    assert 1.5 < table.slope_h1 < 2.5
    assert 0.7 < table.slope_h2 < 1.3
    assert "h,n_dofs,rel_L2,rel_H1,rel_H2,residual" in table.csv()


def test_local_stiffness_kernel():
    square = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    K = c1vem.local_stiffness(square, element="vem31")
    assert K.shape == (12, 12)
    assert np.allclose(K, K.T, atol=1e-12)
    # dofs of the constant function span part of the kernel
    ones = np.zeros(12)
    ones[0::3] = 1.0
    assert np.linalg.norm(K @ ones) < 1e-12

    P = c1vem.local_projector(square, element="vem32")
    assert P.shape == (10, 16)
