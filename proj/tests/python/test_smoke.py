"""Smoke tests for the heislap python module (built via CMake/pybind11)."""

import math

import numpy as np
import pytest

import heislap as hl


def unit_square():
    return hl.Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def test_polygon_basics():
    sq = unit_square()
    assert sq.area == pytest.approx(1.0)
    assert sq.convex
    assert sq.contains(0.5, 0.5)
    assert not sq.contains(2.0, 0.5)
    assert sq.boundary_distance(0.5, 0.5) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        hl.Polygon([(0, 0), (1, 0)])


def test_geometry_summary():
    f = hl.DistanceField(unit_square(), 1 / 64)
    s = hl.summarize_geometry(f, 1.0)
    assert s.area == pytest.approx(1.0)
    assert s.inradius == pytest.approx(0.5, abs=0.012)
    assert s.l_omega == pytest.approx(2.0, abs=0.05)
    assert s.volume == pytest.approx(1.0)
    assert f.sublevel_area(0.25) == pytest.approx(0.75, abs=0.01)


def test_bound_formulas():
    assert hl.berezin_rhs(96.0, 1.0) == pytest.approx(1.0)
    # theorem constant at c=2 collapses to the corollary constant
    thm = hl.theorem_rhs(3.0, 3.0 / 0.4, 2.0, 25.0)
    cor = hl.corollary_rhs(3.0, 0.4, 25.0)
    assert thm == pytest.approx(cor, rel=1e-13)
    assert hl.riesz_mean([1.0, 2.0, 3.0], 2.5) == pytest.approx(2.0)
    assert hl.leading_term_oracle(2 * math.pi**2, 1.0, 1) == pytest.approx(1 / 6)
    with pytest.raises(ValueError):
        hl.theorem_rhs(1.0, 1.0, 1.5, 1.0)


def test_cylinder_spectrum_against_numpy():
    g = hl.Grid3D(unit_square(), 0.0, 1.0, 0.2, 0.2)
    form = hl.assemble_heisenberg(g)
    dense = np.array(form.matrix.to_dense())
    assert np.max(np.abs(dense - dense.T)) == 0.0
    ref = np.linalg.eigvalsh(dense)
    spec = hl.lobpcg_smallest(form.matrix, 6, 1e-10, 600, 1)
    assert spec.converged
    assert np.allclose(spec.eigenvalues, ref[:6], rtol=1e-8)
    oracle = hl.dense_jacobi_all(form.matrix)
    assert np.allclose(oracle.eigenvalues, ref, rtol=1e-10, atol=1e-10)


def test_magnetic_realified_pairs():
    a = hl.assemble_magnetic2d(1.0, 2.0, 0.25)
    s = hl.dense_jacobi_all(a)
    evs = np.array(s.eigenvalues)
    assert np.allclose(evs[0::2], evs[1::2], rtol=1e-9)
    with pytest.raises(ValueError):
        hl.assemble_magnetic2d(10.0, 2.0, 0.3)  # flux cap


def test_hardy_estimate():
    est = hl.estimate_hardy_refined(unit_square(), 1 / 16, 2)
    hist = est.refinement_history
    assert len(hist) == 2
    assert hist[1][1] >= hist[0][1] - 1e-10
    assert est.c_est <= 2.0 * 1.01
    assert hl.hardy_bound_used(est, hl.CMode.convex) == 2.0
    assert hl.hardy_bound_used(est, hl.CMode.worst_case) == 4.0
    assert hl.hardy_bound_used(est, hl.CMode.measured) == 2.0


def test_eigenfunction_checks():
    sq = unit_square()
    g = hl.Grid3D(sq, 0.0, 1.0, 0.125, 0.125)
    f = hl.DistanceField(sq, 0.125)
    spec = hl.lobpcg_smallest(hl.assemble_heisenberg(g).matrix, 3, 1e-9, 600, 2)
    lhs, rhs = hl.check_cylinder_hardy(spec.vectors[0], spec.eigenvalues[0], f, g, 2.0)
    assert lhs <= rhs
    lhs_b, rhs_b = hl.check_boundary_estimate(
        spec.vectors[0], spec.eigenvalues[0], f, g, 2.0, 0.25
    )
    assert lhs_b <= rhs_b
