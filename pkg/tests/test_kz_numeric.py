import cmath
import math

import numpy as np
import pytest

from kzmonodromy.eaha import check_relations, identify_rep_type
from kzmonodromy.kz_numeric import (
    Path,
    PathError,
    ResonanceError,
    arc,
    connection_spec,
    det_check,
    dopri5,
    line,
    lvl_solution,
    lvl_y_matrices,
    monodromy_numeric,
    t_path,
    transport,
    y_path,
)
from kzmonodromy.rank1 import monodromy_rank1


def _invariants(Y, T):
    return np.array([np.trace(T), np.trace(Y), np.trace(Y @ T), np.trace(Y @ Y @ T)])


def test_dopri5_exponential():
    y, steps = dopri5(lambda t, y: 1j * y, 0.0, math.pi, np.array([1.0 + 0j]), 1e-11, 1e-13)
    assert abs(y[0] + 1) < 1e-9
    assert steps > 0


def test_rank1_x_matrix_shape():
    spec = connection_spec(2, (0.3,), 0.2)
    A = spec.x_matrix(0.4 + 0.2j)
    assert A.shape == (2, 2)
    assert spec.dim == 2


def test_contractible_loop_is_identity():
    spec = connection_spec(2, (0.37,), 0.21)
    c, r = 0.5 + 0.5j, 0.2
    loop = Path((arc(c, r, 0.0, 2 * math.pi),))
    F, err = transport(spec, loop)
    assert np.max(np.abs(F - np.eye(2))) < 1e-8
    assert err < 1e-8


@pytest.mark.parametrize("rep", ["J", "I"])
def test_determinant_consistency(rep):
    spec = connection_spec(2, (0.41,), -0.3, rep)
    for path in (y_path(), t_path()):
        F, _ = transport(spec, path)
        assert det_check(spec, path, F) < 1e-8


@pytest.mark.parametrize("lam,k", [(0.3, 0.2), (1.2, -0.35), (0.7, 0.61)])
def test_path_independence(lam, k):
    a = monodromy_numeric(lam, k)
    b = monodromy_numeric(lam, k, radius=0.05, base=0.1)
    assert np.allclose(_invariants(a.Y[0], a.T[0]), _invariants(b.Y[0], b.T[0]), atol=1e-7)


@pytest.mark.parametrize("lam,k", [(0.3, 0.2), (1.2, -0.35), (0.13, 0.9)])
def test_numeric_matches_closed_form(lam, k):
    num = monodromy_numeric(lam, k)
    closed = monodromy_rank1(lam, k)
    assert check_relations(num).passed
    assert np.allclose(_invariants(num.Y[0], num.T[0]), _invariants(closed.Ybar, closed.T), atol=1e-6)
    assert identify_rep_type(num).tag == identify_rep_type(closed.rep).tag


def test_numeric_character_point():
    R = monodromy_numeric(1, 0)
    assert np.allclose(R.Y[0], -np.eye(2), atol=1e-8)


def test_numeric_rejects_higher_rank():
    with pytest.raises(ValueError):
        monodromy_numeric((0.3, 0.2), 0.1)


def test_path_through_singularity():
    spec = connection_spec(2, (0.3,), 0.2)
    bad = Path((line(0.5 + 0j, 1.5 + 0j),))
    with pytest.raises(PathError, match="nearest approach"):
        transport(spec, bad)


def test_lvl_k_zero_is_identity():
    sol = lvl_solution(connection_spec(2, (0.3,), 0), order=20)
    for m, C in sol.coeffs.items():
        expect = np.eye(2) if not any(m) else np.zeros((2, 2))
        assert np.allclose(C, expect, atol=0)


def test_lvl_rank1_y_spectrum():
    lam, k = 0.3, 0.2
    Y = lvl_y_matrices(lvl_solution(connection_spec(2, (lam,), k)))[0]
    Lam = cmath.exp(1j * math.pi * lam)
    ev = sorted(np.linalg.eigvals(Y), key=lambda z: z.imag)
    assert ev == pytest.approx(sorted([Lam, 1 / Lam], key=lambda z: z.imag), abs=1e-8)


@pytest.mark.parametrize("n,lam", [(2, (0.3,)), (3, (0.31, 0.17))])
def test_lvl_gauge_residual(n, lam):
    sol = lvl_solution(connection_spec(n, lam, 0.23), order=16)
    small = sol.gauge_residual([0.05] * (n - 1))
    larger = sol.gauge_residual([0.3] * (n - 1))
    assert small < 1e-12
    assert small <= larger


def test_lvl_order_bound_and_resonance():
    spec = connection_spec(2, (0.3,), 0.2)
    with pytest.raises(ValueError):
        lvl_solution(spec, order=31)
    with pytest.raises(ResonanceError, match="differ by 1"):
        lvl_solution(connection_spec(2, (1,), 0.3))


def test_lvl_rank2_y_commute():
    Ys = lvl_y_matrices(lvl_solution(connection_spec(3, (0.31, 0.17), 0.23), order=8))
    assert np.max(np.abs(Ys[0] @ Ys[1] - Ys[1] @ Ys[0])) < 1e-9
