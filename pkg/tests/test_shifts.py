import random

import numpy as np
import pytest

from kzmonodromy.exact import Q
from kzmonodromy.root_data import AffineWeylElem, pairing, positive_coroots
from kzmonodromy.shifts import (
    ShiftMove,
    affine_intertwiner_invertible,
    affine_intertwiner_matrix,
    jshift_invertible,
    jshift_rank1_matrix,
    kshift_move,
    lambda_shift_invertible,
    lambda_shift_move,
    translation,
)


def _det2(M):
    return M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]


def _displayed(lam, k, x):
    """The rank-one covariant shift matrix in its printed normalization."""
    return np.array(
        [
            [x * x * (-2 * k + lam + 1) + lam + 1, x * x * (2 * k - lam - 1) * (2 * k + lam) + lam * (lam + 1)],
            [1 - x * x, x * x * (2 * k + lam) + lam],
        ],
        dtype=object,
    ) / (2 * x)


def test_affine_intertwiner_example():
    ok, bad = affine_intertwiner_invertible(AffineWeylElem.translation((1,)), (Q(-1, 2),), Q(1, 2), 2)
    assert not ok and bad == [((1,), 0)]


def test_lambda_shift_examples():
    assert lambda_shift_invertible(1, (0, Q(1, 2)), Q(4, 3), 3)
    assert not lambda_shift_invertible(1, (Q(4, 3),), Q(4, 3), 2)


def test_kshift_examples():
    assert kshift_move((Q(5, 2),), Q(1, 2), 2, 1).certified
    assert kshift_move((3, 3), 1, 3, -1).certified
    down = kshift_move((1, 1), 2, 3, -1)
    assert not down.certified and down.failures()
    with pytest.raises(ValueError):
        kshift_move((1,), 1, 2, 2)


def test_move_validation_and_describe():
    with pytest.raises(ValueError):
        ShiftMove("teleport", ((0,), 0), ((0,), 0))
    m = lambda_shift_move(1, (Q(1, 2),), Q(1, 3), 2, -1)
    assert m.target == ((Q(-1, 2),), Q(1, 3))
    assert m.describe().startswith("lambda_shift (1/2), k=1/3 -> (-1/2)")


def test_jshift_invertibility_examples():
    assert not jshift_invertible(Q(1, 2), Q(-1, 2))
    assert jshift_invertible(0, Q(1, 3))


@pytest.mark.parametrize("x", [Q(2), Q(3, 2), Q(-5, 3)])
def test_jshift_det_grid(x):
    for a in range(-8, 9):
        for b in range(-8, 9):
            lam, k = Q(a, 4), Q(b, 4)
            d = _det2(jshift_rank1_matrix(lam, k, x))
            assert (d == 0) == (not jshift_invertible(lam, k))


@pytest.mark.parametrize("lam,k,x", [(Q(1, 3), Q(2, 5), Q(2)), (Q(-7, 4), Q(1, 6), Q(3)), (Q(5, 2), Q(-3, 2), Q(1, 2))])
def test_jshift_matches_displayed_normalization(lam, k, x):
    M = jshift_rank1_matrix(lam, k, x)
    D = _displayed(lam, k, x)
    assert (M == D * Q(-1, 4)).all()


def test_translation_shape():
    t = translation(2, 4, -1)
    assert t == AffineWeylElem.translation((0, -1, 0))


@pytest.mark.parametrize("seed", range(5))
def test_certificate_soundness_numeric(seed):
    rng = random.Random(seed)
    n = 3
    lam = (Q(rng.randint(-9, 9), 4), Q(rng.randint(-9, 9), 4))
    k = Q(rng.randint(-6, 6), 4)
    for i in (1, 2):
        for direction in (1, -1):
            move = lambda_shift_move(i, lam, k, n, direction)
            M, _ = affine_intertwiner_matrix(translation(i, n, direction), lam, k, n)
            sing = np.linalg.svd(M, compute_uv=False)
            generic = sing[-1] > 1e-9 * sing[0]
            if move.certified:
                assert generic


def test_upward_shift_rule_agrees():
    n = 3
    for a in range(-4, 5):
        for b in range(-4, 5):
            lam, k = (Q(a, 2), Q(b, 3)), Q(1, 2)
            rule = all(
                pairing(lam, q) not in (k, -k) for q in positive_coroots(n) if q[0] != 0
            )
            assert lambda_shift_invertible(1, lam, k, n, 1) == rule
