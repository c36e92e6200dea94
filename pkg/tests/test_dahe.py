import itertools
import random

import numpy as np
import pytest

from kzmonodromy import exact
from kzmonodromy.dahe import (
    CovariantModule,
    DegenerateNormalizationError,
    InducedModule,
    elementary_symmetric,
    has_invariant_subspace,
    intertwiner_matrix,
    is_k_regular,
    phi_matrix,
    poly_add,
    poly_divided_difference,
    poly_linear,
    poly_mul,
    poly_scale,
    poly_swap,
    poly_var,
    r_map,
    r_map_product,
    rad_plus,
    rad_signed,
    staircase_exponents,
)
from kzmonodromy.exact import Q
from kzmonodromy.root_data import (
    WeylElem,
    pairing,
    positive_coroots,
    weight_to_e,
    weyl_group,
)


def _rand_q(rng, lo=-6, hi=6, den=7):
    return Q(rng.randint(lo, hi), rng.randint(1, den))


def _modules(n, lam, k):
    return [InducedModule(n, lam, k), CovariantModule(n, lam, k, 1), CovariantModule(n, lam, k, -1)]


def _coroot(i, j, n):
    return tuple(1 if i <= a < j else 0 for a in range(n - 1))


def test_induced_rank1_example():
    I = InducedModule(2, (Q(1, 3),), Q(1, 2))
    assert I.coroot_matrix((1,)).tolist() == [[Q(1, 3), Q(-1)], [Q(0), Q(-1, 3)]]
    assert I.s_matrix(1).tolist() == [[0, 1], [1, 0]]


def test_induced_symbolic_rank1():
    lam, k = Q(5, 7), Q(-2, 3)
    M = InducedModule(2, (lam,), k).coroot_matrix((1,))
    assert M.tolist() == [[lam, -2 * k], [0, -lam]]


def test_poly_helpers():
    n = 3
    p = poly_add(poly_mul(poly_var(0, n), poly_var(0, n)), poly_scale(poly_var(2, n), 3))
    assert poly_swap(poly_swap(p, 1), 1) == p
    # (y1^2 - y2^2) / (y1 - y2) = y1 + y2
    d = poly_divided_difference(p, 1)
    assert {e: c for e, c in d.items() if c} == {(1, 0, 0): 1, (0, 1, 0): 1}
    assert elementary_symmetric((1, 2, 3)) == [1, 6, 11, 6]
    assert len(staircase_exponents(4)) == 24


@pytest.mark.parametrize("n", [2, 3, 4])
def test_module_weights_are_orbit(n):
    rng = random.Random(n)
    lam = tuple(_rand_q(rng) for _ in range(n - 1))
    I = InducedModule(n, lam, Q(1, 3))
    x = weight_to_e(lam, n)
    assert sorted(I.weights()) == sorted(w.act_e(x) for w in weyl_group(n))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cross_relation_exact(n):
    rng = random.Random(10 + n)
    lam = tuple(_rand_q(rng) for _ in range(n - 1))
    k = _rand_q(rng)
    p = poly_add(
        poly_mul(poly_var(0, n), poly_var(n - 1, n)),
        poly_scale(poly_var(1, n), Q(2, 3)),
        poly_mul(poly_var(1, n), poly_mul(poly_var(1, n), poly_var(0, n))),
    )
    for mod in _modules(n, lam, k):
        for i in range(1, n):
            S = mod.s_matrix(i)
            lhs = S.dot(mod.poly_matrix(p))
            rhs = mod.poly_matrix(poly_swap(p, i)).dot(S) - mod.poly_matrix(
                poly_divided_difference(p, i)
            ) * k
            assert (lhs == rhs).all()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_conjugation_relation_exact(n):
    rng = random.Random(20 + n)
    lam = tuple(_rand_q(rng) for _ in range(n - 1))
    k = _rand_q(rng)
    for mod in _modules(n, lam, k):
        for w in weyl_group(n):
            raw = [Q(rng.randint(-3, 3)) for _ in range(n)]
            m = sum(raw) / n
            h = tuple(v - m for v in raw)
            lhs = mod.weyl_matrix(w).dot(mod.linear_matrix(h)).dot(mod.weyl_matrix(w.inverse()))
            wh = w.act_e(h)
            rhs = mod.linear_matrix(wh)
            for (i, j) in w.inverse().inversion_set():
                rhs = rhs + mod.weyl_matrix(WeylElem.reflection((i, j), n)) * (k * (wh[i] - wh[j]))
            assert (lhs == rhs).all()


@pytest.mark.parametrize("n", [2, 3])
def test_weyl_relations(n):
    mod = CovariantModule(n, (Q(1, 5),) * (n - 1), Q(2, 3), -1)
    eye = exact.qidentity(mod.dim)
    for i in range(1, n):
        S = mod.s_matrix(i)
        assert (S.dot(S) == eye).all()
    if n == 3:
        A, B = mod.s_matrix(1), mod.s_matrix(2)
        assert (A.dot(B).dot(A) == B.dot(A).dot(B)).all()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_y_commute(n):
    rng = random.Random(30 + n)
    lam = tuple(_rand_q(rng) for _ in range(n - 1))
    for mod in _modules(n, lam, Q(3, 4)):
        Ys = [mod.y_matrix(a) for a in range(n)]
        for A, B in itertools.combinations(Ys, 2):
            assert (A.dot(B) == B.dot(A)).all()


@pytest.mark.parametrize("n", [2, 3])
def test_eigenvalue_multiset_matches_orbit(n):
    lam = tuple(Q(2 * a + 1, 5) for a in range(n - 1))
    for mod in _modules(n, lam, Q(1, 7)):
        for a in range(n):
            ev = np.sort_complex(np.linalg.eigvals(exact.to_complex(mod.y_matrix(a))))
            expect = np.sort_complex(np.array([complex(mu[a]) for mu in mod.weights()]))
            assert np.allclose(ev, expect, atol=1e-7)


@pytest.mark.parametrize("n", [2, 3])
def test_phi_square(n):
    lam = tuple(Q(a + 2, 9) for a in range(n - 1))
    k = Q(2, 5)
    I = InducedModule(n, lam, k)
    for i in range(1, n):
        a = I.coroot_matrix(tuple(1 if j == i - 1 else 0 for j in range(n - 1)))
        P = phi_matrix((i, i), I)
        assert (P == exact.qidentity(I.dim) * k * k - a.dot(a)).all()


def test_phi_braid_independence_s4():
    n = 4
    I = InducedModule(n, (Q(1, 3), Q(-2, 5), Q(3, 7)), Q(1, 4))
    assert (phi_matrix((1, 2, 1), I) == phi_matrix((2, 1, 2), I)).all()
    assert (phi_matrix((2, 3, 2), I) == phi_matrix((3, 2, 3), I)).all()
    assert (phi_matrix((1, 3), I) == phi_matrix((3, 1), I)).all()


def test_intertwiner_example():
    M = intertwiner_matrix(WeylElem((1, 0)), (Q(1, 3),), Q(1, 2), 2)
    assert M.tolist() == [[Q(1, 2), Q(-1, 3)], [Q(-1, 3), Q(1, 2)]]


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("seed", range(3))
def test_intertwiner_determinant(n, seed):
    rng = random.Random(100 * n + seed)
    lam = tuple(_rand_q(rng) for _ in range(n - 1))
    k = _rand_q(rng)
    half = len(weyl_group(n)) // 2
    for w in weyl_group(n):
        expect = Q(1)
        for (i, j) in w.inversion_set():
            expect *= (k * k - pairing(lam, _coroot(i, j, n)) ** 2) ** half
        assert exact.det(intertwiner_matrix(w, lam, k, n)) == expect


@pytest.mark.parametrize("n,const", [(2, Q(1, 4)), (3, Q(-1, 46656))])
@pytest.mark.parametrize("eps", [1, -1])
def test_r_map_determinant_constant(n, const, eps):
    rng = random.Random(7 * n + eps)
    half = len(weyl_group(n)) // 2
    w0 = weyl_group(n)[-1]
    for _ in range(4):
        lam = tuple(_rand_q(rng) for _ in range(n - 1))
        k = _rand_q(rng)
        d = exact.det(r_map(lam, k, eps, n))
        assert d == const * r_map_product(w0, lam, k, eps, n) ** half


def test_k_regularity_examples():
    assert not is_k_regular((1,), 1, 2)
    assert is_k_regular((Q(1, 3),), Q(4, 3), 2)
    assert not is_k_regular((1, 1), 2, 3)
    assert is_k_regular((1, 1), Q(1, 2), 3)


@pytest.mark.parametrize(
    "n,lam,k",
    [(2, (Q(1, 3),), Q(1, 2)), (2, (Q(1, 2),), Q(1, 2)), (3, (1, 1), 2), (3, (Q(1, 2), Q(1, 3)), Q(1, 4))],
)
def test_invariant_subspace_oracle(n, lam, k):
    assert has_invariant_subspace(InducedModule(n, lam, k)) == (not is_k_regular(lam, k, n))


def test_radial_parts_rank1():
    lam, k = Q(2, 7), Q(1, 5)
    # e_+ (alpha^vee)^2 e_+ acts by lambda^2 on the spherical vector
    sq = poly_mul(poly_linear((1, -1), 2), poly_linear((1, -1), 2))
    assert rad_plus(sq, (lam,), k, 2) == lam * lam
    with pytest.raises(DegenerateNormalizationError):
        rad_signed(poly_linear((1, -1), 2), (k,), k, 2)


def test_positive_coroot_count():
    assert len(positive_coroots(4)) == 6
