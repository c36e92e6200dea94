import numpy as np
import pytest

from kzmonodromy.eaha import (
    HeckeParams,
    MonodromyRep,
    RelationError,
    RepType,
    check_relations,
    e_epsilon,
    hecke_multiply,
    identify_rep_type,
    kato_irred,
    kato_iso,
    krylov_rank,
    regular_representation,
    rep_type_candidates,
)
from kzmonodromy.exact import Q
from kzmonodromy.rank1 import monodromy_generic
from kzmonodromy.root_data import WeylElem, weyl_group


def test_module_doctest_pair():
    rep = MonodromyRep([np.diag([1j, -1j])], [np.array([[1, np.pi * 0.5j], [0, 1]])], -1)
    assert check_relations(rep).passed
    assert identify_rep_type(rep).tag == "induced"


def test_quadratic_residual_detects_failure():
    rep = MonodromyRep([np.eye(2)], [np.diag([1, 2])], 0.5)
    report = check_relations(rep)
    assert not report.passed
    assert report.residuals["quadratic"] > 1
    with pytest.raises(RelationError):
        identify_rep_type(rep)


def test_hecke_params_validation():
    with pytest.raises(ValueError):
        HeckeParams(2, 0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_regular_representation_relations(n):
    q = Q(3, 2)
    Ts = [np.array(M.tolist(), dtype=object) for M in regular_representation(n, q)]
    d = len(weyl_group(n))
    eye = np.eye(d, dtype=object)
    for T in Ts:
        assert ((T - eye).dot(T + eye * q) == 0).all()
    for i in range(len(Ts) - 1):
        A, B = Ts[i], Ts[i + 1]
        assert (A.dot(B).dot(A) == B.dot(A).dot(B)).all()


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("eps", [1, -1])
def test_e_epsilon_eigen(n, eps):
    q = Q(2)
    E = e_epsilon(n, q, eps)
    scale = eps * q ** ((1 - eps) // 2)
    for i in range(1, n):
        right = hecke_multiply(E, {WeylElem.simple(i, n): Q(1)}, q)
        assert {w: c for w, c in right.items() if c} == {w: c * scale for w, c in E.items()}


def test_e_epsilon_rejects_zero_q():
    with pytest.raises(ValueError):
        e_epsilon(2, 0, 1)


def test_kato_examples():
    assert kato_iso((Q(1, 4),), Q(3, 4), -1, 2) is False
    assert kato_iso((Q(1, 4),), Q(3, 4), 1, 2) is True
    assert kato_irred((0,), Q(1, 5), 2) is True
    assert kato_irred((Q(7, 5),), Q(2, 5), 2) is False
    assert kato_irred((Q(1, 3), Q(1, 5)), Q(1, 7), 3) is True


def test_identify_characters():
    rep = MonodromyRep([-np.eye(2)], [np.diag([1, -1])], 1)
    rt = identify_rep_type(rep)
    assert rt.tag == "character_sum"
    assert rt.characters == ((-1, -1), (-1, 1))


def _covariant_pair(lam, k):
    return monodromy_generic(lam, k).rep


def test_identify_covariant_generic():
    rep = _covariant_pair(0.3, 0.21)
    assert check_relations(rep).passed
    tags = {c.tag for c in rep_type_candidates(rep)}
    assert {"covariant_plus", "covariant_minus", "induced"} <= tags


def test_conjugation_invariance():
    rep = _covariant_pair(0.37, 0.13)
    P = np.array([[1, 2 + 1j], [0.5, -1]], dtype=complex)
    Pi = np.linalg.inv(P)
    conj = MonodromyRep([P @ rep.Y[0] @ Pi], [P @ rep.T[0] @ Pi], rep.q)
    assert [c.tag for c in rep_type_candidates(rep)] == [c.tag for c in rep_type_candidates(conj)]


def test_krylov_rank():
    assert krylov_rank(np.diag([1.0, 2.0]), np.array([1.0, 1.0]), 1e-10) == 2
    assert krylov_rank(np.diag([1.0, 2.0]), np.array([1.0, 0.0]), 1e-10) == 1


def test_reptype_validation():
    with pytest.raises(ValueError):
        RepType("nonsense")
    with pytest.raises(ValueError):
        RepType("induced")
    assert RepType.undetermined().tag == "undetermined"
