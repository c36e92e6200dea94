import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kzmonodromy.exact import Q, as_exact, det, fmt_rational, inverse, parse_rational, qidentity, qmatrix, rank


@pytest.mark.parametrize("text, value", [("3", Q(3)), ("-3/6", Q(-1, 2)), (" 7/21 ", Q(1, 3))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["", "0.5", "1/0", "a/b", "1/2/3"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_fmt_round_trip():
    for x in (Q(0), Q(5), Q(-7, 3)):
        assert parse_rational(fmt_rational(x)) == x


def test_non_dyadic_float_rejected():
    with pytest.raises((ValueError, TypeError)):
        as_exact(0.1)


small = st.integers(min_value=-6, max_value=6)


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=9, max_size=9))
def test_det_matches_sympy(entries):
    import sympy

    M = qmatrix([entries[0:3], entries[3:6], entries[6:9]])
    ref = sympy.Matrix(3, 3, entries).det()
    assert det(M) == Q(int(ref))


def test_inverse_and_rank():
    M = qmatrix([[2, 1], [Q(1, 2), 3]])
    P = M.dot(inverse(M))
    assert all(P[i, j] == (1 if i == j else 0) for i in range(2) for j in range(2))
    assert rank(qmatrix([[1, 2], [2, 4]])) == 1
    assert rank(qidentity(3)) == 3
