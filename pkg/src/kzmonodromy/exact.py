"""Exact rational scalars and dense linear algebra over them.

Exact matrices are numpy object arrays holding ``gmpy2.mpq`` entries; the
elimination routines below never round. Complex float matrices go through
the same entry points and are dispatched to numpy.

>>> M = qmatrix([[1, 2], [3, 4]])
>>> det(M)
mpq(-2,1)
>>> rank(qmatrix([[1, 2], [2, 4]]))
1
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import gmpy2
import numpy as np

__all__ = [
    "Q",
    "QType",
    "as_exact",
    "is_exact",
    "is_integer",
    "qmatrix",
    "qzeros",
    "qidentity",
    "to_complex",
    "is_exact_matrix",
    "det",
    "rank",
    "inverse",
    "is_zero_matrix",
    "fmt_rational",
    "parse_rational",
]

Q = gmpy2.mpq
QType = type(gmpy2.mpq(0))


def parse_rational(text: str) -> QType:
    """Parse ``"p/q"`` or an integer literal into an exact rational.

    >>> parse_rational("-3/6")
    mpq(-1,2)
    """
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        d = int(den) if sep else 1
    except ValueError as exc:
        raise ValueError(f"malformed rational {text!r}") from exc
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Q(p, d)


def as_exact(x) -> QType:
    """Convert ints, Fractions, mpq, ``"p/q"`` strings and dyadic floats to mpq.

    Non-dyadic floats are rejected: classification predicates need exact input.

    >>> as_exact(0.5)
    mpq(1,2)
    >>> as_exact("4/3")
    mpq(4,3)
    """
    if isinstance(x, QType):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Fraction)) or type(x).__name__ == "mpz":
        return Q(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        fr = Fraction(x)
        if fr.denominator > 1024:
            raise ValueError(f"float {x!r} is not an exact small dyadic rational")
        return Q(fr)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def is_exact(x) -> bool:
    """True for ints, Fractions and mpq values."""
    return isinstance(x, (int, Fraction, QType)) and not isinstance(x, bool)


def is_integer(x) -> bool:
    """Exact integrality test for rationals."""
    return as_exact(x).denominator == 1


def fmt_rational(x) -> str:
    """Canonical ``"p/q"`` (or ``"p"``) rendering.

    >>> fmt_rational(Q(6, 4))
    '3/2'
    """
    r = as_exact(x)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def qmatrix(rows: Iterable[Iterable]) -> np.ndarray:
    """Build an exact object matrix from nested rows."""
    data = [[as_exact(v) for v in row] for row in rows]
    out = np.empty((len(data), len(data[0]) if data else 0), dtype=object)
    for i, row in enumerate(data):
        for j, v in enumerate(row):
            out[i, j] = v
    return out


def qzeros(r: int, c: int | None = None) -> np.ndarray:
    """Exact zero matrix."""
    c = r if c is None else c
    out = np.empty((r, c), dtype=object)
    out.fill(Q(0))
    return out


def qidentity(d: int) -> np.ndarray:
    """Exact identity matrix."""
    out = qzeros(d)
    for i in range(d):
        out[i, i] = Q(1)
    return out


def is_exact_matrix(M: np.ndarray) -> bool:
    return M.dtype == object


def to_complex(M: np.ndarray) -> np.ndarray:
    """Cast an exact (or complex) matrix to complex128."""
    if M.dtype == object:
        return np.array([[complex(v) for v in row] for row in M], dtype=complex)
    return np.asarray(M, dtype=complex)


def _eliminate(M: np.ndarray):
    """Row-reduce a copy of an exact matrix; returns (reduced, pivots, sign)."""
    A = [list(row) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots: list[int] = []
    sign = 1
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            A[r], A[p] = A[p], A[r]
            sign = -sign
        piv = A[r][c]
        for i in range(r + 1, rows):
            if A[i][c] != 0:
                f = A[i][c] / piv
                Ai, Ar = A[i], A[r]
                for j in range(c, cols):
                    Ai[j] = Ai[j] - f * Ar[j]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots, sign


def det(M: np.ndarray):
    """Determinant; exact for object matrices, numpy otherwise."""
    if M.shape[0] != M.shape[1]:
        raise ValueError("determinant of a non-square matrix")
    if not is_exact_matrix(M):
        return complex(np.linalg.det(M))
    A, pivots, sign = _eliminate(M)
    if len(pivots) < M.shape[0]:
        return Q(0)
    out = Q(sign)
    for i in range(M.shape[0]):
        out *= A[i][i]
    return out


def rank(M: np.ndarray, tol: float = 1e-8) -> int:
    """Rank; exact for object matrices, relative SVD cutoff otherwise."""
    if M.size == 0:
        return 0
    if not is_exact_matrix(M):
        s = np.linalg.svd(np.asarray(M, dtype=complex), compute_uv=False)
        if s.size == 0 or s[0] == 0:
            return 0
        return int(np.sum(s > tol * s[0]))
    _, pivots, _ = _eliminate(M)
    return len(pivots)


def inverse(M: np.ndarray) -> np.ndarray:
    """Exact Gauss-Jordan inverse; raises ZeroDivisionError if singular."""
    if not is_exact_matrix(M):
        return np.linalg.inv(M)
    d = M.shape[0]
    A = [list(M[i]) + [Q(1) if j == i else Q(0) for j in range(d)] for i in range(d)]
    for c in range(d):
        p = next((i for i in range(c, d) if A[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [v / piv for v in A[c]]
        for i in range(d):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    out = qzeros(d)
    for i in range(d):
        for j in range(d):
            out[i, j] = A[i][d + j]
    return out


def is_zero_matrix(M: np.ndarray, tol: float = 0.0) -> bool:
    """Exact zero test for object matrices, max-abs test otherwise."""
    if is_exact_matrix(M):
        return all(v == 0 for v in M.flat)
    return bool(np.max(np.abs(M)) <= tol) if M.size else True

