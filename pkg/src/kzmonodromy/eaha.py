"""Extended affine Hecke algebra: relation checks, idempotents, Kato criteria.

A representation is given by matrices ``Y_1, ..., Y_{n-1}`` for the lattice
elements ``Y^{lambda_j^vee}`` (fundamental coweights) and ``T_1, ..., T_{n-1}``
for the finite generators, with Hecke parameter ``q``. The defining relations
checked here are

* ``(T_i - 1)(T_i + q) = 0``;
* braid relations among the ``T_i``; the ``Y_j`` commute;
* ``T_i Y_j = Y_j T_i`` for ``i != j`` and
  ``T_i Y_i - Y^{s_i lambda_i} T_i = (1 - q) Y_i`` with
  ``Y^{s_i lambda_i} = Y_{i-1} Y_i^{-1} Y_{i+1}``.

In rank one the last relation reads ``T Y - Y^{-1} T = (1 - q) Y``.

>>> rep = MonodromyRep([np.diag([1j, -1j])], [np.array([[1, np.pi * 0.5j], [0, 1]])], -1)
>>> check_relations(rep).passed
True
>>> identify_rep_type(rep).tag
'induced'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .exact import Q, QType, as_exact, is_exact
from .root_data import WeylElem, pairing, positive_coroots, weyl_group

__all__ = [
    "HeckeParams",
    "MonodromyRep",
    "RelationReport",
    "RepType",
    "RelationError",
    "check_relations",
    "regular_representation",
    "hecke_multiply",
    "e_epsilon",
    "kato_iso",
    "kato_irred",
    "identify_rep_type",
    "rep_type_candidates",
    "krylov_rank",
]


class RelationError(ValueError):
    """The matrices do not satisfy the Hecke relations at the requested tolerance."""


@dataclass(frozen=True)
class HeckeParams:
    """Rank data ``n`` (type ``A_{n-1}``) and the Hecke parameter ``q``."""

    n: int
    q: complex

    def __post_init__(self):
        if self.q == 0:
            raise ValueError("q must be nonzero")


@dataclass
class MonodromyRep:
    """Matrices for ``Y^{lambda_j^vee}`` and ``T_i`` (one each in rank one)."""

    Y: list
    T: list
    q: complex
    dim: int = field(default=0)

    def __post_init__(self):
        self.Y = [np.asarray(m, dtype=complex) for m in self.Y]
        self.T = [np.asarray(m, dtype=complex) for m in self.T]
        if len(self.Y) != len(self.T):
            raise ValueError("need one Y and one T per simple root")
        if not self.Y:
            raise ValueError("empty representation")
        self.dim = self.Y[0].shape[0]
        self.q = complex(self.q)

    @property
    def rank(self) -> int:
        return len(self.T)


@dataclass(frozen=True)
class RelationReport:
    """Maximal operator-norm residual for each family of relations."""

    residuals: dict
    tol: float

    @property
    def passed(self) -> bool:
        return all(v <= self.tol for v in self.residuals.values())

    @property
    def worst(self) -> float:
        return max(self.residuals.values(), default=0.0)


def _norm(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, 2)) if M.size else 0.0


def _y_power(rep: MonodromyRep, j: int, inv: bool = False) -> np.ndarray:
    """``Y_j`` (1-based) with ``Y_0 = Y_n = 1``."""
    if j < 1 or j > rep.rank:
        return np.eye(rep.dim, dtype=complex)
    return np.linalg.inv(rep.Y[j - 1]) if inv else rep.Y[j - 1]


def check_relations(rep: MonodromyRep, tol: float = 1e-8) -> RelationReport:
    """Residuals of the quadratic, Lusztig, braid and commutation relations.

    >>> T = np.diag([1, -0.5]); Lam = np.exp(0.3j * np.pi)
    >>> rep = MonodromyRep([np.diag([1 / Lam, Lam])], [T], 0.5)
    >>> check_relations(rep).residuals["quadratic"] < 1e-15
    True
    """
    q = rep.q
    d = rep.dim
    eye = np.eye(d, dtype=complex)
    res = {"quadratic": 0.0, "lusztig": 0.0, "braid": 0.0, "commuting": 0.0}
    for T in rep.T:
        res["quadratic"] = max(res["quadratic"], _norm((T - eye).dot(T + q * eye)))
    r = rep.rank
    for i in range(1, r + 1):
        T = rep.T[i - 1]
        for j in range(1, r + 1):
            Yj = rep.Y[j - 1]
            if i != j:
                res["lusztig"] = max(res["lusztig"], _norm(T.dot(Yj) - Yj.dot(T)))
                continue
            ys = _y_power(rep, i - 1).dot(np.linalg.inv(Yj)).dot(_y_power(rep, i + 1))
            res["lusztig"] = max(
                res["lusztig"], _norm(T.dot(Yj) - ys.dot(T) - (1 - q) * Yj)
            )
    for i in range(r):
        for j in range(i + 1, r):
            A, B = rep.T[i], rep.T[j]
            if j == i + 1:
                res["braid"] = max(res["braid"], _norm(A @ B @ A - B @ A @ B))
            else:
                res["braid"] = max(res["braid"], _norm(A @ B - B @ A))
            Yi, Yj = rep.Y[i], rep.Y[j]
            res["commuting"] = max(res["commuting"], _norm(Yi @ Yj - Yj @ Yi))
    return RelationReport(res, tol)


# finite Hecke algebra, elements are dicts {WeylElem: coefficient}


def _scalar(q):
    return as_exact(q) if is_exact(q) else complex(q)


def _times_generator(elem: dict, i: int, q, left: bool) -> dict:
    """``T_i * elem`` (left) or ``elem * T_i`` (right)."""
    n = len(next(iter(elem)).perm) if elem else 0
    s = WeylElem.simple(i, n)
    out: dict = {}
    for w, c in elem.items():
        sw = s * w if left else w * s
        if sw.length > w.length:
            out[sw] = out.get(sw, 0) + c
        else:
            out[w] = out.get(w, 0) + c * (1 - q)
            out[sw] = out.get(sw, 0) + c * q
    return {w: c for w, c in out.items() if c != 0}


def hecke_multiply(a: dict, b: dict, q) -> dict:
    """Product of two finite Hecke algebra elements in the ``T_w`` basis.

    >>> q = Q(1, 3); s = WeylElem.simple(1, 2); e = WeylElem.identity(2)
    >>> hecke_multiply({s: Q(1)}, {s: Q(1)}, q) == {e: q, s: 1 - q}
    True
    """
    q = _scalar(q)
    out: dict = {}
    for w, c in b.items():
        term = dict(a)
        for i in w.reduced_word():
            term = _times_generator(term, i, q, left=False)
        for u, v in term.items():
            out[u] = out.get(u, 0) + c * v
    return {w: c for w, c in out.items() if c != 0}


def regular_representation(n: int, q) -> list[np.ndarray]:
    """Matrices of left multiplication by ``T_1, ..., T_{n-1}`` on the ``T_w`` basis."""
    q = _scalar(q)
    basis = weyl_group(n)
    index = {w: a for a, w in enumerate(basis)}
    exact_mode = isinstance(q, QType)
    mats = []
    for i in range(1, n):
        M = np.empty((len(basis), len(basis)), dtype=object if exact_mode else complex)
        M.fill(Q(0) if exact_mode else 0)
        for col, w in enumerate(basis):
            for u, c in _times_generator({w: Q(1) if exact_mode else 1.0}, i, q, True).items():
                M[index[u], col] = c
        mats.append(M)
    return mats


def e_epsilon(n: int, q, eps: int) -> dict:
    """Coefficients ``a_w`` of the idempotent direction ``E_eps = sum a_w T_w``.

    ``a_w`` is the product of ``eps q^{-(eps+1)/2}`` over a reduced word, so
    ``E_eps T_i = eps q^{(1-eps)/2} E_eps``.

    >>> q = Q(2); E = e_epsilon(2, q, 1)
    >>> sorted(E.values())
    [mpq(1,2), mpq(1,1)]
    """
    if q == 0:
        raise ValueError("q must be nonzero")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    q = _scalar(q)
    step = (1 / q) if eps == 1 else -1
    return {w: step ** w.length for w in weyl_group(n)}


def _frac_is_integer(x, tol: float) -> bool:
    if is_exact(x):
        return as_exact(x).denominator == 1
    z = complex(x)
    return abs(z.imag) <= tol and abs(z.real - round(z.real)) <= tol


def kato_iso(lam: Sequence, k, eps: int, n: int, tol: float = 1e-12) -> bool:
    """Isomorphism criterion ``e^alpha(Lambda) != q^{eps}`` over positive roots.

    With ``Lambda = exp(pi i lambda)`` and ``q = exp(2 pi i k)`` this reads
    ``lambda(alpha^vee) - eps k`` not an integer for every positive coroot.

    >>> kato_iso((Q(1, 4),), Q(3, 4), -1, 2), kato_iso((Q(1, 4),), Q(3, 4), 1, 2)
    (False, True)
    """
    k = as_exact(k) if is_exact(k) else complex(k)
    for qv in positive_coroots(n):
        if _frac_is_integer(pairing(lam, qv) - eps * k, tol):
            return False
    return True


def kato_irred(lam: Sequence, k, n: int, tol: float = 1e-12) -> bool:
    """Irreducibility criterion ``e^alpha(Lambda) != q`` over all roots.

    >>> kato_irred((0,), Q(1, 5), 2), kato_irred((Q(7, 5),), Q(2, 5), 2)
    (True, False)
    """
    return kato_iso(lam, k, 1, n, tol) and kato_iso(lam, k, -1, n, tol)


# classification


@dataclass(frozen=True)
class RepType:
    """Classification tag with its payload.

    ``theta`` is the sorted multiset of Y-eigenvalues (covariant types),
    ``lam`` the Y-eigenvalue of the generating line (induced type) and
    ``characters`` the list of ``(y, t)`` pairs (sum of characters).
    """

    tag: str
    theta: tuple = ()
    lam: complex | None = None
    characters: tuple = ()

    TAGS = ("covariant_plus", "covariant_minus", "induced", "character_sum", "undetermined")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise ValueError(f"unknown tag {self.tag!r}")
        if self.tag == "induced" and self.lam is None:
            raise ValueError("induced type needs its Lambda")
        if self.tag == "character_sum" and not self.characters:
            raise ValueError("character sum needs its characters")

    @classmethod
    def covariant(cls, sign: int, theta=()) -> "RepType":
        return cls("covariant_plus" if sign > 0 else "covariant_minus", tuple(_clean(z) for z in theta))

    @classmethod
    def induced(cls, lam) -> "RepType":
        return cls("induced", lam=_clean(lam))

    @classmethod
    def character_sum(cls, chars) -> "RepType":
        return cls("character_sum", characters=tuple((_clean(y), _clean(t)) for y, t in chars))

    @classmethod
    def undetermined(cls) -> "RepType":
        return cls("undetermined")


def _clean(z) -> complex:
    z = complex(z)
    return complex(z.real + 0.0, z.imag + 0.0)


def _sorted_spectrum(vals) -> tuple:
    return tuple(sorted((complex(v) for v in vals), key=lambda z: (round(z.real, 9), round(z.imag, 9))))


def krylov_rank(M: np.ndarray, v: np.ndarray, tol: float) -> int:
    """Numerical rank of ``[v, Mv, ..., M^{d-1} v]`` with cutoff ``tol * sigma_max``."""
    d = M.shape[0]
    cols = [v / np.linalg.norm(v)]
    for _ in range(d - 1):
        w = M.dot(cols[-1])
        cols.append(w / max(np.linalg.norm(w), 1e-300))
    s = np.linalg.svd(np.column_stack(cols), compute_uv=False)
    return int(np.sum(s > tol * s[0]))


def _eigenline(M: np.ndarray, value: complex, tol: float):
    """A generic unit vector of the ``value``-eigenspace of ``M``, or None."""
    d = M.shape[0]
    _, s, vh = np.linalg.svd(M - value * np.eye(d))
    scale = max(1.0, _norm(M))
    null = [vh[j].conj() for j in range(d) if s[j] <= tol * scale * 10]
    if not null:
        return None
    coeffs = 1.0 + 0.37j * np.arange(1, len(null) + 1)
    v = sum(c * b for c, b in zip(coeffs, null))
    return v / np.linalg.norm(v)


def _char_key(c):
    flat = [complex(v) for part in c for v in (part if isinstance(part, tuple) else (part,))]
    return tuple(x for z in flat for x in (round(z.real, 9), round(z.imag, 9)))


def _simultaneous_characters(rep: MonodromyRep, tol: float):
    mats = rep.Y + rep.T
    scale = max(1.0, max(_norm(m) for m in mats))
    for A in mats:
        for B in mats:
            if _norm(A @ B - B @ A) > tol * scale * 10:
                return None
    rng = np.random.default_rng(12345)
    coeff = rng.normal(size=len(mats)) + 1j * rng.normal(size=len(mats))
    G = sum(c * m for c, m in zip(coeff, mats))
    _, V = np.linalg.eig(G)
    if np.linalg.cond(V) > 1.0 / tol:
        return None
    Vi = np.linalg.inv(V)
    diags = []
    for m in mats:
        D = Vi @ m @ V
        off = D - np.diag(np.diag(D))
        if _norm(off) > tol * scale * 10 * np.linalg.cond(V):
            return None
        diags.append(np.diag(D))
    r = rep.rank
    chars = []
    for a in range(rep.dim):
        ys = tuple(complex(diags[j][a]) for j in range(r))
        ts = tuple(complex(diags[r + j][a]) for j in range(r))
        chars.append((ys[0], ts[0]) if r == 1 else (ys, ts))
    chars.sort(key=_char_key)
    return chars


def identify_rep_type(rep: MonodromyRep, tol: float = 1e-8) -> RepType:
    """Classify a monodromy representation.

    Rank one: a sum of characters if ``Y`` and ``T`` diagonalize together,
    else the covariant type whose ``T``-eigenline (eigenvalue ``1`` for plus,
    ``-q`` for minus) is cyclic for ``Y``, else induced from a ``Y``-eigenline
    generating under ``T``. Higher rank only detects sums of characters.

    >>> rep = MonodromyRep([-np.eye(2)], [np.diag([1, -1])], 1)
    >>> identify_rep_type(rep).characters
    (((-1+0j), (-1+0j)), ((-1+0j), (1+0j)))
    """
    cands = rep_type_candidates(rep, tol)
    return cands[0] if cands else RepType.undetermined()


def rep_type_candidates(rep: MonodromyRep, tol: float = 1e-8) -> list[RepType]:
    """Every type whose criterion the pair satisfies, in decision order.

    Several can hold at once when the types coincide, e.g. ``T = 1`` with
    ``q = -1`` is both a sum of characters and covariant.
    """
    report = check_relations(rep, tol)
    if not report.passed:
        raise RelationError(f"relations fail: {report.residuals}")
    out: list[RepType] = []
    chars = _simultaneous_characters(rep, tol)
    if chars is not None:
        out.append(
            RepType.character_sum(chars)
            if rep.rank == 1
            else RepType("character_sum", characters=tuple(chars))
        )
    if rep.rank != 1:
        return out
    Y, T, q = rep.Y[0], rep.T[0], rep.q
    theta = _sorted_spectrum(np.linalg.eigvals(Y))
    for sign, value in ((1, 1.0), (-1, -q)):
        v = _eigenline(T, value, tol)
        if v is not None and krylov_rank(Y, v, tol) == rep.dim:
            out.append(RepType.covariant(sign, theta))
    vals, vecs = np.linalg.eig(Y)
    for a in range(rep.dim):
        if krylov_rank(T, vecs[:, a], tol) == rep.dim:
            out.append(RepType.induced(vals[a]))
            break
    return out
