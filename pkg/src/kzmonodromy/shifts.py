"""Shift operators in ``lambda`` and ``k`` with invertibility certificates.

A lambda-shift along ``w`` in the extended affine Weyl group is the affine
intertwiner ``I_lambda -> I_{w lambda}``; it is invertible iff
``a(lambda) != +-k`` for every positive affine coroot ``a = alpha^vee + m``
that ``w`` makes negative. A k-shift ``k -> k +- 1`` on the covariant local
system is invertible iff ``lambda`` is regular for the lower of the two
parameters.

>>> from .root_data import AffineWeylElem
>>> affine_intertwiner_invertible(AffineWeylElem.translation((1,)), (Q(-1, 2),), Q(1, 2), 2)
(False, [((1,), 0)])
>>> kshift_move((Q(5, 2),), Q(1, 2), 2, 1).certified
True
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import dahe
from .exact import Q, QType, as_exact, fmt_rational, is_exact
from .root_data import (
    AffineWeylElem,
    affine_simple_reflection,
    eps_rho,
    highest_root_weight,
    pairing,
    positive_coroots,
    weight_to_e,
    weyl_group,
)

__all__ = [
    "ShiftMove",
    "MOVE_KINDS",
    "affine_intertwiner_invertible",
    "lambda_shift_invertible",
    "lambda_shift_move",
    "jshift_invertible",
    "jshift_rank1_matrix",
    "kshift_move",
    "affine_intertwiner_matrix",
    "translation",
]

MOVE_KINDS = ("lambda_shift", "k_shift", "weyl_move", "r_identification")


def _fmt(x) -> str:
    if isinstance(x, QType) or is_exact(x):
        return fmt_rational(x)
    z = complex(x)
    return f"{z.real:g}" if z.imag == 0 else f"{z:g}"


def _fmt_weight(lam) -> str:
    return "(" + ", ".join(_fmt(v) for v in lam) + ")"


@dataclass(frozen=True)
class ShiftMove:
    """One step of a shift plan with the conditions it verified.

    ``source`` and ``target`` are ``(lambda, k)`` pairs; ``info`` holds the
    kind-specific data (fundamental weight index and direction, Weyl element,
    sign character, twist flags).
    """

    kind: str
    source: tuple
    target: tuple
    certificate: tuple = ()
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise ValueError(f"unknown move kind {self.kind!r}")

    @property
    def certified(self) -> bool:
        return all(ok for _, ok in self.certificate)

    def failures(self) -> list[str]:
        return [c for c, ok in self.certificate if not ok]

    def describe(self) -> str:
        src = f"{_fmt_weight(self.source[0])}, k={_fmt(self.source[1])}"
        dst = f"{_fmt_weight(self.target[0])}, k={_fmt(self.target[1])}"
        return f"{self.kind} {src} -> {dst}"


def _is_int(x, tol: float = 1e-12) -> bool:
    if is_exact(x):
        return as_exact(x).denominator == 1
    z = complex(x)
    return abs(z.imag) <= tol and abs(z.real - round(z.real)) <= tol


def _equal(a, b, tol: float = 1e-12) -> bool:
    if is_exact(a) and is_exact(b):
        return as_exact(a) == as_exact(b)
    return abs(complex(a) - complex(b)) <= tol


def _prep(lam: Sequence, k):
    lam = tuple(as_exact(v) if is_exact(v) else complex(v) for v in lam)
    k = as_exact(k) if is_exact(k) else complex(k)
    return lam, k


def translation(i: int, n: int, direction: int = 1) -> AffineWeylElem:
    """``t_{direction * lambda_i}`` (``i`` 1-based)."""
    mu = tuple(direction if a == i - 1 else 0 for a in range(n - 1))
    return AffineWeylElem.translation(mu)


def affine_intertwiner_invertible(w: AffineWeylElem, lam: Sequence, k, n: int):
    """``(ok, violated)``: ``ok`` iff ``a(lambda) != +-k`` over the inversion set of ``w``.

    ``violated`` lists the affine coroots ``(alpha^vee, m)`` where it fails.
    """
    lam, k = _prep(lam, k)
    if len(lam) != n - 1:
        raise ValueError("weight has the wrong rank")
    bad = []
    for q, m in w.inversion_set():
        val = pairing(lam, q) + m
        if _equal(val, k) or _equal(val, -k):
            bad.append((q, m))
    return not bad, bad


def lambda_shift_invertible(i: int, lam: Sequence, k, n: int, direction: int = 1) -> bool:
    """Invertibility of ``lambda -> lambda + direction * lambda_i``.

    For the upward shift this is ``lambda(beta^vee) != +-k`` over the positive
    roots with ``lambda_i(beta^vee) != 0``.

    >>> lambda_shift_invertible(1, (0, Q(1, 2)), Q(4, 3), 3)
    True
    >>> lambda_shift_invertible(1, (Q(4, 3),), Q(4, 3), 2)
    False
    """
    lam, k = _prep(lam, k)
    if direction == 1:
        for q in positive_coroots(n):
            if q[i - 1] != 0:
                v = pairing(lam, q)
                if _equal(v, k) or _equal(v, -k):
                    return False
        return True
    return affine_intertwiner_invertible(translation(i, n, direction), lam, k, n)[0]


def lambda_shift_move(i: int, lam: Sequence, k, n: int, direction: int) -> ShiftMove:
    """A certified-or-not move ``lambda -> lambda + direction * lambda_i``."""
    lam, k = _prep(lam, k)
    w = translation(i, n, direction)
    ok, bad = affine_intertwiner_invertible(w, lam, k, n)
    target = tuple(v + (direction if a == i - 1 else 0) for a, v in enumerate(lam))
    sign = "+" if direction > 0 else "-"
    cert = [(f"t_{{{sign}lambda_{i}}} at {_fmt_weight(lam)}: a(lambda) != +-k on the inversion set", ok)]
    for q, m in bad:
        cert.append((f"violated: coroot {q} + {m} takes value +-k", False))
    return ShiftMove(
        "lambda_shift", (lam, k), (target, k), tuple(cert), {"index": i, "direction": direction}
    )


def jshift_invertible(mu, k) -> bool:
    """Rank-one covariant shift ``mu -> mu + 1`` is invertible iff ``mu != -k, k - 1``.

    >>> jshift_invertible(Q(1, 2), Q(-1, 2)), jshift_invertible(0, Q(1, 3))
    (False, True)
    """
    return not (_equal(mu, -k if not is_exact(k) else -as_exact(k)) or _equal(mu, k - 1))


def _adjugate2(M: np.ndarray) -> np.ndarray:
    out = np.empty((2, 2), dtype=M.dtype)
    out[0, 0], out[0, 1] = M[1, 1], -M[0, 1]
    out[1, 0], out[1, 1] = -M[1, 0], M[0, 0]
    return out


def jshift_rank1_matrix(lam, k, x=2) -> np.ndarray:
    """Rank-one covariant lambda-shift ``J_{q(lambda)} -> J_{q(lambda+1)}`` at ``x = e^rho``.

    The simple-reflection factor of ``t_rho`` maps the image of ``R_lambda``
    onto ``(k - lambda) R_{-lambda}``; after cancelling that scalar the shift is
    ``adj(R_{lambda+1}) T_omega R_{-lambda}``. The matrix is written in the
    basis ``{1, alpha^vee}`` and its determinant is a nonzero multiple of
    ``(lambda + k)(lambda - k + 1) / x^2``.

    >>> M = jshift_rank1_matrix(Q(1, 2), Q(-1, 2))
    >>> M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    mpq(0,1)
    """
    exact_mode = all(is_exact(v) for v in (lam, k, x))
    if exact_mode:
        lam, k, x = as_exact(lam), as_exact(k), as_exact(x)
        zero = Q(0)
    else:
        lam, k, x = complex(lam), complex(k), complex(x)
        zero = 0j
    R_up = dahe.r_map((lam + 1,), k, 1, 2)
    R_dn = dahe.r_map((-lam,), k, 1, 2)
    T_omega = np.array([[zero, 1 / x], [x, zero]], dtype=object if exact_mode else complex)
    M = _adjugate2(R_up).dot(T_omega).dot(R_dn)
    # staircase basis {1, y_1} to {1, alpha^vee}: alpha^vee = 2 y_1
    M[0, 1] = M[0, 1] * 2
    M[1, 0] = M[1, 0] / 2
    return M


def kshift_move(lam: Sequence, k, n: int, direction: int) -> ShiftMove:
    """The k-shift ``k -> k + direction``, certified iff ``lambda`` is regular at ``min(k, k + direction)``.

    ``info["eps_rho_twist"]`` records whether the Cherednik half of the shift
    twists monodromy by the nontrivial character ``eps_rho`` (``n`` even).

    >>> kshift_move((3, 3), 1, 3, -1).certified
    True
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    lam, k = _prep(lam, k)
    low = k if direction > 0 else k - 1
    ok = dahe.is_k_regular(lam, low, n)
    cert = ((f"lambda(alpha^vee) != +-{_fmt(low)} for all alpha > 0", ok),)
    info = {"direction": direction, "eps_rho_twist": eps_rho(n, 1) == -1}
    return ShiftMove("k_shift", (lam, k), (lam, k + direction), cert, info)


# numerical affine intertwiners on I_lambda at a point h of the torus


def _root_at(root_weight: Sequence, h: np.ndarray, n: int) -> complex:
    return complex(np.dot(np.asarray(weight_to_e(root_weight, n), dtype=complex), h))


def _simple_factor(i: int, lam: tuple, k: complex, n: int, h: np.ndarray) -> np.ndarray:
    basis = weyl_group(n)
    index = {w: a for a, w in enumerate(basis)}
    d = len(basis)
    M = np.zeros((d, d), dtype=complex)
    if i == 0:
        s0 = affine_simple_reflection(0, n)
        psi_q = tuple([1] * (n - 1))
        a_val = 1 - complex(pairing(lam, psi_q))
        psi = highest_root_weight(n)
        for col, u in enumerate(basis):
            M[col, col] += k
            upsi = u.act_weight(psi)
            M[index[u * s0.finite], col] += -a_val * np.exp(_root_at(upsi, h, n))
        return M
    a_val = complex(pairing(lam, tuple(1 if a == i - 1 else 0 for a in range(n - 1))))
    s = affine_simple_reflection(i, n).finite
    for col, u in enumerate(basis):
        M[col, col] += k
        M[index[u * s], col] += -a_val
    return M


def _omega_factor(omega: AffineWeylElem, n: int, h: np.ndarray) -> np.ndarray:
    basis = weyl_group(n)
    index = {w: a for a, w in enumerate(basis)}
    d = len(basis)
    M = np.zeros((d, d), dtype=complex)
    winv = omega.finite.inverse()
    mu = winv.act_weight(omega.translation_part)
    for col, u in enumerate(basis):
        M[index[u * winv], col] = np.exp(-_root_at(u.act_weight(mu), h, n))
    return M


def affine_intertwiner_matrix(w: AffineWeylElem, lam: Sequence, k, n: int, h=None):
    """Numerical matrix of ``I_lambda -> I_{w lambda}`` at the point ``h``.

    Built from a reduced decomposition ``w = omega s_{i_1} ... s_{i_r}``;
    returns ``(matrix, omega_matrix)`` so callers can separate the
    always-invertible length-zero factor.
    """
    lam = tuple(complex(v) for v in lam)
    k = complex(k)
    if h is None:
        h = np.linspace(0.11, -0.07, n)
    h = np.asarray(h, dtype=complex)
    omega, word = w.reduced_decomposition()
    d = len(weyl_group(n))
    M = np.eye(d, dtype=complex)
    cur = lam
    for i in reversed(word):
        M = _simple_factor(i, cur, k, n, h).dot(M)
        cur = affine_simple_reflection(i, n).act_weight(cur)
    Om = _omega_factor(omega, n, h)
    return Om.dot(M), Om
