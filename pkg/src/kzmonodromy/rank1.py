"""Closed-form monodromy of the rank-one covariant KZ local system.

In rank one the connection reduces to the hypergeometric equation with
``a = lambda - k + 1``, ``b = -lambda - k + 1``, ``c = 3/2 - k``. Writing
``Lambda = exp(pi i lambda)`` and ``q = exp(2 pi i k)``, the normalized
monodromy pair ``(Ybar, T)`` satisfies ``(T - 1)(T + q) = 0`` and
``T Ybar - Ybar^{-1} T = (1 - q) Ybar``.

The pair is computed in one of five regimes:

* ``generic``: ``lambda`` not in ``Z/2``, from the Kummer connection matrix;
* ``lambda_zero_limit`` and ``lambda_half``: the degenerate exponents;
* ``integer_shifted`` and ``half_integer_shifted``: transported from the
  degenerate points by lambda-shifts (and k-shifts for the exceptional set).

>>> classify_rank1(Q(1, 2), Q(1, 2))[0].tag
'induced'
>>> classify_rank1(Q(1, 4), Q(3, 4))[0].tag
'covariant_minus'
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .eaha import MonodromyRep, RepType, check_relations
from .exact import Q, QType, as_exact, is_exact
from .shifts import ShiftMove, jshift_invertible, kshift_move
from .specfn import EULER_GAMMA, digamma, gamma, recip_gamma

__all__ = [
    "HGMParams",
    "Rank1Monodromy",
    "RegimeError",
    "hgm_params",
    "kummer_matrix",
    "normalized_kummer",
    "monodromy_generic",
    "monodromy_lambda_zero",
    "monodromy_lambda_half",
    "monodromy_rank1",
    "classify_rank1",
    "region_tag",
    "plot_color",
    "SNAP_TOL",
]

log = logging.getLogger(__name__)

SNAP_TOL = 1e-6
_INT_TOL = 1e-9


class RegimeError(ValueError):
    """The generic formulas were called on a degenerate exponent."""


@dataclass(frozen=True)
class HGMParams:
    """Hypergeometric parameters ``(a, b, c)``."""

    a: complex
    b: complex
    c: complex


@dataclass
class Rank1Monodromy:
    """Normalized rank-one monodromy pair with its regime and classification."""

    Ybar: np.ndarray
    T: np.ndarray
    q: complex
    Lam: complex
    regime: str
    classification: RepType

    REGIMES = (
        "generic",
        "lambda_zero_limit",
        "lambda_half",
        "integer_shifted",
        "half_integer_shifted",
    )

    def __post_init__(self):
        if self.regime not in self.REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}")

    @property
    def rep(self) -> MonodromyRep:
        return MonodromyRep([self.Ybar], [self.T], self.q)

    def invariants(self) -> dict:
        """Conjugation invariants ``tr T, tr Y, tr YT, tr Y^2 T``."""
        Y, T = self.Ybar, self.T
        return {
            "tr_T": complex(np.trace(T)),
            "tr_Y": complex(np.trace(Y)),
            "tr_YT": complex(np.trace(Y @ T)),
            "tr_Y2T": complex(np.trace(Y @ Y @ T)),
        }


# scalar normalization


def _scalar(x):
    """Exact rational when possible, otherwise complex."""
    if is_exact(x):
        return as_exact(x)
    if isinstance(x, float) and Fraction(x).denominator <= 1024:
        return as_exact(x)
    return complex(x)


def _snap_half(x):
    """Snap a complex value within ``SNAP_TOL`` of ``Z/2`` to the exact half-integer."""
    if isinstance(x, QType):
        return x
    z = complex(x)
    m = round(2 * z.real)
    if abs(z.imag) < SNAP_TOL and abs(z.real - m / 2) < SNAP_TOL:
        return Q(m, 2)
    return z


def _half_integer_class(x):
    """``"int"``, ``"half"`` or None according to ``x`` in ``Z``, ``1/2 + Z`` or neither."""
    if not isinstance(x, QType):
        return None
    if x.denominator == 1:
        return "int"
    if x.denominator == 2:
        return "half"
    return None


def _is_int(x) -> bool:
    if isinstance(x, QType):
        return x.denominator == 1
    z = complex(x)
    return abs(z.imag) < _INT_TOL and abs(z.real - round(z.real)) < _INT_TOL


def _is_pos_int(x) -> bool:
    return _is_int(x) and complex(x).real > 0.5


def _normalize(lam, k):
    lam = _snap_half(_scalar(lam))
    k = _scalar(k)
    if not isinstance(k, QType):
        k = _snap_half(k) if isinstance(lam, QType) else k
    flipped = complex(lam).real < 0
    if flipped:
        lam = -lam
    return lam, k, flipped


def _q(k) -> complex:
    if isinstance(k, QType):
        return _exact_root_of_unity(k, 2)
    return cmath.exp(2j * math.pi * complex(k))


def _Lam(lam) -> complex:
    if isinstance(lam, QType):
        return _exact_root_of_unity(lam, 1)
    return cmath.exp(1j * math.pi * complex(lam))


def _exact_root_of_unity(x: QType, mult: int) -> complex:
    """``exp(mult pi i x)`` with exact values at quarter turns."""
    t = (x * mult) % 2
    table = {Q(0): 1 + 0j, Q(1, 2): 1j, Q(1): -1 + 0j, Q(3, 2): -1j}
    if t in table:
        return table[t]
    return cmath.exp(1j * math.pi * float(t))


# hypergeometric data


def hgm_params(lam, k) -> HGMParams:
    """``a = lambda - k + 1``, ``b = -lambda - k + 1``, ``c = 3/2 - k``.

    >>> hgm_params(0, 0)
    HGMParams(a=(1+0j), b=(1+0j), c=(1.5+0j))
    """
    lam, k = complex(lam), complex(k)
    return HGMParams(lam - k + 1, -lam - k + 1, 1.5 - k)


def _epi(x) -> complex:
    return cmath.exp(1j * math.pi * x)


def kummer_matrix(p: HGMParams) -> np.ndarray:
    """Connection matrix from the basis at ``w = 0`` to the basis at ``w = infinity``.

    Columns are the solutions with exponents ``0`` and ``1 - c`` at zero,
    rows the solutions ``w^{-a}`` and ``w^{-b}`` at infinity.
    """
    a, b, c = p.a, p.b, p.c
    K = np.empty((2, 2), dtype=complex)
    K[0, 0] = _epi(a) * gamma(c) * gamma(b - a) * recip_gamma(b) * recip_gamma(c - a)
    K[0, 1] = (
        -_epi(a - c) * gamma(2 - c) * gamma(b - a) * recip_gamma(1 - a) * recip_gamma(b - c + 1)
    )
    K[1, 0] = _epi(b) * gamma(c) * gamma(a - b) * recip_gamma(a) * recip_gamma(c - b)
    K[1, 1] = (
        -_epi(b - c) * gamma(2 - c) * gamma(a - b) * recip_gamma(1 - b) * recip_gamma(a - c + 1)
    )
    return K


def normalized_kummer(lam, k) -> np.ndarray:
    """Kummer columns divided by ``Gamma(3/2 - k)`` and ``Gamma(k + 1/2)``.

    Both columns are entire in ``k``; the first is the ``T``-eigenvector for
    ``1`` and the second the eigenvector for ``-q``, in the basis where
    ``Ybar = diag(Lambda^{-1}, Lambda)``.
    """
    lam, k = complex(lam), complex(k)
    g_minus, g_plus = gamma(-2 * lam), gamma(2 * lam)
    e_l = _epi(lam)
    K = np.empty((2, 2), dtype=complex)
    pre1 = -_epi(-k)
    K[0, 0] = pre1 * e_l * g_minus * recip_gamma(1 - k - lam) * recip_gamma(0.5 - lam)
    K[1, 0] = pre1 / e_l * g_plus * recip_gamma(1 - k + lam) * recip_gamma(0.5 + lam)
    pre2 = -1j * _epi(k)
    K[0, 1] = pre2 * e_l * g_minus * recip_gamma(k - lam) * recip_gamma(0.5 - lam)
    K[1, 1] = pre2 / e_l * g_plus * recip_gamma(k + lam) * recip_gamma(0.5 + lam)
    return K


def _generic_T(lam: complex, k: complex) -> np.ndarray:
    """``T`` in the ``Ybar = diag(Lambda^{-1}, Lambda)`` basis.

    The diagonal is forced by the Lusztig relation; the larger off-diagonal
    entry is read off the better conditioned Kummer eigencolumn.
    """
    q = cmath.exp(2j * math.pi * k)
    L2 = cmath.exp(2j * math.pi * lam)
    t11 = (1 - q) / (1 - L2)
    t22 = (1 - q) * L2 / (L2 - 1)
    K = normalized_kummer(lam, k)
    v, u = K[:, 0], K[:, 1]
    if abs(v[1]) >= abs(u[1]):
        t12 = (1 - t11) * v[0] / v[1]
    else:
        t12 = -(t11 + q) * u[0] / u[1]
    if abs(v[0]) >= abs(u[0]):
        t21 = (1 - t22) * v[1] / v[0]
    else:
        t21 = -(t22 + q) * u[1] / u[0]
    # only t12/t21 depends on the basis; det T = -q fixes the product
    prod = t11 * t22 + q
    if abs(t12) >= abs(t21) and t12 != 0:
        t21 = prod / t12
    elif t21 != 0:
        t12 = prod / t21
    return np.array([[t11, t12], [t21, t22]], dtype=complex)


def monodromy_generic(lam, k) -> Rank1Monodromy:
    """Monodromy for ``lambda`` outside ``Z/2``.

    >>> M = monodromy_generic(0.3, 0.2)
    >>> bool(abs(np.trace(M.T) - (1 - np.exp(0.4j * np.pi))) < 1e-10)
    True
    """
    lam0, k0, _ = _normalize(lam, k)
    if _half_integer_class(lam0) is not None:
        raise RegimeError("lambda lies in Z/2; use the degenerate monodromy routines")
    lam_c, k_c = complex(lam0), complex(k0)
    Lam = cmath.exp(1j * math.pi * lam_c)
    Y = np.diag([1 / Lam, Lam])
    T = _generic_T(lam_c, k_c)
    cls = _covariant(-1 if (_is_pos_int(k0 + lam0) or _is_pos_int(k0 - lam0)) else 1, Y)
    return Rank1Monodromy(Y, T, _q(k0), _Lam(lam0), "generic", cls)


def _covariant(sign: int, Y: np.ndarray) -> RepType:
    vals = np.linalg.eigvals(Y)
    return RepType.covariant(sign, sorted(vals, key=lambda z: (round(z.real, 9), round(z.imag, 9))))


def _harmonic(m: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, m + 1)), Fraction(0))


def _lambda_zero_T(k) -> np.ndarray:
    """The ``lambda -> 0`` limit of ``T``, already in the rescaled basis."""
    if _is_int(k) or abs(complex(k) - round(complex(k).real)) < SNAP_TOL:
        m = int(round(complex(k).real))
        if m >= 1:
            return np.array([[-1, 0], [-4 * float(_harmonic(m - 1)), 1]], dtype=complex)
        return np.array([[1, 0], [4 * float(_harmonic(-m)), -1]], dtype=complex)
    k = complex(k)
    pi = math.pi
    g = EULER_GAMMA
    S = digamma(1 - k) + g + digamma(k)
    sin, cos = cmath.sin(pi * k), cmath.cos(pi * k)
    csc, cot, tan = 1 / sin, cos / sin, sin / cos
    e1, e2 = cmath.exp(1j * pi * k), cmath.exp(2j * pi * k)
    t11 = -e1 * (g + 1j * pi + S) * sin / pi
    t12 = -2 * e1 * sin / pi
    t21 = (
        ((1 + e2) * pi**2 * csc * (pi**2 * csc**2 + (S + g) ** 2) - 2 * e1 * pi**4 * cot * (2 * cot**2 + 1))
        * sin
        * tan
        / (4 * pi**3)
    )
    t22 = -1j * (e2 - 1) * (g - 1j * pi + S) / (2 * pi)
    # conjugation by diag(1, -1/2) makes the limit compatible with Ybar below
    return np.array([[t11, -0.5 * t12], [-2 * t21, t22]], dtype=complex)


_LAMBDA_ZERO_Y = np.array([[1, 0], [-2j * math.pi, 1]], dtype=complex)


def monodromy_lambda_zero(k) -> Rank1Monodromy:
    """Monodromy at ``lambda = 0``; ``Ybar = [[1, 0], [-2 pi i, 1]]``.

    >>> monodromy_lambda_zero(0).T.real.tolist()
    [[1.0, 0.0], [0.0, -1.0]]
    """
    k = _scalar(k)
    T = _lambda_zero_T(k)
    sign = -1 if _is_pos_int(k) else 1
    return Rank1Monodromy(
        _LAMBDA_ZERO_Y.copy(), T, _q(k), 1 + 0j, "lambda_zero_limit", _covariant(sign, _LAMBDA_ZERO_Y)
    )


def _lambda_half_T(k):
    if isinstance(k, QType) and k == Q(1, 2) or (
        not isinstance(k, QType) and abs(complex(k) - 0.5) < SNAP_TOL
    ):
        return np.array([[1, 0.5j * math.pi], [0, 1]], dtype=complex), True
    q = _q(k)
    kc = complex(k)
    T = 0.5 * np.array([[1 - q, (1 + q) / (1 - 2 * kc)], [(1 + q) * (1 - 2 * kc), 1 - q]])
    return T, False


def monodromy_lambda_half(k) -> Rank1Monodromy:
    """Monodromy at ``lambda = 1/2``; ``Ybar = diag(i, -i)``.

    >>> monodromy_lambda_half(Q(1, 2)).classification.lam
    -1j
    """
    k = _scalar(k)
    Y = np.diag([1j, -1j])
    T, induced = _lambda_half_T(k)
    cls = RepType.induced(-1j) if induced else _covariant(1, Y)
    return Rank1Monodromy(Y, T, _q(k), 1j, "lambda_half", cls)


# classification


def _nonshiftable_integer(lam, k) -> bool:
    """``lambda, k`` integers with ``|lambda| >= max(k, 1 - k)``."""
    both = all(isinstance(v, QType) and v.denominator == 1 for v in (lam, k))
    return both and abs(lam) >= max(k, 1 - k)


def _nonshiftable_half(lam, k) -> bool:
    """``lambda, k`` in ``1/2 + Z`` with ``|lambda| >= max(k, 1 - k)``."""
    both = all(isinstance(v, QType) and v.denominator == 2 for v in (lam, k))
    return both and abs(lam) >= max(k, 1 - k)


def region_tag(lam, k) -> str:
    """Classification tag by pure arithmetic on ``(lambda, k)``.

    >>> [region_tag(*p) for p in [(1, 0), (Q(3, 2), Q(1, 2)), (2, 3), (Q(3, 10), Q(1, 5))]]
    ['character_sum', 'induced', 'covariant_minus', 'covariant_plus']
    """
    lam, k, _ = _normalize(lam, k)
    if isinstance(lam, QType) and isinstance(k, QType):
        if _nonshiftable_integer(lam, k):
            return "character_sum"
        if _nonshiftable_half(lam, k):
            return "induced"
    half = isinstance(lam, QType) and lam.denominator == 2
    if not half and (_is_pos_int(k + lam) or _is_pos_int(k - lam)):
        return "covariant_minus"
    return "covariant_plus"


_COLORS = {
    "covariant_plus": "white",
    "character_sum": "blue",
    "induced": "green",
    "covariant_minus": "red",
}


def plot_color(lam, k) -> str:
    """Color class of the parameter-space plot: white, blue, green or red."""
    return _COLORS[classify_rank1(lam, k)[0].tag]


def _lambda_chain(start, stop, k) -> list[ShiftMove]:
    """Lambda-shifts lowering ``lambda`` from ``start`` to ``stop`` at fixed ``k``."""
    moves = []
    mu = start
    while mu > stop:
        lo = mu - 1
        cert = ((f"{lo} != -k and {lo} != k - 1", jshift_invertible(lo, k)),)
        moves.append(
            ShiftMove("lambda_shift", ((mu,), k), ((lo,), k), cert, {"index": 1, "direction": -1})
        )
        mu = lo
    return moves


def _k_chain(lam, start, stop) -> list[ShiftMove]:
    moves = []
    j = start
    step = 1 if stop > start else -1
    while j != stop:
        m = kshift_move((lam,), j, 2, step)
        moves.append(m)
        j = j + step
    return moves


def _route(lam, k, flipped: bool) -> list[ShiftMove]:
    moves: list[ShiftMove] = []
    if flipped:
        moves.append(
            ShiftMove("weyl_move", ((-lam,), k), ((lam,), k), (("lambda -> -lambda", True),), {"w": (1, 0)})
        )
    cls = _half_integer_class(lam)
    if cls is None:
        return moves
    if cls == "int":
        if _nonshiftable_integer(lam, k):
            moves += _k_chain(lam, k, Q(0))
            moves += _lambda_chain(lam, Q(1), Q(0))
        else:
            moves += _lambda_chain(lam, Q(0), k)
    else:
        if _nonshiftable_half(lam, k):
            moves += _k_chain(lam, k, Q(1, 2))
            moves += _lambda_chain(lam, Q(1, 2), Q(1, 2))
        else:
            moves += _lambda_chain(lam, Q(1, 2), k)
    return moves


def classify_rank1(lam, k) -> tuple[RepType, list[ShiftMove]]:
    """Classify the rank-one monodromy and return the shift route used.

    ``lambda`` is first moved to ``Re lambda >= 0`` by the Weyl group. Sums of
    characters and induced modules carry the payload ``-Lambda``.

    >>> tag, route = classify_rank1(1, 0)
    >>> tag.characters
    (((1+0j), (1+0j)), ((1+0j), (-1+0j)))
    >>> [m.kind for m in classify_rank1(3, Q(1, 3))[1]]
    ['lambda_shift', 'lambda_shift', 'lambda_shift']
    """
    lam, k, flipped = _normalize(lam, k)
    route = _route(lam, k, flipped)
    minus_L = -_Lam(lam)
    tag = region_tag(lam, k)
    if tag == "character_sum":
        rt = RepType.character_sum([(minus_L, 1), (minus_L, -1)])
    elif tag == "induced":
        rt = RepType.induced(minus_L)
    else:
        Lam = _Lam(lam)
        rt = _covariant(1 if tag == "covariant_plus" else -1, np.diag([1 / Lam, Lam]))
        on_line = _is_int(k + lam) or _is_int(k - lam)
        if on_line and tag == "covariant_plus":
            log.debug("(%s, %s) lies on a line k +- lambda in Z outside the listed cases", lam, k)
    return rt, route


def monodromy_rank1(lam, k) -> Rank1Monodromy:
    """Monodromy pair in whichever regime ``(lambda, k)`` falls.

    >>> monodromy_rank1(2, Q(1, 3)).regime
    'integer_shifted'
    """
    lam, k, _ = _normalize(lam, k)
    cls = _half_integer_class(lam)
    if cls is None:
        return monodromy_generic(lam, k)
    classification = classify_rank1(lam, k)[0]
    if lam == 0:
        return monodromy_lambda_zero(k)
    if lam == Q(1, 2):
        return monodromy_lambda_half(k)
    Lam = _Lam(lam)
    if cls == "int":
        if _nonshiftable_integer(lam, k):
            Y = Lam * np.eye(2, dtype=complex)
            T = np.diag([1, -1]).astype(complex)
        else:
            twist = (-1) ** int(lam.numerator)
            Y = twist * _LAMBDA_ZERO_Y
            T = _lambda_zero_T(k)
        return Rank1Monodromy(Y, T, _q(k), Lam, "integer_shifted", classification)
    twist = (-1) ** int(lam - Q(1, 2))
    Y = twist * np.diag([1j, -1j])
    T, _ = _lambda_half_T(Q(1, 2) if _nonshiftable_half(lam, k) else k)
    return Rank1Monodromy(Y, T, _q(k), Lam, "half_integer_shifted", classification)


def relation_residual(M: Rank1Monodromy) -> float:
    """Worst Hecke-relation residual of a closed-form pair."""
    return check_relations(M.rep).worst
