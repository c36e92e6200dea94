"""Resonance at the large volume limit and shift plans to non-resonant parameters.

The connection is resonant at ``lambda`` iff ``lambda(b)`` is a nonzero
integer for some ``b`` in the set ``B`` of sums of pairwise orthogonal
coroots. A resonant point may still have the monodromy of a non-resonant
one; ``plan_shift`` searches for a chain of certified shift moves that
proves it.

>>> p = ParameterPoint(3, (Q(2), Q(1, 2)), Q(4, 3))
>>> is_resonant(p)
(True, ((1, 0),))
>>> plan = plan_shift(p)
>>> plan.status, [m.kind for m in plan.moves], plan.target.lam
('shiftable', ['lambda_shift', 'lambda_shift'], (mpq(0,1), mpq(1,2)))
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exact import Q, QType, as_exact, fmt_rational, is_exact, parse_rational
from .root_data import (
    WeylElem,
    coroot_sum_support,
    coweight_pairing,
    iter_weyl,
    orthogonal_coroot_sums,
    pairing,
    positive_coroots,
)
from .shifts import ShiftMove, kshift_move, lambda_shift_move

__all__ = [
    "ParameterPoint",
    "ShiftPlan",
    "STATUSES",
    "is_resonant",
    "effectively_non_resonant",
    "in_E",
    "in_S",
    "affine_k_regular",
    "plan_shift",
    "fg_fails",
]

STATUSES = ("non_resonant", "shiftable", "not_covered")


@dataclass(frozen=True)
class ParameterPoint:
    """``(lambda, k)`` for type ``A_{n-1}`` with exact rational data.

    ``lam`` is in fundamental-weight coordinates.

    >>> ParameterPoint(2, ("1/2",), "-1").k
    mpq(-1,1)
    """

    n: int
    lam: tuple
    k: QType

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        lam = tuple(parse_rational(v) if isinstance(v, str) else v for v in self.lam)
        if isinstance(self.k, str):
            object.__setattr__(self, "k", parse_rational(self.k))
        if len(lam) != self.n - 1:
            raise ValueError(f"lambda needs {self.n - 1} coordinates, got {len(lam)}")
        for v in lam + (self.k,):
            if not is_exact(v):
                raise TypeError(f"exact rational input required, got {v!r}")
        object.__setattr__(self, "lam", tuple(as_exact(v) for v in lam))
        object.__setattr__(self, "k", as_exact(self.k))

    def with_lam(self, lam: Sequence) -> "ParameterPoint":
        return ParameterPoint(self.n, tuple(lam), self.k)

    def with_k(self, k) -> "ParameterPoint":
        return ParameterPoint(self.n, self.lam, k)

    def describe(self) -> str:
        coords = ", ".join(fmt_rational(v) for v in self.lam)
        return f"A_{self.n - 1} lambda=({coords}) k={fmt_rational(self.k)}"


@dataclass(frozen=True)
class ShiftPlan:
    """Certified moves from ``source`` to ``target``.

    ``notes`` records the case that applied, boundary hits and, for
    ``not_covered`` plans, the conditions that failed.
    """

    status: str
    source: ParameterPoint
    target: ParameterPoint
    moves: tuple = ()
    case: str = ""
    notes: tuple = field(default=())

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


def _int(x: QType) -> bool:
    return x.denominator == 1


def _pairings(p: ParameterPoint) -> list:
    return [pairing(p.lam, q) for q in positive_coroots(p.n)]


def is_resonant(p: ParameterPoint) -> tuple[bool, tuple]:
    """``(resonant, witnesses)`` with witnesses all ``b`` in ``B`` where ``lambda(b)`` is a nonzero integer.

    >>> is_resonant(ParameterPoint(4, (Q(1, 2), 0, Q(1, 2)), 1))
    (True, ((1, 1, 1), (1, 2, 1), (1, 0, 1)))
    """
    wit = tuple(q for q in orthogonal_coroot_sums(p.n) if _int(pairing(p.lam, q)) and pairing(p.lam, q) != 0)
    return bool(wit), wit


def effectively_non_resonant(p: ParameterPoint) -> bool:
    """Non-resonant, or ``k = 0`` where the wall terms vanish and the large volume limit solution exists."""
    return p.k == 0 or not is_resonant(p)[0]


def in_E(p: ParameterPoint) -> bool:
    """Some ``w lambda`` has ``w lambda(alpha^vee) > k`` for every positive coroot.

    >>> in_E(ParameterPoint(3, (3, 3), 2)), in_E(ParameterPoint(3, (3, -1), 2))
    (True, False)
    """
    for w in iter_weyl(p.n):
        mu = w.act_weight(p.lam)
        if all(pairing(mu, q) > p.k for q in positive_coroots(p.n)):
            return True
    return False


def _integral_B(p: ParameterPoint) -> list:
    return [q for q in orthogonal_coroot_sums(p.n) if _int(pairing(p.lam, q))]


def in_S(p: ParameterPoint) -> bool:
    """``lambda(q)`` is an integer for exactly one ``q`` in ``B``.

    >>> in_S(ParameterPoint(3, (2, Q(1, 2)), 1)), in_S(ParameterPoint(3, (1, 1), 1))
    (True, False)
    """
    return len(_integral_B(p)) == 1


def affine_k_regular(p: ParameterPoint) -> bool:
    """``lambda(alpha^vee) +- k`` is never an integer.

    >>> affine_k_regular(ParameterPoint(2, (Q(1, 3),), Q(1, 3)))
    False
    """
    return all(not _int(v - p.k) and not _int(v + p.k) for v in _pairings(p))


def _regular(p: ParameterPoint) -> bool:
    return all(v != 0 for v in _pairings(p))


# plan construction


def _fmt(x) -> str:
    return fmt_rational(x)


def _lambda_chain(p: ParameterPoint, m: int, steps: int, direction: int) -> list[ShiftMove]:
    moves = []
    cur = p.lam
    for _ in range(steps):
        mv = lambda_shift_move(m, cur, p.k, p.n, direction)
        moves.append(mv)
        cur = mv.target[0]
    return moves


def _k_chain_to_zero(p: ParameterPoint) -> list[ShiftMove]:
    moves = []
    k = p.k
    direction = -1 if k > 0 else 1
    while k != 0:
        mv = kshift_move(p.lam, k, p.n, direction)
        moves.append(mv)
        k = mv.target[1]
    return moves


def _split_index(q: tuple, n: int) -> int:
    """1-based ``m = min(I_+ cup I_-)``; with ``B`` sign-normalized, ``lambda_m(q) = 1``."""
    plus, minus = coroot_sum_support(q)
    return min(plus + minus) + 1


def _swap_element(q: tuple, n: int) -> WeylElem:
    """A product of transpositions exchanging ``I_+`` and ``I_-`` pairwise."""
    plus, minus = coroot_sum_support(q)
    w = WeylElem.identity(n)
    for a, b in zip(plus, minus):
        w = w * WeylElem.reflection((a, b), n)
    return w


def _r_identification(p: ParameterPoint) -> ShiftMove:
    ok = all(v != p.k for v in _pairings(p))
    cert = ((f"lambda(alpha^vee) != {_fmt(p.k)} for all alpha > 0", ok),)
    return ShiftMove("r_identification", (p.lam, p.k), (p.lam, p.k), cert, {})


def _orbit(lam: tuple, n: int) -> frozenset:
    return frozenset(tuple(w.act_weight(lam)) for w in iter_weyl(n))


def _weyl_move(p: ParameterPoint, w: WeylElem) -> ShiftMove:
    """Change the preimage of ``theta``; the covariant module only sees ``theta``."""
    target = tuple(w.act_weight(p.lam))
    ok = target in _orbit(p.lam, p.n)
    cert = (("theta = q(lambda) is unchanged", ok),)
    return ShiftMove("weyl_move", (p.lam, p.k), (target, p.k), cert, {"w": w.perm})


def _finish(p: ParameterPoint, moves: list[ShiftMove], case: str, notes: list[str]):
    """A ``shiftable`` plan if every move is certified and the target is effectively non-resonant."""
    failures = [f"{m.describe()}: {c}" for m in moves for c in m.failures()]
    last = moves[-1].target if moves else (p.lam, p.k)
    target = ParameterPoint(p.n, last[0], last[1])
    if not effectively_non_resonant(target):
        failures.append(f"target {target.describe()} is resonant")
    if failures:
        return None, failures
    return ShiftPlan("shiftable", p, target, tuple(moves), case, tuple(notes)), []


def _case1(p: ParameterPoint):
    (q,) = _integral_B(p)
    N = pairing(p.lam, q)
    m = _split_index(q, p.n)
    direction = -1 if N > 0 else 1
    moves = _lambda_chain(p, m, abs(int(N)), direction)
    notes = [
        f"q={q}, lambda(q)={_fmt(N)}, m={m}",
        "affine k-regularity identifies I_lambda with J_theta",
    ]
    return _finish(p, moves, "1", notes)


def _case2(p: ParameterPoint):
    return _finish(p, _k_chain_to_zero(p), "2", ["k-shifts to k=0"])


def _case3(p: ParameterPoint):
    (q,) = _integral_B(p)
    N = pairing(p.lam, q)
    k = p.k
    notes = [f"q={q}, lambda(q)={_fmt(N)}"]
    if abs(k) == abs(N):
        notes.append("boundary |k| = |lambda(q)|")
    if abs(k) <= abs(N) and k >= 0:
        notes.append("subcase 1: k-shifts to 0")
        return _finish(p, _k_chain_to_zero(p), "3.1", notes)
    if abs(k) < abs(N) and k <= 0:
        notes.append("subcase 2: k-shifts to 0")
        return _finish(p, _k_chain_to_zero(p), "3.2", notes)
    moves: list[ShiftMove] = []
    cur = p
    if N < 0:
        wm = _weyl_move(p, _swap_element(q, p.n))
        moves.append(wm)
        cur = p.with_lam(wm.target[0])
    M = abs(int(N))
    m = _split_index(q, p.n)
    if abs(k) > abs(N):
        notes.append("subcase 3: lambda-shifts after the R-identification")
        case = "3.3"
    else:
        notes.append("subcase 4: lambda-shifts from lambda(q) = -k")
        case = "3.4"
    moves.append(_r_identification(cur))
    moves.extend(_lambda_chain(cur, m, M, -1))
    return _finish(p, moves, case, notes)


def _plan_rank1(p: ParameterPoint) -> ShiftPlan:
    from .rank1 import classify_rank1

    rep, route = classify_rank1(p.lam[0], p.k)
    plan, failures = _finish(p, list(route), "rank1", [f"rank-one classification {rep.tag}"])
    if plan is not None:
        return plan
    return ShiftPlan("not_covered", p, p, (), "rank1", tuple(failures))


def plan_shift(p: ParameterPoint) -> ShiftPlan:
    """Try the shift cases in order and return the first fully certified plan.

    >>> plan_shift(ParameterPoint(3, (3, 3), 2)).case
    '2'
    >>> plan_shift(ParameterPoint(3, (-2, Q(7, 3)), Q(4, 3))).status
    'not_covered'
    """
    if not is_resonant(p)[0]:
        return ShiftPlan("non_resonant", p, p)
    if p.n == 2:
        return _plan_rank1(p)
    attempts = []
    if affine_k_regular(p) and in_S(p):
        attempts.append(("1", _case1))
    if _int(p.k) and in_E(p):
        attempts.append(("2", _case2))
    if _int(p.k) and in_S(p):
        attempts.append(("3", _case3))
    log = []
    for name, fn in attempts:
        plan, failures = fn(p)
        if plan is not None:
            return plan
        log.extend(f"case {name}: {f}" for f in failures)
    if not attempts:
        log.append("no case applies: needs (affine k-regular and S), (k integral and E) or (k integral and S)")
    return ShiftPlan("not_covered", p, p, (), "", tuple(log))


def fg_fails(p: ParameterPoint) -> bool:
    """Parameters where the monodromy is provably not the covariant module.

    Rank at least two: ``k`` integral, ``lambda`` in ``E``, regular, with
    integral pairings against all fundamental coweights. Rank one uses the
    complete classification: ``k`` integral and the monodromy a sum of
    characters.

    >>> fg_fails(ParameterPoint(3, (2, 2), 1)), fg_fails(ParameterPoint(2, (1,), 1))
    (True, True)
    """
    if not _int(p.k):
        return False
    if p.n == 2:
        from .rank1 import classify_rank1

        return classify_rank1(p.lam[0], p.k)[0].tag == "character_sum"
    return (
        in_E(p)
        and _regular(p)
        and all(_int(as_exact(coweight_pairing(p.lam, i))) for i in range(1, p.n))
    )
