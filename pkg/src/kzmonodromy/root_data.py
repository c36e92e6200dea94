"""Type A_{n-1} root data, the symmetric group and the extended affine Weyl group.

Conventions
-----------
* Weights are tuples of length ``n-1`` in fundamental-weight coordinates
  ``c_j = lambda(alpha_j^vee)``.
* Coroot-lattice vectors are tuples of length ``n-1`` in simple-coroot
  coordinates, so ``pairing`` is the plain dot product.
* Internally everything is realized in the n-dimensional ``e``-coordinates
  modulo the trace: a weight ``c`` has ``e``-coordinates ``x`` with
  ``sum(x) = 0`` and ``x_j - x_{j+1} = c_j``.
* Permutations are 0-based one-line tuples; ``w(e_b) = e_{w(b)}``.
* Affine coroots ``alpha^vee + m`` are pairs ``(coroot, m)`` and are read as
  the affine functions ``lambda -> lambda(alpha^vee) + m``.

>>> pairing((2, Q(1, 2)), (1, 1))
mpq(5,2)
>>> len(orthogonal_coroot_sums(4))
9
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .exact import Q

__all__ = [
    "Q",
    "RootSystemA",
    "WeylElem",
    "AffineWeylElem",
    "AffineCoroot",
    "pairing",
    "weight_to_e",
    "e_to_weight",
    "coroot_to_e",
    "e_to_coroot",
    "positive_coroots",
    "highest_root_weight",
    "rho",
    "coweight_pairing",
    "orthogonal_coroot_sums",
    "coroot_sum_support",
    "omega_elements",
    "eps_rho",
    "affine_simple_coroots",
    "affine_simple_reflection",
    "is_positive_coroot",
    "weyl_group",
]


# ---------------------------------------------------------------- coordinates


def weight_to_e(c: Sequence, n: int | None = None) -> tuple:
    """Trace-zero ``e``-coordinates of a weight given in fundamental coordinates.

    >>> weight_to_e((1,))
    (mpq(1,2), mpq(-1,2))
    """
    n = len(c) + 1 if n is None else n
    if len(c) != n - 1:
        raise ValueError(f"weight has {len(c)} coordinates, expected {n - 1}")
    exact = all(_is_rat(v) for v in c)
    coeffs = [Q(v) for v in c] if exact else [complex(v) for v in c]
    zero = Q(0) if exact else 0j
    tail = [zero] * n
    acc = zero
    for j in range(n - 2, -1, -1):
        acc = acc + coeffs[j]
        tail[j] = acc
    shift = -sum(((j + 1) * coeffs[j] for j in range(n - 1)), zero)
    shift = shift / n
    return tuple(t + shift for t in tail)


def e_to_weight(x: Sequence) -> tuple:
    """Fundamental coordinates of a weight given in ``e``-coordinates."""
    return tuple(x[j] - x[j + 1] for j in range(len(x) - 1))


def coroot_to_e(m: Sequence[int]) -> tuple[int, ...]:
    """``e``-vector of ``sum_j m_j alpha_j^vee``."""
    n = len(m) + 1
    out = []
    for a in range(n):
        left = m[a] if a < n - 1 else 0
        right = m[a - 1] if a > 0 else 0
        out.append(left - right)
    return tuple(out)


def e_to_coroot(v: Sequence[int]) -> tuple[int, ...]:
    """Simple-coroot coordinates of a trace-zero integer ``e``-vector."""
    if sum(v) != 0:
        raise ValueError("vector is not in the coroot lattice (nonzero trace)")
    out = []
    acc = 0
    for a in range(len(v) - 1):
        acc += v[a]
        out.append(acc)
    return tuple(out)


def pairing(lam: Sequence, q: Sequence):
    """Pair a weight (fundamental coordinates) with a coroot (simple-coroot coordinates).

    Exact when both arguments are exact.

    >>> pairing((1, 0), (1, 0))
    mpq(1,1)
    """
    if len(lam) != len(q):
        raise ValueError(f"dimension mismatch: weight {len(lam)} vs coroot {len(q)}")
    if all(_is_rat(v) for v in lam) and all(_is_rat(v) for v in q):
        return sum((Q(a) * Q(b) for a, b in zip(lam, q)), Q(0))
    return sum(complex(a) * complex(b) for a, b in zip(lam, q))


def coweight_pairing(lam: Sequence, i: int):
    """``lambda(lambda_i^vee)`` for the fundamental coweight ``lambda_i^vee`` (1-based ``i``)."""
    x = weight_to_e(lam)
    return sum(x[:i], x[0] * 0)


def _is_rat(v) -> bool:
    return isinstance(v, int) or type(v).__name__ in ("mpq", "mpz", "Fraction")


# ---------------------------------------------------------------- roots


@lru_cache(maxsize=None)
def positive_coroots(n: int) -> tuple[tuple[int, ...], ...]:
    """Positive coroots ``e_i - e_j`` (``i < j``) in simple-coroot coordinates, lex order in (i, j)."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(tuple(1 if i <= a < j else 0 for a in range(n - 1)))
    return tuple(out)


def is_positive_coroot(q: Sequence[int]) -> bool:
    return any(v != 0 for v in q) and all(v >= 0 for v in q)


def highest_root_weight(n: int) -> tuple:
    """The highest root ``psi = e_1 - e_n`` in fundamental-weight coordinates."""
    x = [0] * n
    x[0], x[-1] = 1, -1
    return tuple(Q(v) for v in e_to_weight(x))


def rho(n: int) -> tuple:
    """Half the sum of positive roots; all fundamental coordinates equal 1."""
    return tuple(Q(1) for _ in range(n - 1))


@dataclass(frozen=True)
class RootSystemA:
    """The root system A_{n-1} realized in n coordinates.

    >>> R = RootSystemA(3)
    >>> R.positive_roots
    ((1, -1, 0), (1, 0, -1), (0, 1, -1))
    >>> R.cartan
    ((2, -1), (-1, 2))
    """

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError("n must be an integer >= 2")

    @cached_property
    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        return tuple(
            tuple(1 if a == i else -1 if a == j else 0 for a in range(n))
            for i in range(n)
            for j in range(i + 1, n)
        )

    @cached_property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        n = self.n
        return tuple(
            tuple(1 if a == i else -1 if a == i + 1 else 0 for a in range(n)) for i in range(n - 1)
        )

    @cached_property
    def fundamental_weights(self) -> tuple[tuple, ...]:
        n = self.n
        return tuple(
            tuple(Q(1 if a <= i else 0) - Q(i + 1, n) for a in range(n)) for i in range(n - 1)
        )

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        sr = self.simple_roots
        return tuple(tuple(sum(a * b for a, b in zip(ai, aj)) for aj in sr) for ai in sr)

    @property
    def rank(self) -> int:
        return self.n - 1

    def weight_from_e(self, x: Sequence) -> tuple:
        return e_to_weight(x)

    def weight_to_e(self, c: Sequence) -> tuple:
        return weight_to_e(c, self.n)


# ---------------------------------------------------------------- Weyl group


@dataclass(frozen=True, order=True)
class WeylElem:
    """A permutation of ``{0, ..., n-1}`` in one-line notation.

    >>> w = WeylElem((1, 0, 2))
    >>> w.length, w.reduced_word()
    (1, (1,))
    """

    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"{self.perm} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "WeylElem":
        return cls(tuple(range(n)))

    @classmethod
    def simple(cls, i: int, n: int) -> "WeylElem":
        """Simple reflection ``s_i`` (1-based ``i``)."""
        if not 1 <= i <= n - 1:
            raise ValueError(f"simple index {i} out of range for n={n}")
        p = list(range(n))
        p[i - 1], p[i] = p[i], p[i - 1]
        return cls(tuple(p))

    @classmethod
    def from_word(cls, word: Sequence[int], n: int) -> "WeylElem":
        w = cls.identity(n)
        for i in word:
            w = w * cls.simple(i, n)
        return w

    @classmethod
    def reflection(cls, root: tuple[int, int], n: int) -> "WeylElem":
        """The transposition ``s_alpha`` for ``alpha = e_i - e_j`` given as ``(i, j)``."""
        i, j = root
        p = list(range(n))
        p[i], p[j] = p[j], p[i]
        return cls(tuple(p))

    def __mul__(self, other: "WeylElem") -> "WeylElem":
        return WeylElem(tuple(self.perm[b] for b in other.perm))

    def inverse(self) -> "WeylElem":
        inv = [0] * self.n
        for b, wb in enumerate(self.perm):
            inv[wb] = b
        return WeylElem(tuple(inv))

    @cached_property
    def length(self) -> int:
        p = self.perm
        return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])

    def inversion_set(self) -> tuple[tuple[int, int], ...]:
        """``R_+ cap w^{-1} R_-`` as pairs ``(i, j)`` meaning ``e_i - e_j``."""
        p = self.perm
        return tuple(
            (i, j) for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
        )

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word ``(i_1, ..., i_r)`` with ``w = s_{i_1} ... s_{i_r}`` (1-based)."""
        p = list(self.perm)
        out: list[int] = []
        while True:
            d = next((i for i in range(len(p) - 1) if p[i] > p[i + 1]), None)
            if d is None:
                break
            p[d], p[d + 1] = p[d + 1], p[d]
            out.append(d + 1)
        return tuple(reversed(out))

    def act_e(self, x: Sequence) -> tuple:
        """Action on ``e``-coordinate vectors: ``(w x)_{w(b)} = x_b``."""
        out = [None] * self.n
        for b, wb in enumerate(self.perm):
            out[wb] = x[b]
        return tuple(out)

    def act_weight(self, c: Sequence) -> tuple:
        return e_to_weight(self.act_e(weight_to_e(c, self.n)))

    def act_coroot(self, q: Sequence[int]) -> tuple[int, ...]:
        return e_to_coroot(self.act_e(coroot_to_e(q)))

    def act_root_pair(self, root: tuple[int, int]) -> tuple[tuple[int, int], int]:
        """Image of ``e_i - e_j`` as (positive pair, sign)."""
        a, b = self.perm[root[0]], self.perm[root[1]]
        return ((a, b), 1) if a < b else ((b, a), -1)

    def sign(self) -> int:
        return -1 if self.length % 2 else 1


@lru_cache(maxsize=None)
def weyl_group(n: int) -> tuple[WeylElem, ...]:
    """All of ``S_n`` ordered by (length, one-line notation)."""
    elems = [WeylElem(p) for p in itertools.permutations(range(n))]
    return tuple(sorted(elems, key=lambda w: (w.length, w.perm)))


# ---------------------------------------------------------------- affine Weyl group

AffineCoroot = tuple  # (coroot coordinates, integer shift m)


@dataclass(frozen=True)
class AffineWeylElem:
    """``t_mu v`` acting on weights by ``lambda -> v lambda + mu``.

    >>> n = 2
    >>> t = AffineWeylElem.translation((1,))
    >>> t.length
    1
    >>> (t * t).translation_part
    (2,)
    """

    translation_part: tuple[int, ...]
    finite: WeylElem

    def __post_init__(self):
        if len(self.translation_part) != self.finite.n - 1:
            raise ValueError("translation and finite part have mismatched rank")
        if any(int(v) != v for v in self.translation_part):
            raise ValueError("translation must lie in the weight lattice (integer coordinates)")
        object.__setattr__(self, "translation_part", tuple(int(v) for v in self.translation_part))

    @property
    def n(self) -> int:
        return self.finite.n

    @classmethod
    def identity(cls, n: int) -> "AffineWeylElem":
        return cls(tuple([0] * (n - 1)), WeylElem.identity(n))

    @classmethod
    def translation(cls, mu: Sequence[int]) -> "AffineWeylElem":
        return cls(tuple(mu), WeylElem.identity(len(mu) + 1))

    @classmethod
    def of_finite(cls, w: WeylElem) -> "AffineWeylElem":
        return cls(tuple([0] * (w.n - 1)), w)

    def __mul__(self, other: "AffineWeylElem") -> "AffineWeylElem":
        vnu = self.finite.act_weight(other.translation_part)
        mu = tuple(int(a + b) for a, b in zip(self.translation_part, vnu))
        return AffineWeylElem(mu, self.finite * other.finite)

    def inverse(self) -> "AffineWeylElem":
        vinv = self.finite.inverse()
        mu = vinv.act_weight(self.translation_part)
        return AffineWeylElem(tuple(int(-v) for v in mu), vinv)

    def act_weight(self, lam: Sequence) -> tuple:
        vl = self.finite.act_weight(lam)
        return tuple(a + b for a, b in zip(vl, self.translation_part))

    def act_affine_coroot(self, a: AffineCoroot) -> AffineCoroot:
        """``(w a)(lambda) = a(w^{-1} lambda)`` for ``a = alpha^vee + m``."""
        q, m = a
        vq = self.finite.act_coroot(q)
        shift = pairing(self.translation_part, vq)
        return (vq, int(m - shift))

    def inversion_set(self) -> tuple[AffineCoroot, ...]:
        """Positive affine coroots sent to negative ones, ``R^a_+ cap w^{-1} R^a_-``."""
        n = self.n
        bound = max([abs(int(pairing(self.translation_part, q))) for q in positive_coroots(n)] + [0])
        out = []
        for q in positive_coroots(n):
            for sgn in (1, -1):
                qq = tuple(sgn * v for v in q)
                for m in range(0 if sgn == 1 else 1, bound + 2):
                    img = self.act_affine_coroot((qq, m))
                    if not _affine_positive(img):
                        out.append((qq, m))
        return tuple(sorted(out, key=lambda a: (a[1], [-v for v in a[0]])))

    @cached_property
    def length(self) -> int:
        return len(self.inversion_set())

    def reduced_decomposition(self) -> tuple["AffineWeylElem", tuple[int, ...]]:
        """``(omega, word)`` with ``self = omega * s_{word[0]} * ... * s_{word[-1]}``.

        Affine simple index 0 is ``s_0 = t_psi s_psi``; ``omega`` has length 0.
        """
        n = self.n
        w = self
        peeled: list[int] = []
        simples = affine_simple_coroots(n)
        while True:
            i = next(
                (i for i, a in enumerate(simples) if not _affine_positive(w.act_affine_coroot(a))),
                None,
            )
            if i is None:
                break
            w = w * affine_simple_reflection(i, n)
            peeled.append(i)
        return w, tuple(reversed(peeled))


def _affine_positive(a: AffineCoroot) -> bool:
    q, m = a
    return m > 0 or (m == 0 and is_positive_coroot(q))


@lru_cache(maxsize=None)
def affine_simple_coroots(n: int) -> tuple[AffineCoroot, ...]:
    """``alpha_0^vee = -psi^vee + 1`` followed by ``alpha_1^vee, ..., alpha_{n-1}^vee``."""
    psi = tuple([1] * (n - 1))
    out = [(tuple(-v for v in psi), 1)]
    for i in range(n - 1):
        out.append((tuple(1 if a == i else 0 for a in range(n - 1)), 0))
    return tuple(out)


@lru_cache(maxsize=None)
def affine_simple_reflection(i: int, n: int) -> AffineWeylElem:
    """``s_i`` for ``1 <= i < n`` and ``s_0 = t_psi s_psi``."""
    if i == 0:
        s_psi = WeylElem.reflection((0, n - 1), n)
        return AffineWeylElem(tuple(int(v) for v in highest_root_weight(n)), s_psi)
    return AffineWeylElem.of_finite(WeylElem.simple(i, n))


# ---------------------------------------------------------------- Omega and eps_rho


@lru_cache(maxsize=None)
def omega_elements(n: int) -> tuple[AffineWeylElem, ...]:
    """The length-zero elements ``{1} cup {t_{lambda_i} w_i}``, ordered by ``i``.

    >>> [w.length for w in omega_elements(3)]
    [0, 0, 0]
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    out = [AffineWeylElem.identity(n)]
    for i in range(n - 1):
        lam_i = tuple(1 if a == i else 0 for a in range(n - 1))
        t = AffineWeylElem.translation(lam_i)
        found = None
        for w in weyl_group(n):
            cand = t * AffineWeylElem.of_finite(w)
            if cand.length == 0:
                found = cand
                break
        if found is None:  # pragma: no cover - impossible in type A
            raise RuntimeError(f"no length-zero element over lambda_{i + 1}")
        out.append(found)
    return tuple(out)


def eps_rho(n: int, omega_index: int) -> int:
    """``exp(2 pi i rho(nu))`` for ``nu = lambda_j^vee`` representing ``j`` in ``P^vee/Q^vee``.

    ``rho(lambda_j^vee) = j(n-j)/2``, so the character is trivial iff ``n`` is odd.

    >>> eps_rho(2, 1), eps_rho(3, 1), eps_rho(4, 2)
    (-1, 1, 1)
    """
    j = omega_index % n
    return -1 if (j * (n - j)) % 2 else 1


# ---------------------------------------------------------------- the set B


@lru_cache(maxsize=None)
def orthogonal_coroot_sums(n: int) -> tuple[tuple[int, ...], ...]:
    """Sums of pairwise orthogonal coroots, up to overall sign (the set B).

    An element is ``sum_{I_+} e_a - sum_{I_-} e_a`` for disjoint index sets of
    equal size ``1 <= i <= n // 2``; the sign is fixed by putting the smallest
    index of ``I_+ cup I_-`` into ``I_+``. Ordered by size, then by supports.

    >>> orthogonal_coroot_sums(3)
    ((1, 0), (1, 1), (0, 1))
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    out = []
    seen = set()
    for size in range(1, n // 2 + 1):
        for support in itertools.combinations(range(n), 2 * size):
            m = support[0]
            rest = support[1:]
            for plus_rest in itertools.combinations(rest, size - 1):
                plus = (m,) + plus_rest
                minus = tuple(a for a in rest if a not in plus_rest)
                v = [0] * n
                for a in plus:
                    v[a] = 1
                for a in minus:
                    v[a] = -1
                q = e_to_coroot(v)
                if q not in seen:
                    seen.add(q)
                    out.append((size, plus, minus, q))
    out.sort(key=lambda t: (t[0], t[1], t[2]))
    return tuple(t[3] for t in out)


def coroot_sum_support(q: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(I_+, I_-)`` (0-based) for an element of B."""
    v = coroot_to_e(q)
    plus = tuple(a for a, x in enumerate(v) if x == 1)
    minus = tuple(a for a, x in enumerate(v) if x == -1)
    if any(x not in (-1, 0, 1) for x in v) or len(plus) != len(minus):
        raise ValueError(f"{tuple(q)} is not a sum of orthogonal coroots")
    return plus, minus


def iter_weyl(n: int) -> Iterator[WeylElem]:
    return iter(weyl_group(n))
