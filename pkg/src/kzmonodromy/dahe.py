"""Matrix models of the type A degenerate affine Hecke algebra.

The algebra is generated by ``S_n`` and the polynomial ring in the trace-zero
coordinates ``y_1, ..., y_n`` (``y_a = e_a - mean``, so ``sum y_a = 0``) with
the cross relation

    s_i p = (s_i p) s_i - k (p - s_i p) / alpha_i^vee .

Two ``n!``-dimensional modules are modelled exactly:

* ``InducedModule``: the induced module with basis ``w i_lambda`` (``w`` in
  ``S_n`` ordered by length, then one-line notation).
* ``CovariantModule``: the quotient of the polynomial ring by the ideal of
  symmetric functions vanishing at ``lambda``, with the sign character ``eps``
  of ``S_n`` on the generator; basis the staircase monomials
  ``y^a`` with ``a_i <= n - i``.

Polynomials are dicts ``{exponent tuple of length n: coefficient}``.

>>> I = InducedModule(2, (Q(1, 3),), Q(1, 2))
>>> I.coroot_matrix((1,)).tolist()
[[mpq(1,3), mpq(-1,1)], [mpq(0,1), mpq(-1,3)]]
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import exact
from .exact import Q, as_exact
from .root_data import (
    WeylElem,
    coroot_to_e,
    pairing,
    positive_coroots,
    weight_to_e,
    weyl_group,
)

__all__ = [
    "Poly",
    "poly_const",
    "poly_var",
    "poly_linear",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "poly_swap",
    "poly_divided_difference",
    "elementary_symmetric",
    "staircase_exponents",
    "InducedModule",
    "CovariantModule",
    "induced_action",
    "covariant_action",
    "intertwiner_matrix",
    "phi_matrix",
    "r_map",
    "is_k_regular",
    "is_irreducible_induced",
    "rad_plus",
    "rad_signed",
    "DegenerateNormalizationError",
    "matsuo_invertible",
    "cherednik_invertible",
    "kshift_invertible",
    "has_invariant_subspace",
    "r_map_product",
]

Poly = dict


class DegenerateNormalizationError(ZeroDivisionError):
    """The signed radial part is undefined because ``pi_-(lambda) = 0``."""


# ---------------------------------------------------------------- polynomials


def poly_const(c, n: int) -> Poly:
    return {tuple([0] * n): c}


def poly_var(a: int, n: int) -> Poly:
    """The coordinate ``y_a`` (0-based ``a``)."""
    e = [0] * n
    e[a] = 1
    return {tuple(e): Q(1)}


def poly_linear(v: Sequence, n: int) -> Poly:
    """``sum_a v_a y_a`` for an ``e``-vector ``v``."""
    out: Poly = {}
    for a in range(n):
        if v[a] != 0:
            e = [0] * n
            e[a] = 1
            out[tuple(e)] = v[a]
    return out


def poly_add(*ps: Poly) -> Poly:
    out: Poly = {}
    for p in ps:
        for e, c in p.items():
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c != 0}


def poly_scale(p: Poly, c) -> Poly:
    return {e: v * c for e, v in p.items() if v * c != 0}


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


def poly_swap(p: Poly, i: int) -> Poly:
    """Apply ``s_i`` (1-based): swap the exponents of ``y_i`` and ``y_{i+1}``."""
    out: Poly = {}
    for e, c in p.items():
        f = list(e)
        f[i - 1], f[i] = f[i], f[i - 1]
        out[tuple(f)] = c
    return out


def _mono_divided_difference(e: tuple, i: int) -> Poly:
    a, b = e[i - 1], e[i]
    if a == b:
        return {}
    sign = 1
    if a < b:
        a, b, sign = b, a, -1
    out: Poly = {}
    for r in range(a - b):
        f = list(e)
        f[i - 1] = b + r
        f[i] = b + (a - b - 1 - r)
        out[tuple(f)] = sign
    return out


def poly_divided_difference(p: Poly, i: int) -> Poly:
    """``(p - s_i p) / (y_i - y_{i+1})`` (1-based ``i``)."""
    return poly_add(*(poly_scale(_mono_divided_difference(e, i), c) for e, c in p.items()))


def poly_eval(p: Poly, x: Sequence):
    out = 0
    for e, c in p.items():
        term = c
        for xa, ea in zip(x, e):
            if ea:
                term = term * xa**ea
        out = out + term
    return out


def elementary_symmetric(x: Sequence) -> list:
    """``[e_0(x), ..., e_n(x)]``."""
    e = [x[0] * 0 + 1]
    for v in x:
        nxt = e + [0 * v]
        for j in range(len(e), 0, -1):
            nxt[j] = nxt[j] + v * e[j - 1]
        e = nxt
    return e


@lru_cache(maxsize=None)
def staircase_exponents(n: int) -> tuple[tuple[int, ...], ...]:
    """Staircase exponents ``a_i <= n - i``, ordered by degree then lexicographically."""
    ranges = [range(n - i) for i in range(n)]
    exps = list(itertools.product(*ranges))
    return tuple(sorted(exps, key=lambda e: (sum(e), e)))


def _complete_homogeneous(m: int, nvars: int, n: int) -> list[tuple[int, ...]]:
    """Exponents of the monomials of ``h_m(y_1, ..., y_nvars)`` in n slots."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), m):
        e = [0] * n
        for a in combo:
            e[a] += 1
        out.append(tuple(e))
    return out


# ---------------------------------------------------------------- scalars


def _scalar(v, exact_mode: bool):
    return as_exact(v) if exact_mode else complex(v)


def _prepare(n: int, lam: Sequence, k):
    if len(lam) != n - 1:
        raise ValueError(f"weight has {len(lam)} coordinates, expected {n - 1}")
    exact_mode = all(exact.is_exact(v) for v in lam) and exact.is_exact(k)
    lam = tuple(_scalar(v, exact_mode) for v in lam)
    k = _scalar(k, exact_mode)
    return exact_mode, lam, k


def _zeros(d: int, exact_mode: bool) -> np.ndarray:
    return exact.qzeros(d) if exact_mode else np.zeros((d, d), dtype=complex)


def _identity(d: int, exact_mode: bool) -> np.ndarray:
    return exact.qidentity(d) if exact_mode else np.eye(d, dtype=complex)


# ---------------------------------------------------------------- induced module


class InducedModule:
    """The induced module ``I_lambda`` with basis ``{w i_lambda}``.

    ``lam`` is in fundamental-weight coordinates; exact rationals give exact
    object matrices, anything else gives complex matrices.
    """

    def __init__(self, n: int, lam: Sequence, k):
        self.n = n
        self.exact, self.lam, self.k = _prepare(n, lam, k)
        self.basis: tuple[WeylElem, ...] = weyl_group(n)
        self.index = {w: i for i, w in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.x = weight_to_e(self.lam, n)
        self._y_cache: dict[int, np.ndarray] = {}
        self._mono_cache: dict[tuple, np.ndarray] = {}
        self._s_cache: dict[int, np.ndarray] = {}
        self._yw: dict[tuple, dict] = {}

    # y_a (w i) by recursion on a reduced word of w
    def _apply_y(self, a: int, w: WeylElem) -> dict:
        key = (a, w)
        if key in self._yw:
            return self._yw[key]
        n = self.n
        if w.length == 0:
            out = {w: self.x[a]}
        else:
            i = next(
                j for j in range(1, n) if (WeylElem.simple(j, n) * w).length < w.length
            )
            s = WeylElem.simple(i, n)
            wp = s * w
            sa = a
            if a == i - 1:
                sa = i
            elif a == i:
                sa = i - 1
            inner = self._apply_y(sa, wp)
            out = {s * u: c for u, c in inner.items()}
            delta = (1 if a == i - 1 else 0) - (1 if a == i else 0)
            if delta:
                out[wp] = out.get(wp, 0) - self.k * delta
        self._yw[key] = out
        return out

    def y_matrix(self, a: int) -> np.ndarray:
        """Action of the coordinate ``y_a`` (0-based)."""
        if a not in self._y_cache:
            M = _zeros(self.dim, self.exact)
            for col, w in enumerate(self.basis):
                for u, c in self._apply_y(a, w).items():
                    M[self.index[u], col] += c
            self._y_cache[a] = M
        return self._y_cache[a]

    def s_matrix(self, i: int) -> np.ndarray:
        """Left multiplication by ``s_i`` (1-based)."""
        if i not in self._s_cache:
            s = WeylElem.simple(i, self.n)
            self._s_cache[i] = self.weyl_matrix(s)
        return self._s_cache[i]

    def weyl_matrix(self, w: WeylElem) -> np.ndarray:
        M = _zeros(self.dim, self.exact)
        one = Q(1) if self.exact else 1.0
        for col, u in enumerate(self.basis):
            M[self.index[w * u], col] = one
        return M

    def linear_matrix(self, v: Sequence) -> np.ndarray:
        """Action of ``sum_a v_a y_a`` for an ``e``-vector ``v``."""
        M = _zeros(self.dim, self.exact)
        for a in range(self.n):
            if v[a] != 0:
                M = M + self.y_matrix(a) * (as_exact(v[a]) if self.exact else complex(v[a]))
        return M

    def coroot_matrix(self, q: Sequence[int]) -> np.ndarray:
        """Action of a coroot given in simple-coroot coordinates."""
        return self.linear_matrix(coroot_to_e(q))

    def monomial_matrix(self, e: tuple) -> np.ndarray:
        if e not in self._mono_cache:
            if sum(e) == 0:
                M = _identity(self.dim, self.exact)
            else:
                a = next(j for j, v in enumerate(e) if v)
                f = list(e)
                f[a] -= 1
                M = self.y_matrix(a).dot(self.monomial_matrix(tuple(f)))
            self._mono_cache[e] = M
        return self._mono_cache[e]

    def poly_matrix(self, p: Poly) -> np.ndarray:
        M = _zeros(self.dim, self.exact)
        for e, c in p.items():
            M = M + self.monomial_matrix(e) * (as_exact(c) if self.exact else complex(c))
        return M

    def phi_matrix(self, i: int) -> np.ndarray:
        """The intertwiner ``Phi_i = s_i alpha_i^vee + k`` acting on this module."""
        ai = tuple(1 if j == i - 1 else 0 for j in range(self.n - 1))
        return self.s_matrix(i).dot(self.coroot_matrix(ai)) + _identity(self.dim, self.exact) * self.k

    def basis_vector(self, w: WeylElem | None = None) -> np.ndarray:
        v = np.empty(self.dim, dtype=object) if self.exact else np.zeros(self.dim, dtype=complex)
        if self.exact:
            v.fill(Q(0))
        v[self.index[w or self.basis[0]]] = Q(1) if self.exact else 1.0
        return v

    def e_epsilon_vector(self, eps: int) -> np.ndarray:
        """``e_eps i_lambda`` with ``e_eps = |W|^{-1} sum_w eps(w) w``."""
        d = self.dim
        out = np.empty(d, dtype=object) if self.exact else np.zeros(d, dtype=complex)
        for i, w in enumerate(self.basis):
            sgn = w.sign() if eps == -1 else 1
            out[i] = Q(sgn, d) if self.exact else sgn / d
        return out

    def weights(self) -> list[tuple]:
        """The W-orbit of ``lambda`` in ``e``-coordinates, with multiplicity."""
        return [w.act_e(self.x) for w in self.basis]


# ---------------------------------------------------------------- covariant module


class CovariantModule:
    """The covariant module: polynomials modulo symmetric functions at ``lambda``.

    The generator spans the character ``eps`` (``+1`` trivial, ``-1`` sign).
    """

    def __init__(self, n: int, lam: Sequence, k, eps: int = 1):
        if eps not in (1, -1):
            raise ValueError("eps must be +1 (trivial) or -1 (sign)")
        self.n = n
        self.eps = eps
        self.exact, self.lam, self.k = _prepare(n, lam, k)
        self.x = weight_to_e(self.lam, n)
        self.c = elementary_symmetric(self.x)
        self.basis = staircase_exponents(n)
        self.index = {e: i for i, e in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._nf: dict[tuple, dict] = {}
        self._rules = self._build_rules()
        self._y_cache: dict[int, np.ndarray] = {}
        self._s_cache: dict[int, np.ndarray] = {}

    def _build_rules(self) -> dict[int, list]:
        """``y_i^{n-i+1}`` rewritten modulo the ideal (0-based ``i`` -> monomials)."""
        n = self.n
        rules = {}
        for ii in range(n):
            m = n - ii
            lead = tuple(m if a == ii else 0 for a in range(n))
            terms: dict[tuple, object] = {}
            for j in range(0, m + 1):
                coeff = (-1) ** j * self.c[j]
                if coeff == 0:
                    continue
                for e in _complete_homogeneous(m - j, ii + 1, n):
                    terms[e] = terms.get(e, 0) - coeff
            terms.pop(lead, None)
            rules[ii] = [(e, c) for e, c in terms.items() if c != 0]
        return rules

    def normal_form_monomial(self, e: tuple) -> dict:
        """Coordinates ``{basis index: coefficient}`` of ``y^e`` modulo the ideal."""
        got = self._nf.get(e)
        if got is not None:
            return got
        n = self.n
        ii = next((a for a in range(n - 1, -1, -1) if e[a] >= n - a), None)
        if ii is None:
            out = {self.index[e]: Q(1) if self.exact else 1.0}
        else:
            base = list(e)
            base[ii] -= n - ii
            out: dict = {}
            for f, c in self._rules[ii]:
                g = tuple(a + b for a, b in zip(base, f))
                for idx, v in self.normal_form_monomial(g).items():
                    out[idx] = out.get(idx, 0) + c * v
            out = {i: v for i, v in out.items() if v != 0}
        self._nf[e] = out
        return out

    def normal_form(self, p: Poly) -> np.ndarray:
        v = np.empty(self.dim, dtype=object) if self.exact else np.zeros(self.dim, dtype=complex)
        if self.exact:
            v.fill(Q(0))
        for e, c in p.items():
            cc = as_exact(c) if self.exact else complex(c)
            for idx, val in self.normal_form_monomial(e).items():
                v[idx] += cc * val
        return v

    def _columns(self, polys: Sequence[Poly]) -> np.ndarray:
        M = _zeros(self.dim, self.exact)
        for col, p in enumerate(polys):
            M[:, col] = self.normal_form(p)
        return M

    def y_matrix(self, a: int) -> np.ndarray:
        if a not in self._y_cache:
            self._y_cache[a] = self._columns(
                [poly_mul(poly_var(a, self.n), {e: Q(1)}) for e in self.basis]
            )
        return self._y_cache[a]

    def s_matrix(self, i: int) -> np.ndarray:
        """``s_i(p k) = eps (s_i p) k - k (d_i p) k``."""
        if i not in self._s_cache:
            polys = []
            for e in self.basis:
                p = {e: Q(1)}
                polys.append(
                    poly_add(
                        poly_scale(poly_swap(p, i), self.eps),
                        poly_scale(poly_divided_difference(p, i), -self.k),
                    )
                )
            self._s_cache[i] = self._columns(polys)
        return self._s_cache[i]

    def weyl_matrix(self, w: WeylElem) -> np.ndarray:
        M = _identity(self.dim, self.exact)
        for i in w.reduced_word():
            M = M.dot(self.s_matrix(i))
        return M

    def linear_matrix(self, v: Sequence) -> np.ndarray:
        return self.poly_matrix(poly_linear(v, self.n))

    def coroot_matrix(self, q: Sequence[int]) -> np.ndarray:
        return self.linear_matrix(coroot_to_e(q))

    def poly_matrix(self, p: Poly) -> np.ndarray:
        """Multiplication by ``p`` (computed by normal forms, not by products)."""
        return self._columns([poly_mul(p, {e: Q(1)}) for e in self.basis])

    def weights(self) -> list[tuple]:
        return [w.act_e(self.x) for w in weyl_group(self.n)]


# ---------------------------------------------------------------- operations


def _gen_matrix(mod, g) -> np.ndarray:
    if isinstance(g, tuple) and len(g) == 2 and g[0] == "s":
        return mod.s_matrix(g[1])
    if isinstance(g, tuple) and len(g) == 2 and g[0] == "y":
        return mod.y_matrix(g[1])
    if isinstance(g, WeylElem):
        return mod.weyl_matrix(g)
    if isinstance(g, dict):
        return mod.poly_matrix(g)
    if isinstance(g, (tuple, list)) and len(g) == mod.n - 1:
        return mod.coroot_matrix(tuple(g))
    raise ValueError(f"unrecognized generator {g!r}")


def induced_action(mod: InducedModule, g) -> np.ndarray:
    """Matrix of ``("s", i)``, ``("y", a)``, a coroot tuple, a WeylElem or a polynomial."""
    return _gen_matrix(mod, g)


def covariant_action(mod: CovariantModule, g) -> np.ndarray:
    """Same generator conventions as ``induced_action``."""
    return _gen_matrix(mod, g)


def phi_matrix(word: Sequence[int], mod: InducedModule) -> np.ndarray:
    """``Phi_{i_1} ... Phi_{i_r}`` on a module."""
    M = _identity(mod.dim, mod.exact)
    for i in word:
        M = M.dot(mod.phi_matrix(i))
    return M


def intertwiner_matrix(w: WeylElem, lam: Sequence, k, n: int) -> np.ndarray:
    """The map ``I_lambda -> I_{w lambda}``, ``i_lambda -> Phi_{w^{-1}} i_{w lambda}``.

    >>> intertwiner_matrix(WeylElem((1, 0)), (Q(1, 3),), Q(1, 2), 2).tolist()
    [[mpq(1,2), mpq(-1,3)], [mpq(-1,3), mpq(1,2)]]
    """
    src = InducedModule(n, lam, k)
    target = InducedModule(n, w.act_weight(src.lam), src.k)
    v = target.basis_vector()
    for i in reversed(w.inverse().reduced_word()):
        v = target.phi_matrix(i).dot(v)
    M = _zeros(src.dim, src.exact)
    for col, u in enumerate(src.basis):
        M[:, col] = target.weyl_matrix(u).dot(v)
    return M


def r_map(lam: Sequence, k, eps: int, n: int) -> np.ndarray:
    """The map from the covariant module to ``I_lambda``, ``p k -> p e_eps i_lambda``.

    Columns are indexed by the staircase basis of ``CovariantModule``.
    """
    I = InducedModule(n, lam, k)
    v = I.e_epsilon_vector(eps)
    M = _zeros(I.dim, I.exact)
    for col, e in enumerate(staircase_exponents(n)):
        M[:, col] = I.monomial_matrix(e).dot(v)
    return M


def r_map_product(w: WeylElem, lam: Sequence, k, eps: int, n: int):
    """``prod_{alpha > 0, w alpha < 0} (k - eps lambda(alpha^vee))``."""
    exact_mode, lam, k = _prepare(n, lam, k)
    out = Q(1) if exact_mode else 1.0
    for (i, j) in w.inversion_set():
        q = tuple(1 if i <= a < j else 0 for a in range(n - 1))
        out = out * (k - eps * pairing(lam, q))
    return out


def is_k_regular(lam: Sequence, k, n: int) -> bool:
    """``lambda(alpha^vee) != +-k`` for every positive coroot (exact).

    >>> is_k_regular((1,), 1, 2), is_k_regular((Q(1, 3),), Q(4, 3), 2)
    (False, True)
    """
    _, lam, k = _prepare(n, lam, k)
    return all(pairing(lam, q) not in (k, -k) for q in positive_coroots(n))


def is_irreducible_induced(lam: Sequence, k, n: int) -> bool:
    """Irreducibility of ``I_lambda``, equivalent to k-regularity."""
    return is_k_regular(lam, k, n)


def matsuo_invertible(lam: Sequence, k, n: int) -> bool:
    """The Matsuo map for the covariant module is an isomorphism iff theta is k-regular."""
    return is_k_regular(lam, k, n)


def cherednik_invertible(*_args) -> bool:
    """The Cherednik map restricts to an isomorphism for every (theta, k)."""
    return True


def kshift_invertible(lam: Sequence, k, n: int) -> bool:
    """The k-shift operator ``k -> k+1`` is invertible iff theta is k-regular."""
    return is_k_regular(lam, k, n)


def _ratio(vec: np.ndarray, ref: np.ndarray):
    idx = next(i for i in range(len(ref)) if ref[i] != 0)
    c = vec[idx] / ref[idx]
    resid = vec - ref * c
    if any(abs(complex(r)) > 1e-9 * (1 + abs(complex(c))) for r in resid):
        raise ArithmeticError("vector is not proportional to the reference vector")
    return c


def _projector(I: InducedModule, eps: int) -> np.ndarray:
    P = _zeros(I.dim, I.exact)
    for w in I.basis:
        sgn = w.sign() if eps == -1 else 1
        P = P + I.weyl_matrix(w) * (Q(sgn, I.dim) if I.exact else sgn / I.dim)
    return P


def rad_plus(p: Poly, lam: Sequence, k, n: int):
    """``Rad^+(p)(theta)``: the scalar with ``e_+ p e_+ i_lambda = Rad^+(p) e_+ i_lambda``."""
    I = InducedModule(n, lam, k)
    ep = I.e_epsilon_vector(1)
    v = _projector(I, 1).dot(I.poly_matrix(p).dot(ep))
    return _ratio(v, ep)


def pi_minus(lam: Sequence, k, n: int):
    """``prod_{alpha > 0} (lambda(alpha^vee) - k)``."""
    exact_mode, lam, k = _prepare(n, lam, k)
    out = Q(1) if exact_mode else 1.0
    for q in positive_coroots(n):
        out = out * (pairing(lam, q) - k)
    return out


def rad_signed(p: Poly, lam: Sequence, k, n: int):
    """``+-Rad(p)(theta)``: ``e_- p e_+ i = +-Rad(p) pi_-(lambda) e_- i``."""
    I = InducedModule(n, lam, k)
    pm = pi_minus(I.lam, I.k, n)
    if pm == 0:
        raise DegenerateNormalizationError(
            "pi_-(lambda) = 0: lambda(alpha^vee) = k for some positive coroot"
        )
    em = I.e_epsilon_vector(-1)
    v = _projector(I, -1).dot(I.poly_matrix(p).dot(I.e_epsilon_vector(1)))
    return _ratio(v, em) / pm


def has_invariant_subspace(mod, tol: float = 1e-8) -> bool:
    """Numerical test for a proper invariant subspace of an n!-dimensional module.

    Each joint ``y``-eigenvector of weight ``mu`` spans the image of a map from
    ``I_mu``; the module is irreducible iff every weight space is at most a
    line and each such eigenvector generates everything under ``S_n``.
    """
    d = mod.dim
    Ys = [exact.to_complex(mod.y_matrix(a)) for a in range(mod.n)]
    Ws = [exact.to_complex(mod.weyl_matrix(w)) for w in weyl_group(mod.n)]
    seen = set()
    for mu in mod.weights():
        key = tuple(complex(v) for v in mu)
        if key in seen:
            continue
        seen.add(key)
        stacked = np.vstack([Y - complex(m) * np.eye(d) for Y, m in zip(Ys, mu)])
        _, s, vh = np.linalg.svd(stacked)
        scale = max(s[0], 1.0)
        null = [vh[j].conj() for j in range(d) if s[j] <= tol * scale]
        if len(null) >= 2:
            return True
        for v in null:
            span = np.column_stack([W.dot(v) for W in Ws])
            if exact.rank(span, tol) < d:
                return True
    return False

