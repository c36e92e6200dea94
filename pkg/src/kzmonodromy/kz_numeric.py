"""Numerical transport of the trigonometric KZ connection.

Flat sections satisfy ``dF = Omega F`` with

    Omega = sum_{alpha > 0} k dalpha (1 - s_alpha) / (1 - e^{-alpha})
            - sum_i (lambda_i^vee + k rho(lambda_i^vee)) dalpha_i ,

the fiber acting through the induced module ``I`` or the covariant module
``J``. Two coordinate systems are used:

* rank one, ``x = e^rho`` with ``Omega = A(x) dx`` and
  ``A(x) = [2k x^2/(x^2 - 1) (1 - s) - alpha^vee - k] / x``;
* any rank, ``Z_i = e^{alpha_i}``, where the point ``Z = 0`` is the large
  volume limit and the canonical solution ``H(Z) prod Z_i^{A_i}`` lives.

The monodromy pair follows a fixed orientation: ``T = s P(gamma_T)`` where
``gamma_T`` runs from ``x_0 = 0.5 i`` to ``1/x_0`` passing below ``x = 1`` on
a small arc, and ``Ybar = (e^{pi i k} P(gamma_Y))^{-1}`` where ``gamma_Y`` runs
from ``x_0`` to ``-x_0`` counterclockwise around ``0``.

>>> spec = connection_spec(2, (0.3,), 0, "J")
>>> F, err = transport(spec, y_path())
>>> bool(abs(np.linalg.det(F) - 1) < 1e-9 and err < 1e-8)
True
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .dahe import CovariantModule, InducedModule
from .eaha import MonodromyRep
from .exact import to_complex
from .root_data import RootSystemA, WeylElem, e_to_coroot

__all__ = [
    "ConnectionSpec",
    "Segment",
    "Path",
    "PathError",
    "ModelError",
    "ResonanceError",
    "LVLSolution",
    "connection_spec",
    "line",
    "arc",
    "y_path",
    "t_path",
    "dopri5",
    "transport",
    "monodromy_numeric",
    "lvl_solution",
    "lvl_y_matrices",
]


class PathError(RuntimeError):
    """Integration failed, typically because the path runs into the singular locus."""


class ModelError(ValueError):
    """The fiber model cannot be built at the requested parameters."""


class ResonanceError(ValueError):
    """The connection is resonant at the large volume limit."""


# fiber data


@dataclass
class ConnectionSpec:
    """Fiber matrices and parameters of the KZ connection.

    ``reflections`` maps each positive coroot (simple-coroot coordinates) to
    the fiber matrix of ``s_alpha``; ``coweights`` holds the fiber matrices of
    ``lambda_1^vee, ..., lambda_{n-1}^vee`` and ``coroot`` (rank one) the
    matrix of ``alpha^vee``.
    """

    n: int
    lam: tuple
    k: complex
    rep: str
    reflections: dict
    coweights: list
    coroot_matrices: list
    dim: int = field(default=0)

    def __post_init__(self):
        self.dim = self.coweights[0].shape[0]

    @property
    def coroot(self) -> np.ndarray:
        """Fiber matrix of ``alpha_1^vee``."""
        return self.coroot_matrices[0]

    def rho_k(self, j: int) -> complex:
        """``k rho(lambda_j^vee) = k j (n - j) / 2``."""
        return self.k * j * (self.n - j) / 2

    def residues(self) -> list[np.ndarray]:
        """``A_i = -(lambda_i^vee + rho_k(lambda_i^vee))`` at ``Z = 0``."""
        eye = np.eye(self.dim)
        return [-(self.coweights[i] + self.rho_k(i + 1) * eye) for i in range(self.n - 1)]

    def x_matrix(self, x: complex) -> np.ndarray:
        """Rank-one coefficient ``A(x)`` with ``Omega = A(x) dx``."""
        if self.n != 2:
            raise ValueError("the x coordinate is only used in rank one")
        S = self.reflections[(1,)]
        eye = np.eye(self.dim)
        return (2 * self.k * x * x / (x * x - 1) * (eye - S) - self.coroot - self.k * eye) / x

    def z_matrix(self, Z: Sequence[complex], dZ: Sequence[complex]) -> np.ndarray:
        """``Omega(Z)`` evaluated on the tangent vector ``dZ``."""
        eye = np.eye(self.dim)
        dlog = [dz / z for z, dz in zip(Z, dZ)]
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for q, S in self.reflections.items():
            zm = complex(np.prod([z**m for z, m in zip(Z, q)]))
            dalpha = sum(m * d for m, d in zip(q, dlog))
            out += self.k * dalpha * (-zm / (1 - zm)) * (eye - S)
        for A, d in zip(self.residues(), dlog):
            out += A * d
        return out


def connection_spec(n: int, lam: Sequence, k, rep: str = "J") -> ConnectionSpec:
    """Assemble the fiber matrices from the exact module models.

    >>> connection_spec(2, (0.3,), 0.2).coroot.shape
    (2, 2)
    """
    lam = tuple(complex(v) for v in lam)
    k = complex(k)
    if rep == "J":
        try:
            mod = CovariantModule(n, lam, k)
        except ZeroDivisionError as exc:
            raise ModelError(f"covariant model degenerate at {lam}, {k}") from exc
    elif rep == "I":
        mod = InducedModule(n, lam, k)
    else:
        raise ValueError("rep must be 'I' or 'J'")
    R = RootSystemA(n)
    refl = {}
    for i in range(n):
        for j in range(i + 1, n):
            e = [1 if a == i else -1 if a == j else 0 for a in range(n)]
            refl[e_to_coroot(e)] = to_complex(mod.weyl_matrix(WeylElem.reflection((i, j), n)))
    coweights = [to_complex(mod.linear_matrix(w)) for w in R.fundamental_weights]
    coroots = [to_complex(mod.linear_matrix(e)) for e in R.simple_roots]
    return ConnectionSpec(n, lam, k, rep, refl, coweights, coroots)


# paths


@dataclass(frozen=True)
class Segment:
    """A parametrized piece ``z(t)``, ``0 <= t <= 1``, with derivative ``dz(t)``."""

    z: Callable[[float], complex]
    dz: Callable[[float], complex]
    label: str = ""


def line(a: complex, b: complex) -> Segment:
    return Segment(lambda t: a + (b - a) * t, lambda t: b - a, f"line {a} -> {b}")


def arc(center: complex, radius: float, theta0: float, theta1: float) -> Segment:
    """Circular arc; counterclockwise iff ``theta1 > theta0``."""
    span = theta1 - theta0

    def z(t):
        return center + radius * cmath.exp(1j * (theta0 + span * t))

    def dz(t):
        return 1j * span * radius * cmath.exp(1j * (theta0 + span * t))

    return Segment(z, dz, f"arc c={center} r={radius} {theta0:.3f}->{theta1:.3f}")


@dataclass(frozen=True)
class Path:
    """Concatenated segments with the singular points to keep clear of."""

    segments: tuple
    singular: tuple = (0j, 1 + 0j, -1 + 0j)

    def nearest_approach(self, samples: int = 200) -> float:
        best = math.inf
        for seg in self.segments:
            for t in np.linspace(0, 1, samples):
                z = seg.z(t)
                for s in self.singular:
                    best = min(best, abs(z - s))
        return best


def y_path(base: float = 0.5, radius: float = 0.25) -> Path:
    """``x_0 = base i`` to ``-x_0``, counterclockwise half-turn around ``0``."""
    return Path(
        (
            line(base * 1j, radius * 1j),
            arc(0, radius, math.pi / 2, 3 * math.pi / 2),
            line(-radius * 1j, -base * 1j),
        )
    )


def t_path(base: float = 0.5, radius: float = 0.25) -> Path:
    """``x_0 = base i`` to ``1/x_0``, passing below ``x = 1`` on an arc."""
    return Path(
        (
            line(base * 1j, 1 - radius),
            arc(1, radius, math.pi, 2 * math.pi),
            line(1 + radius, 1 / (base * 1j)),
        )
    )


# Dormand-Prince 5(4)

_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)


def dopri5(f, t0: float, t1: float, y0: np.ndarray, rtol: float, atol: float, h_min: float = 1e-13):
    """Integrate ``y' = f(t, y)`` from ``t0`` to ``t1`` with adaptive Dormand-Prince 5(4).

    Returns ``(y, steps)``; raises ``PathError`` on step-size underflow.

    >>> y, _ = dopri5(lambda t, y: y, 0.0, 1.0, np.array([1.0 + 0j]), 1e-12, 1e-14)
    >>> bool(abs(y[0] - math.e) < 1e-10)
    True
    """
    t, y = t0, np.array(y0, dtype=complex)
    span = t1 - t0
    h = span / 50
    k1 = f(t, y)
    steps = 0
    while (t - t1) * (1 if span > 0 else -1) < 0:
        if abs(h) < h_min:
            raise PathError(f"step size underflow at t={t:.6g}")
        if (t + h - t1) * (1 if span > 0 else -1) > 0:
            h = t1 - t
        ks = [k1]
        for s in range(1, 7):
            yi = y + h * sum(a * kk for a, kk in zip(_A[s], ks))
            ks.append(f(t + _C[s] * h, yi))
        y5 = y + h * sum(b * kk for b, kk in zip(_B5, ks))
        y4 = y + h * sum(b * kk for b, kk in zip(_B4, ks))
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
        err = float(np.sqrt(np.mean(np.abs((y5 - y4) / scale) ** 2)))
        if not math.isfinite(err):
            raise PathError(f"non-finite derivative near t={t:.6g}")
        if err <= 1.0:
            t += h
            y = y5
            k1 = ks[6]
            steps += 1
            fac = 5.0 if err == 0 else min(5.0, 0.9 * err ** (-0.2))
        else:
            fac = max(0.2, 0.9 * err ** (-0.2))
        h *= fac
    return y, steps


def _transport_once(spec: ConnectionSpec, path: Path, tol: float, coords: str) -> np.ndarray:
    d = spec.dim
    F = np.eye(d, dtype=complex)
    for seg in path.segments:
        if coords == "x":

            def rhs(t, y, seg=seg):
                return (spec.x_matrix(seg.z(t)) * seg.dz(t)).dot(y.reshape(d, d)).ravel()
        else:

            def rhs(t, y, seg=seg):
                return spec.z_matrix(seg.z(t), seg.dz(t)).dot(y.reshape(d, d)).ravel()

        y, _ = dopri5(rhs, 0.0, 1.0, F.ravel(), rtol=tol, atol=tol * 1e-2)
        F = y.reshape(d, d)
    return F


def _trace_integral(spec: ConnectionSpec, path: Path, tol: float, coords: str) -> complex:
    total = 0j
    for seg in path.segments:
        if coords == "x":

            def rhs(t, y, seg=seg):
                return np.array([np.trace(spec.x_matrix(seg.z(t))) * seg.dz(t)])
        else:

            def rhs(t, y, seg=seg):
                return np.array([np.trace(spec.z_matrix(seg.z(t), seg.dz(t)))])

        y, _ = dopri5(rhs, 0.0, 1.0, np.zeros(1, dtype=complex), rtol=tol, atol=tol * 1e-2)
        total += y[0]
    return total


def transport(spec: ConnectionSpec, path: Path, tol: float = 1e-10, coords: str = "x"):
    """Transfer matrix along ``path`` and a Richardson-style error estimate.

    The transport is run at ``tol`` and ``tol/32``; the difference estimates
    the error of the finer result, which is returned.
    """
    try:
        coarse = _transport_once(spec, path, tol, coords)
        fine = _transport_once(spec, path, tol / 32, coords)
    except PathError as exc:
        raise PathError(f"{exc}; nearest approach to the singular locus {path.nearest_approach():.3g}") from exc
    return fine, float(np.max(np.abs(fine - coarse)))


def det_check(spec: ConnectionSpec, path: Path, F: np.ndarray, tol: float = 1e-10, coords: str = "x") -> float:
    """``|det F - exp(integral of tr Omega)|``, a posteriori consistency check."""
    return abs(np.linalg.det(F) - cmath.exp(_trace_integral(spec, path, tol, coords)))


def monodromy_numeric(
    lam, k, rep: str = "J", tol: float = 1e-10, radius: float = 0.25, base: float = 0.5
) -> MonodromyRep:
    """Rank-one monodromy pair ``(Ybar, T)`` by transport along the two loops.

    >>> R = monodromy_numeric(1, 0)
    >>> bool(np.allclose(R.Y[0], -np.eye(2), atol=1e-8))
    True
    """
    lam_t = tuple(lam) if isinstance(lam, (tuple, list)) else (lam,)
    if len(lam_t) != 1:
        raise ValueError("full monodromy pairs are computed in rank one; use lvl_y_matrices")
    spec = connection_spec(2, lam_t, k, rep)
    S = spec.reflections[(1,)]
    PY, _ = transport(spec, y_path(base, radius), tol)
    PT, _ = transport(spec, t_path(base, radius), tol)
    kc = complex(k)
    Ybar = np.linalg.inv(cmath.exp(1j * math.pi * kc) * PY)
    T = S.dot(PT)
    return MonodromyRep([Ybar], [T], cmath.exp(2j * math.pi * kc))


# canonical solution at the large volume limit


@dataclass
class LVLSolution:
    """Truncated ``H(Z) = sum_m H_m Z^m`` and the exponent matrices ``A_i``."""

    spec: ConnectionSpec
    order: int
    coeffs: dict
    exponents: list

    def H(self, Z: Sequence[complex]) -> np.ndarray:
        out = np.zeros((self.spec.dim, self.spec.dim), dtype=complex)
        for m, C in self.coeffs.items():
            out += C * complex(np.prod([z**e for z, e in zip(Z, m)]))
        return out

    def dH(self, Z: Sequence[complex], i: int) -> np.ndarray:
        """``Z_i dH/dZ_i``."""
        out = np.zeros((self.spec.dim, self.spec.dim), dtype=complex)
        for m, C in self.coeffs.items():
            if m[i]:
                out += m[i] * C * complex(np.prod([z**e for z, e in zip(Z, m)]))
        return out

    def gauge_residual(self, Z: Sequence[complex]) -> float:
        """Max over ``i`` of ``|Z_i dH/dZ_i - Omega_i H + H A_i|``."""
        worst = 0.0
        H = self.H(Z)
        for i in range(self.spec.n - 1):
            dZ = [z if a == i else 0 for a, z in enumerate(Z)]
            Om = self.spec.z_matrix(Z, dZ)
            R = self.dH(Z, i) - Om.dot(H) + H.dot(self.exponents[i])
            worst = max(worst, float(np.max(np.abs(R))))
        return worst


def _gaps(A: np.ndarray) -> list[complex]:
    vals = np.linalg.eigvals(A)
    return [a - b for a in vals for b in vals]


def _wall_coefficients(spec: ConnectionSpec, order: int) -> dict:
    """``B_i`` coefficients: ``Omega_i - A_i = sum_p B_{i,p} Z^p`` (``Z_i d/dZ_i`` frame)."""
    eye = np.eye(spec.dim)
    out: dict = {}
    for q, S in spec.reflections.items():
        for j in range(1, order + 1):
            p = tuple(j * m for m in q)
            if sum(p) > order:
                break
            for i, mi in enumerate(q):
                if mi:
                    key = (i, p)
                    out[key] = out.get(key, 0) - spec.k * mi * (eye - S)
    return out


def lvl_solution(spec: ConnectionSpec, order: int = 20, gap_tol: float = 1e-9) -> LVLSolution:
    """Solve the gauge recursion for the canonical solution up to total degree ``order``.

    Each coefficient solves ``(m_i - ad A_i) H_m = sum B_{i,p} H_{m-p}`` for
    the first index with ``m_i > 0``; this is invertible exactly when the
    eigenvalues of ``A_i`` do not differ by nonzero integers.

    >>> sol = lvl_solution(connection_spec(2, (0.3,), 0), order=5)
    >>> len(sol.coeffs), max(float(np.max(np.abs(C))) for m, C in sol.coeffs.items() if any(m))
    (6, 0.0)
    """
    if order > 30:
        raise ValueError("order must be at most 30")
    A = spec.residues()
    r = spec.n - 1
    for i, Ai in enumerate(A):
        for g in _gaps(Ai):
            if abs(g.imag) < gap_tol and abs(g.real - round(g.real)) < gap_tol and round(g.real) != 0:
                raise ResonanceError(
                    f"eigenvalues of the exponent A_{i + 1} differ by {round(g.real)}"
                )
    d = spec.dim
    eye = np.eye(d)
    B = _wall_coefficients(spec, order)
    coeffs: dict = {tuple([0] * r): np.eye(d, dtype=complex)}
    indices = sorted(
        (m for m in itertools.product(range(order + 1), repeat=r) if 0 < sum(m) <= order),
        key=lambda m: (sum(m), m),
    )
    for m in indices:
        i = next(a for a in range(r) if m[a] > 0)
        rhs = np.zeros((d, d), dtype=complex)
        for (ii, p), Bp in B.items():
            if ii != i:
                continue
            rest = tuple(a - b for a, b in zip(m, p))
            if min(rest) < 0:
                continue
            Hr = coeffs.get(rest)
            if Hr is not None:
                rhs += Bp.dot(Hr)
        if not rhs.any():
            coeffs[m] = np.zeros((d, d), dtype=complex)
            continue
        # (m_i - A_i) X + X A_i = rhs, vectorized row-major
        L = m[i] * np.eye(d * d) - np.kron(A[i], eye) + np.kron(eye, A[i].T)
        coeffs[m] = np.linalg.solve(L, rhs.ravel()).reshape(d, d)
    return LVLSolution(spec, order, coeffs, A)


def lvl_y_matrices(sol: LVLSolution) -> list[np.ndarray]:
    """Normalized ``Ybar_j`` in the canonical-solution basis.

    The loop ``Z_j -> e^{2 pi i} Z_j`` multiplies the solution by
    ``exp(2 pi i A_j)``; with the ``e^{2 pi i rho_k}`` factor and the inverse
    used for ``Ybar`` this is ``exp(2 pi i lambda_j^vee)`` on the fiber.
    """
    out = []
    for j, A in enumerate(sol.exponents, start=1):
        M = _expm(2j * math.pi * A) * cmath.exp(2j * math.pi * sol.spec.rho_k(j))
        out.append(np.linalg.inv(M))
    return out


def _expm(M: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring with a Taylor core."""
    norm = float(np.max(np.sum(np.abs(M), axis=1)))
    s = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0.5 else 0
    X = M / (2**s)
    out = np.eye(M.shape[0], dtype=complex)
    term = np.eye(M.shape[0], dtype=complex)
    for j in range(1, 30):
        term = term.dot(X) / j
        out = out + term
    for _ in range(s):
        out = out.dot(out)
    return out

