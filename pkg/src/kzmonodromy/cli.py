"""Command-line interface: ``kzmono classify | rank1 | plot | shift-plan | verify``.

Classification commands take exact rationals (``p/q`` or integers); the
``rank1`` monodromy command also accepts floats. ``--c`` is the same as
``--k`` with ``k = c - 1``.

Exit codes: 0 success, 1 failed verification, 2 usage or parse error,
3 unwritable output file.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import dahe, eaha, kz_numeric, rank1
from .exact import QType, det, fmt_rational, is_exact, parse_rational
from .resonance import ParameterPoint, ShiftPlan, fg_fails, is_resonant, plan_shift
from .root_data import WeylElem, pairing, positive_coroots, weyl_group

__all__ = [
    "main",
    "build_parser",
    "classify_record",
    "plan_record",
    "rank1_record",
    "plot_svg",
    "run_suite",
    "SUITES",
    "dumps",
]


class UsageError(ValueError):
    """Bad command-line input; reported with exit code 2."""


# JSON encoding


def _num(z, digits: int = 12):
    """Snap a complex number to an int, a float or ``{"re", "im"}``."""
    if isinstance(z, QType) or is_exact(z) and not isinstance(z, float):
        return fmt_rational(z)

    def real(x: float):
        x = float(x)
        if abs(x - round(x)) < 10.0**-digits:
            return int(round(x))
        return round(x, digits) + 0.0

    z = complex(z)
    if abs(z.imag) < 10.0**-digits:
        return real(z.real)
    return {"re": real(z.real), "im": real(z.imag)}


def _jsonable(v):
    if isinstance(v, dict):
        return {str(a): _jsonable(b) for a, b in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    return _num(v)


def dumps(record: dict) -> str:
    """Canonical JSON text; ``dumps(json.loads(dumps(r))) == dumps(r)``."""
    return json.dumps(record, ensure_ascii=False)


def _weight(lam) -> list:
    return [_num(v) for v in lam]


def _move_record(m) -> dict:
    return {
        "kind": m.kind,
        "source": {"lambda": _weight(m.source[0]), "k": _num(m.source[1])},
        "target": {"lambda": _weight(m.target[0]), "k": _num(m.target[1])},
        "certified": m.certified,
        "certificate": [{"condition": c, "verified": bool(ok)} for c, ok in m.certificate],
        "info": _jsonable(m.info),
    }


def plan_record(plan: ShiftPlan) -> dict:
    return {
        "status": plan.status,
        "case": plan.case,
        "target": {"lambda": _weight(plan.target.lam), "k": _num(plan.target.k)},
        "moves": [_move_record(m) for m in plan.moves],
        "notes": list(plan.notes),
    }


def _rep_type_record(rt: eaha.RepType) -> dict:
    out: dict = {"tag": rt.tag}
    if rt.tag in ("covariant_plus", "covariant_minus") and rt.theta:
        out["theta"] = [_num(z) for z in rt.theta]
    if rt.tag == "induced":
        out["lambda"] = _num(rt.lam)
    if rt.tag == "character_sum":
        out["characters"] = [[_num(y), _num(t)] for y, t in rt.characters]
    return out


def _higher_rank_type(p: ParameterPoint) -> eaha.RepType:
    """Covariant whenever the induced monodromy is irreducible, otherwise undetermined."""
    if eaha.kato_irred(p.lam, p.k, p.n):
        return eaha.RepType("covariant_plus")
    return eaha.RepType.undetermined()


def classify_record(p: ParameterPoint) -> dict:
    """The ``classify`` JSON record with its fixed field order."""
    resonant, wit = is_resonant(p)
    plan = plan_shift(p)
    if p.n == 2:
        rt = rank1.classify_rank1(p.lam[0], p.k)[0]
    else:
        rt = _higher_rank_type(p)
    return {
        "n": p.n,
        "lambda": _weight(p.lam),
        "k": _num(p.k),
        "c": _num(p.k + 1),
        "resonant": resonant,
        "status": plan.status,
        "rep_type": _rep_type_record(rt),
        "plan": None if plan.status == "non_resonant" else plan_record(plan),
        "witnesses": [list(q) for q in wit],
        "fg_fails": fg_fails(p),
    }


def _matrix(M) -> list:
    return [[_num(z) for z in row] for row in np.asarray(M)]


def rank1_record(lam, k, numeric: bool = False, tol: float = 1e-10) -> dict:
    """Monodromy pair, invariants and classification at one rank-one point."""
    closed = rank1.monodromy_rank1(lam, k)
    out = {
        "lambda": _num(lam),
        "k": _num(k),
        "regime": closed.regime,
        "Ybar": _matrix(closed.Ybar),
        "T": _matrix(closed.T),
        "invariants": {a: _num(b) for a, b in closed.invariants().items()},
        "relation_residual": float(f"{rank1.relation_residual(closed):.3e}"),
        "rep_type": _rep_type_record(closed.classification),
    }
    if numeric:
        rep = kz_numeric.monodromy_numeric(complex(lam), complex(k), "J", tol)
        out["numeric"] = {
            "Ybar": _matrix(rep.Y[0]),
            "T": _matrix(rep.T[0]),
            "relation_residual": float(f"{eaha.check_relations(rep, 10 * tol).worst:.3e}"),
        }
    return out


def format_plan(plan: ShiftPlan) -> str:
    lines = [f"{plan.source.describe()}: {plan.status}" + (f" (case {plan.case})" if plan.case else "")]
    for i, m in enumerate(plan.moves, 1):
        lines.append(f"  {i}. {m.describe()} [{'certified' if m.certified else 'NOT certified'}]")
        for c, ok in m.certificate:
            lines.append(f"       {'ok ' if ok else 'FAIL'} {c}")
    for note in plan.notes:
        lines.append(f"  note: {note}")
    if plan.status == "shiftable":
        lines.append(f"  target: {plan.target.describe()}")
    return "\n".join(lines)


# SVG plot


_FILL = {"white": "#ffffff", "blue": "#1f5fd6", "green": "#2ca02c", "red": "#d62728"}


def _frange(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    out, x = [], lo
    while x <= hi:
        out.append(x)
        x += step
    return out


def plot_svg(k_range: tuple, lam_range: tuple, step, size: int = 600) -> str:
    """Rank-one classes on a grid, ``k`` horizontal and ``lambda`` vertical.

    Colors are decided by exact predicates, so the bytes depend only on the
    arguments.
    """
    k0, k1 = (Fraction(str(v)) for v in k_range)
    l0, l1 = (Fraction(str(v)) for v in lam_range)
    step = Fraction(str(step))
    if step <= 0 or k1 <= k0 or l1 <= l0:
        raise UsageError("ranges must be increasing and the step positive")
    margin = 40
    span = size - 2 * margin

    def X(k: Fraction) -> str:
        return f"{margin + float((k - k0) / (k1 - k0)) * span:.3f}"

    def Y(lam: Fraction) -> str:
        return f"{margin + float((l1 - lam) / (l1 - l0)) * span:.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="#f4f4f4"/>',
        '<g id="lines" stroke="#d62728" stroke-width="2">',
    ]
    # red lines lambda = k - j and lambda = j - k, j > 0, clipped to the box
    jmax = int(math.ceil(abs(k0) + abs(k1) + abs(l0) + abs(l1))) + 1
    for j in range(1, jmax + 1):
        for sign in (1, -1):
            pts = []
            for k in (k0, k1):
                lam = sign * (k - j)
                if l0 <= lam <= l1:
                    pts.append((k, lam))
            for lam in (l0, l1):
                k = sign * lam + j
                if k0 <= k <= k1:
                    pts.append((k, lam))
            pts = sorted(set(pts))
            if len(pts) >= 2:
                (a, b), (c, d) = pts[0], pts[-1]
                out.append(f'<line x1="{X(a)}" y1="{Y(b)}" x2="{X(c)}" y2="{Y(d)}"/>')
    out.append("</g>")
    out.append('<g id="axes" stroke="#000000" stroke-width="1">')
    if k0 <= 0 <= k1:
        out.append(f'<line x1="{X(Fraction(0))}" y1="{Y(l0)}" x2="{X(Fraction(0))}" y2="{Y(l1)}"/>')
    if l0 <= 0 <= l1:
        out.append(f'<line x1="{X(k0)}" y1="{Y(Fraction(0))}" x2="{X(k1)}" y2="{Y(Fraction(0))}"/>')
    out.append("</g>")
    out.append('<g id="markers" stroke="#000000" stroke-width="1">')
    for lam in _frange(l0, l1, step):
        for k in _frange(k0, k1, step):
            color = rank1.plot_color(parse_rational(str(lam)), parse_rational(str(k)))
            out.append(
                f'<circle cx="{X(k)}" cy="{Y(lam)}" r="5" fill="{_FILL[color]}" '
                f'data-k="{k}" data-lambda="{lam}" data-class="{color}"/>'
            )
    out.append("</g>")
    out.append(f'<text x="{size - margin + 5}" y="{Y(Fraction(0)) if l0 <= 0 <= l1 else size - 10}" font-size="14">k</text>')
    out.append(f'<text x="{X(Fraction(0)) if k0 <= 0 <= k1 else 10}" y="{margin - 10}" font-size="14">lambda</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# verification suites


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[float], bool]


def _suite_relations(tol: float) -> list[Check]:
    from .exact import Q

    pts = [(Q(3, 10), Q(1, 5)), (Q(1, 4), Q(3, 4)), (0, Q(2, 5)), (0, 1), (Q(1, 2), Q(1, 2)),
           (Q(1, 2), 0), (1, 0), (2, 3), (Q(3, 2), Q(1, 2)), (Q(7, 10), Q(-9, 20))]
    checks = [
        Check(f"rank-one closed form relations at ({fmt_rational(l)}, {fmt_rational(k)})",
              lambda t, l=l, k=k: rank1.relation_residual(rank1.monodromy_rank1(l, k)) <= max(t, 1e-8))
        for l, k in pts
    ]

    def commutation(n: int, which: str) -> Callable[[float], bool]:
        def run(_t: float) -> bool:
            lam = tuple(Q(2 * a + 1, 5 + a) for a in range(n - 1))
            k = Q(2, 7)
            mod = dahe.InducedModule(n, lam, k) if which == "I" else dahe.CovariantModule(n, lam, k)
            for e in dahe.staircase_exponents(n):
                p = {e: Q(1)}
                for i in range(1, n):
                    S = mod.s_matrix(i)
                    sp = dahe.poly_swap(p, i)
                    lhs = S.dot(mod.poly_matrix(p))
                    rhs = mod.poly_matrix(sp).dot(S) - mod.poly_matrix(dahe.poly_divided_difference(p, i)) * k
                    if not all(x == 0 for x in (lhs - rhs).ravel()):
                        return False
            return True

        return run

    for n in (2, 3):
        for which in ("I", "J"):
            checks.append(Check(f"commutation s_i p on {which}, n={n} (exact)", commutation(n, which)))
    return checks


def _suite_determinants(tol: float) -> list[Check]:
    from .exact import Q

    samples = [((Q(1, 3),), Q(1, 2)), ((Q(-2, 5),), Q(3, 7)), ((Q(1, 3), Q(2, 5)), Q(1, 2)),
               ((Q(-1, 4), Q(3, 2)), Q(2, 3))]

    def intertwiner(lam, k) -> Callable[[float], bool]:
        def run(_t):
            n = len(lam) + 1
            w0 = WeylElem(tuple(reversed(range(n))))
            d = det(dahe.intertwiner_matrix(w0, lam, k, n))
            half = len(weyl_group(n)) // 2
            expect = Q(1)
            for q in positive_coroots(n):
                expect *= (k * k - pairing(lam, q) ** 2) ** half
            return d == expect

        return run

    def r_constant(n: int) -> Callable[[float], bool]:
        def run(_t):
            ratios = set()
            half = len(weyl_group(n)) // 2
            for a in range(3):
                lam = tuple(Q(a + 2 * b + 1, 7) for b in range(n - 1))
                k = Q(3, 11)
                prod = Q(1)
                for q in positive_coroots(n):
                    prod *= (k - pairing(lam, q)) ** half
                ratios.add(det(dahe.r_map(lam, k, 1, n)) / prod)
            return len(ratios) == 1 and 0 not in ratios

        return run

    checks = [
        Check(f"det of the longest intertwiner at lambda={tuple(map(fmt_rational, lam))}, k={fmt_rational(k)}",
              intertwiner(lam, k))
        for lam, k in samples
    ]
    checks += [Check(f"det(r_map) over the product formula is constant, n={n}", r_constant(n)) for n in (2, 3)]
    return checks


def _suite_rank1(tol: float) -> list[Check]:
    from .exact import Q

    def grid(_t):
        for a in range(-6, 7):
            for b in range(-6, 7):
                lam, k = Q(a, 2), Q(b, 2)
                if rank1.classify_rank1(lam, k)[0].tag != rank1.region_tag(lam, k):
                    return False
        return True

    def generic(_t):
        rng = np.random.default_rng(7)
        for _ in range(30):
            lam, k = rng.uniform(0.05, 0.45) + rng.integers(0, 3), rng.uniform(-1, 1)
            M = rank1.monodromy_rank1(lam, k)
            if rank1.relation_residual(M) > 1e-8:
                return False
            q = np.exp(2j * np.pi * k)
            if abs(np.trace(M.T) - (1 - q)) > 1e-8:
                return False
        return True

    return [
        Check("classifier equals the region predicate on the half-integer grid", grid),
        Check("generic closed form: relations and tr T = 1 - q", generic),
    ]


def _suite_transport(tol: float) -> list[Check]:
    pts = [(0.3, 0.2), (0.7, -0.45), (1.2, 0.35), (0.15, 0.8), (1, 0), (0.5, 0.5)]

    def agree(lam, k) -> Callable[[float], bool]:
        def run(t):
            N = kz_numeric.monodromy_numeric(lam, k, "J", min(t, 1e-8))
            C = rank1.monodromy_rank1(lam, k)
            Y, T = N.Y[0], N.T[0]
            a = [np.trace(T), np.trace(Y), np.trace(Y @ T), np.trace(Y @ Y @ T)]
            b = [np.trace(C.T), np.trace(C.Ybar), np.trace(C.Ybar @ C.T), np.trace(C.Ybar @ C.Ybar @ C.T)]
            return max(abs(x - y) for x, y in zip(a, b)) <= t

        return run

    def det_ok(t):
        spec = kz_numeric.connection_spec(2, (0.3,), 0.2)
        path = kz_numeric.t_path()
        F, err = kz_numeric.transport(spec, path, 1e-10)
        return kz_numeric.det_check(spec, path, F) <= 1e-8 and err <= 1e-8

    checks = [Check(f"numeric and closed-form invariants agree at ({l}, {k})", agree(l, k)) for l, k in pts]
    checks.append(Check("det of the transport equals the exponential of the trace integral", det_ok))
    return checks


def _suite_resonance(tol: float) -> list[Check]:
    from .exact import Q

    def example1(_t):
        plan = plan_shift(ParameterPoint(3, (Q(2), Q(1, 2)), Q(4, 3)))
        return plan.status == "shiftable" and [m.kind for m in plan.moves] == ["lambda_shift"] * 2

    def example2(_t):
        plan = plan_shift(ParameterPoint(3, (Q(3), Q(3)), Q(2)))
        return plan.status == "shiftable" and [m.kind for m in plan.moves] == ["k_shift"] * 2

    def family(_t):
        k = Q(4, 3)
        return all(
            plan_shift(ParameterPoint(3, (Q(-m), s * k + j), k)).status == "not_covered"
            for m in range(1, 5) for j in range(1, m + 1) for s in (1, -1)
        )

    def fg(_t):
        return (
            fg_fails(ParameterPoint(3, (Q(2), Q(2)), Q(1)))
            and fg_fails(ParameterPoint(2, (Q(1),), Q(1)))
            and not fg_fails(ParameterPoint(3, (Q(2), Q(1, 2)), Q(1)))
        )

    return [
        Check("case 1 plan of two lambda-shifts", example1),
        Check("case 2 plan of two k-shifts", example2),
        Check("the k=4/3 counterexample family is not covered", family),
        Check("FG-failure witnesses", fg),
    ]


SUITES: dict[str, Callable[[float], list[Check]]] = {
    "relations": _suite_relations,
    "determinants": _suite_determinants,
    "rank1": _suite_rank1,
    "transport": _suite_transport,
    "resonance": _suite_resonance,
}


def run_suite(name: str, tol: float = 1e-6) -> tuple[bool, list[str]]:
    """Run one suite; returns ``(all_passed, TAP lines)``."""
    checks = SUITES[name](tol)
    lines = ["TAP version 13", f"1..{len(checks)}"]
    ok_all = True
    for i, c in enumerate(checks, 1):
        try:
            ok = bool(c.run(tol))
            detail = ""
        except Exception as exc:  # report, do not abort the suite
            ok, detail = False, f" # error: {type(exc).__name__}: {exc}"
        ok_all &= ok
        lines.append(f"{'ok' if ok else 'not ok'} {i} - {name}: {c.name}{detail}")
    return ok_all, lines


# argument handling


def _rational_list(text: str) -> tuple:
    try:
        return tuple(parse_rational(s) for s in text.split(","))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _point(args) -> ParameterPoint:
    if (args.k is None) == (args.c is None):
        raise UsageError("give exactly one of --k and --c")
    lam = _rational_list(args.lam)
    try:
        k = parse_rational(args.k) if args.k is not None else parse_rational(args.c) - 1
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    n = args.n if args.n is not None else len(lam) + 1
    if len(lam) != n - 1:
        raise UsageError(f"--lambda needs {n - 1} coordinates for n={n}")
    try:
        return ParameterPoint(n, lam, k)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc


def _number(text: str):
    try:
        return parse_rational(text)
    except ValueError:
        try:
            return complex(text.replace("i", "j")) if "i" in text or "j" in text else float(text)
        except ValueError as exc:
            raise UsageError(f"malformed number {text!r}") from exc


def _pair(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected 'lo,hi', got {text!r}")
    try:
        return tuple(Fraction(p.strip()) for p in parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, out: str | None) -> int:
    if out is None:
        sys.stdout.write(text)
        return 0
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return 3
    return 0


def _point_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="rank plus one (type A_{n-1}); default from --lambda")
    p.add_argument("--lambda", dest="lam", required=True, help="comma-separated fundamental-weight coordinates")
    p.add_argument("--k", help="coupling k (rational)")
    p.add_argument("--c", help="alternative coupling, k = c - 1")
    p.add_argument("--out", help="write output to this file")
    p.add_argument("--json", action="store_true", help="JSON output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kzmono", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    _point_options(sub.add_parser("classify", help="classification record as JSON"))
    _point_options(sub.add_parser("shift-plan", help="certified shift plan"))
    r = sub.add_parser("rank1", help="rank-one monodromy matrices")
    r.add_argument("--lambda", dest="lam", required=True)
    r.add_argument("--k", required=True)
    r.add_argument("--numeric", action="store_true", help="also transport the connection numerically")
    r.add_argument("--tol", type=float, default=1e-10)
    r.add_argument("--out")
    r.add_argument("--json", action="store_true")
    p = sub.add_parser("plot", help="SVG of the rank-one classes")
    p.add_argument("--k-range", default="-3,3")
    p.add_argument("--lambda-range", default="-3,3")
    p.add_argument("--step", default="1/2")
    p.add_argument("--out", required=True)
    v = sub.add_parser("verify", help="run a verification suite, TAP output")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--tol", type=float, default=1e-6)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "classify":
            return _emit(dumps(classify_record(_point(args))) + "\n", args.out)
        if args.command == "shift-plan":
            plan = plan_shift(_point(args))
            text = dumps(plan_record(plan)) if args.json else format_plan(plan)
            return _emit(text + "\n", args.out)
        if args.command == "rank1":
            lam, k = _number(args.lam), _number(args.k)
            return _emit(dumps(rank1_record(lam, k, args.numeric, args.tol)) + "\n", args.out)
        if args.command == "plot":
            svg = plot_svg(_pair(args.k_range), _pair(args.lambda_range), Fraction(args.step))
            return _emit(svg, args.out)
        if args.command == "verify":
            ok, lines = run_suite(args.suite, args.tol)
            print("\n".join(lines))
            return 0 if ok else 1
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
