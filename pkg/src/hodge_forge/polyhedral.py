"""Exact Fourier–Motzkin elimination for homogeneous-with-constant systems.

A system is a list of constraints ``a · x + c  > 0`` (strict) or
``a · x + c >= 0``.  :func:`feasible` eliminates the variables one by one,
tracking for every derived row the non-negative combination of input rows
that produced it.  A feasible system yields a point (found by
back-substitution and re-checked exactly); an infeasible one yields the
multipliers of a contradicting combination (a Farkas-type certificate).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import dot


@dataclass(frozen=True)
class Row:
    coeffs: tuple[Fraction, ...]
    const: Fraction
    strict: bool
    mult: tuple[tuple[int, Fraction], ...]  # (input row index, multiplier)


@dataclass
class FMResult:
    feasible: bool
    point: list[Fraction] | None = None
    # row index -> multiplier; the combination has zero coefficients and a
    # constant violating the (strict or non-strict) sign condition
    farkas: dict[int, Fraction] | None = None


def _normalize(coeffs, const, strict, mult):
    piv = next((x for x in coeffs if x != 0), None)
    if piv is None:
        piv = abs(const) if const != 0 else Fraction(1)
    s = abs(piv)
    return Row(tuple(x / s for x in coeffs), const / s, strict,
               tuple((i, m / s) for i, m in mult))


def _combine(p: Row, q: Row, k: int) -> Row:
    # p has positive, q negative coefficient at variable k
    a, b = p.coeffs[k], -q.coeffs[k]
    coeffs = tuple(b * x + a * y for x, y in zip(p.coeffs, q.coeffs))
    const = b * p.const + a * q.const
    mult: dict[int, Fraction] = {}
    for i, m in p.mult:
        mult[i] = mult.get(i, 0) + b * m
    for i, m in q.mult:
        mult[i] = mult.get(i, 0) + a * m
    return _normalize(coeffs, const, p.strict or q.strict, sorted(mult.items()))


def _violated(row: Row) -> bool:
    return row.const <= 0 if row.strict else row.const < 0


def _dedupe(rows: list[Row]) -> list[Row]:
    best: dict[tuple, Row] = {}
    for r in rows:
        key = (r.coeffs, r.const)
        old = best.get(key)
        if old is None or (r.strict and not old.strict):
            best[key] = r
    # a row is implied by another with the same coefficients and a smaller
    # constant (and at least the same strictness)
    by_coeffs: dict[tuple, Row] = {}
    for r in best.values():
        o = by_coeffs.get(r.coeffs)
        if o is None or r.const < o.const or (r.const == o.const and r.strict and not o.strict):
            by_coeffs[r.coeffs] = r
    return sorted(by_coeffs.values(), key=lambda r: (r.coeffs, r.const, not r.strict))


def feasible(a: Sequence[Sequence[Fraction]], c: Sequence[Fraction],
             strict: bool | Sequence[bool] = True, nvars: int | None = None) -> FMResult:
    """Decide whether ``a[r] · x + c[r] (>|>=) 0`` holds for some rational x."""
    n = nvars if nvars is not None else (len(a[0]) if a else 0)
    flags = [strict] * len(a) if isinstance(strict, bool) else list(strict)
    rows = [_normalize(tuple(Fraction(x) for x in ar), Fraction(cr), fl, ((i, Fraction(1)),))
            for i, (ar, cr, fl) in enumerate(zip(a, c, flags))]

    stages: list[list[Row]] = []
    current = _dedupe(rows)
    for k in range(n):
        for r in current:
            if not any(r.coeffs) and _violated(r):
                return FMResult(False, farkas=dict(r.mult))
        stages.append(current)
        pos = [r for r in current if r.coeffs[k] > 0]
        neg = [r for r in current if r.coeffs[k] < 0]
        nxt = [r for r in current if r.coeffs[k] == 0]
        nxt.extend(_combine(p, q, k) for p in pos for q in neg)
        current = _dedupe(nxt)
    for r in current:
        if _violated(r):
            return FMResult(False, farkas=dict(r.mult))

    x = [Fraction(0)] * n
    for k in reversed(range(n)):
        lo = hi = None
        lo_strict = hi_strict = False
        for r in stages[k]:
            ak = r.coeffs[k]
            if ak == 0:
                continue
            rest = sum((r.coeffs[j] * x[j] for j in range(k + 1, n)), r.const)
            bound = -rest / ak
            if ak > 0:
                if lo is None or bound > lo or (bound == lo and r.strict):
                    lo, lo_strict = bound, r.strict
            else:
                if hi is None or bound < hi or (bound == hi and r.strict):
                    hi, hi_strict = bound, r.strict
        if lo is not None and hi is not None:
            x[k] = (lo + hi) / 2
        elif lo is not None:
            x[k] = lo + 1 if lo_strict else lo
        elif hi is not None:
            x[k] = hi - 1 if hi_strict else hi
        else:
            x[k] = Fraction(0)
    for ar, cr, fl in zip(a, c, flags):
        v = dot([Fraction(t) for t in ar], x) + Fraction(cr)
        if (fl and v <= 0) or (not fl and v < 0):
            raise AssertionError("Fourier-Motzkin back-substitution produced an invalid point")
    return FMResult(True, point=x)


def check_point(a, c, strict, x) -> bool:
    flags = [strict] * len(a) if isinstance(strict, bool) else list(strict)
    for ar, cr, fl in zip(a, c, flags):
        v = dot([Fraction(t) for t in ar], x) + Fraction(cr)
        if (fl and v <= 0) or (not fl and v < 0):
            return False
    return True


def check_farkas(a, c, strict, mult: dict[int, Fraction], nvars: int) -> bool:
    """Re-verify an infeasibility certificate exactly."""
    flags = [strict] * len(a) if isinstance(strict, bool) else list(strict)
    if not mult or any(m < 0 for m in mult.values()) or not any(mult.values()):
        return False
    coeffs = [sum((m * Fraction(a[i][k]) for i, m in mult.items()), Fraction(0)) for k in range(nvars)]
    if any(coeffs):
        return False
    const = sum((m * Fraction(c[i]) for i, m in mult.items()), Fraction(0))
    any_strict = any(flags[i] for i, m in mult.items() if m > 0)
    return const <= 0 if any_strict else const < 0
