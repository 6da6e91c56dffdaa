"""Independent reference computations used only by the tests.

None of these reuse the package's elimination, rewriting or solver code.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import numpy as np
import sympy
from scipy.optimize import linprog
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def chain_basis_hilbert(flats_by_rank: dict[frozenset, int], rank: int) -> list[int]:
    """Hilbert function from the standard monomial basis of the flat presentation.

    Basis monomials are ``x_{F1}^{a1} ... x_{Fk}^{ak}`` over chains
    ``∅ < F1 < ... < Fk`` of nonempty flats with
    ``1 <= a_t <= rk F_t - rk F_{t-1} - 1``.
    """
    d = rank - 1
    counts = [0] * (d + 1)
    nonempty = sorted((f for f in flats_by_rank if f), key=lambda f: (flats_by_rank[f], sorted(f)))

    def walk(prev: frozenset, prev_rank: int, degree: int) -> None:
        counts[degree] += 1
        for f in nonempty:
            if prev < f:
                gap = flats_by_rank[f] - prev_rank
                for a in range(1, gap):
                    walk(f, flats_by_rank[f], degree + a)

    walk(frozenset(), 0, 0)
    return counts


def qq_rank(rows: list[list[Fraction]], ncols: int) -> int:
    if not rows or ncols == 0:
        return 0
    dm = DomainMatrix([[QQ(int(x.numerator), int(x.denominator)) for x in r] for r in rows], (len(rows), ncols), QQ)
    return dm.rank()


def dense_chow_hilbert(rays, cones) -> list[int]:
    """dim of each graded piece of SR(Δ)/(θ) from the full monomial basis.

    Every monomial (repeated variables allowed) with cone support is a
    column; rows are θ_j times every such monomial of one degree less.
    """
    rays = [tuple(Fraction(x) for x in v) for v in rays]
    cones = {frozenset(c) for c in cones}
    n = len(rays[0]) if rays else 0
    d = max((len(c) for c in cones), default=0)

    def mons(k):
        return [m for m in combinations_with_replacement(range(len(rays)), k) if frozenset(m) in cones]

    out = []
    for k in range(d + 1):
        cols = mons(k)
        index = {m: t for t, m in enumerate(cols)}
        rows = []
        if k >= 1:
            for m in mons(k - 1):
                for j in range(n):
                    row = [Fraction(0)] * len(cols)
                    for r, v in enumerate(rays):
                        if v[j]:
                            mm = tuple(sorted(m + (r,)))
                            if mm in index:
                                row[index[mm]] += v[j]
                    if any(row):
                        rows.append(row)
        out.append(len(cols) - qq_rank(rows, len(cols)))
    return out


def brute_flats_from_vectors(matrix) -> set[frozenset]:
    a = sympy.Matrix(matrix)
    n = a.shape[1]

    def rk(s):
        return a[:, sorted(s)].rank() if s else 0

    flats = set()
    for size in range(n + 1):
        for s in combinations(range(n), size):
            r = rk(s)
            if all(rk(s + (e,)) > r for e in range(n) if e not in s):
                flats.add(frozenset(x + 1 for x in s))
    return flats


def brute_is_matroid(n: int, family) -> bool:
    fam = {frozenset(f) for f in family}
    ground = frozenset(range(1, n + 1))
    if frozenset() not in fam or ground not in fam:
        return False
    if any(a & b not in fam for a in fam for b in fam):
        return False
    for f in fam:
        covers = [g for g in fam if f < g and not any(f < h < g for h in fam)]
        for x in ground - f:
            if sum(1 for g in covers if x in g) != 1:
                return False
    return True


def lp_margin(rays, coeffs) -> float:
    """max t subject to a_r + m(v_r) >= t for all r and t <= 1 (scipy LP)."""
    if not rays:
        return 1.0
    n = len(rays[0])
    # variables (m_1..m_n, t); minimise -t
    c = np.zeros(n + 1)
    c[-1] = -1.0
    a_ub = np.array([[-float(x) for x in v] + [1.0] for v in rays])
    b_ub = np.array([float(a) for a in coeffs])
    bounds = [(None, None)] * n + [(None, 1.0)]
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    assert res.status == 0, res.message
    return -res.fun


def float_inertia(a) -> tuple[int, int, int]:
    """Inertia from numpy eigenvalues; zero count cross-checked by exact rank."""
    m = np.array([[float(x) for x in r] for r in a]) if len(a) else np.zeros((0, 0))
    if m.size == 0:
        return (0, 0, 0)
    ev = np.linalg.eigvalsh(m)
    exact_rank = sympy.Matrix(a).rank()
    zeros = len(a) - exact_rank
    order = np.argsort(np.abs(ev))
    nonzero = ev[order[zeros:]]
    return (int((nonzero > 0).sum()), int((nonzero < 0).sum()), zeros)
