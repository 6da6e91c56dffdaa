"""Exact rational linear algebra on lists of :class:`~fractions.Fraction`.

Dense matrices are lists of rows.  Everything here is small (tens of
columns at most), so the routines favour clarity over speed; the graded
eliminations in :mod:`hodge_forge.chow` use the sparse :class:`Echelon`
instead.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list[list[Fraction]]


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[frac(x) for x in row] for row in rows]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def transpose(a: Matrix, ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(u, v) if x and y), Fraction(0))


def rref(a: Matrix, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form.  Returns ``(nonzero rows, pivot columns)``.

    Pivots are taken at the smallest available column, so the result is
    canonical for the row space.
    """
    rows = [list(r) for r in a]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a: Matrix, ncols: int) -> Matrix:
    """Basis of ``{x : a x = 0}``, one vector per free column."""
    red, pivots = rref(a, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def solve(a: Matrix, b: Sequence[Fraction], ncols: int) -> list[Fraction] | None:
    """One solution of ``a x = b`` (free variables set to zero), or None."""
    aug = [list(row) + [frac(bi)] for row, bi in zip(a, b)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    red, pivots = rref(aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def in_span(basis: Matrix, v: Sequence[Fraction]) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rank(basis + [list(v)]) == rank(basis)


class Echelon:
    """Incrementally built sparse echelon basis of a row space.

    Rows are dicts ``column -> Fraction``.  Each stored row has its pivot
    at its smallest column with coefficient 1, and stored rows have
    distinct pivots.  :meth:`reduce` returns the unique representative of
    a vector modulo the row space that vanishes on every pivot column.
    """

    def __init__(self) -> None:
        self.rows: dict[int, dict[int, Fraction]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def reduce(self, v: dict[int, Fraction]) -> dict[int, Fraction]:
        v = {c: x for c, x in v.items() if x != 0}
        rows = self.rows
        while True:
            hits = [c for c in v if c in rows]
            if not hits:
                return v
            c = min(hits)
            f = v[c]
            for k, x in rows[c].items():
                y = v.get(k, 0) - f * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)

    def add(self, v: dict[int, Fraction]) -> bool:
        """Insert a row; returns True when it enlarged the row space."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        self.rows[p] = {k: x * inv for k, x in r.items()}
        return True
