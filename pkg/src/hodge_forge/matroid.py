"""Matroids given by their lattice of flats.

A :class:`Matroid` stores its ground elements (positive integer labels,
``1..n`` unless it came from an interval or a deletion) together with the
full list of flats in canonical order: by rank, then lexicographically by
sorted members.  Construction always goes through :meth:`Matroid.from_flats`,
which checks the flat axioms and computes ranks.

The rank of a flat is the number of covering steps in a maximal chain
``∅ ⋖ … ⋖ F``; the rank of the matroid is the rank of the ground set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import AxiomViolation, ColoopInput, InputError
from .linalg import rank as matrix_rank, to_matrix

Flat = frozenset


def flat_key(rank: int, flat: Iterable[int]) -> tuple:
    return (rank, tuple(sorted(flat)))


def _fmt(flat) -> list[int]:
    return sorted(flat)


@dataclass(frozen=True)
class Matroid:
    elements: tuple[int, ...]
    flats: tuple[frozenset, ...]
    ranks: dict = field(compare=False, hash=False, repr=False)
    name: str | None = field(default=None, compare=False)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_flats(cls, elements: Iterable[int], flats: Iterable[Iterable[int]],
                   name: str | None = None) -> "Matroid":
        elements = tuple(sorted(set(elements)))
        ground = frozenset(elements)
        family: set[frozenset] = set()
        for f in flats:
            f = frozenset(f)
            if not f <= ground:
                raise InputError(f"flat {_fmt(f)} has elements outside the ground set {list(elements)}")
            family.add(f)
        if frozenset() not in family:
            raise AxiomViolation("empty-flat", [], "the empty set must be a flat")
        if ground not in family:
            raise AxiomViolation("ground-flat", list(elements), "the ground set must be a flat")

        for a, b in combinations(sorted(family, key=lambda f: (len(f), sorted(f))), 2):
            if a & b not in family:
                raise AxiomViolation(
                    "intersection", [_fmt(a), _fmt(b)],
                    f"intersection of {_fmt(a)} and {_fmt(b)} is not a flat")

        by_size = sorted(family, key=lambda f: (len(f), sorted(f)))
        covers = _covers(by_size)
        for f in by_size:
            for x in elements:
                if x in f:
                    continue
                hits = [g for g in covers[f] if x in g]
                if len(hits) != 1:
                    raise AxiomViolation(
                        "cover-partition", {"flat": _fmt(f), "element": x,
                                            "covers_containing": [_fmt(g) for g in hits]},
                        f"element {x} lies in {len(hits)} covers of flat {_fmt(f)} (expected exactly 1)")

        lengths: dict[frozenset, set[int]] = {frozenset(): {0}}
        for g in by_size[1:]:
            below = [f for f in by_size if f < g and g in covers[f]]
            lengths[g] = {n + 1 for f in below for n in lengths[f]}
        ranks = {}
        for f in by_size:
            if len(lengths[f]) != 1:
                raise AxiomViolation(
                    "graded", {"flat": _fmt(f), "chain_lengths": sorted(lengths[f])},
                    f"maximal chains below {_fmt(f)} have different lengths")
            ranks[f] = next(iter(lengths[f]))
        ordered = tuple(sorted(family, key=lambda f: flat_key(ranks[f], f)))
        return cls(elements, ordered, ranks, name)

    # -- basic data --------------------------------------------------------

    @property
    def ground(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def rank(self) -> int:
        return self.ranks[self.ground]

    def rank_of(self, flat: Iterable[int]) -> int:
        return self.ranks[frozenset(flat)]

    def is_flat(self, subset: Iterable[int]) -> bool:
        return frozenset(subset) in self.ranks

    @cached_property
    def nontrivial_flats(self) -> tuple[frozenset, ...]:
        ground = self.ground
        return tuple(f for f in self.flats if f and f != ground)

    def closure(self, subset: Iterable[int]) -> frozenset:
        s = frozenset(subset)
        return min((f for f in self.flats if s <= f), key=len)

    def flats_of_rank(self, r: int) -> list[frozenset]:
        return [f for f in self.flats if self.ranks[f] == r]

    def flag_counts(self) -> list[int]:
        return [len(self.flats_of_rank(r)) for r in range(self.rank + 1)]

    @cached_property
    def chains(self) -> tuple[tuple[frozenset, ...], ...]:
        """All chains of nontrivial flats (including the empty chain)."""
        flats = self.nontrivial_flats
        out: list[tuple[frozenset, ...]] = [()]

        def extend(chain):
            top = chain[-1]
            for g in flats:
                if top < g:
                    nxt = chain + (g,)
                    out.append(nxt)
                    extend(nxt)

        for f in flats:
            out.append((f,))
            extend((f,))
        return tuple(out)

    def is_boolean(self) -> bool:
        return len(self.flats) == 2 ** self.size

    def __repr__(self) -> str:
        label = self.name or "Matroid"
        return f"<{label} on {list(self.elements)}, rank {self.rank}, {len(self.flats)} flats>"


def _covers(by_size: Sequence[frozenset]) -> dict[frozenset, list[frozenset]]:
    covers: dict[frozenset, list[frozenset]] = {}
    for f in by_size:
        above = [g for g in by_size if f < g]
        covers[f] = [g for g in above if not any(f < h < g for h in above)]
    return covers


# -- constructors ----------------------------------------------------------

def matroid_from_flats(ground_size: int, flats: Iterable[Iterable[int]],
                       name: str | None = None) -> Matroid:
    if ground_size < 1:
        raise InputError("ground_size must be at least 1")
    return Matroid.from_flats(range(1, ground_size + 1), flats, name)


def boolean_matroid(n: int) -> Matroid:
    if n < 1:
        raise InputError("n must be at least 1")
    ground = range(1, n + 1)
    flats = [c for k in range(n + 1) for c in combinations(ground, k)]
    return Matroid.from_flats(ground, flats, f"B{n}")


def uniform_matroid(k: int, n: int) -> Matroid:
    if not 1 <= k <= n:
        raise InputError(f"uniform matroid needs 1 <= k <= n, got k={k}, n={n}")
    ground = range(1, n + 1)
    flats = [c for r in range(k) for c in combinations(ground, r)] + [tuple(ground)]
    return Matroid.from_flats(ground, flats, f"U({k},{n})")


def matroid_from_vectors(matrix: Sequence[Sequence]) -> Matroid:
    """Matroid of the columns of a rational matrix (elements ``1..#columns``)."""
    a = to_matrix(matrix)
    if not a or not a[0]:
        raise InputError("matrix must have at least one row and one column")
    ncols = len(a[0])
    cols = [[row[j] for row in a] for j in range(ncols)]
    zero = [j + 1 for j, c in enumerate(cols) if not any(c)]
    if zero:
        raise InputError(f"zero column(s) {zero}: loops are not supported")

    ranks: dict[frozenset, int] = {}

    def rk(s: frozenset) -> int:
        if s not in ranks:
            ranks[s] = matrix_rank([cols[j] for j in sorted(s)]) if s else 0
        return ranks[s]

    flats = set()
    for k in range(ncols + 1):
        for s in combinations(range(ncols), k):
            s = frozenset(s)
            r = rk(s)
            flats.add(frozenset(e + 1 for e in range(ncols) if rk(s | {e}) == r))
    return Matroid.from_flats(range(1, ncols + 1), flats)


# -- lattice operations ----------------------------------------------------

def interval(m: Matroid, lower: Iterable[int], upper: Iterable[int]) -> Matroid:
    """The matroid on ``upper - lower`` with flats ``H - lower`` for lower <= H <= upper."""
    lo, hi = frozenset(lower), frozenset(upper)
    if lo not in m.ranks or hi not in m.ranks:
        raise InputError("interval endpoints must be flats")
    if not lo <= hi:
        raise InputError(f"{_fmt(lo)} is not below {_fmt(hi)}")
    flats = [h - lo for h in m.flats if lo <= h <= hi]
    return Matroid.from_flats(sorted(hi - lo), flats)


def localization(m: Matroid, flat: Iterable[int]) -> Matroid:
    return interval(m, (), flat)


def contraction(m: Matroid, flat: Iterable[int]) -> Matroid:
    return interval(m, flat, m.ground)


def _check_element(m: Matroid, i: int) -> None:
    if i not in m.ground:
        raise InputError(f"element {i} is not in the ground set {list(m.elements)}")


def delete(m: Matroid, i: int) -> Matroid:
    _check_element(m, i)
    if m.size < 2:
        raise InputError("cannot delete from a one-element matroid")
    return Matroid.from_flats([e for e in m.elements if e != i], {f - {i} for f in m.flats})


def is_coloop(m: Matroid, i: int) -> bool:
    return delete(m, i).rank < m.rank


def coloops(m: Matroid) -> list[int]:
    if m.size < 2:
        return list(m.elements)
    return [i for i in m.elements if is_coloop(m, i)]


def deletion_flat_pairs(m: Matroid, i: int) -> list[frozenset]:
    """Nontrivial flats ``F`` not containing ``i`` such that ``F ∪ {i}`` is a flat.

    The list is ordered by rank and then lexicographically, which refines
    inclusion.
    """
    _check_element(m, i)
    if is_coloop(m, i):
        raise ColoopInput(f"element {i} is a coloop")
    return [f for f in m.nontrivial_flats if i not in f and m.is_flat(f | {i})]


def is_linear_extension(order: Sequence[frozenset]) -> bool:
    """True when no set in ``order`` is a proper superset of a later one."""
    return not any(order[b] < order[a] for a in range(len(order)) for b in range(a + 1, len(order)))
