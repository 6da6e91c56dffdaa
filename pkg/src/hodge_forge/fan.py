"""Embedded rational simplicial fans.

A :class:`Fan` stores ray generators as exact rational vectors and every
cone (faces included, the zero cone being the empty set) as a frozenset of
ray indices.  Stars, links, products and star subdivisions build new
fans; :class:`FanMap` wraps a linear map between ambient spaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

from . import polyhedral
from .errors import InputError, VerificationFailure
from .linalg import identity, matvec, nullspace, rank, rref, solve, transpose

Vector = tuple[Fraction, ...]
Cone = frozenset


def vec(xs: Iterable) -> Vector:
    return tuple(Fraction(x) for x in xs)


def primitive(v: Sequence[Fraction]) -> Vector:
    """Positive rescaling of ``v`` to an integer vector with content 1."""
    v = vec(v)
    if not any(v):
        raise InputError("zero vector has no primitive representative")
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(Fraction(x // g) for x in ints)


def cone_key(cone: Iterable[int]) -> tuple:
    c = sorted(cone)
    return (len(c), c)


def _faces(cones: Iterable[Iterable[int]]) -> frozenset:
    out = set()
    for c in cones:
        c = tuple(sorted(c))
        for k in range(len(c) + 1):
            out.update(frozenset(s) for s in combinations(c, k))
    return frozenset(out)


@dataclass(frozen=True)
class Fan:
    ambient_dim: int
    rays: tuple[Vector, ...]
    cones: frozenset
    labels: tuple | None = field(default=None, compare=False)
    # index of each ray in the fan this one was cut out of (stars, links)
    parent_rays: tuple[int, ...] | None = field(default=None, compare=False)

    @classmethod
    def from_cones(cls, ambient_dim: int, rays: Iterable[Iterable], cones: Iterable[Iterable[int]],
                   labels: Sequence | None = None, parent_rays: Sequence[int] | None = None) -> "Fan":
        rays = tuple(vec(r) for r in rays)
        for r in rays:
            if len(r) != ambient_dim:
                raise InputError(f"ray {r} does not live in dimension {ambient_dim}")
        all_cones = _faces(cones) | {frozenset()}
        for c in all_cones:
            if any(not 0 <= i < len(rays) for i in c):
                raise InputError(f"cone {sorted(c)} refers to a missing ray")
        return cls(ambient_dim, rays, all_cones,
                   tuple(labels) if labels is not None else None,
                   tuple(parent_rays) if parent_rays is not None else None)

    # -- combinatorics ------------------------------------------------------

    @property
    def nrays(self) -> int:
        return len(self.rays)

    @cached_property
    def sorted_cones(self) -> tuple[frozenset, ...]:
        return tuple(sorted(self.cones, key=cone_key))

    @cached_property
    def dim(self) -> int:
        return max(len(c) for c in self.cones)

    @cached_property
    def max_cones(self) -> tuple[frozenset, ...]:
        return tuple(c for c in self.sorted_cones
                     if not any(c < d for d in self.cones if len(d) == len(c) + 1))

    def cones_of_dim(self, k: int) -> tuple[frozenset, ...]:
        return tuple(c for c in self.sorted_cones if len(c) == k)

    def is_pure(self) -> bool:
        return all(len(c) == self.dim for c in self.max_cones)

    def is_cone(self, rays: Iterable[int]) -> bool:
        return frozenset(rays) in self.cones

    def label(self, i: int):
        return self.labels[i] if self.labels is not None else i

    def ray_index(self, label) -> int:
        if self.labels is None:
            raise KeyError(label)
        return self.labels.index(label)

    def generators(self, cone: Iterable[int]) -> list[Vector]:
        return [self.rays[i] for i in sorted(cone)]

    def signature(self) -> tuple:
        """Embedding-level identity: ray vectors and cones as sets of vectors."""
        return (self.ambient_dim, frozenset(self.rays),
                frozenset(frozenset(self.rays[i] for i in c) for c in self.cones))

    def same_embedded_fan(self, other: "Fan") -> bool:
        return self.signature() == other.signature()

    def __repr__(self) -> str:
        return (f"<Fan ambient={self.ambient_dim} rays={self.nrays} "
                f"max_cones={len(self.max_cones)} dim={self.dim}>")

    # -- geometry -----------------------------------------------------------

    def locate(self, point: Sequence[Fraction]) -> tuple[frozenset, dict[int, Fraction]] | None:
        """Smallest cone containing ``point`` with its (positive) coordinates."""
        p = vec(point)
        if not any(p):
            return frozenset(), {}
        for c in self.max_cones:
            idx = sorted(c)
            if not idx:
                continue
            cols = transpose([list(self.rays[i]) for i in idx])
            sol = solve(cols, list(p), len(idx))
            if sol is None or any(x < 0 for x in sol):
                continue
            coords = {i: x for i, x in zip(idx, sol) if x != 0}
            return frozenset(coords), coords
        return None

    def validate(self) -> None:
        """Check the fan axioms exactly; raises :class:`VerificationFailure`."""
        for i, r in enumerate(self.rays):
            if not any(r):
                raise VerificationFailure(f"ray {i} is zero")
        if len(set(self.rays)) != len(self.rays):
            raise VerificationFailure("two rays share a generator")
        for c in self.cones:
            for k in range(len(c)):
                for s in combinations(sorted(c), k):
                    if frozenset(s) not in self.cones:
                        raise VerificationFailure(f"face {list(s)} of cone {sorted(c)} missing")
            if c and rank([list(v) for v in self.generators(c)]) != len(c):
                raise VerificationFailure(f"cone {sorted(c)} is not simplicial")
        for a, b in combinations(self.max_cones, 2):
            if not cones_meet_in_face(self.generators(a & b), self.generators(a - b),
                                      self.generators(b - a), self.ambient_dim):
                raise VerificationFailure(
                    f"cones {sorted(a)} and {sorted(b)} do not meet in a common face")


def cones_meet_in_face(common, only_a, only_b, n: int) -> bool:
    """True when cone(common+only_a) ∩ cone(common+only_b) = cone(common).

    For simplicial cones this fails exactly when some linear dependency
    among the generators has non-negative, not all zero, coefficients on
    ``only_a`` and non-positive ones on ``only_b``.
    """
    if not only_a or not only_b:
        return True
    # dependencies sum(g v_c) + sum(a v_a) - sum(b v_b) = 0; the cones overlap
    # beyond the common face iff one has a, b >= 0 and not all zero
    cols = list(common) + list(only_a) + [tuple(-x for x in v) for v in only_b]
    ker = nullspace(transpose([list(v) for v in cols], n), len(cols))
    if not ker:
        return True
    if len(ker) == 1:
        tail = ker[0][len(common):]
        return not (all(x >= 0 for x in tail) or all(x <= 0 for x in tail))
    # is there a kernel combination with a, b >= 0 and sum(a, b) >= 1?
    rows = [[v[k] for v in ker] for k in range(len(common), len(cols))]
    total = [sum(col, Fraction(0)) for col in zip(*rows)]
    res = polyhedral.feasible(rows + [total], [0] * len(rows) + [-1], False, len(ker))
    return not res.feasible


# -- constructions -------------------------------------------------------------

def zero_fan(ambient_dim: int = 0) -> Fan:
    return Fan.from_cones(ambient_dim, [], [])


def _check_cone(fan: Fan, tau: Iterable[int]) -> frozenset:
    tau = frozenset(tau)
    if tau not in fan.cones:
        raise InputError(f"{sorted(tau)} is not a cone of the fan")
    return tau


def star(fan: Fan, tau: Iterable[int]) -> Fan:
    tau = _check_cone(fan, tau)
    cones = [c for c in fan.cones if (c | tau) in fan.cones]
    keep = sorted(set().union(*cones)) if cones else []
    new = {old: k for k, old in enumerate(keep)}
    return Fan.from_cones(
        fan.ambient_dim, [fan.rays[i] for i in keep], [[new[i] for i in c] for c in cones],
        [fan.label(i) for i in keep], keep)


def quotient_map(fan: Fan, tau: Iterable[int]) -> list[list[Fraction]]:
    """Matrix of ``V -> V / span(tau)`` in deterministic coordinates.

    The span is row-reduced; the quotient coordinates are the non-pivot
    coordinates of ``v - sum(v[p] * row_p)``.
    """
    n = fan.ambient_dim
    gens = [list(v) for v in fan.generators(tau)]
    red, pivots = rref(gens, n) if gens else ([], [])
    keep = [k for k in range(n) if k not in pivots]
    q = []
    for k in keep:
        row = [Fraction(0)] * n
        row[k] = Fraction(1)
        for r, p in zip(red, pivots):
            row[p] -= r[k]
        q.append(row)
    return q


def link(fan: Fan, tau: Iterable[int]) -> tuple[Fan, list[list[Fraction]]]:
    tau = _check_cone(fan, tau)
    q = quotient_map(fan, tau)
    cones = [c for c in fan.cones if not (c & tau) and (c | tau) in fan.cones]
    keep = sorted(set().union(*cones)) if cones else []
    new = {old: k for k, old in enumerate(keep)}
    rays = [matvec(q, fan.rays[i]) for i in keep]
    out = Fan.from_cones(len(q), rays, [[new[i] for i in c] for c in cones],
                         [fan.label(i) for i in keep], keep)
    return out, q


def product(f1: Fan, f2: Fan) -> Fan:
    n1, n2 = f1.ambient_dim, f2.ambient_dim
    z1, z2 = (Fraction(0),) * n1, (Fraction(0),) * n2
    rays = [r + z2 for r in f1.rays] + [z1 + r for r in f2.rays]
    off = f1.nrays
    cones = [list(a) + [off + j for j in b] for a in f1.max_cones for b in f2.max_cones]
    labels = [(0, f1.label(i)) for i in range(f1.nrays)] + [(1, f2.label(j)) for j in range(f2.nrays)]
    return Fan.from_cones(n1 + n2, rays, cones, labels)


@dataclass(frozen=True)
class FanMap:
    matrix: tuple[tuple[Fraction, ...], ...]
    source: Fan
    target: Fan

    @classmethod
    def linear(cls, matrix, source: Fan, target: Fan) -> "FanMap":
        m = tuple(vec(row) for row in matrix)
        if len(m) != target.ambient_dim or any(len(row) != source.ambient_dim for row in m):
            raise InputError("map matrix has the wrong shape")
        return cls(m, source, target)

    @classmethod
    def identity(cls, source: Fan, target: Fan) -> "FanMap":
        return cls.linear(identity(source.ambient_dim), source, target)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return vec(matvec([list(r) for r in self.matrix], list(v)))

    def image_of_ray(self, i: int) -> tuple[frozenset, dict[int, Fraction]]:
        loc = self.target.locate(self.apply(self.source.rays[i]))
        if loc is None:
            raise VerificationFailure(f"image of ray {i} lies outside the target fan")
        return loc

    def target_cone(self, cone: Iterable[int]) -> frozenset:
        """Smallest target cone containing the image of a source cone."""
        cone = sorted(cone)
        if not cone:
            return frozenset()
        point = [sum(c) for c in zip(*(self.apply(self.source.rays[i]) for i in cone))]
        loc = self.target.locate(point)
        if loc is None:
            raise VerificationFailure(f"image of cone {cone} lies outside the target fan")
        span = loc[0]
        for i in cone:
            img = self.image_of_ray(i)[0]
            if not img <= span:
                raise VerificationFailure(f"cone {cone} is not mapped into a single target cone")
        return span

    def is_morphism(self) -> bool:
        try:
            for c in self.source.max_cones:
                self.target_cone(c)
        except VerificationFailure:
            return False
        return True


def star_subdivision(fan: Fan, tau: Iterable[int], new_label=None) -> tuple[Fan, FanMap]:
    """Insert the ray ``v1 + v2`` into the 2-dimensional cone ``tau``.

    The new ray gets index ``fan.nrays``.  Cones not containing ``tau``
    are kept; every cone ``gamma ∪ tau`` is replaced by ``gamma ∪ {a, new}``
    and ``gamma ∪ {b, new}``.
    """
    tau = _check_cone(fan, tau)
    if len(tau) != 2:
        raise InputError(f"star subdivision needs a 2-dimensional cone, got {sorted(tau)}")
    a, b = sorted(tau)
    new = fan.nrays
    v0 = tuple(x + y for x, y in zip(fan.rays[a], fan.rays[b]))
    cones = [c for c in fan.cones if not tau <= c]
    cones += [c | {new} for c in fan.cones if not tau <= c and (c | tau) in fan.cones]
    labels = [fan.label(i) for i in range(fan.nrays)] + [new_label]
    sub = Fan.from_cones(fan.ambient_dim, list(fan.rays) + [v0], cones, labels)
    return sub, FanMap.identity(sub, fan)
