"""Bergman fans of matroids, their link factorizations and deletion towers.

Bergman fans live in ``R^E / e_E``.  Coordinates are indexed by every
ground element except the largest one; a vector ``e_S`` is represented by
shifting with a multiple of ``e_E`` so that the largest element's
coordinate is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ColoopInput, InputError, InternalMismatch, VerificationFailure
from .fan import Fan, FanMap, link, primitive, product, star_subdivision
from .linalg import matmul, rank
from .matroid import Matroid, deletion_flat_pairs, delete, interval, is_coloop, is_linear_extension


def bergman_vector(elements: Sequence[int], subset: Iterable[int]) -> tuple[Fraction, ...]:
    """Canonical representative of ``e_S`` in ``R^E / e_E``."""
    s = frozenset(subset)
    last = elements[-1]
    if last in s:
        return tuple(Fraction(0) if e in s else Fraction(-1) for e in elements[:-1])
    return tuple(Fraction(1) if e in s else Fraction(0) for e in elements[:-1])


def lift_to_ground(elements: Sequence[int], coords: Sequence[Fraction]) -> dict[int, Fraction]:
    out = {e: Fraction(x) for e, x in zip(elements[:-1], coords)}
    if elements:
        out[elements[-1]] = Fraction(0)
    return out


def canonical_coords(elements: Sequence[int], values: dict[int, Fraction]) -> tuple[Fraction, ...]:
    """Coordinates of a vector of ``R^E`` in ``R^E / e_E``."""
    shift = values.get(elements[-1], Fraction(0)) if elements else Fraction(0)
    return tuple(values.get(e, Fraction(0)) - shift for e in elements[:-1])


def bergman_fan(m: Matroid) -> Fan:
    """One ray per nontrivial flat, one cone per chain of nontrivial flats."""
    flats = m.nontrivial_flats
    index = {f: k for k, f in enumerate(flats)}
    rays = [bergman_vector(m.elements, f) for f in flats]
    for r in rays:
        if primitive(r) != r:
            raise VerificationFailure(f"Bergman ray {r} is not primitive")
    cones = [[index[f] for f in chain] for chain in m.chains]
    return Fan.from_cones(max(m.size - 1, 0), rays, cones, flats)


def all_ones_weight(fan: Fan) -> dict[frozenset, Fraction]:
    return {c: Fraction(1) for c in fan.max_cones}


# -- links of Bergman fans as products -------------------------------------------

@dataclass
class LinkFactorization:
    chain: tuple[frozenset, ...]
    factors: list[Matroid]
    product_fan: Fan
    link_fan: Fan
    quotient: list[list[Fraction]]
    # product coordinates -> link coordinates
    change_of_coords: list[list[Fraction]]
    # product ray index -> link ray index
    ray_map: dict[int, int]


def link_factorization(m: Matroid, chain: Sequence[Iterable[int]], fan: Fan | None = None) -> LinkFactorization:
    """Express the link of the cone of a flag of flats as a product of interval fans.

    The product of the Bergman fans of ``[G_{t-1}, G_t]`` lives in
    ``prod R^{B_t} / e_{B_t}`` with ``B_t = G_t - G_{t-1}``.  The map to the
    link's quotient coordinates lifts block coordinates to ``R^E``,
    passes to ``R^E / e_E`` and applies the link quotient map; it is an
    isomorphism and carries product rays exactly onto link rays.
    """
    fan = fan if fan is not None else bergman_fan(m)
    chain = tuple(sorted((frozenset(g) for g in chain), key=len))
    for a, b in zip(chain, chain[1:]):
        if not a < b:
            raise InputError("flats must form a strict chain")
    for g in chain:
        if g not in fan.labels:
            raise InputError(f"{sorted(g)} is not a nontrivial flat")
    tau = frozenset(fan.ray_index(g) for g in chain)
    lk, q = link(fan, tau)

    bounds = (frozenset(),) + chain + (m.ground,)
    factors = [interval(m, lo, hi) for lo, hi in zip(bounds, bounds[1:])]
    factor_fans = [bergman_fan(f) for f in factors]
    prod = factor_fans[0]
    for bf in factor_fans[1:]:
        prod = product(prod, bf)
    prod = replace(prod, labels=tuple((t, lab) for t, bf in enumerate(factor_fans) for lab in bf.labels))

    # assemble the change of coordinates column by column
    blocks = [f.elements for f in factors]
    ncols = sum(max(len(b) - 1, 0) for b in blocks)
    cols = []
    for t, block in enumerate(blocks):
        for pos in range(len(block) - 1):
            coords = [Fraction(0)] * (len(block) - 1)
            coords[pos] = Fraction(1)
            values = lift_to_ground(block, coords)
            v = canonical_coords(m.elements, values)
            cols.append([sum((row[k] * v[k] for k in range(len(v))), Fraction(0)) for row in q])
    change = [[cols[j][i] for j in range(ncols)] for i in range(len(q))]
    if len(q) != ncols or (ncols and rank(change) != ncols):
        raise VerificationFailure("product coordinates do not match the link quotient")

    ray_map = {}
    link_index = {v: k for k, v in enumerate(lk.rays)}
    for j in range(prod.nrays):
        img = tuple(sum((row[k] * prod.rays[j][k] for k in range(ncols)), Fraction(0)) for row in change)
        if img not in link_index:
            raise VerificationFailure(f"product ray {j} does not map onto a link ray")
        ray_map[j] = link_index[img]
        t, h = prod.labels[j]
        if lk.labels[ray_map[j]] != h | bounds[t]:
            raise VerificationFailure(f"product ray {j} lands on the ray of a different flat")
    mapped = {frozenset(ray_map[i] for i in c) for c in prod.cones}
    if len(set(ray_map.values())) != prod.nrays or set(ray_map.values()) != set(range(lk.nrays)) \
            or mapped != set(lk.cones):
        raise VerificationFailure("link is not the product of the interval Bergman fans")
    return LinkFactorization(chain, factors, prod, lk, q, change, ray_map)


def link_of_ray_as_product(m: Matroid, flat: Iterable[int]) -> tuple[Fan, Fan, LinkFactorization]:
    """Bergman fans of the localization and contraction at ``flat``."""
    f = frozenset(flat)
    if not f or f == m.ground or not m.is_flat(f):
        raise InputError(f"{sorted(f)} is not a nontrivial flat")
    fac = link_factorization(m, [f])
    return bergman_fan(fac.factors[0]), bergman_fan(fac.factors[1]), fac


# -- deletion tower -----------------------------------------------------------------

@dataclass
class DeletionTower:
    matroid: Matroid
    element: int
    pairs: list[frozenset]
    # fans[j] is Δ_j; fans[0] is the Bergman fan of the matroid
    fans: list[Fan]
    # subdivision_maps[j-1]: Δ_{j-1} -> Δ_j (ambient identity), j = 1..k
    subdivision_maps: list[FanMap]
    # subdivided_cones[j-1]: the cone i < F_j ∪ i of Δ_j
    subdivided_cones: list[frozenset]
    deleted: Matroid
    base: Fan
    projection: FanMap

    @property
    def k(self) -> int:
        return len(self.pairs)

    def tau(self, m: int, j: int) -> frozenset:
        """The cone ``i < F_j ∪ i`` inside Δ_m (1 <= j <= k)."""
        fan = self.fans[m]
        i = frozenset([self.element])
        top = self.pairs[j - 1] | i
        return frozenset([_class_index(fan, i), _class_index(fan, top)])

    def maps_to_base(self, m: int) -> list[FanMap]:
        """Maps from Δ_m down the tower to the base, in application order."""
        return self.subdivision_maps[m:] + [self.projection]


def _class_index(fan: Fan, flat: frozenset) -> int:
    for k, lab in enumerate(fan.labels):
        if flat in lab:
            return k
    raise KeyError(sorted(flat))


def quotient_fan(m: Matroid, merged: Sequence[frozenset], element: int) -> Fan:
    """Fan of the poset of flats with ``F ~ F ∪ i`` for every F in ``merged``."""
    rep = {}
    for f in m.nontrivial_flats:
        rep[f] = f
    for f in merged:
        rep[f | {element}] = f
    classes: dict[frozenset, list[frozenset]] = {}
    for f in m.nontrivial_flats:
        classes.setdefault(rep[f], []).append(f)
    reps = [f for f in m.nontrivial_flats if f in classes]
    index = {r: k for k, r in enumerate(reps)}
    rays = [bergman_vector(m.elements, r) for r in reps]
    cones = {frozenset(index[rep[f]] for f in chain) for chain in m.chains}
    labels = [tuple(classes[r]) for r in reps]
    return Fan.from_cones(max(m.size - 1, 0), rays, cones, labels)


def projection_matrix(elements: Sequence[int], element: int) -> list[list[Fraction]]:
    """Matrix of ``R^E / e_E -> R^{E-i} / e_{E-i}`` in canonical coordinates."""
    rest = [e for e in elements if e != element]
    cols = []
    for pos in range(len(elements) - 1):
        coords = [Fraction(0)] * (len(elements) - 1)
        coords[pos] = Fraction(1)
        values = lift_to_ground(elements, coords)
        values.pop(element, None)
        cols.append(canonical_coords(rest, values))
    return [[cols[j][r] for j in range(len(cols))] for r in range(len(rest) - 1)]


def deletion_tower(m: Matroid, element: int, order: Sequence[Iterable[int]] | None = None,
                   validate: bool = True) -> DeletionTower:
    """Factor ``Δ_M -> Δ_{M \\ i}`` into star subdivisions and a projection.

    Each Δ_j is built from the quotient poset and cross-checked against
    the star subdivision of Δ_j at ``i < F_j ∪ i``.
    """
    if element not in m.ground:
        raise InputError(f"element {element} is not in the ground set")
    if m.size < 2 or is_coloop(m, element):
        raise ColoopInput(f"element {element} is a coloop")
    if not m.is_flat([element]):
        raise InputError(f"{{{element}}} is not a flat; towers need a simple element")
    pairs = deletion_flat_pairs(m, element)
    if order is not None:
        order = [frozenset(f) for f in order]
        if sorted(order, key=sorted) != sorted(pairs, key=sorted):
            raise InputError("custom order must be a permutation of the deletion flat pairs")
        if not is_linear_extension(order):
            raise InputError("custom order must list each flat after all flats it contains")
        pairs = order
    i = frozenset([element])

    fans = [quotient_fan(m, pairs[:j], element) for j in range(len(pairs) + 1)]
    if validate:
        for f in fans:
            f.validate()
    maps, taus = [], []
    for j in range(1, len(pairs) + 1):
        coarse = fans[j]
        tau = frozenset([_class_index(coarse, i), _class_index(coarse, pairs[j - 1])])
        sub, _ = star_subdivision(coarse, tau, (pairs[j - 1] | i,))
        if not sub.same_embedded_fan(fans[j - 1]):
            raise InternalMismatch(f"step {j}: poset fan differs from the star subdivision")
        maps.append(FanMap.identity(fans[j - 1], coarse))
        taus.append(tau)

    deleted = delete(m, element)
    base = bergman_fan(deleted)
    top = fans[-1]
    proj = FanMap.linear(projection_matrix(m.elements, element), top, base)
    killed = _class_index(top, i)
    if any(proj.apply(top.rays[killed])):
        raise InternalMismatch("projection does not contract the ray of the deleted element")
    images = [proj.apply(top.rays[r]) for r in range(top.nrays) if r != killed]
    if len(set(images)) != len(images) or set(images) != set(base.rays):
        raise InternalMismatch("projection is not a bijection on the remaining rays")
    if top.nrays != base.nrays + 1:
        raise InternalMismatch("top fan must have exactly one more ray than the deletion")
    if validate and not proj.is_morphism():
        raise InternalMismatch("projection is not a morphism of fans")
    return DeletionTower(m, element, list(pairs), fans, maps, taus, deleted, base, proj)


def compose_matrices(maps: Sequence[FanMap]) -> list[list[Fraction]]:
    out = None
    for f in maps:
        mat = [list(r) for r in f.matrix]
        out = mat if out is None else matmul(mat, out)
    return out
