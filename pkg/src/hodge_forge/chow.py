"""Chow rings of simplicial fans over the rationals.

``CH(Δ)`` is the Stanley–Reisner ring modulo the global linear functions.
Each graded piece is computed by exact elimination:

* every monomial is first rewritten, modulo the linear relations, into a
  combination of square-free monomials ``x_σ`` (σ a cone).  For a monomial
  with ``x_r`` repeated on support σ we pick a linear functional ``φ`` with
  ``φ(v_r) = 1`` and ``φ(v_s) = 0`` on the other rays of σ; in the Chow
  ring ``x_r = -Σ_{t ∉ σ} φ(v_t) x_t``, which trades one repeated factor
  for a strictly larger support.
* the relations ``θ_j · m`` (all monomials ``m`` of degree k-1) are
  rewritten the same way and row-reduced over the square-free monomials of
  degree k; the non-pivot monomials form the basis of ``CH^k``.

Monomials are sorted tuples of ray indices with repetition, so
``(0, 0, 3)`` is ``x_0^2 x_3``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import InputError, VerificationFailure
from .fan import Fan, FanMap, link
from .linalg import Echelon, dot, nullspace, rank, solve

Monomial = tuple[int, ...]
Poly = dict[Monomial, Fraction]
Weight = dict[frozenset, Fraction]


def monomial_str(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for r in sorted(set(m)):
        e = m.count(r)
        parts.append(f"{r}^{e}")
    return "*".join(parts)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def poly_add(p: Poly, q: Poly, scale: Fraction = Fraction(1)) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


@dataclass(frozen=True)
class LinearRelation:
    functional: tuple[Fraction, ...]
    expansion: dict[int, Fraction]


def linear_relations(fan: Fan) -> list[LinearRelation]:
    """The relations ``θ_j = Σ_r v_r[j] x_r`` for the dual standard basis."""
    out = []
    for j in range(fan.ambient_dim):
        functional = tuple(Fraction(int(k == j)) for k in range(fan.ambient_dim))
        expansion = {r: v[j] for r, v in enumerate(fan.rays) if v[j] != 0}
        out.append(LinearRelation(functional, expansion))
    return out


class ChowRing:
    """Graded presentation of ``CH(fan)`` with multiplication and degree maps."""

    def __init__(self, fan: Fan):
        if not fan.is_pure():
            raise InputError("Chow rings are only computed for pure-dimensional fans")
        self.fan = fan
        self.d = fan.dim
        self._cones = fan.cones
        self._phi: dict[tuple, list[Fraction]] = {}
        self._rewrite: dict[Monomial, Poly] = {}
        self._products: dict[tuple, tuple[Fraction, ...]] = {}
        self.columns: list[list[Monomial]] = []
        self.column_index: list[dict[Monomial, int]] = []
        self.echelons: list[Echelon] = []
        self.basis: list[list[Monomial]] = []
        self.basis_pos: list[dict[int, int]] = []
        for k in range(self.d + 1):
            self._build_degree(k)

    # -- construction -----------------------------------------------------------

    def _is_cone(self, support: Iterable[int]) -> bool:
        return frozenset(support) in self._cones

    def monomials(self, k: int) -> list[Monomial]:
        """All monomials of degree k whose support is a cone."""
        if k == 0:
            return [()]
        out = []
        for cone in self.fan.sorted_cones:
            s = len(cone)
            if s == 0 or s > k:
                continue
            rays = sorted(cone)
            for exps in _compositions(k, s):
                m = []
                for r, e in zip(rays, exps):
                    m.extend([r] * e)
                out.append(tuple(m))
        return out

    def _functional(self, support: Monomial, r: int) -> list[Fraction]:
        """Values ``φ(v_t)`` on all rays, with φ = 1 at r and 0 on the rest of support."""
        key = (support, r)
        if key not in self._phi:
            rays = list(support)
            a = [list(self.fan.rays[s]) for s in rays]
            b = [Fraction(int(s == r)) for s in rays]
            phi = solve(a, b, self.fan.ambient_dim)
            if phi is None:
                raise VerificationFailure(f"cone {rays} is not simplicial")
            self._phi[key] = [dot(phi, v) for v in self.fan.rays]
        return self._phi[key]

    def rewrite(self, m: Monomial) -> Poly:
        """Square-free representative of a monomial modulo the linear relations."""
        if m in self._rewrite:
            return self._rewrite[m]
        support = tuple(sorted(set(m)))
        if not self._is_cone(support):
            out: Poly = {}
        elif len(support) == len(m):
            out = {m: Fraction(1)}
        else:
            r = next(x for x in support if m.count(x) > 1)
            phi = self._functional(support, r)
            rest = list(m)
            rest.remove(r)
            out = {}
            for t, val in enumerate(phi):
                if val == 0 or t in support or not self._is_cone(support + (t,)):
                    continue
                out = poly_add(out, self.rewrite(tuple(sorted(rest + [t]))), -val)
        self._rewrite[m] = out
        return out

    def _build_degree(self, k: int) -> None:
        # reverse lexicographic column order: lex-small monomials survive as basis
        cols = sorted((tuple(sorted(c)) for c in self.fan.cones_of_dim(k)), reverse=True)
        index = {m: i for i, m in enumerate(cols)}
        ech = Echelon()
        if k >= 1:
            for m in self.monomials(k - 1):
                supp = set(m)
                for j in range(self.fan.ambient_dim):
                    row: Poly = {}
                    for t, v in enumerate(self.fan.rays):
                        if v[j] == 0 or not self._is_cone(supp | {t}):
                            continue
                        row = poly_add(row, self.rewrite(tuple(sorted(m + (t,)))), v[j])
                    if row:
                        ech.add({index[mm]: c for mm, c in row.items()})
        basis = [i for i in range(len(cols)) if i not in ech.rows]
        self.columns.append(cols)
        self.column_index.append(index)
        self.echelons.append(ech)
        self.basis.append([cols[i] for i in basis])
        self.basis_pos.append({i: p for p, i in enumerate(basis)})

    # -- graded data ----------------------------------------------------------------

    def dim(self, k: int) -> int:
        return len(self.basis[k]) if 0 <= k <= self.d else 0

    @cached_property
    def hilbert(self) -> tuple[int, ...]:
        return tuple(self.dim(k) for k in range(self.d + 1))

    def relation_rows(self, k: int) -> list[dict[int, Fraction]]:
        return list(self.echelons[k].rows.values())

    # -- elements -----------------------------------------------------------------

    def zero(self, k: int) -> "ChowElement":
        return ChowElement(self, k, (Fraction(0),) * self.dim(k))

    def one(self) -> "ChowElement":
        return ChowElement(self, 0, (Fraction(1),))

    def basis_element(self, k: int, a: int) -> "ChowElement":
        coords = [Fraction(0)] * self.dim(k)
        coords[a] = Fraction(1)
        return ChowElement(self, k, tuple(coords))

    def basis_elements(self, k: int) -> list["ChowElement"]:
        return [self.basis_element(k, a) for a in range(self.dim(k))]

    def from_poly(self, poly: Mapping[Monomial, Fraction], k: int) -> "ChowElement":
        if k > self.d or k < 0:
            return ChowElement(self, k, ())
        vec: Poly = {}
        for m, c in poly.items():
            if len(m) != k:
                raise InputError(f"monomial {m} does not have degree {k}")
            if c:
                vec = poly_add(vec, self.rewrite(tuple(sorted(m))), Fraction(c))
        return self._from_squarefree(vec, k)

    def _from_squarefree(self, vec: Poly, k: int) -> "ChowElement":
        index = self.column_index[k]
        red = self.echelons[k].reduce({index[m]: c for m, c in vec.items()})
        coords = [Fraction(0)] * self.dim(k)
        pos = self.basis_pos[k]
        for i, c in red.items():
            coords[pos[i]] = c
        return ChowElement(self, k, tuple(coords))

    def divisor(self, coefficients: Mapping[int, Fraction]) -> "ChowElement":
        return self.from_poly({(r,): Fraction(c) for r, c in coefficients.items()}, 1)

    def monomial_product(self, a: Monomial, b: Monomial) -> tuple[Fraction, ...]:
        key = (a, b) if a <= b else (b, a)
        if key not in self._products:
            m = tuple(sorted(a + b))
            k = len(m)
            self._products[key] = self.from_poly({m: Fraction(1)}, k).coords if k <= self.d else ()
        return self._products[key]

    def multiply(self, x: "ChowElement", y: "ChowElement") -> "ChowElement":
        k = x.degree + y.degree
        if k > self.d:
            return ChowElement(self, k, ())
        acc = [Fraction(0)] * self.dim(k)
        bx, by = self.basis[x.degree], self.basis[y.degree]
        for i, ci in enumerate(x.coords):
            if not ci:
                continue
            for j, cj in enumerate(y.coords):
                if not cj:
                    continue
                prod = self.monomial_product(bx[i], by[j])
                c = ci * cj
                for p, v in enumerate(prod):
                    if v:
                        acc[p] += c * v
        return ChowElement(self, k, tuple(acc))

    def power(self, x: "ChowElement", p: int) -> "ChowElement":
        out = self.one()
        for _ in range(p):
            out = self.multiply(out, x)
        return out

    def multiplication_matrix(self, x: "ChowElement", k: int) -> list[list[Fraction]]:
        """Matrix of ``y -> x*y`` from CH^k to CH^{k+deg x} (columns = images)."""
        target = k + x.degree
        cols = [self.multiply(x, b).coords for b in self.basis_elements(k)]
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.dim(target))]

    # -- degree maps ----------------------------------------------------------------

    def degree(self, w: Mapping[frozenset, Fraction], x: "ChowElement") -> Fraction:
        if x.degree != self.d:
            raise InputError(f"degree map needs a class of degree {self.d}, got {x.degree}")
        return sum((c * Fraction(w[frozenset(m)]) for c, m in zip(x.coords, self.basis[self.d]) if c),
                   Fraction(0))

    def degree_of_poly(self, w: Mapping[frozenset, Fraction], poly: Mapping[Monomial, Fraction]) -> Fraction:
        return self.degree(w, self.from_poly(poly, self.d))

    def weight_annihilates_relations(self, w: Mapping[frozenset, Fraction]) -> bool:
        """True when ``deg_w`` vanishes on every relation of top degree."""
        cols = self.columns[self.d]
        return all(sum((c * Fraction(w[frozenset(cols[i])]) for i, c in row.items()), Fraction(0)) == 0
                   for row in self.relation_rows(self.d))


@dataclass(frozen=True)
class ChowElement:
    ring: ChowRing
    degree: int
    coords: tuple[Fraction, ...]

    def __add__(self, other: "ChowElement") -> "ChowElement":
        self._same(other)
        return ChowElement(self.ring, self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ChowElement") -> "ChowElement":
        return self + (-1) * other

    def __rmul__(self, c) -> "ChowElement":
        c = Fraction(c)
        return ChowElement(self.ring, self.degree, tuple(c * a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, ChowElement):
            return self.ring.multiply(self, other)
        return other * self

    def __neg__(self) -> "ChowElement":
        return (-1) * self

    def is_zero(self) -> bool:
        return not any(self.coords)

    def poly(self) -> Poly:
        basis = self.ring.basis[self.degree] if self.degree <= self.ring.d else []
        return {m: c for m, c in zip(basis, self.coords) if c}

    def _same(self, other: "ChowElement") -> None:
        if other.ring is not self.ring or other.degree != self.degree:
            raise InputError("elements live in different graded pieces")

    def __eq__(self, other) -> bool:
        return (isinstance(other, ChowElement) and other.ring is self.ring
                and other.degree == self.degree and other.coords == self.coords)

    def __hash__(self) -> int:
        return hash((id(self.ring), self.degree, self.coords))

    def __repr__(self) -> str:
        terms = [f"{c}*x[{monomial_str(m)}]" for m, c in self.poly().items()]
        return f"<CH^{self.degree}: {' + '.join(terms) or '0'}>"


def chow_ring(fan: Fan) -> ChowRing:
    return ChowRing(fan)


# the graded pieces with their bases and normal forms live on the ring
chow_space = chow_ring


# -- Minkowski weights --------------------------------------------------------------

def _balancing_rows(fan: Fan, tau: frozenset, max_cones: Sequence[frozenset]) -> list[list[Fraction]]:
    """Linear conditions on weights expressing balancing at codim-1 cone tau."""
    n = fan.ambient_dim
    ann = nullspace([list(v) for v in fan.generators(tau)], n) if tau else \
        [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rows = []
    for h in ann:
        row = [Fraction(0)] * len(max_cones)
        for k, s in enumerate(max_cones):
            if tau < s:
                (extra,) = tuple(s - tau)
                row[k] = dot(h, fan.rays[extra])
        if any(row):
            rows.append(row)
    return rows


def is_balanced(fan: Fan, w: Mapping[frozenset, Fraction]) -> tuple[bool, frozenset | None]:
    """Check the balancing condition at every codimension-one cone."""
    if not fan.is_pure():
        raise InputError("balancing needs a pure-dimensional fan")
    maxc = list(fan.max_cones)
    missing = [c for c in maxc if c not in w]
    if missing:
        raise InputError(f"weight undefined on cone {sorted(missing[0])}")
    vals = [Fraction(w[c]) for c in maxc]
    for tau in fan.cones_of_dim(fan.dim - 1):
        for row in _balancing_rows(fan, tau, maxc):
            if dot(row, vals) != 0:
                return False, tau
    return True, None


def mw_space(fan: Fan, ring: ChowRing | None = None) -> list[Weight]:
    """Basis of the Minkowski weights; its size must equal ``dim CH^d``."""
    if not fan.is_pure():
        raise InputError("Minkowski weights need a pure-dimensional fan")
    maxc = list(fan.max_cones)
    rows = []
    for tau in fan.cones_of_dim(fan.dim - 1):
        rows.extend(_balancing_rows(fan, tau, maxc))
    basis = nullspace(rows, len(maxc)) if rows else \
        [[Fraction(int(i == j)) for j in range(len(maxc))] for i in range(len(maxc))]
    out = [{c: x for c, x in zip(maxc, b)} for b in basis]
    ring = ring if ring is not None else ChowRing(fan)
    if len(out) != ring.dim(ring.d):
        raise VerificationFailure(
            f"dim MW = {len(out)} but dim CH^{ring.d} = {ring.dim(ring.d)}")
    return out


# -- links, restriction, pullback ---------------------------------------------------------

def elimination_substitution(fan: Fan, tau: frozenset, link_fan: Fan) -> dict[int, Poly]:
    """``x_j = -Σ_k φ_j(v_k) x_k`` (k over link rays) for each ray j of τ.

    ``φ_j`` is a linear functional with ``φ_j(v_i) = δ_ij`` on the rays of τ.
    """
    rays = sorted(tau)
    a = [list(fan.rays[s]) for s in rays]
    to_link = {p: k for k, p in enumerate(link_fan.parent_rays)}
    out: dict[int, Poly] = {}
    for j in rays:
        phi = solve(a, [Fraction(int(s == j)) for s in rays], fan.ambient_dim)
        sub = {}
        for p in link_fan.parent_rays:
            val = dot(phi, fan.rays[p])
            if val:
                sub[(to_link[p],)] = -val
        out[j] = sub
    return out


def _restrict_coefficients(coefficients, tau, to_link, substitution, nrays) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {k: Fraction(0) for k in range(nrays)}
    for r, c in coefficients.items():
        c = Fraction(c)
        if not c:
            continue
        if r in tau:
            for (k,), v in substitution[r].items():
                out[k] += c * v
        elif r in to_link:
            out[to_link[r]] += c
    return out


def restrict_divisor(fan: Fan, coefficients: Mapping[int, Fraction], tau: Iterable[int]) -> tuple[Fan, dict[int, Fraction]]:
    """Link fan of τ and the restricted ray coefficients of a degree-1 class."""
    tau = frozenset(tau)
    lk, _ = link(fan, tau)
    to_link = {p: k for k, p in enumerate(lk.parent_rays)}
    sub = elimination_substitution(fan, tau, lk)
    return lk, _restrict_coefficients(coefficients, tau, to_link, sub, lk.nrays)


class LinkData:
    """A cone τ together with its link fan, link ring and elimination data."""

    def __init__(self, ring: ChowRing, tau: Iterable[int], link_ring: ChowRing | None = None):
        self.ring = ring
        self.tau = frozenset(tau)
        self.fan, self.quotient = link(ring.fan, self.tau)
        self._link_ring = link_ring
        self.to_link = {p: k for k, p in enumerate(self.fan.parent_rays)}
        self.substitution = elimination_substitution(ring.fan, self.tau, self.fan)

    @property
    def link_ring(self) -> ChowRing:
        if self._link_ring is None:
            self._link_ring = ChowRing(self.fan)
        return self._link_ring

    def _mul_link(self, p: Poly, q: Poly) -> Poly:
        out: Poly = {}
        cones = self.fan.cones
        for a, ca in p.items():
            for b, cb in q.items():
                m = tuple(sorted(a + b))
                if frozenset(m) not in cones:
                    continue
                v = out.get(m, 0) + ca * cb
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def restrict_poly(self, poly: Mapping[Monomial, Fraction], k: int) -> "ChowElement":
        fan = self.ring.fan
        out: Poly = {}
        for m, c in poly.items():
            supp = frozenset(m)
            if (supp | self.tau) not in fan.cones:
                continue
            term: Poly = {(): Fraction(c)}
            for r in m:
                factor = self.substitution[r] if r in self.tau else {(self.to_link[r],): Fraction(1)}
                term = self._mul_link(term, factor)
                if not term:
                    break
            out = poly_add(out, term)
        return self.link_ring.from_poly(out, k)

    def restrict(self, x: ChowElement) -> ChowElement:
        """``x|_link``: restrict to the star, then eliminate the variables of τ."""
        return self.restrict_poly(x.poly(), x.degree)

    def restrict_divisor(self, coefficients: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Ray coefficients of the restricted representative of a degree-1 class."""
        return _restrict_coefficients(coefficients, self.tau, self.to_link, self.substitution, self.fan.nrays)

    def lift(self, f: ChowElement) -> Poly:
        """``π^*(f)`` as a polynomial in the parent's variables (x_γ -> x_γ)."""
        parents = self.fan.parent_rays
        return {tuple(sorted(parents[r] for r in m)): c for m, c in f.poly().items()}

    def restrict_weight(self, w: Mapping[frozenset, Fraction]) -> Weight:
        parents = self.fan.parent_rays
        out = {g: Fraction(w[frozenset(parents[r] for r in g) | self.tau]) for g in self.fan.max_cones}
        ok, bad = is_balanced(self.fan, out)
        if not ok:
            raise VerificationFailure(f"restricted weight is unbalanced at {sorted(bad)}")
        return out

    def adjunction_sides(self, w: Mapping[frozenset, Fraction], f: ChowElement,
                         res_w: Mapping[frozenset, Fraction] | None = None) -> tuple[Fraction, Fraction]:
        """``deg_w(x_τ · π^*f)`` and ``deg_{res w}(f)`` for top-degree f on the link."""
        res_w = res_w if res_w is not None else self.restrict_weight(w)
        x_tau = tuple(sorted(self.tau))
        lifted = {tuple(sorted(x_tau + m)): c for m, c in self.lift(f).items()}
        lhs = self.ring.degree(w, self.ring.from_poly(lifted, self.ring.d))
        rhs = self.link_ring.degree(res_w, f)
        return lhs, rhs


def restrict_to_link(x: ChowElement, tau: Iterable[int], data: LinkData | None = None) -> ChowElement:
    data = data if data is not None else LinkData(x.ring, tau)
    return data.restrict(x)


def restrict_weight(fan: Fan, w: Mapping[frozenset, Fraction], tau: Iterable[int]) -> tuple[Fan, Weight]:
    tau = frozenset(tau)
    lk, _ = link(fan, tau)
    parents = lk.parent_rays
    out = {g: Fraction(w[frozenset(parents[r] for r in g) | tau]) for g in lk.max_cones}
    ok, bad = is_balanced(lk, out)
    if not ok:
        raise VerificationFailure(f"restricted weight is unbalanced at {sorted(bad)}")
    return lk, out


def adjunction_check(ring: ChowRing, w, tau, f: ChowElement, data: LinkData | None = None) -> bool:
    data = data if data is not None else LinkData(ring, tau, f.ring)
    lhs, rhs = data.adjunction_sides(w, f)
    return lhs == rhs


def pullback_divisor(fmap: FanMap, coefficients: Mapping[int, Fraction]) -> dict[int, Fraction]:
    """Pull back a piecewise-linear function given by its values on target rays."""
    out = {}
    for s in range(fmap.source.nrays):
        _, coords = fmap.image_of_ray(s)
        out[s] = sum((c * Fraction(coefficients.get(r, 0)) for r, c in coords.items()), Fraction(0))
    return out


class Pullback:
    """``f^*: CH(target) -> CH(source)`` for a morphism of fans."""

    def __init__(self, fmap: FanMap, source: ChowRing, target: ChowRing):
        if not fmap.is_morphism():
            raise InputError("map is not a morphism of fans")
        self.fmap, self.source, self.target = fmap, source, target
        self.ray_images = {r: pullback_divisor(fmap, {r: Fraction(1)}) for r in range(fmap.target.nrays)}

    def poly(self, poly: Mapping[Monomial, Fraction]) -> Poly:
        cones = self.source.fan.cones
        out: Poly = {}
        for m, c in poly.items():
            term: Poly = {(): Fraction(c)}
            for r in m:
                nxt: Poly = {}
                for a, ca in term.items():
                    for s, cs in self.ray_images[r].items():
                        if not cs:
                            continue
                        mm = tuple(sorted(a + (s,)))
                        if frozenset(mm) not in cones:
                            continue
                        nxt[mm] = nxt.get(mm, 0) + ca * cs
                term = {k: v for k, v in nxt.items() if v}
                if not term:
                    break
            out = poly_add(out, term)
        return out

    def __call__(self, x: ChowElement) -> ChowElement:
        return self.source.from_poly(self.poly(x.poly()), x.degree)

    def divisor(self, coefficients: Mapping[int, Fraction]) -> dict[int, Fraction]:
        return pullback_divisor(self.fmap, coefficients)

    def matrix(self, k: int) -> list[list[Fraction]]:
        cols = [self(b).coords for b in self.target.basis_elements(k)]
        return [[cols[j][i] for j in range(len(cols))] for i in range(self.source.dim(k))]

    def is_graded_bijection(self) -> bool:
        for k in range(max(self.source.d, self.target.d) + 1):
            if self.source.dim(k) != self.target.dim(k):
                return False
            if self.source.dim(k) and rank(self.matrix(k)) != self.source.dim(k):
                return False
        return True


def pullback(fmap: FanMap, x: ChowElement, source: ChowRing) -> ChowElement:
    return Pullback(fmap, source, x.ring)(x)


# -- products ---------------------------------------------------------------------

def convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def product_chow_iso_check(r1: ChowRing, r2: ChowRing, prod_ring: ChowRing,
                           offset: int | None = None) -> bool:
    """``CH(Δ1 × Δ2) ≅ CH(Δ1) ⊗ CH(Δ2)`` via ``x_σ ⊗ x_γ -> x_σ x_γ``.

    ``prod_ring`` must be the ring of ``product(Δ1, Δ2)`` (second factor's
    rays shifted by ``offset``, default the number of rays of Δ1).
    """
    off = r1.fan.nrays if offset is None else offset
    if list(prod_ring.hilbert) != convolve(r1.hilbert, r2.hilbert):
        return False
    for k in range(prod_ring.d + 1):
        cols = []
        for i in range(0, k + 1):
            j = k - i
            if i > r1.d or j > r2.d:
                continue
            for a in r1.basis[i]:
                for b in r2.basis[j]:
                    m = tuple(sorted(a + tuple(off + t for t in b)))
                    cols.append(prod_ring.from_poly({m: Fraction(1)}, k).coords)
        if len(cols) != prod_ring.dim(k):
            return False
        if cols and rank([list(c) for c in cols]) != len(cols):
            return False
    return True


def random_relation_multiple(ring: ChowRing, k: int, rng: random.Random, terms: int = 3) -> Poly:
    """A random element of ``(θ) · A^{k-1}`` written as a polynomial (zero in CH)."""
    mons = ring.monomials(k - 1)
    rels = linear_relations(ring.fan)
    out: Poly = {}
    if not rels:
        return out
    for _ in range(terms):
        m = rng.choice(mons)
        theta = rng.choice(rels)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        for r, v in theta.expansion.items():
            mm = tuple(sorted(m + (r,)))
            out = poly_add(out, {mm: v}, c)
    return out
