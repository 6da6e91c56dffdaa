"""Poincaré duality, Hard Lefschetz and Hodge–Riemann checks on Chow rings.

All ranks and signatures are exact.  For a degree-one class ``ℓ`` and
``0 <= i <= d/2`` the relevant objects are

* the Lefschetz map ``ℓ^{d-2i}: CH^i -> CH^{d-i}``,
* the form ``B_ℓ(x, y) = deg(x · ℓ^{d-2i} · y)`` on ``CH^i`` (``Q_ℓ`` is its
  quadratic form),
* the primitive part ``P^i = ker(ℓ^{d-2i+1}: CH^i -> CH^{d-i+1})``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .chow import ChowElement, ChowRing, LinkData, Pullback
from .convexity import DivisorClass
from .errors import InputError
from .fan import Fan, FanMap
from .linalg import Matrix, matmul, nullspace, rank


@dataclass(frozen=True)
class SignatureTriple:
    positives: int
    negatives: int
    zeros: int

    @property
    def value(self) -> int:
        return self.positives - self.negatives

    def as_list(self) -> list[int]:
        return [self.positives, self.negatives, self.zeros]


def signature(a: Sequence[Sequence]) -> SignatureTriple:
    """Inertia of a symmetric rational matrix by congruence diagonalization.

    Pivots are taken on the diagonal when possible.  When every remaining
    diagonal entry vanishes but some ``a[k][j]`` does not, row and column j
    are added to row and column k, which makes the new diagonal entry
    ``2 a[k][j]`` nonzero.
    """
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    for i in range(n):
        if len(m[i]) != n:
            raise InputError("signature needs a square matrix")
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise InputError("signature needs a symmetric matrix")
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((k for k in active if m[k][k] != 0), None)
        if piv is None:
            pair = next(((k, j) for k in active for j in active if j != k and m[k][j] != 0), None)
            if pair is None:
                break
            k, j = pair
            for t in range(n):
                m[k][t] += m[j][t]
            for t in range(n):
                m[t][k] += m[t][j]
            piv = k
        p = m[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        row = m[piv]
        for r in active:
            f = m[r][piv] / p
            if f:
                mr = m[r]
                for c in active:
                    mr[c] -= f * row[c]
        for r in active:
            m[r][piv] = m[piv][r] = Fraction(0)
    return SignatureTriple(pos, neg, n - pos - neg)


def _as_element(ring: ChowRing, ell) -> ChowElement:
    if isinstance(ell, ChowElement):
        return ell
    if isinstance(ell, DivisorClass):
        return ring.divisor(ell.as_dict())
    return ring.divisor(ell)


def poincare_pairing(ring: ChowRing, w: Mapping[frozenset, Fraction], i: int) -> Matrix:
    """``deg_w(b_a · b'_c)`` over bases of ``CH^i`` and ``CH^{d-i}``."""
    d = ring.d
    if not 0 <= i <= d:
        raise InputError(f"degree {i} outside 0..{d}")
    top = ring.basis[d]
    wt = [Fraction(w[frozenset(m)]) for m in top]
    out = []
    for a in ring.basis[i]:
        row = []
        for c in ring.basis[d - i]:
            prod = ring.monomial_product(a, c)
            row.append(sum((x * y for x, y in zip(prod, wt) if x), Fraction(0)))
        out.append(row)
    return out


@dataclass
class DualityReport:
    passed: bool
    dims: list[int]
    ranks: list[int]


def check_poincare_duality(ring: ChowRing, w: Mapping[frozenset, Fraction]) -> DualityReport:
    d = ring.d
    dims = list(ring.hilbert)
    ranks, ok = [], dims == dims[::-1]
    for i in range(d + 1):
        p = poincare_pairing(ring, w, i)
        r = rank(p) if p and p[0] else 0
        ranks.append(r)
        ok = ok and r == dims[i] == dims[d - i]
    return DualityReport(ok, dims, ranks)


@dataclass
class DegreeReport:
    i: int
    dim: int
    lefschetz_rank: int
    hl: bool
    q_signature: SignatureTriple | None = None
    primitive_dim: int | None = None
    primitive_signature: SignatureTriple | None = None
    hr: bool | None = None


@dataclass
class LefschetzReport:
    hilbert: list[int]
    degrees: list[DegreeReport] = field(default_factory=list)

    @property
    def hl(self) -> bool:
        return all(r.hl for r in self.degrees)

    @property
    def hr(self) -> bool | None:
        if any(r.hr is None for r in self.degrees):
            return None
        return all(r.hr for r in self.degrees)


class Lefschetz:
    """Cached linear algebra of ``(CH(Δ), ℓ)`` with a fixed degree map."""

    def __init__(self, ring: ChowRing, w: Mapping[frozenset, Fraction], ell):
        self.ring, self.w = ring, w
        self.ell = _as_element(ring, ell)
        if self.ell.degree != 1:
            raise InputError("ℓ must have degree 1")
        self._pair: dict[int, Matrix] = {}
        self._maps: dict[tuple[int, int], Matrix] = {}

    @property
    def d(self) -> int:
        return self.ring.d

    def pairing(self, i: int) -> Matrix:
        if i not in self._pair:
            self._pair[i] = poincare_pairing(self.ring, self.w, i)
        return self._pair[i]

    def power_map(self, p: int, i: int) -> Matrix:
        """Matrix of ``ℓ^p: CH^i -> CH^{i+p}`` (columns are images of basis vectors)."""
        key = (p, i)
        if key not in self._maps:
            ring = self.ring
            if i + p > self.d:
                mat = []
            elif p == 0:
                mat = [[Fraction(int(a == b)) for b in range(ring.dim(i))] for a in range(ring.dim(i))]
            else:
                prev = self.power_map(p - 1, i)
                cols = []
                for c in range(ring.dim(i)):
                    x = ChowElement(ring, i + p - 1, tuple(row[c] for row in prev))
                    cols.append(ring.multiply(self.ell, x).coords)
                mat = [[cols[c][r] for c in range(ring.dim(i))] for r in range(ring.dim(i + p))]
            self._maps[key] = mat
        return self._maps[key]

    def gram(self, i: int) -> Matrix:
        """``B_ℓ`` on ``CH^i``."""
        p = self.pairing(i)
        lm = self.power_map(self.d - 2 * i, i)
        if not p or not lm:
            return [[Fraction(0)] * self.ring.dim(i) for _ in range(self.ring.dim(i))]
        return matmul(p, lm)

    def primitive_basis(self, i: int) -> Matrix:
        """Columns spanning ``P^i`` in coordinates of ``CH^i`` (returned as a list of vectors)."""
        dim = self.ring.dim(i)
        mat = self.power_map(self.d - 2 * i + 1, i)
        if not mat:
            return [[Fraction(int(a == b)) for a in range(dim)] for b in range(dim)]
        return nullspace(mat, dim)

    def degree_report(self, i: int, with_hr: bool = True) -> DegreeReport:
        dim = self.ring.dim(i)
        lm = self.power_map(self.d - 2 * i, i)
        r = rank(lm) if lm and lm[0] else 0
        hl = dim == self.ring.dim(self.d - i) and r == dim
        rep = DegreeReport(i, dim, r, hl)
        g = self.gram(i)
        rep.q_signature = signature(g)
        if with_hr:
            k = self.primitive_basis(i)
            rep.primitive_dim = len(k)
            if hl:
                sign = (-1) ** i
                pg = [[sign * sum((x * y for x, y in zip(u, _matvec(g, v)) if x), Fraction(0))
                       for v in k] for u in k]
                sig = signature(pg)
                rep.primitive_signature = sig
                rep.hr = sig.positives == len(k)
        return rep


def _matvec(a: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def hl_check(ring: ChowRing, w, ell) -> LefschetzReport:
    lf = Lefschetz(ring, w, ell)
    rep = LefschetzReport(list(ring.hilbert))
    for i in range(ring.d // 2 + 1):
        rep.degrees.append(lf.degree_report(i, with_hr=False))
    return rep


def hr_check(ring: ChowRing, w, ell, lefschetz: Lefschetz | None = None) -> LefschetzReport:
    """HL plus, wherever HL holds, positivity of ``(-1)^i Q_ℓ`` on ``P^i``."""
    lf = lefschetz if lefschetz is not None else Lefschetz(ring, w, ell)
    rep = LefschetzReport(list(ring.hilbert))
    for i in range(ring.d // 2 + 1):
        rep.degrees.append(lf.degree_report(i, with_hr=True))
    return rep


@dataclass
class SignatureLemmaReport:
    passed: bool
    rows: list[dict]


def signature_lemma_check(ring: ChowRing, w, ell, lefschetz: Lefschetz | None = None) -> SignatureLemmaReport:
    """Signature of ``Q_ℓ`` on ``CH^m`` versus ``Σ_{i<=m} (-1)^i dim P^i``,
    plus the ``B_ℓ``-orthogonal Lefschetz decomposition ``CH^m = ⊕ ℓ^i P^{m-i}``.
    """
    lf = lefschetz if lefschetz is not None else Lefschetz(ring, w, ell)
    rows, ok = [], True
    prim = {i: lf.primitive_basis(i) for i in range(ring.d // 2 + 1)}
    for m in range(ring.d // 2 + 1):
        rep = lf.degree_report(m, with_hr=False)
        if not rep.hl:
            rows.append({"m": m, "hl": False})
            ok = False
            continue
        formula = sum((-1) ** i * len(prim[i]) for i in range(m + 1))
        sig = rep.q_signature
        pieces = []
        for i in range(m + 1):
            up = lf.power_map(i, m - i)
            pieces.append([_matvec(up, v) for v in prim[m - i]])
        vectors = [v for piece in pieces for v in piece]
        spans = len(vectors) == ring.dim(m) and (not vectors or rank(vectors) == ring.dim(m))
        g = lf.gram(m)
        orth = all(
            sum((x * y for x, y in zip(u, _matvec(g, v)) if x), Fraction(0)) == 0
            for a in range(len(pieces)) for b in range(a + 1, len(pieces))
            for u in pieces[a] for v in pieces[b])
        row_ok = sig.value == formula and spans and orth
        ok = ok and row_ok
        rows.append({"m": m, "signature": sig.value, "formula": formula,
                     "decomposition_spans": spans, "orthogonal": orth, "passed": row_ok})
    return SignatureLemmaReport(ok, rows)


@dataclass
class DeformationReport:
    sampled: bool
    steps: int
    samples: list[dict]
    all_hl: bool
    constant_signatures: bool
    failures: list[Fraction]


def deformation_scan(ring: ChowRing, w, ell0, ell1, steps: int) -> DeformationReport:
    """Sample ``ℓ_t = (1-t) ℓ0 + t ℓ1`` at ``t = j/steps``.

    This is a finite sample of the segment, not a proof that HL holds on
    all of it.
    """
    if steps < 1:
        raise InputError("steps must be at least 1")
    e0, e1 = _as_element(ring, ell0), _as_element(ring, ell1)
    samples, failures = [], []
    signatures = set()
    for j in range(steps + 1):
        t = Fraction(j, steps)
        ell = (1 - t) * e0 + t * e1
        rep = hl_check(ring, w, ell)
        sigs = tuple(tuple(r.q_signature.as_list()) for r in rep.degrees)
        samples.append({"t": t, "hl": rep.hl, "signatures": [list(s) for s in sigs]})
        if rep.hl:
            signatures.add(sigs)
        else:
            failures.append(t)
    return DeformationReport(True, steps, samples, not failures, len(signatures) <= 1 and not failures, failures)


# -- star subdivisions ---------------------------------------------------------------

def induced_weight(smap: FanMap, w: Mapping[frozenset, Fraction]) -> dict[frozenset, Fraction]:
    """``ŵ_σ = w_{s(σ)}`` for a subdivision ``s: Δ̂ -> Δ``."""
    return {c: Fraction(w[smap.target_cone(c)]) for c in smap.source.max_cones}


@dataclass
class OrthoDecompReport:
    checks: list[dict]

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)


def ortho_decomp_check(fan: Fan, sub: Fan, smap: FanMap, tau, w, new_ray: int | None = None,
                       ring: ChowRing | None = None, sub_ring: ChowRing | None = None,
                       ell=None) -> OrthoDecompReport:
    """Check ``CH(Δ̂) = s^*CH(Δ) ⊕ x_0 CH(link τ)`` and the ``x_0^2`` identity.

    With ``ell`` given, also checks that HL/HR for ``ℓ`` on Δ and for
    ``ℓ|_link`` on the link come with HL/HR for ``s^*ℓ`` on Δ̂.
    """
    tau = frozenset(tau)
    # rays of Δ reappear in Δ̂, possibly renumbered
    where = {v: k for k, v in enumerate(sub.rays)}
    old = {r: where[v] for r, v in enumerate(fan.rays)}
    if new_ray is None:
        new_ray = next(k for k, v in enumerate(sub.rays) if k not in set(old.values()))
    new = new_ray
    ring = ring if ring is not None else ChowRing(fan)
    sub_ring = sub_ring if sub_ring is not None else ChowRing(sub)
    data = LinkData(ring, tau)
    lring = data.link_ring
    res_w = data.restrict_weight(w)
    w_hat = induced_weight(smap, w)
    from .chow import is_balanced
    checks = [{"check": "induced-weight-balanced", "passed": is_balanced(sub, w_hat)[0]}]
    pb = Pullback(smap, sub_ring, ring)
    d = sub_ring.d

    dims_ok = all(sub_ring.dim(k) == ring.dim(k) + lring.dim(k - 1) for k in range(d + 1))
    checks.append({"check": "dimension-identity", "passed": dims_ok,
                   "hilbert": list(sub_ring.hilbert), "base": list(ring.hilbert), "link": list(lring.hilbert)})

    def second(k: int) -> list[ChowElement]:
        if k - 1 < 0 or k - 1 > lring.d:
            return []
        out = []
        for f in lring.basis_elements(k - 1):
            poly = {tuple(sorted((new,) + tuple(old[r] for r in m))): c for m, c in data.lift(f).items()}
            out.append(sub_ring.from_poly(poly, k))
        return out

    summands = {k: ([pb(b) for b in ring.basis_elements(k)], second(k)) for k in range(d + 1)}
    span_ok = True
    for k, (a, b) in summands.items():
        vecs = [list(x.coords) for x in a + b]
        if len(vecs) != sub_ring.dim(k) or (vecs and rank(vecs) != len(vecs)):
            span_ok = False
    checks.append({"check": "direct-sum", "passed": span_ok})

    orth_ok = True
    for k in range(d + 1):
        for x in summands[k][0]:
            for y in summands[d - k][1]:
                if sub_ring.degree(w_hat, sub_ring.multiply(x, y)) != 0:
                    orth_ok = False
    checks.append({"check": "orthogonal", "passed": orth_ok})

    sq_ok = True
    if lring.d == d - 2:
        for f in lring.basis_elements(lring.d):
            poly = {tuple(sorted((new, new) + tuple(old[r] for r in m))): c
                    for m, c in data.lift(f).items()}
            lhs = sub_ring.degree(w_hat, sub_ring.from_poly(poly, d))
            if lhs != -lring.degree(res_w, f):
                sq_ok = False
    else:
        sq_ok = False
    checks.append({"check": "x0-squared", "passed": sq_ok})

    if ell is not None:
        coeffs = ell.as_dict() if isinstance(ell, DivisorClass) else dict(ell)
        base = hr_check(ring, w, coeffs)
        on_link = hr_check(lring, res_w, data.restrict_divisor(coeffs))
        pulled = hr_check(sub_ring, w_hat, pb.divisor(coeffs))
        checks.append({"check": "pullbackHLHR", "passed": (not (base.hl and on_link.hl) or pulled.hl)
                       and (not (base.hr and on_link.hr) or bool(pulled.hr)),
                       "base": [base.hl, base.hr], "link": [on_link.hl, on_link.hr],
                       "subdivision": [pulled.hl, pulled.hr]})
    return OrthoDecompReport(checks)
