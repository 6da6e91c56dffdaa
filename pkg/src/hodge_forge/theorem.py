"""End-to-end verification of HL and HR for the Chow ring of a matroid.

``direct`` mode works on the Bergman fan itself.  ``tower`` mode also walks
the deletion tower of a non-coloop and checks every lemma the inductive
argument leans on, step by step.  Each check is a dict with a ``name``
(the lemma tag), a ``passed`` flag and whatever witness data it produced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .bergman import all_ones_weight, bergman_fan, deletion_tower, link_factorization
from .chow import (ChowRing, LinkData, Pullback, convolve, is_balanced, mw_space,
                   product_chow_iso_check, restrict_divisor)
from .convexity import certificate_holds, classify, submodular_class, tower_convexity_check
from .errors import ColoopInput, HodgeForgeError, InputError, PreconditionFailure
from .fan import link
from .hodge import (Lefschetz, check_poincare_duality, deformation_scan, hr_check, induced_weight,
                    ortho_decomp_check, signature_lemma_check)
from .matroid import Matroid, coloops


@dataclass
class TheoremReport:
    matroid: Matroid
    requested_mode: str
    mode: str
    element: int | None = None
    checks: list[dict] = field(default_factory=list)
    sections: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    @property
    def failed(self) -> list[str]:
        out = []
        for c in self.checks:
            if not c["passed"] and c["name"] not in out:
                out.append(c["name"])
        return out


def _check(report: TheoremReport, name: str, passed: bool, **details) -> bool:
    report.checks.append({"name": name, "passed": bool(passed), **details})
    return bool(passed)


def default_element(m: Matroid) -> int | None:
    """Smallest non-coloop, or None for Boolean matroids."""
    bad = set(coloops(m))
    return next((e for e in m.elements if e not in bad), None)


def _direct(report: TheoremReport, m: Matroid, witness: Mapping | None, jobs: int) -> dict:
    fan = bergman_fan(m)
    ring = ChowRing(fan)
    w = all_ones_weight(fan)
    ell = submodular_class(m, witness, fan)
    sec = {"hilbert": list(ring.hilbert), "fan": fan, "ring": ring, "weight": w, "witness": ell}

    ok, tau = is_balanced(fan, w)
    _check(report, "balancing", ok, witness=None if ok else sorted(tau))
    try:
        mw = mw_space(fan, ring)
        _check(report, "minkowski-weights", len(mw) == ring.dim(ring.d), dim=len(mw))
    except HodgeForgeError as exc:
        _check(report, "minkowski-weights", False, error=str(exc))

    verdict = classify(fan, ell, jobs)
    sec["convexity"] = verdict
    _check(report, "convexity", verdict.strictly_convex, witness=verdict.failures[:1] or None)
    certs_ok = all(certificate_holds(*restrict_divisor(fan, ell.as_dict(), tau), cert)
                   for tau, cert in verdict.certificates.items())
    _check(report, "certificates", certs_ok)

    pd = check_poincare_duality(ring, w)
    sec["duality"] = pd
    _check(report, "poincare-duality", pd.passed, ranks=pd.ranks)

    lf = Lefschetz(ring, w, ell)
    rep = hr_check(ring, w, ell, lf)
    sec["lefschetz"] = rep
    _check(report, "HL", rep.hl, witness=[r.i for r in rep.degrees if not r.hl] or None)
    _check(report, "HR", bool(rep.hr), witness=[r.i for r in rep.degrees if not r.hr] or None)
    nondeg = all(r.hl == (r.q_signature.zeros == 0 and r.dim == ring.dim(ring.d - r.i))
                 for r in rep.degrees)
    _check(report, "HL-nondegenerate", nondeg)
    if rep.hl:
        sl = signature_lemma_check(ring, w, ell, lf)
        sec["signature_lemma"] = sl
        _check(report, "HR-signature", sl.passed, rows=sl.rows)

    # adjunction and HR-implies-HL, one ray at a time
    adj_ok, links_hr = True, True
    coeffs = ell.as_dict()
    for r in range(fan.nrays):
        data = LinkData(ring, [r])
        lring = data.link_ring
        res_w = data.restrict_weight(w)
        for f in lring.basis_elements(lring.d):
            lhs, rhs = data.adjunction_sides(w, f, res_w)
            if lhs != rhs:
                adj_ok = False
        lrep = hr_check(lring, res_w, data.restrict_divisor(coeffs))
        links_hr = links_hr and bool(lrep.hr)
    _check(report, "adjunction", adj_ok, rays=fan.nrays)
    _check(report, "HR-implies-HL", (not (links_hr and pd.passed)) or rep.hl,
           links_hr=links_hr, hl=rep.hl)
    return sec


def _tower(report: TheoremReport, m: Matroid, element: int, direct: dict, steps: int, order=None) -> dict:
    tower = deletion_tower(m, element, order)
    sec = {"tower": tower, "k": tower.k}
    _check(report, "deletion-tower", True, k=tower.k, element=element)

    base_ell = submodular_class(tower.deleted, fan=tower.base)
    try:
        conv = tower_convexity_check(tower, base_ell)
    except PreconditionFailure as exc:
        _check(report, "convexity", False, scope="tower", error=str(exc))
        return sec
    for c in conv.checks:
        _check(report, "convexity", c["passed"], scope=c["check"], m=c["m"], **({"j": c["j"]} if "j" in c else {}))
    classes = conv.classes
    sec["classes"] = classes

    rings = [ChowRing(f) for f in tower.fans]
    weights = [None] * (tower.k + 1)
    weights[tower.k] = all_ones_weight(tower.fans[tower.k])
    for j in range(tower.k, 0, -1):
        weights[j - 1] = induced_weight(tower.subdivision_maps[j - 1], weights[j])
    for mm, (fan, w) in enumerate(zip(tower.fans, weights)):
        ok, tau = is_balanced(fan, w)
        _check(report, "balancing", ok, scope="tower", m=mm, witness=None if ok else sorted(tau))

    base_ring = ChowRing(tower.base)
    pb = Pullback(tower.projection, rings[tower.k], base_ring)
    _check(report, "projection-iso", pb.is_graded_bijection(),
           hilbert=list(rings[tower.k].hilbert), base=list(base_ring.hilbert))

    i = frozenset([element])
    for j in range(1, tower.k + 1):
        top = tower.pairs[j - 1] | i
        links = [link(tower.fans[mm], tower.tau(mm, j))[0] for mm in range(tower.k + 1)]
        same = all(lk.same_embedded_fan(links[0]) for lk in links)
        try:
            fac = link_factorization(m, [i, top])
            prod_ok = fac.link_fan.same_embedded_fan(links[0])
        except HodgeForgeError as exc:
            _check(report, "subdivision-link-product", False, j=j, error=str(exc))
            continue
        _check(report, "subdivision-link-product", same and prod_ok, j=j, flat=sorted(top))

        tau = tower.tau(j, j)
        data = LinkData(rings[j], tau)
        lring = data.link_ring
        # factors [∅, i], [i, F_j ∪ i], [F_j ∪ i, E]; the first is a point
        factor_rings = [ChowRing(bergman_fan(f)) for f in fac.factors]
        hilb = [1]
        for r in factor_rings:
            hilb = convolve(hilb, list(r.hilbert))
        iso_ok = list(lring.hilbert) == hilb and product_chow_iso_check(
            factor_rings[1], factor_rings[2], ChowRing(fac.product_fan),
            factor_rings[0].fan.nrays + factor_rings[1].fan.nrays)
        res_w = data.restrict_weight(weights[j])
        lrep = hr_check(lring, res_w, data.restrict_divisor(classes[j]))
        factors_hr = []
        for f, r in zip(fac.factors, factor_rings):
            if r.fan.nrays == 0:
                factors_hr.append(True)
                continue
            frep = hr_check(r, all_ones_weight(r.fan), submodular_class(f, fan=r.fan))
            factors_hr.append(bool(frep.hl and frep.hr))
        _check(report, "product-HL-HR", iso_ok and lrep.hl and bool(lrep.hr) and all(factors_hr),
               j=j, hilbert=list(lring.hilbert), tensor=hilb)

        od = ortho_decomp_check(tower.fans[j], tower.fans[j - 1], tower.subdivision_maps[j - 1], tau,
                                weights[j], ring=rings[j], sub_ring=rings[j - 1], ell=classes[j])
        for c in od.checks:
            name = "pullbackHLHR" if c["check"] == "pullbackHLHR" else "ortho-decomp"
            _check(report, name, c["passed"], j=j, part=c["check"])

    for mm in range(tower.k + 1):
        rep = hr_check(rings[mm], weights[mm], classes[mm])
        _check(report, "tower-HL-HR", rep.hl and bool(rep.hr), m=mm)

    # ℓ_0 lives on Δ_0, which has the same rays in the same order as Δ_M
    fan = direct["fan"]
    if tower.fans[0].rays != fan.rays:
        _check(report, "HL-implies-HR", False, error="tower base fan does not match the Bergman fan")
        return sec
    scan = deformation_scan(direct["ring"], direct["weight"], classes[0], direct["witness"], steps)
    sec["deformation"] = scan
    _check(report, "HL-implies-HR", scan.all_hl and scan.constant_signatures, sampled=True,
           steps=steps, failures=scan.failures or None)
    return sec


def verify_main_theorem(m: Matroid, mode: str = "direct", element: int | None = None,
                        witness: Mapping[frozenset, Fraction] | None = None, steps: int = 8,
                        jobs: int = 1, order: Sequence[Iterable[int]] | None = None) -> TheoremReport:
    """Run every check for ``m``; failures are recorded, not raised.

    ``order`` overrides the order in which tower mode subdivides (any
    linear extension of the deletion flat pairs).
    """
    if mode not in ("direct", "tower"):
        raise InputError(f"unknown mode {mode!r}")
    if m.rank < 1:
        raise InputError("matroid must have rank at least 1")
    if steps < 1:
        raise InputError("steps must be at least 1")
    if element is not None and element not in m.ground:
        raise InputError(f"element {element} is not in the ground set")
    actual = mode
    if mode == "tower":
        if element is None:
            element = default_element(m)
            if element is None:
                actual = "direct"
        elif element in coloops(m):
            raise ColoopInput(f"element {element} is a coloop")
    report = TheoremReport(m, mode, actual, element if actual == "tower" else None)
    direct = _direct(report, m, witness, jobs)
    report.sections["direct"] = direct
    if actual == "tower":
        report.sections["tower"] = _tower(report, m, element, direct, steps, order)
    return report
