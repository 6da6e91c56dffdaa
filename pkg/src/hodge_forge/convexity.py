"""Positivity and convexity of degree-one classes.

A class ``ℓ = Σ a_r x_r`` is positive when some representative
``ℓ + m`` (m a global linear function) is positive on every ray, i.e. when
the strict system ``a_r + m(v_r) > 0`` is feasible.  Strict convexity asks
for positivity of ``ℓ|_{link τ}`` for every cone τ, the zero cone included;
convexity is the non-strict analogue.  Feasibility is decided by exact
Fourier–Motzkin elimination (:mod:`hodge_forge.polyhedral`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from . import polyhedral
from .bergman import DeletionTower, bergman_fan
from .chow import pullback_divisor, restrict_divisor
from .errors import InputError, PreconditionFailure
from .fan import Fan
from .linalg import dot
from .matroid import Matroid


@dataclass(frozen=True)
class DivisorClass:
    """A degree-one class given by a representative ``Σ a_r x_r``."""

    fan: Fan
    coefficients: tuple[Fraction, ...]

    @classmethod
    def from_mapping(cls, fan: Fan, coefficients: Mapping[int, Fraction]) -> "DivisorClass":
        bad = [r for r in coefficients if not 0 <= r < fan.nrays]
        if bad:
            raise InputError(f"coefficient for missing ray {bad[0]}")
        return cls(fan, tuple(Fraction(coefficients.get(r, 0)) for r in range(fan.nrays)))

    @classmethod
    def zero(cls, fan: Fan) -> "DivisorClass":
        return cls(fan, (Fraction(0),) * fan.nrays)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(enumerate(self.coefficients))

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.fan, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __rmul__(self, c) -> "DivisorClass":
        c = Fraction(c)
        return DivisorClass(self.fan, tuple(c * a for a in self.coefficients))

    def value(self, m: Iterable[Fraction]) -> list[Fraction]:
        """Coefficients of the representative ``ℓ + m``."""
        m = list(m)
        return [a + dot(m, v) for a, v in zip(self.coefficients, self.fan.rays)]


@dataclass
class PositivityResult:
    feasible: bool
    # linear functional m with a_r + m(v_r) > 0 (>= 0) on every ray
    certificate: list[Fraction] | None = None
    # rays whose inequalities combine into a contradiction
    obstruction: list[int] = field(default_factory=list)
    farkas: dict[int, Fraction] | None = None


def _positivity(fan: Fan, coefficients: Mapping[int, Fraction] | Iterable[Fraction],
                strict: bool) -> PositivityResult:
    if isinstance(coefficients, Mapping):
        a = [Fraction(coefficients.get(r, 0)) for r in range(fan.nrays)]
    else:
        a = [Fraction(x) for x in coefficients]
    n = fan.ambient_dim
    if all((x > 0) if strict else (x >= 0) for x in a):
        return PositivityResult(True, [Fraction(0)] * n)
    rows = [list(v) for v in fan.rays]
    res = polyhedral.feasible(rows, a, strict, n)
    if res.feasible:
        return PositivityResult(True, res.point)
    return PositivityResult(False, None, sorted(r for r, m in res.farkas.items() if m), res.farkas)


def is_positive(fan: Fan, coefficients) -> PositivityResult:
    return _positivity(fan, coefficients, True)


def is_nonnegative(fan: Fan, coefficients) -> PositivityResult:
    return _positivity(fan, coefficients, False)


def certificate_holds(fan: Fan, coefficients, m: list[Fraction], strict: bool = True) -> bool:
    if isinstance(coefficients, Mapping):
        a = [Fraction(coefficients.get(r, 0)) for r in range(fan.nrays)]
    else:
        a = list(coefficients)
    vals = [x + dot(m, v) for x, v in zip(a, fan.rays)]
    return all((v > 0) if strict else (v >= 0) for v in vals)


@dataclass
class ConvexityVerdict:
    positive: bool
    nonnegative: bool
    strictly_convex: bool
    convex: bool
    # each failure: {"cone": parent ray ids, "ray": first obstructing ray, "rays": all, "condition": ...}
    failures: list[dict] = field(default_factory=list)
    # cone (sorted tuple) -> functional on the link's ambient space
    certificates: dict[tuple, list[Fraction]] = field(default_factory=dict)

    @property
    def representative(self) -> list[Fraction] | None:
        return self.certificates.get(())


def _cone_checks(fan: Fan, coefficients: Mapping[int, Fraction], cones, strict: bool):
    for tau in cones:
        lk, res = restrict_divisor(fan, coefficients, tau)
        r = _positivity(lk, res, strict)
        yield tau, lk, res, r


def classify(fan: Fan, ell: DivisorClass | Mapping[int, Fraction],
             jobs: int = 1) -> ConvexityVerdict:
    """Full convexity verdict: positivity, non-negativity, (strict) convexity."""
    coeffs = ell.as_dict() if isinstance(ell, DivisorClass) else dict(ell)
    cones = fan.sorted_cones
    strict_results = _map(jobs, _strict_job, [(fan, coeffs, tau) for tau in cones])
    failures, certs = [], {}
    strict_ok = True
    pending = []
    for tau, (lk_parents, r) in zip(cones, strict_results):
        key = tuple(sorted(tau))
        if r.feasible:
            certs[key] = r.certificate
        else:
            strict_ok = False
            pending.append(tau)
            failures.append(_failure(tau, lk_parents, r, "positive"))
    convex_ok = True
    zero_nonneg = True
    for tau in pending:
        lk, res = restrict_divisor(fan, coeffs, tau)
        r = _positivity(lk, res, False)
        if not r.feasible:
            convex_ok = False
            if not tau:
                zero_nonneg = False
            failures.append(_failure(tau, lk.parent_rays, r, "nonnegative"))
    positive = () in certs
    return ConvexityVerdict(positive, positive or zero_nonneg, strict_ok, strict_ok or convex_ok,
                            failures, certs)


def _strict_job(args):
    fan, coeffs, tau = args
    lk, res = restrict_divisor(fan, coeffs, tau)
    return lk.parent_rays, _positivity(lk, res, True)


def _map(jobs: int, fn: Callable, items: list):
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _failure(tau, parents, r: PositivityResult, condition: str) -> dict:
    rays = [parents[k] for k in r.obstruction]
    return {"cone": sorted(tau), "ray": rays[0] if rays else None, "rays": rays, "condition": condition}


def is_strictly_convex(fan: Fan, ell, jobs: int = 1) -> ConvexityVerdict:
    return classify(fan, ell, jobs)


def is_convex(fan: Fan, ell) -> bool:
    """Non-strict check only (cheaper than :func:`classify`)."""
    coeffs = ell.as_dict() if isinstance(ell, DivisorClass) else dict(ell)
    return all(r.feasible for *_, r in _cone_checks(fan, coeffs, fan.sorted_cones, False))


def default_submodular(size: int) -> Callable[[frozenset], Fraction]:
    return lambda s: Fraction(len(s) * (size - len(s)))


def submodular_class(m: Matroid, f: Callable[[frozenset], Fraction] | Mapping | None = None,
                     fan: Fan | None = None) -> DivisorClass:
    """``Σ_F f(F) x_F`` on the Bergman fan; convexity is *not* asserted here."""
    fan = fan if fan is not None else bergman_fan(m)
    if f is None:
        f = default_submodular(m.size)
    get = (lambda s: Fraction(f.get(s, 0))) if isinstance(f, Mapping) else f
    return DivisorClass(fan, tuple(Fraction(get(flat)) for flat in fan.labels))


# -- deletion towers ----------------------------------------------------------------

@dataclass
class TowerConvexityReport:
    classes: list[dict[int, Fraction]]
    checks: list[dict]

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)


def tower_classes(tower: DeletionTower, base_coeffs: Mapping[int, Fraction]) -> list[dict[int, Fraction]]:
    """``ℓ_m`` on every Δ_m, obtained by iterated pullback from the base."""
    classes = [None] * (tower.k + 1)
    classes[tower.k] = pullback_divisor(tower.projection, base_coeffs)
    for j in range(tower.k, 0, -1):
        classes[j - 1] = pullback_divisor(tower.subdivision_maps[j - 1], classes[j])
    return classes


def tower_convexity_check(tower: DeletionTower, ell: DivisorClass | Mapping[int, Fraction]) -> TowerConvexityReport:
    base = ell.as_dict() if isinstance(ell, DivisorClass) else dict(ell)
    verdict = classify(tower.base, base)
    if not verdict.strictly_convex:
        raise PreconditionFailure("class is not strictly convex on the deletion's Bergman fan")
    classes = tower_classes(tower, base)
    checks = []
    for m, (fan, coeffs) in enumerate(zip(tower.fans, classes)):
        checks.append({"check": "convex", "m": m, "passed": is_convex(fan, coeffs)})
        for j in range(1, tower.k + 1):
            tau = tower.tau(m, j)
            lk, res = restrict_divisor(fan, coeffs, tau)
            ok = classify(lk, res).strictly_convex
            checks.append({"check": "strictly-convex-on-link", "m": m, "j": j, "passed": ok})
    return TowerConvexityReport(classes, checks)
