"""JSON documents: matroids, fans, Chow reports, verdicts, towers, theorem reports.

Every ``*_to_json`` returns plain data whose ``json.dumps`` (with
:func:`dumps`) is byte-stable: rationals become ``"p/q"`` strings, sets are
sorted, and keys are sorted on emission.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .chow import ChowRing, monomial_str, mw_space
from .convexity import ConvexityVerdict, DivisorClass
from .errors import AxiomViolation, InputError
from .fan import Fan
from .matroid import Matroid, coloops, deletion_flat_pairs, is_coloop, matroid_from_flats


def rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, bool):
        raise InputError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"not a rational: {s!r}")


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent, flat lists on one line."""
    return _emit(obj, "") + "\n"


def _emit(obj: Any, indent: str) -> str:
    inner = indent + "  "
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_emit(obj[k], inner)}"
                 for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + indent + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            return json.dumps(list(obj), ensure_ascii=False)
        return "[\n" + ",\n".join(inner + _emit(x, inner) for x in obj) + "\n" + indent + "]"
    return json.dumps(obj, ensure_ascii=False)


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


# -- matroids -------------------------------------------------------------------------

def matroid_to_json(m: Matroid) -> dict:
    doc = {"ground_size": m.size, "flats": [sorted(f) for f in m.flats]}
    if m.name is not None:
        doc["name"] = m.name
    return doc


def matroid_from_json(doc: Any, source: str = "<input>") -> Matroid:
    if not isinstance(doc, dict):
        raise InputError(f"{source}: expected a JSON object")
    n = doc.get("ground_size")
    if not isinstance(n, int) or isinstance(n, bool):
        raise InputError(f"{source}: 'ground_size' must be an integer")
    flats = doc.get("flats")
    if not isinstance(flats, list):
        raise InputError(f"{source}: 'flats' must be a list")
    for k, f in enumerate(flats):
        if not isinstance(f, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in f):
            raise InputError(f"{source}: flats[{k}] must be a list of integers")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError(f"{source}: 'name' must be a string")
    try:
        return matroid_from_flats(n, flats, name)
    except AxiomViolation as exc:
        where = _flat_positions(flats, exc.witness)
        raise AxiomViolation(exc.axiom, exc.witness, f"{source}: axiom {exc.axiom}: {exc}{where}") from exc


def _flat_positions(flats: list, witness) -> str:
    targets = []
    if isinstance(witness, dict):
        targets = [witness.get("flat")] + list(witness.get("covers_containing") or [])
    elif isinstance(witness, (list, tuple)) and witness and isinstance(witness[0], (list, tuple, frozenset)):
        targets = list(witness)
    pos = sorted({k for k, f in enumerate(flats) for t in targets if t is not None and set(f) == set(t)})
    return f" (flats[{', '.join(map(str, pos))}])" if pos else ""


def load_matroid(path: str | Path) -> Matroid:
    return matroid_from_json(load_json(path), str(path))


def matroid_info(m: Matroid) -> dict:
    return {
        "name": m.name,
        "ground_size": m.size,
        "rank": m.rank,
        "flat_counts": [len(m.flats_of_rank(r)) for r in range(m.rank + 1)],
        "coloops": coloops(m),
        "deletion_pairs": {str(e): (None if is_coloop(m, e) else len(deletion_flat_pairs(m, e)))
                           for e in m.elements},
    }


# -- fans -----------------------------------------------------------------------------

def _label(lab) -> Any:
    if isinstance(lab, frozenset):
        return sorted(lab)
    if isinstance(lab, tuple):
        return [_label(x) for x in lab]
    return lab


def fan_to_json(fan: Fan) -> dict:
    doc = {
        "ambient_dim": fan.ambient_dim,
        "rays": [[rat(x) for x in v] for v in fan.rays],
        "max_cones": sorted(sorted(c) for c in fan.max_cones),
    }
    if fan.labels is not None:
        doc["labels"] = {str(k): _label(lab) for k, lab in enumerate(fan.labels)}
    return doc


def fan_from_json(doc: Any, source: str = "<input>") -> Fan:
    if not isinstance(doc, dict) or not isinstance(doc.get("ambient_dim"), int):
        raise InputError(f"{source}: expected a fan document with 'ambient_dim'")
    try:
        rays = [[parse_rat(x) for x in v] for v in doc["rays"]]
        cones = [list(c) for c in doc["max_cones"]]
    except (KeyError, TypeError) as exc:
        raise InputError(f"{source}: malformed fan document") from exc
    if any(len(v) != doc["ambient_dim"] for v in rays):
        raise InputError(f"{source}: ray of the wrong length")
    if any(not isinstance(i, int) or not 0 <= i < len(rays) for c in cones for i in c):
        raise InputError(f"{source}: cone refers to a missing ray")
    labels = None
    if "labels" in doc:
        labels = [_unlabel(doc["labels"].get(str(k))) for k in range(len(rays))]
    fan = Fan.from_cones(doc["ambient_dim"], rays, cones, labels)
    fan.validate()
    return fan


def _unlabel(x):
    if isinstance(x, list) and all(isinstance(e, int) for e in x):
        return frozenset(x)
    if isinstance(x, list):
        return tuple(_unlabel(e) for e in x)
    return x


# -- Chow rings -----------------------------------------------------------------------

def chow_report(ring: ChowRing) -> dict:
    return {
        "hilbert": list(ring.hilbert),
        "mw_dim": len(mw_space(ring.fan, ring)),
        "relations": sum(len(ring.relation_rows(k)) for k in range(ring.d + 1)),
        "basis": {str(k): [monomial_str(m) for m in ring.basis[k]] for k in range(ring.d + 1)},
    }


# -- convexity ------------------------------------------------------------------------

def divisor_to_json(ell: DivisorClass) -> dict:
    fan = ell.fan
    keys = [",".join(map(str, _label(fan.label(r)))) if fan.labels else str(r) for r in range(fan.nrays)]
    return {k: rat(a) for k, a in zip(keys, ell.coefficients)}


def verdict_to_json(ell: DivisorClass, verdict: ConvexityVerdict) -> dict:
    rep = verdict.representative
    return {
        "class": divisor_to_json(ell),
        "positive": verdict.positive,
        "nonnegative": verdict.nonnegative,
        "strictly_convex": verdict.strictly_convex,
        "convex": verdict.convex,
        "failures": [{"cone": f["cone"], "ray": f["ray"], "condition": f["condition"]} for f in verdict.failures],
        "certificate": None if rep is None else [rat(x) for x in rep],
    }


def load_witness(path: str | Path, m: Matroid) -> dict[frozenset, Fraction]:
    """``{"values": [{"flat": [...], "value": "p/q"}, ...]}``; missing flats get 0."""
    doc = load_json(path)
    if not isinstance(doc, dict) or not isinstance(doc.get("values"), list):
        raise InputError(f"{path}: witness must be an object with a 'values' list")
    out = {}
    for k, item in enumerate(doc["values"]):
        if not isinstance(item, dict) or not isinstance(item.get("flat"), list):
            raise InputError(f"{path}: values[{k}] must have a 'flat' list")
        f = frozenset(item["flat"])
        if f not in set(m.nontrivial_flats):
            raise InputError(f"{path}: values[{k}]: {sorted(f)} is not a nontrivial flat")
        if f in out:
            raise InputError(f"{path}: values[{k}]: duplicate flat {sorted(f)}")
        out[f] = parse_rat(item.get("value"))
    return out


# -- towers ---------------------------------------------------------------------------

def tower_to_json(tower) -> dict:
    steps = []
    for j in range(1, tower.k + 1):
        steps.append({
            "j": j,
            "flat": sorted(tower.pairs[j - 1]),
            "subdivided_cone": sorted(tower.subdivided_cones[j - 1]),
            "new_ray": sorted(tower.pairs[j - 1] | {tower.element}),
            "fan": fan_to_json(tower.fans[j - 1]),
        })
    return {
        "matroid": matroid_to_json(tower.matroid),
        "element": tower.element,
        "k": tower.k,
        "pairs": [sorted(f) for f in tower.pairs],
        "top_fan": fan_to_json(tower.fans[tower.k]),
        "subdivisions": steps,
        "deletion": matroid_to_json(tower.deleted),
        "projection": [[rat(x) for x in row] for row in tower.projection.matrix],
    }


# -- theorem reports ------------------------------------------------------------------

def _plain(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return rat(x)
    if isinstance(x, (frozenset, set)):
        return sorted(_plain(e) for e in x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(e) for e in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _degree_json(r) -> dict:
    return {
        "i": r.i,
        "dim": r.dim,
        "lefschetz_rank": r.lefschetz_rank,
        "hl": r.hl,
        "q_signature": r.q_signature.as_list() if r.q_signature else None,
        "primitive_dim": r.primitive_dim,
        "primitive_signature": r.primitive_signature.as_list() if r.primitive_signature else None,
        "hr": r.hr,
    }


def theorem_report_to_json(report) -> dict:
    direct = report.sections["direct"]
    lef = direct["lefschetz"]
    doc = {
        "matroid": matroid_to_json(report.matroid),
        "requested_mode": report.requested_mode,
        "mode": report.mode,
        "element": report.element,
        "hilbert": direct["hilbert"],
        "duality": {"passed": direct["duality"].passed, "ranks": direct["duality"].ranks},
        "lefschetz": {"hl": lef.hl, "hr": lef.hr, "degrees": [_degree_json(r) for r in lef.degrees]},
        "witness": divisor_to_json(direct["witness"]),
        "checks": [_plain(c) for c in report.checks],
        "failed": report.failed,
        "passed": report.passed,
    }
    tower = report.sections.get("tower")
    if tower is not None:
        doc["tower"] = {"k": tower["k"], "pairs": [sorted(f) for f in tower["tower"].pairs]}
        scan = tower.get("deformation")
        if scan is not None:
            doc["deformation"] = {
                "sampled": scan.sampled,
                "steps": scan.steps,
                "all_hl": scan.all_hl,
                "constant_signatures": scan.constant_signatures,
                "failures": [rat(t) for t in scan.failures],
                "samples": [_plain(s) for s in scan.samples],
            }
    return doc


def theorem_report_text(report) -> str:
    doc = theorem_report_to_json(report)
    lines = [f"matroid: {doc['matroid'].get('name') or '(unnamed)'}  ground_size={doc['matroid']['ground_size']}",
             f"mode: {doc['mode']}" + (f" (element {doc['element']}, k={doc['tower']['k']})" if "tower" in doc else ""),
             f"hilbert: {doc['hilbert']}"]
    for r in doc["lefschetz"]["degrees"]:
        lines.append(f"  i={r['i']}: dim={r['dim']} rank={r['lefschetz_rank']} HL={r['hl']} "
                     f"Q={r['q_signature']} dimP={r['primitive_dim']} HR={r['hr']}")
    counts: dict[str, list[int]] = {}
    for c in doc["checks"]:
        ok, total = counts.setdefault(c["name"], [0, 0])
        counts[c["name"]] = [ok + c["passed"], total + 1]
    for name, (ok, total) in counts.items():
        lines.append(f"{'PASS' if ok == total else 'FAIL'} {name} ({ok}/{total})")
    lines.append("result: " + ("PASS" if doc["passed"] else "FAIL " + ", ".join(doc["failed"])))
    return "\n".join(lines) + "\n"
