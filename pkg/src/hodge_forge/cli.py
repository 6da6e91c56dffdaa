"""Command-line front end.

Exit codes: 0 when everything requested passes, 1 on a verification
failure, 2 on bad input (unreadable or malformed files, axiom violations,
coloops, bad flags).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .bergman import bergman_fan, deletion_tower
from .chow import ChowRing
from .convexity import classify, submodular_class
from .errors import HodgeForgeError, InputError
from .matroid import Matroid
from .serialize import (chow_report, dumps, fan_to_json, load_matroid, load_witness, matroid_info,
                        theorem_report_text, theorem_report_to_json, tower_to_json, verdict_to_json)
from .theorem import default_element, verify_main_theorem

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    matroid: Path
    mode: str = "direct"
    element: int | None = None
    witness: str = "default"
    steps: int = 8
    format: str = "json"
    out: Path | None = None
    jobs: int = 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hodge-forge",
                                description="Exact checks of Hard Lefschetz and Hodge-Riemann for matroid Chow rings.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--matroid", required=True, type=Path, help="JSON flats file")
        sp.add_argument("--format", choices=["json", "text"], default="json")
        sp.add_argument("--out", type=Path, help="write the report here instead of stdout")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for per-cone checks")

    common(sub.add_parser("info", help="rank, flat counts, coloops, deletion pairs"))
    v = sub.add_parser("verify", help="run the full verification")
    common(v)
    v.add_argument("--mode", choices=["direct", "tower"], default="direct")
    v.add_argument("--element", type=int, help="element to delete in tower mode")
    v.add_argument("--witness", default="default", help="'default' or a JSON file of flat values")
    v.add_argument("--steps", type=int, default=8, help="deformation samples")
    common(sub.add_parser("fan-dump", help="Bergman fan as JSON"))
    c = sub.add_parser("chow-report", help="Hilbert function, basis and convexity verdict")
    common(c)
    c.add_argument("--witness", default="default")
    t = sub.add_parser("tower-dump", help="deletion tower structure")
    common(t)
    t.add_argument("--element", type=int)
    return p


def _config(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.command, ns.matroid, getattr(ns, "mode", "direct"), getattr(ns, "element", None),
                    getattr(ns, "witness", "default"), getattr(ns, "steps", 8), ns.format, ns.out, ns.jobs)
    if cfg.steps < 1:
        raise InputError("--steps must be at least 1")
    if cfg.jobs < 1:
        raise InputError("--jobs must be at least 1")
    return cfg


def _witness(cfg: RunConfig, m: Matroid):
    return None if cfg.witness == "default" else load_witness(cfg.witness, m)


def _text_of(doc, indent: str = "") -> str:
    lines = []
    for k, v in doc.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text_of(v, indent + "  ").rstrip("\n"))
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines) + "\n"


def cmd_matroid_info(cfg: RunConfig, m: Matroid) -> tuple[int, str]:
    doc = matroid_info(m)
    return EXIT_OK, dumps(doc) if cfg.format == "json" else _text_of(doc)


def cmd_verify(cfg: RunConfig, m: Matroid) -> tuple[int, str]:
    report = verify_main_theorem(m, cfg.mode, cfg.element, _witness(cfg, m), cfg.steps, cfg.jobs)
    text = dumps(theorem_report_to_json(report)) if cfg.format == "json" else theorem_report_text(report)
    if not report.passed:
        print("failed checks: " + ", ".join(report.failed), file=sys.stderr)
    return (EXIT_OK if report.passed else EXIT_FAIL), text


def cmd_fan_dump(cfg: RunConfig, m: Matroid) -> tuple[int, str]:
    doc = fan_to_json(bergman_fan(m))
    return EXIT_OK, dumps(doc) if cfg.format == "json" else _text_of(doc)


def cmd_chow_report(cfg: RunConfig, m: Matroid) -> tuple[int, str]:
    fan = bergman_fan(m)
    doc = chow_report(ChowRing(fan))
    ell = submodular_class(m, _witness(cfg, m), fan)
    verdict = classify(fan, ell, cfg.jobs)
    doc["convexity"] = verdict_to_json(ell, verdict)
    return EXIT_OK, dumps(doc) if cfg.format == "json" else _text_of(doc)


def cmd_tower_dump(cfg: RunConfig, m: Matroid) -> tuple[int, str]:
    element = cfg.element if cfg.element is not None else default_element(m)
    if element is None:
        raise InputError("every element is a coloop; the matroid is Boolean and has no tower")
    doc = tower_to_json(deletion_tower(m, element))
    return EXIT_OK, dumps(doc) if cfg.format == "json" else _text_of(doc)


COMMANDS = {
    "info": cmd_matroid_info,
    "verify": cmd_verify,
    "fan-dump": cmd_fan_dump,
    "chow-report": cmd_chow_report,
    "tower-dump": cmd_tower_dump,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = _config(ns)
        m = load_matroid(cfg.matroid)
        if cfg.element is not None and cfg.element not in m.ground:
            raise InputError(f"--element {cfg.element} is not in the ground set 1..{m.size}")
        code, text = COMMANDS[cfg.command](cfg, m)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HodgeForgeError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    try:
        if cfg.out is not None:
            cfg.out.write_text(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"error: cannot write {cfg.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
