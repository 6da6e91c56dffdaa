from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from hodge_forge.serialize import load_matroid

DATA = Path(__file__).parent / "data"

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

CORPUS_FILES = (
    [f"b{n}.json" for n in range(1, 5)]
    + [f"u{k}{n}.json" for n in range(1, 6) for k in range(1, n + 1)]
    + ["k4_graphic.json", "line_plus_two.json"]
)


def corpus():
    return [(name.removesuffix(".json"), load_matroid(DATA / name)) for name in CORPUS_FILES]


@pytest.fixture(scope="session")
def corpus_matroids():
    return corpus()


@pytest.fixture(scope="session")
def data_dir():
    return DATA


# one line per acceptance criterion, recorded by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
