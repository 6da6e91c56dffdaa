from fractions import Fraction

import pytest

from hodge_forge.errors import ColoopInput, InputError
from hodge_forge.matroid import boolean_matroid, uniform_matroid
from hodge_forge.theorem import default_element, verify_main_theorem

from conftest import corpus

F = Fraction

DIRECT_NAMES = {"balancing", "minkowski-weights", "convexity", "certificates", "poincare-duality", "HL", "HR",
                "HL-nondegenerate", "HR-signature", "adjunction", "HR-implies-HL"}
TOWER_NAMES = {"deletion-tower", "projection-iso", "subdivision-link-product", "product-HL-HR", "ortho-decomp",
               "pullbackHLHR", "tower-HL-HR", "HL-implies-HR"}


def names(report):
    return {c["name"] for c in report.checks}


def test_default_element():
    assert default_element(uniform_matroid(3, 4)) == 1
    assert default_element(boolean_matroid(3)) is None


def test_u23_direct():
    rep = verify_main_theorem(uniform_matroid(2, 3))
    assert rep.passed and rep.mode == "direct"
    assert names(rep) == DIRECT_NAMES
    assert rep.sections["direct"]["hilbert"] == [1, 1]


def test_b4_direct():
    rep = verify_main_theorem(boolean_matroid(4))
    assert rep.passed and rep.failed == []
    assert rep.sections["direct"]["hilbert"] == [1, 11, 11, 1]


def test_u34_tower_element_4():
    rep = verify_main_theorem(uniform_matroid(3, 4), "tower", 4)
    assert rep.passed, rep.failed
    assert rep.mode == "tower" and rep.element == 4
    assert rep.sections["tower"]["k"] == 3
    assert names(rep) == DIRECT_NAMES | TOWER_NAMES
    per_step = [c for c in rep.checks if c["name"] == "subdivision-link-product"]
    assert [c["j"] for c in per_step] == [1, 2, 3]
    dm = next(c for c in rep.checks if c["name"] == "HL-implies-HR")
    assert dm["sampled"] is True


def test_u23_tower_has_no_steps():
    rep = verify_main_theorem(uniform_matroid(2, 3), "tower", 3)
    assert rep.passed and rep.sections["tower"]["k"] == 0


def test_boolean_routes_to_direct():
    rep = verify_main_theorem(boolean_matroid(3), "tower")
    assert rep.requested_mode == "tower" and rep.mode == "direct" and rep.element is None
    assert rep.passed


def test_rejections():
    with pytest.raises(ColoopInput):
        verify_main_theorem(boolean_matroid(3), "tower", 1)
    with pytest.raises(InputError):
        verify_main_theorem(uniform_matroid(2, 3), "sideways")
    with pytest.raises(InputError):
        verify_main_theorem(uniform_matroid(2, 3), steps=0)
    with pytest.raises(InputError):
        verify_main_theorem(uniform_matroid(2, 3), "tower", 9)
    with pytest.raises(InputError):
        verify_main_theorem(uniform_matroid(0, 2))


def test_zero_witness_fails_with_names():
    m = boolean_matroid(3)
    rep = verify_main_theorem(m, witness={})
    assert not rep.passed
    assert {"convexity", "HL", "HR"} <= set(rep.failed)
    assert "poincare-duality" not in rep.failed


def test_custom_witness_passes():
    m = uniform_matroid(3, 4)
    w = {f: F(len(f) * (9 - len(f))) for f in m.nontrivial_flats}
    assert verify_main_theorem(m, witness=w).passed


@pytest.mark.parametrize("name", ["u24", "u35", "k4_graphic", "line_plus_two"])
def test_tower_on_corpus(name):
    m = dict(corpus())[name]
    rep = verify_main_theorem(m, "tower")
    assert rep.passed, rep.failed
