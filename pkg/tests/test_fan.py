from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodge_forge.bergman import bergman_fan
from hodge_forge.errors import InputError, VerificationFailure
from hodge_forge.fan import (Fan, FanMap, link, primitive, product, quotient_map, star,
                             star_subdivision, zero_fan)
from hodge_forge.matroid import boolean_matroid, uniform_matroid

F = Fraction


def b3():
    m = boolean_matroid(3)
    return m, bergman_fan(m)


def idx(fan, *flats):
    return frozenset(fan.ray_index(frozenset(f)) for f in flats)


def test_primitive():
    assert primitive([F(2), F(4)]) == (F(1), F(2))
    assert primitive([F(1, 2), F(1, 3)]) == (F(3), F(2))
    assert primitive([F(0), F(-3)]) == (F(0), F(-1))


def test_from_cones_closes_faces():
    fan = Fan.from_cones(2, [[1, 0], [0, 1]], [[0, 1]])
    assert fan.cones == {frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})}
    assert fan.dim == 2 and fan.is_pure()


def test_validate_rejects_overlap():
    # two 2-cones overlapping in their interiors
    fan = Fan.from_cones(2, [[1, 0], [0, 1], [1, 1], [1, 2]], [[0, 1], [2, 3]])
    with pytest.raises(VerificationFailure):
        fan.validate()


def test_validate_rejects_dependent_cone():
    fan = Fan.from_cones(2, [[1, 0], [2, 0]], [[0, 1]])
    with pytest.raises(VerificationFailure):
        fan.validate()


def test_star_examples():
    _, fan = b3()
    assert star(fan, []).same_embedded_fan(fan)
    st1 = star(fan, idx(fan, [1]))
    assert set(st1.labels) == {frozenset({1}), frozenset({1, 2}), frozenset({1, 3})}
    assert {frozenset(st1.labels[i] for i in c) for c in st1.max_cones} == {
        frozenset({frozenset({1}), frozenset({1, 2})}), frozenset({frozenset({1}), frozenset({1, 3})})}
    sigma = idx(fan, [1], [1, 2])
    s = star(fan, sigma)
    assert s.nrays == 2 and len(s.max_cones) == 1
    with pytest.raises(InputError):
        star(fan, idx(fan, [1], [2]))


def test_link_examples():
    _, fan = b3()
    lk, q = link(fan, [])
    assert lk.same_embedded_fan(fan)
    assert q == [[1, 0], [0, 1]]
    lk, q = link(fan, idx(fan, [1, 2]))
    assert lk.ambient_dim == 1 and lk.nrays == 2
    assert {lk.labels[i] for i in range(2)} == {frozenset({1}), frozenset({2})}
    assert lk.rays[0] == tuple(-x for x in lk.rays[1])
    lk, q = link(fan, idx(fan, [1], [1, 2]))
    assert lk.ambient_dim == 0 and lk.nrays == 0 and lk.cones == {frozenset()}


def test_quotient_map_kills_span():
    _, fan = b3()
    tau = idx(fan, [1, 2])
    q = quotient_map(fan, tau)
    for i in tau:
        assert all(sum(a * b for a, b in zip(row, fan.rays[i])) == 0 for row in q)


def test_product_examples():
    _, fan = b3()
    assert product(fan, zero_fan(0)).same_embedded_fan(fan)
    b2 = bergman_fan(boolean_matroid(2))
    p = product(b2, b2)
    assert p.nrays == 4 and len(p.max_cones) == 4 and p.dim == 2
    p.validate()
    p3 = product(b2, fan)
    assert p3.nrays == b2.nrays + fan.nrays and p3.dim == b2.dim + fan.dim


def test_star_subdivision_b3():
    _, fan = b3()
    tau = idx(fan, [1], [1, 2])
    sub, s = star_subdivision(fan, tau)
    assert sub.nrays == 7 and len(sub.max_cones) == 7
    new = sub.nrays - 1
    assert sub.rays[new] == tuple(x + y for x, y in zip(fan.rays[min(tau)], fan.rays[max(tau)]))
    sub.validate()
    assert s.is_morphism()
    assert len(star(sub, [new]).max_cones) == 2
    with pytest.raises(InputError):
        star_subdivision(fan, idx(fan, [1]))


def _sample_points(fan):
    pts = []
    for c in sorted(fan.max_cones, key=sorted):
        gens = fan.generators(c)
        pts.append([sum(col) for col in zip(*gens)])
        for a, b in combinations(gens, 2):
            pts.append([x + y for x, y in zip(a, b)])
        pts.extend(list(g) for g in gens)
    return pts


@pytest.mark.parametrize("matroid", [boolean_matroid(3), uniform_matroid(3, 4), boolean_matroid(4)],
                         ids=["B3", "U34", "B4"])
def test_star_subdivision_preserves_support(matroid):
    fan = bergman_fan(matroid)
    # a deterministic handful of 2-cones keeps B4 quick
    for tau in sorted(fan.cones_of_dim(2), key=sorted)[:6]:
        sub, smap = star_subdivision(fan, tau)
        for p in _sample_points(fan) + _sample_points(sub):
            assert (fan.locate(p) is None) == (sub.locate(p) is None)
        assert smap.is_morphism()


def test_fanmap():
    _, fan = b3()
    ident = FanMap.identity(fan, fan)
    assert ident.is_morphism()
    for i in range(fan.nrays):
        assert ident.image_of_ray(i) == (frozenset({i}), {i: 1})
    swap = FanMap.linear([[0, 1], [1, 0]], fan, fan)
    assert swap.is_morphism()
    bad = FanMap.linear([[1, 0], [0, 2]], fan, fan)
    assert not bad.is_morphism()
    with pytest.raises(InputError):
        FanMap.linear([[1, 0]], fan, fan)


@given(st.lists(st.integers(-4, 4), min_size=2, max_size=2))
def test_complete_fan_locates_everything(p):
    # B3's Bergman fan is the complete fan of the permutohedral variety in R^2
    _, fan = b3()
    loc = fan.locate([F(x) for x in p])
    assert loc is not None
    cone, coords = loc
    recon = [sum(coords[i] * fan.rays[i][k] for i in cone) for k in range(2)]
    assert recon == p and all(x > 0 for x in coords.values())
