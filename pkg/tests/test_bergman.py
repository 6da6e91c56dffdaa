from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodge_forge.bergman import (bergman_fan, bergman_vector, deletion_tower, link_factorization,
                                 link_of_ray_as_product, projection_matrix)
from hodge_forge.errors import ColoopInput, InputError
from hodge_forge.fan import link, star_subdivision
from hodge_forge.matroid import (boolean_matroid, deletion_flat_pairs, is_coloop, matroid_from_flats, matroid_from_vectors,
                                 uniform_matroid)

from test_matroid import nonzero_columns

F = Fraction


def test_bergman_vector_shift():
    assert bergman_vector((1, 2, 3), {1}) == (1, 0)
    assert bergman_vector((1, 2, 3), {1, 3}) == (0, -1)
    assert bergman_vector((1, 2, 3), {1, 2, 3}) == (0, 0)


def test_u23():
    fan = bergman_fan(uniform_matroid(2, 3))
    assert fan.nrays == 3 and fan.dim == 1
    assert sorted(map(sorted, fan.max_cones)) == [[0], [1], [2]]


def test_b3():
    fan = bergman_fan(boolean_matroid(3))
    assert fan.nrays == 6 and len(fan.max_cones) == 6 and fan.dim == 2
    fan.validate()


def test_rank_one_is_zero_fan():
    fan = bergman_fan(uniform_matroid(1, 3))
    assert fan.nrays == 0 and fan.cones == {frozenset()}


def test_link_of_ray_b3():
    loc, con, fac = link_of_ray_as_product(boolean_matroid(3), [1, 2])
    assert loc.nrays == 2 and loc.dim == 1
    assert con.nrays == 0
    assert fac.link_fan.nrays == fac.product_fan.nrays == 2


def test_link_of_ray_u34():
    loc, con, fac = link_of_ray_as_product(uniform_matroid(3, 4), [1])
    assert loc.nrays == 0
    assert con.nrays == 3 and con.dim == 1
    assert set(fac.ray_map.values()) == set(range(fac.link_fan.nrays))


def test_link_of_trivial_flat_rejected():
    with pytest.raises(InputError):
        link_of_ray_as_product(boolean_matroid(3), [])
    with pytest.raises(InputError):
        link_of_ray_as_product(boolean_matroid(3), [1, 2, 3])


def _flat_matroids():
    return [boolean_matroid(3), boolean_matroid(4), uniform_matroid(3, 4), uniform_matroid(4, 5),
            matroid_from_flats(5, [[], [1], [2], [3], [4], [5], [1, 2, 3], [1, 4], [1, 5], [2, 4], [2, 5],
                                   [3, 4], [3, 5], [4, 5], [1, 2, 3, 4, 5]])]


@pytest.mark.parametrize("m", _flat_matroids(), ids=lambda m: m.name or "line")
def test_every_chain_link_is_a_product(m):
    fan = bergman_fan(m)
    for chain in m.chains:
        fac = link_factorization(m, chain, fan)
        tau = frozenset(fan.ray_index(f) for f in chain)
        assert fac.link_fan.same_embedded_fan(link(fan, tau)[0])
        assert fac.product_fan.nrays == fac.link_fan.nrays


@settings(max_examples=15)
@given(st.integers(2, 3).flatmap(nonzero_columns))
def test_random_bergman_fans_are_fans(mat):
    m = matroid_from_vectors(mat)
    fan = bergman_fan(m)
    fan.validate()
    assert fan.dim == m.rank - 1
    for f in m.nontrivial_flats:
        link_of_ray_as_product(m, f)


# -- deletion towers ------------------------------------------------------------------

def test_u34_tower():
    t = deletion_tower(uniform_matroid(3, 4), 4)
    assert t.k == 3
    assert t.pairs == [frozenset({1}), frozenset({2}), frozenset({3})]
    assert t.fans[0].same_embedded_fan(bergman_fan(uniform_matroid(3, 4)))
    assert t.fans[-1].nrays == t.base.nrays + 1
    for j in range(1, t.k + 1):
        sub, _ = star_subdivision(t.fans[j], t.subdivided_cones[j - 1])
        assert sub.same_embedded_fan(t.fans[j - 1])
        assert t.subdivision_maps[j - 1].is_morphism()


def test_u23_tower_has_no_subdivisions():
    t = deletion_tower(uniform_matroid(2, 3), 3)
    assert t.k == 0
    assert t.projection.is_morphism()


def test_coloop_rejected():
    with pytest.raises(ColoopInput):
        deletion_tower(boolean_matroid(3), 3)


def test_parallel_element_rejected():
    # 1 and 2 parallel: {1} is not a flat
    m = matroid_from_flats(3, [[], [1, 2], [3], [1, 2, 3]])
    with pytest.raises(InputError):
        deletion_tower(m, 1)


def test_projection_matrix_kills_deleted_element():
    elements = (1, 2, 3, 4)
    p = projection_matrix(elements, 4)
    e4 = bergman_vector(elements, {4})
    assert all(sum(a * b for a, b in zip(row, e4)) == 0 for row in p)
    p2 = projection_matrix(elements, 2)
    e12 = bergman_vector(elements, {1, 2})
    assert [sum(a * b for a, b in zip(row, e12)) for row in p2] == list(bergman_vector((1, 3, 4), {1}))


def test_custom_order_validation():
    m = uniform_matroid(3, 4)
    t = deletion_tower(m, 4, order=[[3], [1], [2]])
    assert t.pairs[0] == frozenset({3})
    with pytest.raises(InputError):
        deletion_tower(m, 4, order=[[1], [2]])
    # a pair may not come before a flat it contains
    m45 = uniform_matroid(4, 5)
    with pytest.raises(InputError):
        deletion_tower(m45, 5, order=list(reversed(deletion_flat_pairs(m45, 5))))


@pytest.mark.parametrize("m", [uniform_matroid(3, 5), uniform_matroid(4, 5),
                               matroid_from_vectors([[1, 0, 0, 1, 1], [0, 1, 0, 1, 2], [0, 0, 1, 0, 0]])],
                         ids=["U35", "U45", "vec"])
def test_towers_for_every_non_coloop(m):
    # U(4,5) is symmetric, so one element suffices there
    elements = m.elements[-1:] if m.name == "U(4,5)" else m.elements
    for i in elements:
        if is_coloop(m, i) or not m.is_flat([i]):
            continue
        t = deletion_tower(m, i)
        assert t.fans[0].same_embedded_fan(bergman_fan(m))
        assert t.projection.is_morphism()
