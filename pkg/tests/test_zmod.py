from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legendre_pairs.catalog import builtin_catalog
from legendre_pairs.zmod import (
    Block,
    Modulus,
    NotAUnitError,
    SubgroupH,
    complement,
    expand,
    is_union_of_orbits,
    negate,
    orbit_decomposition,
    orbit_representatives,
    scale,
    subgroup_generated,
    subgroups_of_order,
    translate,
    unit_group,
)


def test_modulus_rejects_even_and_nonpositive():
    for bad in (0, -3, 2, 40):
        with pytest.raises(ValueError):
            Modulus(bad)
    assert Modulus(1).v == 1


def test_unit_group_trivial_ring():
    g = unit_group(1)
    assert g.elements == (0,)
    assert g.order == 1


@pytest.mark.parametrize("v", [3, 7, 39, 53, 91, 121, 123])
def test_unit_group_matches_gcd_scan(v):
    expected = [u for u in range(1, v) if gcd(u, v) == 1]
    g = unit_group(v)
    assert list(g.elements) == expected
    assert g.order == len(expected)


def test_unit_group_orders():
    assert unit_group(39).order == 24
    assert unit_group(53).order == 52
    assert {1, 10, 13}.issubset(unit_group(53).elements)


@pytest.mark.parametrize(
    "v, gens, expected",
    [
        (39, [16], (1, 16, 22)),
        (123, [10], (1, 10, 16, 37, 100)),
        (7, [1], (1,)),
        (63, [11], (1, 8, 11, 23, 25, 58)),
    ],
)
def test_subgroup_generated(v, gens, expected):
    assert subgroup_generated(v, gens).elements == expected


def test_subgroup_generated_rejects_non_unit():
    with pytest.raises(NotAUnitError) as info:
        subgroup_generated(39, [16, 13])
    assert info.value.value == 13


def test_subgroup_must_be_closed():
    with pytest.raises(ValueError, match="not closed"):
        SubgroupH(Modulus(39), (1, 16))


def test_subgroups_of_order_examples():
    assert [h.elements for h in subgroups_of_order(39, 3)] == [(1, 16, 22)]
    assert [h.elements for h in subgroups_of_order(7, 1)] == [(1,)]
    found = {h.elements for h in subgroups_of_order(91, 3)}
    assert {(1, 16, 74), (1, 9, 81)} <= found
    assert subgroups_of_order(39, 5) == []


def test_subgroups_of_order_finds_noncyclic():
    # units mod 15 are Z2 x Z4; the Klein subgroup {1,4,11,14} is not cyclic
    found = {h.elements for h in subgroups_of_order(15, 4)}
    assert (1, 4, 11, 14) in found
    assert (1, 2, 4, 8) in found


@pytest.mark.parametrize("v, d", [(91, 3), (63, 6), (105, 4), (121, 5), (65, 4)])
def test_subgroups_of_order_closed_and_complete(v, d):
    units = unit_group(v).elements
    found = subgroups_of_order(v, d)
    for h in found:
        s = set(h.elements)
        assert len(s) == d
        assert all(a * b % v in s for a in s for b in s)
    # every subgroup of order d is generated by at most 2 of its elements here;
    # brute-force the subgroups generated by pairs of units as an oracle
    brute = set()
    for a in units:
        for b in units:
            h = subgroup_generated(v, [a, b])
            if h.order == d:
                brute.add(h.elements)
    assert {h.elements for h in found} == brute


def test_orbit_decomposition_v49():
    H = subgroup_generated(49, [18])
    assert H.elements == (1, 18, 30)
    od = orbit_decomposition(49, H)
    assert od.orbits[0] == Block.from_members(49, [0])
    assert od.sizes.count(3) == 16
    assert len(od.orbits) == 17


def test_orbit_decomposition_fixed_points_v123():
    H = subgroup_generated(123, [10])
    od = orbit_decomposition(123, H)
    assert od.orbit_of(41).members == (41,)
    assert od.orbit_of(82).members == (82,)
    assert 10 * 41 % 123 == 41


@pytest.mark.parametrize("v", [1, 9, 15, 39, 63])
def test_orbit_decomposition_partition(v):
    for d in (1, 2, 3, 6):
        for H in subgroups_of_order(v, d):
            od = orbit_decomposition(v, H)
            union = 0
            for o in od.orbits:
                assert union & o.mask == 0
                union |= o.mask
                assert H.order % len(o) == 0
                assert expand(H, o) == o
            assert union == (1 << v) - 1
            assert list(od.representatives) == sorted(od.representatives)


def test_expand_examples():
    H = subgroup_generated(39, [16])
    assert len(expand(H, [0, 1, 2, 3, 4, 12, 14])) == 19
    assert expand(H, [0]).members == (0,)
    H123 = subgroup_generated(123, [10])
    Y = expand(H123, [4, 5, 6, 11, 14, 15, 18, 19, 22, 28, 33, 41, 45])
    assert len(Y) == 61


def test_orbit_representatives_roundtrip():
    for r in builtin_catalog():
        if r.H is None:
            continue
        H = r.subgroup()
        X = expand(H, r.X_spec)
        assert is_union_of_orbits(H, X)
        assert expand(H, orbit_representatives(H, X)) == X


def test_block_views_agree():
    b = Block.from_members(11, [7, 1, 3])
    assert b.members == (1, 3, 7)
    assert b.mask == 0b10001010
    assert len(b) == 3 and 3 in b and 4 not in b
    with pytest.raises(ValueError):
        Block.from_members(5, [5])
    with pytest.raises(AttributeError):
        b.mask = 0


def test_set_operations_examples():
    assert translate(Block.from_members(7, [1, 2]), 0) == Block.from_members(7, [1, 2])
    assert translate(Block.from_members(7, [1, 2]), 1) == Block.from_members(7, [0, 1])
    assert negate(Block.from_members(5, [1, 4])) == Block.from_members(5, [1, 4])
    assert len(complement(Block.from_members(9, [0, 4, 5]))) == 6
    with pytest.raises(NotAUnitError):
        scale(Block.from_members(9, [1]), 3)


@st.composite
def blocks(draw, max_v=41):
    v = draw(st.integers(1, max_v // 2).map(lambda n: 2 * n - 1))
    members = draw(st.sets(st.integers(0, v - 1)))
    return Block.from_members(v, members)


@settings(max_examples=200)
@given(blocks(), st.data())
def test_transform_inverses(b, data):
    v = b.v
    s = data.draw(st.integers(0, v - 1))
    u = data.draw(st.sampled_from(unit_group(v).elements))
    u_inv = pow(u, -1, v) if v > 1 else 0
    assert scale(scale(b, u), u_inv) == b
    assert translate(translate(b, s), -s) == b
    assert complement(complement(b)) == b
    assert negate(negate(b)) == b
    assert translate(b, s).members == tuple(sorted((x - s) % v for x in b.members))


@settings(max_examples=100)
@given(blocks(max_v=63), st.data())
def test_expand_idempotent(b, data):
    v = b.v
    d = data.draw(st.sampled_from([1, 2, 3, 5, 6]))
    groups = subgroups_of_order(v, d)
    if not groups:
        return
    H = data.draw(st.sampled_from(groups))
    e = expand(H, b)
    assert expand(H, e) == e
