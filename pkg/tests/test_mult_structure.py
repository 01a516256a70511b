import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from acdmult.generators import random_member
from acdmult.group_model import GroupDescriptor, IdempotentType, validate
from acdmult.mult_structure import (
    MultElement,
    in_KG,
    in_KG_star,
    mult_contains,
    mult_of,
    ring_iso,
    s_inverse,
    x_element,
)
from acdmult.residue_lattice import unit_residues
from conftest import descriptors
from oracles import brute_in_KG, brute_mult_contains, brute_ring_iso

T2, T3 = IdempotentType((2,)), IdempotentType((3,))


def rig(G, *values):
    return MultElement.rigid({c.type: Fraction(v) for c, v in zip(G.sorted_components(), values)})


def test_mult_of_examples(F1):
    M = mult_of(F1)
    assert [(c.rank, c.m, c.s) for c in M.sorted_components()] == [(1, 5, 3), (1, 5, 2)]
    G = GroupDescriptor.build([(11,), (19,)], [2, 1], [5, 5], [2, 3])
    assert [c.rank for c in mult_of(G).sorted_components()] == [8, 1]
    cd = GroupDescriptor.build([(2,)], [3], [1])
    assert mult_of(cd) == GroupDescriptor.build([(2,)], [27], [1])


def test_mult_contains_examples(F2):
    v = mult_contains(F2, rig(F2, 15, 10))
    assert v.result and v.witness == {"k": 1, "modulus": 5}
    assert not mult_contains(F2, rig(F2, 30, 10))
    z = mult_contains(F2, MultElement.zero(F2))
    assert z.result and z.witness["k"] == 0
    assert mult_contains(F2, x_element(F2))


def test_in_KG_examples(F2):
    v = in_KG(F2, {T2: 16, T3: 81})
    assert v.result and v.witness["gamma"] == 1
    assert not in_KG(F2, {T2: 2, T3: 1})
    one = in_KG(F2, {T2: 1, T3: 1})
    assert one.result and one.witness["gamma"] == 1
    assert in_KG_star(F2, {T2: 16, T3: 81})
    assert not in_KG_star(F2, {T2: 5, T3: 1})
    assert in_KG_star(F2, {T2: 1, T3: 1})


def test_ring_iso_examples(F2):
    v = ring_iso(F2, rig(F2, 240, 810), rig(F2, 15, 10))
    assert v.result and v.witness["c"] == {"2": "16", "3": "81"} and v.witness["gamma"] == 1
    assert not ring_iso(F2, rig(F2, 15, 10), rig(F2, 5, 20))
    U = rig(F2, 15, 10)
    same = ring_iso(F2, U, U)
    assert same.result and set(same.witness["c"].values()) == {"1"}


def test_ring_iso_preconditions(F2):
    G = GroupDescriptor.build([(2,), (3,)], [2, 1], [5, 5], [7, 8])
    with pytest.raises(ValueError):
        ring_iso(G, MultElement.zero(G), MultElement.zero(G))
    with pytest.raises(ValueError):
        ring_iso(F2, rig(F2, 30, 10), rig(F2, 15, 10))


def test_ring_iso_vanishing_coordinates_use_unit_residues():
    # both coordinates vanish at the second type, so γ must be a residue of one of its units
    T7, T11 = IdempotentType((7,)), IdempotentType((11,))
    G = GroupDescriptor.build([(2,), (7,)], [1, 1], [5, 5], [1, 1])
    assert set(unit_residues(5, (7,)).elements) == {(1,), (2,), (3,), (4,)}
    U, V = MultElement.rigid({T2: 25 * 8, T7: 0}), MultElement.rigid({T2: 25, T7: 0})
    v = ring_iso(G, U, V)
    assert v.result and v.witness["gamma"] == 3 and brute_ring_iso(G, U, V)
    # 11 ≡ 1 (mod 5) leaves only ±1, and the pinned ratio 2 forces γ ≡ 2
    H = GroupDescriptor.build([(2,), (11,)], [1, 1], [5, 5], [1, 1])
    assert set(unit_residues(5, (11,)).elements) == {(1,), (4,)}
    U, V = MultElement.rigid({T2: 25 * 2, T11: 0}), MultElement.rigid({T2: 25, T11: 0})
    assert not ring_iso(H, U, V) and not brute_ring_iso(H, U, V)


@given(descriptors(max_types=3))
def test_mult_of_twice(G):
    M2 = mult_of(mult_of(G))
    assert validate(mult_of(G)) == []
    for c, d in zip(G.sorted_components(), M2.sorted_components()):
        assert d.rank == c.rank ** 9 and d.m == c.m
        assert c.m == 1 or (d.s - c.s) % c.m == 0


@given(descriptors(max_types=3, max_rank=2), st.integers(0, 2**32))
def test_members_match_brute_force(G, seed):
    rng = random.Random(seed)
    U = random_member(G, rng, zero_prob=0.2)
    assert mult_contains(G, U)
    assert brute_mult_contains(G, U)
    # nudge the (0,0) head off its residue class
    for c in G.components:
        if c.m > 1:
            bumped = dict(U.blocks)
            b = [[list(e) for e in row] for row in U.blocks[c.type]]
            b[0][0][0] += c.m * rng.randrange(1, c.m)
            bumped[c.type] = b
            W = MultElement(bumped)
            assert mult_contains(G, W).result == brute_mult_contains(G, W)


@given(descriptors(rigid=True), st.integers(0, 2**32))
def test_members_form_a_group(G, seed):
    rng = random.Random(seed)
    U, V = random_member(G, rng), random_member(G, rng)
    assert mult_contains(G, U + V) and mult_contains(G, -U) and mult_contains(G, U - V)


@given(descriptors(max_types=3), st.lists(st.integers(-30, 30), min_size=4, max_size=4))
def test_in_KG_matches_brute_force(G, nums):
    c = {comp.type: Fraction(nums[i % 4], 1 + (i % 2)) for i, comp in enumerate(G.sorted_components())}
    assert in_KG(G, c).result == brute_in_KG(G, c)


def random_unit(rng, tau):
    x = Fraction(rng.choice((1, -1)))
    for p in tau.p_inf:
        x *= Fraction(p) ** rng.randint(-3, 3)
    return x


def random_kg_star(G, rng):
    """Sample a unit of K_G by rejection from ±∏p^a tuples."""
    for _ in range(500):
        c = {comp.type: random_unit(rng, comp.type) for comp in G.components}
        if in_KG_star(G, c):
            return c
    return {comp.type: Fraction(1) for comp in G.components}


rigid_small = descriptors(max_types=3, rigid=True, pool=(2, 3, 5, 7, 11))


@given(rigid_small, st.integers(0, 2**32))
def test_ring_iso_equivalence_relation(G, seed):
    rng = random.Random(seed)
    U = random_member(G, rng, zero_prob=0.3)
    a, b = random_kg_star(G, rng), random_kg_star(G, rng)
    V = U.scaled(a)
    W = V.scaled(b)
    assert mult_contains(G, V) and mult_contains(G, W)
    assert ring_iso(G, U, U)
    vu = ring_iso(G, V, U)
    assert vu
    assert ring_iso(G, U, V)
    assert ring_iso(G, W, U)
    c = {tau: Fraction(x) for tau, x in ((IdempotentType.from_key(k), v) for k, v in vu.witness["c"].items())}
    assert in_KG_star(G, c) and U.scaled(c) == V


@given(rigid_small, st.integers(0, 2**32))
def test_ring_iso_matches_brute_force(G, seed):
    rng = random.Random(seed)
    U = random_member(G, rng, zero_prob=0.3)
    V = random_member(G, rng, zero_prob=0.3) if rng.random() < 0.5 else U.scaled(random_kg_star(G, rng))
    # exponents up to the exponent of (ℤ/n)* reach every unit residue
    bound = max(6, int(sympy.reduced_totient(G.n)))
    assert ring_iso(G, U, V).result == brute_ring_iso(G, U, V, bound)


def test_x_element_head(F1):
    X = x_element(F1)
    for c in F1.components:
        assert X.blocks[c.type][0][0][0] == c.m * s_inverse(c)
