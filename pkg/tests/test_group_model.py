import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acdmult.generators import random_r_element
from acdmult.group_model import (
    GroupDescriptor,
    GroupElement,
    IdempotentType,
    InvalidDescriptor,
    NotAnEndomorphism,
    ShapeError,
    TypeComponent,
    canonicalize,
    condition_m,
    group_contains,
    main_decomposition,
    require_valid,
    scalar_action,
    structure_queries,
    validate,
)
from acdmult.mult_structure import in_KG
from conftest import descriptors
from oracles import brute_group_contains

T11, T19 = IdempotentType((11,)), IdempotentType((19,))
T2, T3 = IdempotentType((2,)), IdempotentType((3,))


def el(G, *values):
    """Element with the given index-0 coordinates, one per sorted type."""
    return GroupElement({(c.type, 0): Fraction(v) for c, v in zip(G.sorted_components(), values)})


def test_type_order_is_inclusion():
    a, b = IdempotentType((2,)), IdempotentType((2, 3))
    assert a.leq(b) and not b.leq(a) and a.comparable(b)
    assert not T11.comparable(T19)
    assert IdempotentType.from_key(b.key) == b
    with pytest.raises(ValueError):
        IdempotentType((3, 2))
    with pytest.raises(ValueError):
        IdempotentType((4,))


def test_component_shape_rules():
    with pytest.raises(ValueError):
        TypeComponent(T11, 0, 1)
    with pytest.raises(ValueError):
        TypeComponent(T11, 1, 5)
    with pytest.raises(ValueError):
        TypeComponent(T11, 1, 1, 3)


@pytest.mark.parametrize("ms,ok", [([5, 5], True), ([5, 10], False), ([6, 10, 15], True)])
def test_condition_m_examples(ms, ok):
    assert condition_m(ms) is ok


def test_validate_examples(F1):
    assert validate(F1) == []
    bad = GroupDescriptor.build([(11,), (19,)], [1, 1], [5, 10], [2, 3])
    assert any(v.startswith("condition (m)") for v in validate(bad))
    bad = GroupDescriptor.build([(11,), (11, 19)], [1, 1], [5, 5], [2, 3])
    assert any(v.startswith("comparable types") for v in validate(bad))


@pytest.mark.parametrize("G,clause", [
    (GroupDescriptor.build([(11,), (11,)], [1, 1], [5, 5], [2, 3]), "duplicate type"),
    (GroupDescriptor.build([(2,), (3,)], [1, 1], [4, 4], [1, 1]), "m not a P0-number"),
    (GroupDescriptor.build([(11,), (19,)], [1, 1], [6, 6], [2, 1]), "gcd(s, m) != 1"),
    (GroupDescriptor.build([(2,), (3,)], [1, 1], [5, 5], [2, 8]), "s not a P0-number"),
])
def test_validate_reports_each_clause(G, clause):
    violations = validate(G)
    assert violations and all(v.startswith(clause) for v in violations)
    with pytest.raises(InvalidDescriptor):
        require_valid(G)


def test_canonicalize_examples(F1):
    G = GroupDescriptor.build([(11,), (19,)], [1, 1], [5, 5], [7, 3])
    assert canonicalize(G) == F1
    assert canonicalize(F1) == F1
    assert canonicalize(GroupDescriptor(F1.components[::-1])) == F1


def test_structure_queries(F1, F1_proper):
    info = structure_queries(F1)
    assert info.is_rigid and info.is_clipped and not info.is_proper
    assert info.regulator_index == 5 and info.t0 == info.t1 == (T11, T19)
    assert structure_queries(F1_proper).is_proper
    G = GroupDescriptor.build([(11,), (19,)], [2, 1], [5, 5], [2, 3])
    assert not structure_queries(G).is_rigid
    assert structure_queries(G).t1 == (T19,)


def test_main_decomposition_examples():
    G = GroupDescriptor.build([(2,), (3,), (5,)], [2, 1, 3], [7, 7, 1], [1, 2, None])
    G1, C = main_decomposition(G)
    assert G1 == GroupDescriptor.build([(2,), (3,)], [1, 1], [7, 7], [1, 2])
    assert C == GroupDescriptor.build([(2,), (5,)], [1, 3], [1, 1])
    F = GroupDescriptor.build([(11,), (19,)], [1, 1], [5, 5], [2, 3])
    assert main_decomposition(F) == (F, None)
    cd = GroupDescriptor.build([(2,), (3,)], [2, 1], [1, 1])
    assert main_decomposition(cd) == (None, cd)


def test_group_contains_examples(F1):
    assert group_contains(F1, F1.d())
    assert F1.d() == el(F1, Fraction(2, 5), Fraction(3, 5))
    assert not group_contains(F1, el(F1, Fraction(1, 5), 0))
    assert group_contains(F1, el(F1, 1, Fraction(1, 19)))
    with pytest.raises(ShapeError):
        group_contains(F1, GroupElement({(T11, 1): Fraction(1)}))


def test_scalar_action_examples(F2):
    g = el(F2, Fraction(2, 5), Fraction(3, 5))
    assert group_contains(F2, g)
    one = {T2: 1, T3: 1}
    assert scalar_action(F2, one, g) == g
    out = scalar_action(F2, {T2: 16, T3: 81}, g)
    assert out == el(F2, Fraction(32, 5), Fraction(243, 5))
    assert group_contains(F2, out)
    with pytest.raises(NotAnEndomorphism):
        scalar_action(F2, {T2: 2, T3: 1}, g)


def random_lattice_element(G, rng):
    return GroupElement({
        (c.type, i): random_r_element(rng, c.type.p_inf)
        for c in G.components
        for i in G.indices(c.type)
    })


@given(descriptors(), st.integers(-20, 20), st.integers(0, 2**32))
def test_multiples_of_d_plus_lattice_are_members(G, z, seed):
    rng = random.Random(seed)
    a = random_lattice_element(G, rng)
    g = G.d().scaled(z) + a
    assert group_contains(G, g)
    assert group_contains(G, g + random_lattice_element(G, rng))


@given(descriptors(max_types=3), st.integers(0, 2**32))
def test_group_contains_matches_brute_force(G, seed):
    rng = random.Random(seed)
    g = random_lattice_element(G, rng)
    for c in G.components:
        if c.m > 1:
            g = g + GroupElement({(c.type, 0): Fraction(rng.randrange(c.m), c.m)})
    assert group_contains(G, g) == brute_group_contains(G, g)


@given(descriptors())
def test_canonicalize_idempotent_and_valid(G):
    H = canonicalize(G)
    assert validate(H) == [] and canonicalize(H) == H
    assert all(c.s is None or 0 < c.s for c in H.components)


@given(descriptors())
def test_main_decomposition_properties(G):
    G1, C = main_decomposition(G)
    if G1 is not None:
        assert validate(G1) == []
        info = structure_queries(G1)
        assert info.is_rigid and info.is_clipped
        assert {c.type: c.m for c in G1.components} == {c.type: c.m for c in G.components if c.m > 1}
    if C is not None:
        assert validate(C) == []
    ranks = sum(c.rank for part in (G1, C) if part is not None for c in part.components)
    assert ranks == G.rank


@given(descriptors(), st.integers(0, 2**32))
def test_scalar_action_composes(G, seed):
    rng = random.Random(seed)
    # elements of K_G: γ·1 + m_τ R_τ
    def kg():
        gamma = rng.randrange(-5, 6)
        return {c.type: gamma + c.m * random_r_element(rng, c.type.p_inf) for c in G.components}

    c1, c2 = kg(), kg()
    assert in_KG(G, c1) and in_KG(G, c2)
    g = G.d().scaled(rng.randrange(-3, 4)) + random_lattice_element(G, rng)
    prod = {t: c1[t] * c2[t] for t in c1}
    assert scalar_action(G, c1, scalar_action(G, c2, g)) == scalar_action(G, prod, g)


def break_clause(G, which, i):
    """Break exactly one validity clause at component ``i``; ``None`` if not applicable."""
    comps = list(G.components)
    c = comps[i]
    if which == "duplicate type":
        comps.append(c)
    elif which == "gcd(s, m) != 1":
        if c.m == 1:
            return None
        comps[i] = replace(c, s=c.m)
    elif which == "s not a P0-number":
        if c.m == 1 or not c.type.p_inf:
            return None
        p = c.type.p_inf[0]
        comps[i] = replace(c, s=next(x for x in range(p, p * c.m + 1, p) if x % c.m == c.s % c.m))
    elif which == "condition (m)":
        # 17 lies outside the strategy's prime pool and moduli
        if c.m > 1 and c.s % 17 == 0:
            return None
        comps[i] = replace(c, m=17 * c.m, s=c.s if c.m > 1 else 1)
    return GroupDescriptor(tuple(comps))


@pytest.mark.parametrize("clause", ["duplicate type", "gcd(s, m) != 1", "s not a P0-number", "condition (m)"])
@given(G=descriptors(max_types=3), data=st.data())
def test_validate_flags_single_clause_breaks(clause, G, data):
    i = data.draw(st.integers(0, len(G.components) - 1))
    H = break_clause(G, clause, i)
    if H is None:
        return
    violations = validate(H)
    assert violations and all(v.startswith(clause) for v in violations)


@given(descriptors(max_types=3, pool=(2, 3, 5, 7)))
def test_validate_flags_comparable_types(G):
    if len(G.components) < 2:
        return
    a, b = G.components[0], G.components[1]
    merged = IdempotentType(tuple(sorted(set(a.type.p_inf) | set(b.type.p_inf))))
    H = GroupDescriptor((replace(a, type=merged),) + G.components[1:])
    assert any(v.startswith("comparable types") for v in validate(H))
