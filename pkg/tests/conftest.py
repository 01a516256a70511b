from math import gcd

import pytest
from hypothesis import assume, settings
from hypothesis import strategies as st

from acdmult.arith import avoids_primes, lcm
from acdmult.group_model import GroupDescriptor, IdempotentType, TypeComponent

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

PRIME_POOL = (2, 3, 5, 7, 11, 13, 19, 29, 31)
ATOMS = ((2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1))


@pytest.fixture
def F1():
    return GroupDescriptor.build([(11,), (19,)], [1, 1], [5, 5], [2, 3])


@pytest.fixture
def F1_proper():
    return GroupDescriptor.build([(11,), (19,)], [1, 1], [5, 5], [1, 1])


@pytest.fixture
def F2():
    # s ≡ (2, 3) mod 5, lifted to P0-numbers
    return GroupDescriptor.build([(2,), (3,)], [1, 1], [5, 5], [7, 8])


@st.composite
def descriptors(draw, max_types=4, max_rank=3, rigid=False, pool=PRIME_POOL):
    """Valid descriptors built so that condition (m) holds by construction.

    Each prime-power atom is handed to at least two eligible types, so every
    prime power dividing one modulus divides another.
    """
    t = draw(st.integers(1, max_types))
    sets = draw(st.lists(
        st.frozensets(st.sampled_from(pool), min_size=0 if t == 1 else 1, max_size=2),
        min_size=t, max_size=t, unique=True,
    ))
    assume(not any(a <= b or b <= a for i, a in enumerate(sets) for b in sets[i + 1:]))
    types = [IdempotentType(tuple(sorted(s))) for s in sets]
    ms = [1] * t
    for p, e in draw(st.lists(st.sampled_from(ATOMS), max_size=3, unique=True)):
        eligible = [i for i in range(t) if p not in types[i].p_inf]
        if len(eligible) < 2:
            continue
        for i in draw(st.lists(st.sampled_from(eligible), min_size=2, unique=True)):
            ms[i] = lcm([ms[i], p ** e])
    comps = []
    for tau, m in zip(types, ms):
        k = 1 if rigid else draw(st.integers(1, max_rank))
        s = None
        if m > 1:
            cands = [x for x in range(1, 3 * m + 1) if gcd(x, m) == 1 and avoids_primes(x, tau.p_inf)]
            s = draw(st.sampled_from(cands))
        comps.append(TypeComponent(tau, k, m, s))
    return GroupDescriptor(tuple(draw(st.permutations(comps))))


def _resample(draw, G):
    comps = []
    for c in G.components:
        s = None
        if c.m > 1:
            cands = [x for x in range(1, 3 * c.m + 1) if gcd(x, c.m) == 1 and avoids_primes(x, c.type.p_inf)]
            s = draw(st.sampled_from(cands))
        comps.append(TypeComponent(c.type, c.rank, c.m, s))
    return GroupDescriptor(tuple(comps))


@st.composite
def sibling_pairs(draw, **kw):
    """A descriptor and a near-isomorphic one with fresh numerators."""
    G = draw(descriptors(**kw))
    return G, _resample(draw, G)


@st.composite
def sibling_triples(draw, **kw):
    G = draw(descriptors(**kw))
    return G, _resample(draw, G), _resample(draw, G)
