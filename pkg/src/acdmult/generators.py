"""Random valid descriptors and the non-self-Mult-isomorphic family of rigid groups."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Optional, Sequence, Tuple

from .arith import avoids_primes, is_prime, primes_in_progression
from .group_model import GroupDescriptor, IdempotentType, TypeComponent, condition_m, require_valid
from .mult_structure import MultElement, s_inverse


class GenerationFailure(RuntimeError):
    pass


class ConstructionFailure(ValueError):
    pass


@dataclass(frozen=True)
class GenConfig:
    seed: int
    max_types: int = 4
    max_rank: int = 3
    prime_pool: Tuple[int, ...] = (2, 3, 5, 7, 11, 13)
    modulus_pool: Tuple[int, ...] = (1, 2, 3, 4, 5, 6, 7, 9)
    min_types: int = 1
    max_p_inf: int = 2
    max_retries: int = 2000

    def __post_init__(self):
        if not self.prime_pool or not self.modulus_pool:
            raise ValueError("prime_pool and modulus_pool must be nonempty")
        if any(not is_prime(p) for p in self.prime_pool):
            raise ValueError("prime_pool must contain primes only")
        if any(m < 1 for m in self.modulus_pool):
            raise ValueError("moduli must be >= 1")
        if self.max_types < max(1, self.min_types) or self.max_rank < 1 or self.max_p_inf < 1:
            raise ValueError("max_types, max_rank and max_p_inf must be positive and consistent")
        if min(self.modulus_pool) > 1 and self.max_types < 2:
            raise ValueError("moduli > 1 need max_types >= 2 to satisfy condition (m)")


def _draw_types(rng: random.Random, t: int, cfg: GenConfig) -> Optional[list[IdempotentType]]:
    pool = sorted(set(cfg.prime_pool))
    lo = 0 if t == 1 else 1
    hi = min(cfg.max_p_inf, len(pool))
    for _ in range(50):
        sets = [tuple(sorted(rng.sample(pool, rng.randint(lo, hi)))) for _ in range(t)]
        types = [IdempotentType(s) for s in sets]
        if len(set(types)) == t and not any(
            a.comparable(b) for i, a in enumerate(types) for b in types[i + 1:]
        ):
            return types
    return None


def _draw_numerator(rng: random.Random, m: int, p_inf: Sequence[int]) -> int:
    candidates = [x for x in range(1, 3 * m + 1) if gcd(x, m) == 1 and avoids_primes(x, p_inf)]
    return rng.choice(candidates)


def random_descriptor(cfg: GenConfig) -> GroupDescriptor:
    """A valid descriptor drawn deterministically from ``cfg.seed``.

    Rejection sampling over (types, moduli); with probability 1/2 one modulus
    is copied onto a second type, which makes condition (m) far likelier.
    """
    rng = random.Random(cfg.seed)
    for _ in range(cfg.max_retries):
        t = rng.randint(max(1, cfg.min_types), cfg.max_types)
        types = _draw_types(rng, t, cfg)
        if types is None:
            continue
        allowed = [[m for m in cfg.modulus_pool if avoids_primes(m, tau.p_inf)] for tau in types]
        if any(not a for a in allowed):
            continue
        ms = [rng.choice(a) for a in allowed]
        if t >= 2 and rng.random() < 0.5:
            i, j = rng.sample(range(t), 2)
            if ms[i] in allowed[j]:
                ms[j] = ms[i]
        if not condition_m(ms):
            continue
        comps = []
        for tau, m in zip(types, ms):
            k = rng.randint(1, cfg.max_rank)
            s = _draw_numerator(rng, m, tau.p_inf) if m > 1 else None
            comps.append(TypeComponent(tau, k, m, s))
        comps.sort(key=lambda c: c.type.sort_key())
        G = GroupDescriptor(tuple(comps), {"generator": "random_descriptor", "seed": cfg.seed})
        require_valid(G)
        return G
    raise GenerationFailure(
        f"no valid descriptor after {cfg.max_retries} attempts; pools too small for incomparable types and condition (m)"
    )


def resample_numerators(G: GroupDescriptor, seed: int) -> GroupDescriptor:
    """A near-isomorphic sibling of ``G``: same types, ranks and ``m``, fresh ``s``."""
    require_valid(G)
    rng = random.Random(seed)
    comps = tuple(
        TypeComponent(c.type, c.rank, c.m, _draw_numerator(rng, c.m, c.type.p_inf) if c.m > 1 else None)
        for c in G.components
    )
    return GroupDescriptor(comps)


def random_r_element(rng: random.Random, p_inf: Sequence[int], bound: int = 9, max_exp: int = 2) -> Fraction:
    """A random element of ``R_τ`` (small numerator, ``P∞(τ)``-number denominator)."""
    den = prod(p ** rng.randint(0, max_exp) for p in p_inf)
    return Fraction(rng.randint(-bound, bound), den)


def random_member(G: GroupDescriptor, rng: random.Random, zero_prob: float = 0.0) -> MultElement:
    """A random element ``kX + M`` of ``M_G(E₀)`` with ``M ∈ M^(2)``.

    With probability ``zero_prob`` the draw uses ``k = 0`` and zeroes each
    type's block with probability 1/2, so vanishing coordinates occur.
    """
    require_valid(G)
    zeroing = rng.random() < zero_prob
    k = 0 if zeroing else rng.randrange(G.n)
    blocks = {}
    for c in G.components:
        P = c.type.p_inf
        kill = zeroing and rng.random() < 0.5
        rows = []
        for i in range(c.rank):
            row = []
            for j in range(c.rank):
                if c.m == 1 or (i > 0 and j > 0):
                    scale = 1
                elif i == 0 and j == 0:
                    scale = c.m * c.m
                else:
                    scale = c.m
                entry = [Fraction(0) if kill else scale * random_r_element(rng, P) for _ in range(c.rank)]
                if i == 0 and j == 0 and c.m > 1:
                    entry[0] += k * c.m * s_inverse(c)
                row.append(entry)
            rows.append(row)
        blocks[c.type] = rows
    return MultElement(blocks)


def example_4_9(k: int, p: int, include_minus_one: bool = True) -> GroupDescriptor:
    """Rigid rank-``k`` group with all ``m_i = p`` that is not isomorphic to its Mult.

    ``P∞(τ_i) = {q_i}`` for the first ``k`` primes ``q_i ≡ 1 (mod p)``, ``s_1`` is
    the next such prime and ``s_2`` the least integer in ``(1, p-1)`` with
    ``s_2² ≢ 1``; when ``-1`` generates part of V∞ we also need ``s_2² ≢ -1``.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if p <= 3 or not is_prime(p):
        raise ValueError(f"p must be a prime > 3, got {p}")
    progression = primes_in_progression(1, p, k + 1)
    q, s1 = progression[:k], progression[k]
    s2 = None
    for x in range(2, p - 1):
        sq = x * x % p
        if gcd(x, q[1]) != 1 or sq == 1:
            continue
        if include_minus_one and sq == p - 1:
            continue
        s2 = x
        break
    if s2 is None:
        raise ConstructionFailure(
            f"no s2 in (1, {p - 1}) with s2^2 != ±1 (mod {p}): the -1 guard fails for p = {p}"
        )
    ss = [s1, s2] + [1] * (k - 2)
    comps = tuple(TypeComponent(IdempotentType((qi,)), 1, p, si) for qi, si in zip(q, ss))
    G = GroupDescriptor(comps, {"generator": "example_4_9", "k": k, "p": p, "seed": None})
    require_valid(G)
    return G
