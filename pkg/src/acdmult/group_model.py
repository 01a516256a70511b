"""Descriptors for block-rigid CRQ-groups of ring type.

A group ``G = <d, A>`` is recorded by its critical types ``τ`` (each an
idempotent type, i.e. a finite set ``P∞(τ)`` of primes), the ranks
``k_τ = r(A_τ)``, the near-isomorphism invariants ``m_τ`` and the numerators
``s_τ`` of the standard representation ``d = Σ (s_τ / m_τ) e_0^(τ)``.

Elements of the divisible hull are maps ``(type, index) -> Fraction`` where
the index ranges over ``0..k_τ-1`` for types with ``m_τ > 1`` (index 0 is the
coordinate carrying ``d``) and over ``1..k_τ`` for the others.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Iterable, Mapping, Optional, Sequence, Tuple

from .arith import (
    avoids_primes,
    crt_solve,
    factorize,
    in_localization,
    is_prime,
    lcm,
    least_unit_representative,
    mod_inverse,
    reduce_rational_mod,
    to_rational,
)


class InvalidDescriptor(ValueError):
    """Raised when an operation receives a descriptor that fails :func:`validate`."""

    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ShapeError(ValueError):
    pass


class NotAnEndomorphism(ValueError):
    pass


@dataclass(frozen=True)
class IdempotentType:
    """An idempotent type, identified with its set of ∞-primes ``P∞(τ)``."""

    p_inf: Tuple[int, ...] = ()

    def __post_init__(self):
        p_inf = tuple(int(p) for p in self.p_inf)
        object.__setattr__(self, "p_inf", p_inf)
        for p in p_inf:
            if not is_prime(p):
                raise ValueError(f"p_inf entry {p} is not prime")
        if any(a >= b for a, b in zip(p_inf, p_inf[1:])):
            raise ValueError(f"p_inf {list(p_inf)} must be strictly ascending")

    def leq(self, other: "IdempotentType") -> bool:
        """The type order: ``τ ≤ σ`` iff ``P∞(τ) ⊆ P∞(σ)``."""
        return set(self.p_inf) <= set(other.p_inf)

    def comparable(self, other: "IdempotentType") -> bool:
        return self.leq(other) or other.leq(self)

    def sort_key(self) -> Tuple[int, ...]:
        return self.p_inf

    @property
    def key(self) -> str:
        """Comma-joined ``p_inf``; the type's name in JSON maps."""
        return ",".join(str(p) for p in self.p_inf)

    @classmethod
    def from_key(cls, key: str) -> "IdempotentType":
        if key == "":
            return cls(())
        return cls(tuple(int(part) for part in key.split(",")))

    def contains(self, x) -> bool:
        """Membership of a rational in ``R_τ``."""
        return in_localization(x, self.p_inf)

    def __repr__(self) -> str:
        return f"τ{{{self.key}}}"


@dataclass(frozen=True)
class TypeComponent:
    type: IdempotentType
    rank: int
    m: int = 1
    s: Optional[int] = None

    def __post_init__(self):
        if not isinstance(self.type, IdempotentType):
            object.__setattr__(self, "type", IdempotentType(tuple(self.type)))
        if int(self.rank) < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        if int(self.m) < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.m > 1 and self.s is None:
            raise ValueError(f"s is required when m = {self.m} > 1")
        if self.m == 1 and self.s is not None:
            raise ValueError("s must be omitted when m = 1")


@dataclass(frozen=True)
class GroupDescriptor:
    components: Tuple[TypeComponent, ...]
    provenance: Optional[Mapping[str, Any]] = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("a descriptor needs at least one component")

    @classmethod
    def build(cls, p_infs, ranks, ms, ss=None, provenance=None) -> "GroupDescriptor":
        """Convenience constructor from parallel lists; ``ss`` entries for ``m = 1`` are ignored."""
        ss = list(ss) if ss is not None else [None] * len(ms)
        comps = []
        for p_inf, k, m, s in zip(p_infs, ranks, ms, ss, strict=True):
            comps.append(TypeComponent(IdempotentType(tuple(p_inf)), k, m, s if m > 1 else None))
        return cls(tuple(comps), provenance)

    @property
    def types(self) -> Tuple[IdempotentType, ...]:
        return tuple(c.type for c in self.components)

    def component(self, tau: IdempotentType) -> TypeComponent:
        for c in self.components:
            if c.type == tau:
                return c
        raise KeyError(tau)

    @property
    def t0(self) -> Tuple[IdempotentType, ...]:
        return tuple(c.type for c in self.sorted_components() if c.m > 1)

    @property
    def t1(self) -> Tuple[IdempotentType, ...]:
        return tuple(c.type for c in self.sorted_components() if c.m > 1 and c.rank == 1)

    @property
    def n(self) -> int:
        return lcm(c.m for c in self.components)

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    def sorted_components(self) -> Tuple[TypeComponent, ...]:
        return tuple(sorted(self.components, key=lambda c: c.type.sort_key()))

    def indices(self, tau: IdempotentType) -> range:
        c = self.component(tau)
        return range(0, c.rank) if c.m > 1 else range(1, c.rank + 1)

    def d(self) -> "GroupElement":
        """The element ``d`` of the standard representation."""
        return GroupElement(
            {(c.type, 0): Fraction(c.s, c.m) for c in self.components if c.m > 1}
        )


@dataclass(frozen=True)
class GroupElement:
    """An element of the divisible hull; zero coordinates are dropped."""

    coords: Mapping[Tuple[IdempotentType, int], Fraction]

    def __post_init__(self):
        cleaned = {}
        for (tau, i), v in dict(self.coords).items():
            v = to_rational(v)
            if v != 0:
                cleaned[(tau, int(i))] = v
        object.__setattr__(self, "coords", dict(sorted(cleaned.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1]))))

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.coords == other.coords

    def __hash__(self):
        return hash(tuple(self.coords.items()))

    def __getitem__(self, key: Tuple[IdempotentType, int]) -> Fraction:
        return self.coords.get(key, Fraction(0))

    def __add__(self, other: "GroupElement") -> "GroupElement":
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, Fraction(0)) + v
        return GroupElement(out)

    def __neg__(self) -> "GroupElement":
        return GroupElement({k: -v for k, v in self.coords.items()})

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def scaled(self, z) -> "GroupElement":
        z = to_rational(z)
        return GroupElement({k: z * v for k, v in self.coords.items()})


def condition_m(ms: Iterable[int]) -> bool:
    """Every prime power dividing one ``m`` divides some other ``m``."""
    ms = list(ms)
    for i, m in enumerate(ms):
        for p, e in factorize(m).items():
            q = p ** e
            if not any(j != i and other % q == 0 for j, other in enumerate(ms)):
                return False
    return True


def _condition_m_violations(G: GroupDescriptor) -> list[str]:
    out = []
    comps = G.components
    for i, c in enumerate(comps):
        for p, e in factorize(c.m).items():
            q = p ** e
            if not any(j != i and o.m % q == 0 for j, o in enumerate(comps)):
                out.append(
                    f"condition (m): {p}^{e} divides m={c.m} at type {{{c.type.key}}} but no other m_σ"
                )
    return out


def validate(G: GroupDescriptor) -> list[str]:
    """Return every violated validity clause; the empty list means valid."""
    out: list[str] = []
    comps = G.components
    seen = set()
    for c in comps:
        if c.type in seen:
            out.append(f"duplicate type: {{{c.type.key}}} occurs more than once")
        seen.add(c.type)
    for i, a in enumerate(comps):
        for b in comps[i + 1:]:
            if a.type != b.type and a.type.comparable(b.type):
                out.append(f"comparable types: {{{a.type.key}}} and {{{b.type.key}}}")
    for c in comps:
        tag = f"type {{{c.type.key}}}"
        if not avoids_primes(c.m, c.type.p_inf):
            out.append(f"m not a P0-number: m={c.m} at {tag} is divisible by a prime of p_inf")
        if c.m > 1:
            if gcd(c.s, c.m) != 1:
                out.append(f"gcd(s, m) != 1: s={c.s}, m={c.m} at {tag}")
            if not avoids_primes(c.s, c.type.p_inf):
                out.append(f"s not a P0-number: s={c.s} at {tag} is divisible by a prime of p_inf")
    out.extend(_condition_m_violations(G))
    return out


@lru_cache(maxsize=4096)
def _is_valid(G: GroupDescriptor) -> Tuple[str, ...]:
    return tuple(validate(G))


def require_valid(G: GroupDescriptor) -> None:
    violations = _is_valid(G)
    if violations:
        raise InvalidDescriptor(violations)


def canonicalize(G: GroupDescriptor) -> GroupDescriptor:
    """Sort components by ``p_inf`` and reduce each ``s`` to its least P₀ representative."""
    require_valid(G)
    comps = []
    for c in G.sorted_components():
        if c.m > 1:
            c = replace(c, s=least_unit_representative(c.s, c.m, c.type.p_inf))
        comps.append(c)
    return GroupDescriptor(tuple(comps), G.provenance)


@dataclass(frozen=True)
class StructureInfo:
    is_rigid: bool
    is_clipped: bool
    is_proper: bool
    t0: Tuple[IdempotentType, ...]
    t1: Tuple[IdempotentType, ...]
    regulator_index: int


def structure_queries(G: GroupDescriptor) -> StructureInfo:
    require_valid(G)
    comps = G.components
    return StructureInfo(
        is_rigid=all(c.rank == 1 for c in comps),
        is_clipped=all(c.m > 1 and c.rank == 1 for c in comps),
        # s ≡ 1 is the only class whose least P0 representative is 1
        is_proper=all(c.s % c.m == 1 for c in comps if c.m > 1),
        t0=G.t0,
        t1=G.t1,
        regulator_index=G.n,
    )


def is_rigid(G: GroupDescriptor) -> bool:
    return all(c.rank == 1 for c in G.components)


def main_decomposition(
    G: GroupDescriptor,
) -> Tuple[Optional[GroupDescriptor], Optional[GroupDescriptor]]:
    """Split ``G = G1 ⊕ C``; ``None`` stands for an absent summand."""
    require_valid(G)
    g1, cd = [], []
    for c in G.sorted_components():
        if c.m > 1:
            g1.append(TypeComponent(c.type, 1, c.m, c.s))
            if c.rank > 1:
                cd.append(TypeComponent(c.type, c.rank - 1))
        else:
            cd.append(TypeComponent(c.type, c.rank))
    G1 = GroupDescriptor(tuple(g1)) if g1 else None
    C = GroupDescriptor(tuple(cd)) if cd else None
    return G1, C


def _check_shape(G: GroupDescriptor, g: GroupElement) -> None:
    types = set(G.types)
    for tau, i in g.coords:
        if tau not in types:
            raise ShapeError(f"coordinate type {{{tau.key}}} is not a critical type of G")
        if i not in G.indices(tau):
            raise ShapeError(f"index {i} out of range for type {{{tau.key}}}")


def forced_d_multiple(G: GroupDescriptor, g: GroupElement) -> Optional[Tuple[int, int]]:
    """Residue class of ``z`` with ``g - z·d ∈ A``, or ``None`` if there is none."""
    require_valid(G)
    _check_shape(G, g)
    for (tau, i), x in g.coords.items():
        if not (G.component(tau).m > 1 and i == 0) and not tau.contains(x):
            return None
    pairs = []
    # absent index-0 coordinates are zero and still pin z
    for c in G.components:
        if c.m > 1:
            mx = c.m * g[(c.type, 0)]
            if not c.type.contains(mx):
                return None
            pairs.append((reduce_rational_mod(mx, c.m) * mod_inverse(c.s, c.m) % c.m, c.m))
    return crt_solve(pairs)


def group_contains(G: GroupDescriptor, g: GroupElement) -> bool:
    return forced_d_multiple(G, g) is not None


def scalar_action(G: GroupDescriptor, c: Mapping[IdempotentType, Any], g: GroupElement) -> GroupElement:
    """Apply the endomorphism ``x -> c·x`` for ``c ∈ K_G``."""
    from .mult_structure import in_KG

    if not in_KG(G, c):
        raise NotAnEndomorphism(f"{c!r} is not in K_G")
    if not group_contains(G, g):
        raise ValueError("element is not in G")
    return GroupElement({(tau, i): to_rational(c[tau]) * x for (tau, i), x in g.coords.items()})
