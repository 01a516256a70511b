"""Finite unit groups ``S* = ∏_{τ∈T₁} (ℤ/m_τ)*`` and the subgroups Γ, V∞, ΓV∞.

Everything here is explicit enumeration; subgroups are stored as sorted
tuples of residue tuples together with a generating set.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd, prod
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .arith import euler_phi, lcm
from .group_model import GroupDescriptor, require_valid

DEFAULT_CAP = 10**6

Raw = Tuple[int, ...]


class CapExceeded(RuntimeError):
    def __init__(self, partial_size: int, cap: int):
        self.partial_size = partial_size
        self.cap = cap
        super().__init__(f"subgroup closure exceeded cap {cap} (reached {partial_size} elements)")


def default_cap() -> int:
    env = os.environ.get("ACDMULT_CAP")
    return int(env) if env else DEFAULT_CAP


def _resolve_cap(cap: Optional[int]) -> int:
    cap = default_cap() if cap is None else int(cap)
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    return cap


def _mul(a: Raw, b: Raw, moduli: Raw) -> Raw:
    return tuple(x * y % m for x, y, m in zip(a, b, moduli))


def _inv(a: Raw, moduli: Raw) -> Raw:
    return tuple(pow(x, -1, m) if m > 1 else 0 for x, m in zip(a, moduli))


def _identity(moduli: Raw) -> Raw:
    return tuple(1 % m for m in moduli)


@dataclass(frozen=True)
class ResidueTuple:
    """An element of ``∏ (ℤ/m_i)*``."""

    moduli: Raw
    residues: Raw

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        if len(moduli) != len(self.residues):
            raise ValueError("moduli and residues differ in length")
        if any(m < 1 for m in moduli):
            raise ValueError(f"moduli must be >= 1: {moduli}")
        residues = tuple(int(r) % m for r, m in zip(self.residues, moduli))
        for r, m in zip(residues, moduli):
            if gcd(r, m) != 1:
                raise ValueError(f"{r} is not a unit modulo {m}")
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "residues", residues)

    @classmethod
    def identity(cls, moduli: Sequence[int]) -> "ResidueTuple":
        moduli = tuple(moduli)
        return cls(moduli, _identity(moduli))

    @property
    def entries(self) -> list[Tuple[int, int]]:
        return list(zip(self.moduli, self.residues))

    def _check(self, other: "ResidueTuple") -> None:
        if other.moduli != self.moduli:
            raise ValueError(f"ambient mismatch: {self.moduli} vs {other.moduli}")

    def __mul__(self, other: "ResidueTuple") -> "ResidueTuple":
        self._check(other)
        return ResidueTuple(self.moduli, _mul(self.residues, other.residues, self.moduli))

    def inverse(self) -> "ResidueTuple":
        return ResidueTuple(self.moduli, _inv(self.residues, self.moduli))

    def __truediv__(self, other: "ResidueTuple") -> "ResidueTuple":
        return self * other.inverse()

    def __pow__(self, k: int) -> "ResidueTuple":
        return ResidueTuple(
            self.moduli,
            tuple(pow(r, k, m) if m > 1 else 0 for r, m in zip(self.residues, self.moduli)),
        )


@dataclass(frozen=True)
class UnitSubgroup:
    """A subgroup of ``∏ (ℤ/m_i)*`` with its elements listed in lexicographic order."""

    moduli: Raw
    elements: Tuple[Raw, ...]
    generators: Tuple[Raw, ...] = field(default=(), compare=False)

    def __post_init__(self):
        moduli = tuple(self.moduli)
        elements = tuple(sorted(set(tuple(e) for e in self.elements)))
        object.__setattr__(self, "moduli", moduli)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_set", frozenset(elements))
        members = self._set  # type: ignore[attr-defined]
        ident = _identity(moduli)
        assert ident in members, "subgroup must contain the identity"
        ambient = prod(euler_phi(m) for m in moduli)
        assert ambient % len(elements) == 0, "subgroup order must divide |S*|"
        for e in elements:
            assert _inv(e, moduli) in members, "subgroup must be closed under inverses"
            for g in self.generators:
                assert _mul(e, g, moduli) in members, "subgroup must be closed under its generators"

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, u) -> bool:
        if isinstance(u, ResidueTuple):
            if u.moduli != self.moduli:
                raise ValueError(f"ambient mismatch: {u.moduli} vs {self.moduli}")
            u = u.residues
        return tuple(u) in self._set  # type: ignore[attr-defined]

    def __iter__(self) -> Iterator[ResidueTuple]:
        for e in self.elements:
            yield ResidueTuple(self.moduli, e)


def _closure_raw(gens: Sequence[Raw], moduli: Raw, cap: int) -> list[Raw]:
    ident = _identity(moduli)
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _mul(x, g, moduli)
            if y not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(len(seen) + 1, cap)
                seen.add(y)
                order.append(y)
                queue.append(y)
    return order


def subgroup_closure(
    gens: Iterable[ResidueTuple],
    cap: Optional[int] = None,
    moduli: Optional[Sequence[int]] = None,
) -> UnitSubgroup:
    """The subgroup generated by ``gens`` (breadth-first; finite, so products suffice)."""
    gens = list(gens)
    cap = _resolve_cap(cap)
    if moduli is None:
        if not gens:
            raise ValueError("moduli are required when there are no generators")
        moduli = gens[0].moduli
    moduli = tuple(moduli)
    for g in gens:
        if g.moduli != moduli:
            raise ValueError(f"generator ambient {g.moduli} differs from {moduli}")
    raw = tuple(dict.fromkeys(g.residues for g in gens))
    return UnitSubgroup(moduli, tuple(_closure_raw(raw, moduli, cap)), raw)


def _greedy_generators(elements: Sequence[Raw], moduli: Raw, cap: int) -> Tuple[Raw, ...]:
    gens: list[Raw] = []
    covered = {_identity(moduli)}
    for e in sorted(elements):
        if e not in covered:
            gens.append(e)
            covered = set(_closure_raw(gens, moduli, cap))
    return tuple(gens)


def t1_data(G: GroupDescriptor) -> Tuple[Raw, Tuple[Tuple[int, ...], ...]]:
    """Moduli and ``p_inf`` sets of the types in ``T₁``, in canonical order."""
    comps = [c for c in G.sorted_components() if c.m > 1 and c.rank == 1]
    return tuple(c.m for c in comps), tuple(c.type.p_inf for c in comps)


def s_tuple(G: GroupDescriptor) -> ResidueTuple:
    require_valid(G)
    comps = [c for c in G.sorted_components() if c.m > 1 and c.rank == 1]
    return ResidueTuple(tuple(c.m for c in comps), tuple(c.s for c in comps))


@lru_cache(maxsize=1024)
def _gamma(moduli: Raw, cap: int) -> UnitSubgroup:
    # (ℤ/n)* -> (ℤ/L)* is onto for L | n, so the diagonal image only depends on
    # L = lcm of the T₁ moduli.
    L = lcm(moduli)
    if len(moduli) == 0:
        return UnitSubgroup((), ((),), ())
    image = {tuple(a % m for m in moduli) for a in range(L) if gcd(a, L) == 1}
    if len(image) > cap:
        raise CapExceeded(len(image), cap)
    return UnitSubgroup(moduli, tuple(image), _greedy_generators(tuple(image), moduli, cap))


@lru_cache(maxsize=4096)
def _w(m: int, primes: Tuple[int, ...], include_minus_one: bool, cap: int) -> UnitSubgroup:
    gens = [p % m for p in primes]
    if include_minus_one:
        gens.append(-1 % m)
    raw = tuple(dict.fromkeys((g,) for g in gens))
    return UnitSubgroup((m,), tuple(_closure_raw(raw, (m,), cap)), raw)


def unit_residues(m: int, primes: Sequence[int], include_minus_one: bool = True, cap: Optional[int] = None) -> UnitSubgroup:
    """Residues mod ``m`` of the ``P``-fractions, i.e. ``<p mod m : p ∈ P>`` (with ``-1`` unless excluded)."""
    return _w(int(m), tuple(primes), include_minus_one, _resolve_cap(cap))


@lru_cache(maxsize=1024)
def _vinf(moduli: Raw, p_infs: Tuple[Tuple[int, ...], ...], include_minus_one: bool, cap: int) -> UnitSubgroup:
    factors = [_w(m, P, include_minus_one, cap) for m, P in zip(moduli, p_infs)]
    size = prod(len(f) for f in factors)
    if size > cap:
        raise CapExceeded(size, cap)
    elements = tuple(tuple(e[0] for e in combo) for combo in product(*(f.elements for f in factors)))
    gens = []
    ident = _identity(moduli)
    for i, f in enumerate(factors):
        for (g,) in f.generators:
            gen = list(ident)
            gen[i] = g
            gens.append(tuple(gen))
    return UnitSubgroup(moduli, elements, tuple(dict.fromkeys(gens)))


@lru_cache(maxsize=1024)
def _gamma_vinf(moduli: Raw, p_infs: Tuple[Tuple[int, ...], ...], include_minus_one: bool, cap: int) -> UnitSubgroup:
    gens = tuple(dict.fromkeys(_gamma(moduli, cap).generators + _vinf(moduli, p_infs, include_minus_one, cap).generators))
    return UnitSubgroup(moduli, tuple(_closure_raw(gens, moduli, cap)), gens)


def gamma_subgroup(G: GroupDescriptor, cap: Optional[int] = None) -> UnitSubgroup:
    """Diagonal image of ``(ℤ/n)*`` in ``S*``."""
    require_valid(G)
    moduli, _ = t1_data(G)
    return _gamma(moduli, _resolve_cap(cap))


def vinf_subgroup(G: GroupDescriptor, cap: Optional[int] = None, include_minus_one: bool = True) -> UnitSubgroup:
    """``∏ W_τ`` with ``W_τ`` generated by ``P∞(τ)`` (and ``-1``) modulo ``m_τ``."""
    require_valid(G)
    moduli, p_infs = t1_data(G)
    return _vinf(moduli, p_infs, include_minus_one, _resolve_cap(cap))


def gamma_vinf_subgroup(G: GroupDescriptor, cap: Optional[int] = None, include_minus_one: bool = True) -> UnitSubgroup:
    require_valid(G)
    moduli, p_infs = t1_data(G)
    return _gamma_vinf(moduli, p_infs, include_minus_one, _resolve_cap(cap))


def in_gamma_vinf(G: GroupDescriptor, u: ResidueTuple, cap: Optional[int] = None, include_minus_one: bool = True) -> bool:
    return u in gamma_vinf_subgroup(G, cap, include_minus_one)


def coset_decomposition(
    G: GroupDescriptor, u: ResidueTuple, cap: Optional[int] = None, include_minus_one: bool = True
) -> Optional[Tuple[ResidueTuple, ResidueTuple]]:
    """Some ``(γ, v) ∈ Γ × V∞`` with ``u = γ·v``, or ``None``."""
    if not in_gamma_vinf(G, u, cap, include_minus_one):
        return None
    vinf = vinf_subgroup(G, cap, include_minus_one)
    for gamma in gamma_subgroup(G, cap):
        v = gamma.inverse() * u
        if v in vinf:
            return gamma, v
    raise AssertionError("membership in ΓV∞ without a Γ·V∞ factorization")
