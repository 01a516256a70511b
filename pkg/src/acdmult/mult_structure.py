"""The multiplication group ``Mult G`` and rings on rigid groups.

``Mult G`` is modelled by ``M_G(E₀) = <X, M^(2)>``: per type ``τ`` a
``k_τ × k_τ`` matrix whose entries are elements of ``A_τ``, written as
length-``k_τ`` coordinate vectors over ``R_τ``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Dict, Mapping, Optional, Tuple

from .arith import (
    crt_solve,
    format_rational,
    is_p_fraction,
    least_unit_representative,
    mod_inverse,
    reduce_rational_mod,
    to_rational,
)
from .group_model import (
    GroupDescriptor,
    IdempotentType,
    ShapeError,
    TypeComponent,
    is_rigid,
    require_valid,
)
from .verdict import Verdict

Block = Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
ScalarTuple = Mapping[IdempotentType, Any]


def _block(rows) -> Block:
    return tuple(tuple(tuple(to_rational(x) for x in entry) for entry in row) for row in rows)


@dataclass(frozen=True)
class MultElement:
    """An element of ``∏_τ M_{k_τ}(A_τ)``."""

    blocks: Mapping[IdempotentType, Block]

    def __post_init__(self):
        blocks = {tau: _block(rows) for tau, rows in dict(self.blocks).items()}
        for tau, b in blocks.items():
            k = len(b)
            if k == 0 or any(len(row) != k or any(len(e) != k for e in row) for row in b):
                raise ShapeError(f"block for type {{{tau.key}}} is not a k×k matrix of length-k vectors")
        object.__setattr__(self, "blocks", dict(sorted(blocks.items(), key=lambda kv: kv[0].sort_key())))

    @classmethod
    def rigid(cls, values: Mapping[IdempotentType, Any]) -> "MultElement":
        return cls({tau: (((to_rational(u),),),) for tau, u in values.items()})

    @classmethod
    def zero(cls, G: GroupDescriptor) -> "MultElement":
        return cls({
            c.type: tuple(tuple((Fraction(0),) * c.rank for _ in range(c.rank)) for _ in range(c.rank))
            for c in G.components
        })

    def __eq__(self, other):
        return isinstance(other, MultElement) and self.blocks == other.blocks

    def __hash__(self):
        return hash(tuple(self.blocks.items()))

    @property
    def is_rigid_form(self) -> bool:
        return all(len(b) == 1 for b in self.blocks.values())

    def rigid_values(self) -> Dict[IdempotentType, Fraction]:
        if not self.is_rigid_form:
            raise ShapeError("element has blocks of size > 1")
        return {tau: b[0][0][0] for tau, b in self.blocks.items()}

    def _map(self, f) -> "MultElement":
        return MultElement({
            tau: tuple(tuple(tuple(f(tau, x) for x in e) for e in row) for row in b)
            for tau, b in self.blocks.items()
        })

    def __add__(self, other: "MultElement") -> "MultElement":
        if self.blocks.keys() != other.blocks.keys():
            raise ShapeError("summands have different type sets")
        out = {}
        for tau, b in self.blocks.items():
            ob = other.blocks[tau]
            if len(ob) != len(b):
                raise ShapeError(f"block sizes differ at type {{{tau.key}}}")
            out[tau] = tuple(
                tuple(tuple(x + y for x, y in zip(e, oe)) for e, oe in zip(row, orow))
                for row, orow in zip(b, ob)
            )
        return MultElement(out)

    def __neg__(self) -> "MultElement":
        return self._map(lambda tau, x: -x)

    def __sub__(self, other: "MultElement") -> "MultElement":
        return self + (-other)

    def scaled(self, c: ScalarTuple) -> "MultElement":
        """Componentwise action ``U -> c·U`` of a scalar tuple."""
        c = {tau: to_rational(v) for tau, v in c.items()}
        return self._map(lambda tau, x: c[tau] * x)

    def times(self, z: int) -> "MultElement":
        return self._map(lambda tau, x: z * x)


def _check_shape(G: GroupDescriptor, U: MultElement) -> None:
    if set(U.blocks) != set(G.types):
        raise ShapeError("multiplication element types do not match the group's types")
    for c in G.components:
        if len(U.blocks[c.type]) != c.rank:
            raise ShapeError(f"block at type {{{c.type.key}}} should be {c.rank}×{c.rank}")


def _check_scalars(G: GroupDescriptor, c: ScalarTuple) -> Dict[IdempotentType, Fraction]:
    if set(c) != set(G.types):
        raise ShapeError("scalar tuple must have exactly one entry per type of G")
    return {tau: to_rational(v) for tau, v in c.items()}


def s_inverse(c: TypeComponent) -> int:
    """Least positive P₀(τ)-number inverse to ``s_τ`` modulo ``m_τ``."""
    return least_unit_representative(mod_inverse(c.s, c.m), c.m, c.type.p_inf)


def mult_of(G: GroupDescriptor) -> GroupDescriptor:
    """Descriptor of ``Mult G``: same types and ``m``, cubed ranks, inverted ``s``."""
    require_valid(G)
    comps = []
    for c in G.components:
        comps.append(TypeComponent(c.type, c.rank ** 3, c.m, s_inverse(c) if c.m > 1 else None))
    return GroupDescriptor(tuple(comps))


def x_element(G: GroupDescriptor) -> MultElement:
    """The distinguished element ``X`` with ``(0,0)`` entry ``m_τ s_τ⁻¹ e_0`` on ``T₀``."""
    require_valid(G)
    blocks = {}
    for c in G.components:
        k = c.rank
        rows = [[[Fraction(0)] * k for _ in range(k)] for _ in range(k)]
        if c.m > 1:
            rows[0][0][0] = Fraction(c.m * s_inverse(c))
        blocks[c.type] = rows
    return MultElement(blocks)


def mult_contains(G: GroupDescriptor, U: MultElement) -> Verdict:
    """Membership of ``U`` in ``<X, M^(2)>``; the witness is ``k`` with ``U - kX ∈ M^(2)``."""
    require_valid(G)
    _check_shape(G, U)
    pairs = []
    for c in G.components:
        tau, m = c.type, c.m
        block = U.blocks[tau]
        for i, row in enumerate(block):
            for j, entry in enumerate(row):
                if m == 1 or (i > 0 and j > 0):
                    scale = 1
                elif i == 0 and j == 0:
                    scale = m * m
                else:
                    scale = m
                for idx, x in enumerate(entry):
                    if i == 0 and j == 0 and idx == 0 and m > 1:
                        head = x / m
                        if not tau.contains(head):
                            return Verdict(False, diagnostics=(f"(0,0) entry of type {{{tau.key}}} not in m·R",))
                        pairs.append((reduce_rational_mod(head, m) * c.s % m, m))
                    elif not tau.contains(x / scale):
                        return Verdict(
                            False,
                            diagnostics=(f"entry ({i},{j})[{idx}] of type {{{tau.key}}} not in {scale}·R",),
                        )
    solved = crt_solve(pairs)
    if solved is None:
        return Verdict(False, diagnostics=("no integer k fits every type",))
    k, modulus = solved
    return Verdict(True, {"k": k, "modulus": modulus})


def in_KG(G: GroupDescriptor, c: ScalarTuple) -> Verdict:
    """Membership in ``K_G = ℤ·1_{T₀} + ∏ m_τ R_τ``; the witness is ``γ`` modulo ``n``."""
    require_valid(G)
    c = _check_scalars(G, c)
    pairs = []
    for comp in G.components:
        x = c[comp.type]
        if not comp.type.contains(x):
            return Verdict(False, diagnostics=(f"c at type {{{comp.type.key}}} is not in R_τ",))
        if comp.m > 1:
            pairs.append((reduce_rational_mod(x, comp.m), comp.m))
    solved = crt_solve(pairs)
    if solved is None:
        return Verdict(False, diagnostics=("no integer γ fits every type",))
    return Verdict(True, {"gamma": solved[0], "modulus": solved[1]})


def in_KG_star(G: GroupDescriptor, c: ScalarTuple) -> Verdict:
    """Membership in the unit group of ``K_G``: in ``K_G`` with every entry a ``P∞(τ)``-fraction."""
    v = in_KG(G, c)
    if not v:
        return v
    for comp in G.components:
        if not is_p_fraction(to_rational(c[comp.type]), comp.type.p_inf):
            return Verdict(False, diagnostics=(f"c at type {{{comp.type.key}}} is not a unit of R_τ",))
    return v


@lru_cache(maxsize=4096)
def _unit_table(m: int, primes: Tuple[int, ...]) -> Dict[int, int]:
    """Residue mod ``m`` -> a unit ``±∏ p^a`` of ``R_τ`` with that residue (BFS order)."""
    gens = [(p % m, p) for p in primes] + [(-1 % m, -1)]
    table = {1 % m: 1}
    queue = deque([1 % m])
    while queue:
        r = queue.popleft()
        for gr, gv in gens:
            nr = r * gr % m
            if nr not in table:
                table[nr] = table[r] * gv
                queue.append(nr)
    return table


def unit_with_residue(m: int, primes: Tuple[int, ...], residue: int) -> Optional[int]:
    """A unit of the localization at ``primes`` congruent to ``residue`` mod ``m``, if any."""
    return _unit_table(m, tuple(primes)).get(residue % m)


def ring_iso(G: GroupDescriptor, U: MultElement, V: MultElement) -> Verdict:
    """Decide ``(G, U) ≅ (G, V)`` for rigid ``G``: some ``c ∈ K_G*`` has ``U = c·V``.

    Nonzero coordinates pin ``c_τ = u_τ / v_τ``; where both vanish, ``c_τ`` is
    free among the units of ``R_τ``, whose residues modulo ``m_τ`` form the
    subgroup generated by ``-1`` and ``P∞(τ)``. The remaining freedom is the
    integer ``γ`` modulo ``n``, searched exhaustively.
    """
    require_valid(G)
    if not is_rigid(G):
        raise ValueError("ring isomorphism is only decided for rigid groups")
    for name, W in (("U", U), ("V", V)):
        if not mult_contains(G, W):
            raise ValueError(f"{name} is not a member of M_G(E0)")
    u, v = U.rigid_values(), V.rigid_values()
    c: Dict[IdempotentType, Optional[Fraction]] = {}
    pinned = []
    free = []
    for comp in G.sorted_components():
        tau = comp.type
        if v[tau] == 0 or u[tau] == 0:
            if v[tau] != u[tau]:
                return Verdict(False, diagnostics=(f"zero pattern differs at type {{{tau.key}}}",))
            c[tau] = None
            if comp.m > 1:
                free.append(comp)
            continue
        ratio = u[tau] / v[tau]
        if not is_p_fraction(ratio, tau.p_inf):
            return Verdict(False, diagnostics=(f"u/v = {ratio} at type {{{tau.key}}} is not a unit of R_τ",))
        c[tau] = ratio
        if comp.m > 1:
            pinned.append((reduce_rational_mod(ratio, comp.m), comp.m))
    solved = crt_solve(pinned)
    if solved is None:
        return Verdict(False, diagnostics=("pinned ratios disagree modulo the m_τ",))
    n = G.n
    start, step = solved
    for gamma in range(start, n, step):
        if gcd(gamma, n) != 1:
            continue
        units = [unit_with_residue(comp.m, comp.type.p_inf, gamma) for comp in free]
        if any(x is None for x in units):
            continue
        for comp, x in zip(free, units):
            c[comp.type] = Fraction(x)
        witness_c = {tau: (x if x is not None else Fraction(1)) for tau, x in c.items()}
        return Verdict(True, {
            "c": {tau.key: format_rational(x) for tau, x in witness_c.items()},
            "gamma": gamma % n,
            "modulus": n,
        })
    return Verdict(False, diagnostics=("no γ modulo n admits units on the vanishing coordinates",))
