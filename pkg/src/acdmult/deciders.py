"""Near-isomorphism, isomorphism, realization and self-Mult-isomorphism."""

from __future__ import annotations

from typing import Optional

from .arith import integer_cube_root
from .group_model import GroupDescriptor, TypeComponent, canonicalize, is_rigid, require_valid
from .mult_structure import s_inverse
from .residue_lattice import coset_decomposition, in_gamma_vinf, s_tuple
from .verdict import Verdict


class RealizabilityError(ValueError):
    pass


def _invariants(G: GroupDescriptor):
    return {c.type: (c.rank, c.m) for c in G.components}


def near_iso(G: GroupDescriptor, H: GroupDescriptor) -> Verdict:
    """Same critical types, ranks and ``m_τ``."""
    require_valid(G)
    require_valid(H)
    a, b = _invariants(G), _invariants(H)
    if set(a) != set(b):
        return Verdict(False, diagnostics=("critical type sets differ",))
    for tau in a:
        if a[tau][0] != b[tau][0]:
            return Verdict(False, diagnostics=(f"ranks differ at type {{{tau.key}}}",))
        if a[tau][1] != b[tau][1]:
            return Verdict(False, diagnostics=(f"m differs at type {{{tau.key}}}",))
    return Verdict(True)


def iso(
    G: GroupDescriptor,
    H: GroupDescriptor,
    cap: Optional[int] = None,
    include_minus_one: bool = True,
) -> Verdict:
    """``G ≅ H`` iff near-isomorphic and ``s·t⁻¹ ∈ ΓV∞`` over ``T₁``.

    The witness is the factorization ``s·t⁻¹ = γ·v``.
    """
    ni = near_iso(G, H)
    if not ni:
        return ni
    G, H = canonicalize(G), canonicalize(H)
    s, t = s_tuple(G), s_tuple(H)
    ratio = s / t
    found = coset_decomposition(G, ratio, cap, include_minus_one)
    if found is None:
        return Verdict(False, diagnostics=("s and t lie in different classes of S*/ΓV∞",))
    gamma, v = found
    return Verdict(True, {
        "moduli": list(ratio.moduli),
        "ratio": list(ratio.residues),
        "gamma": list(gamma.residues),
        "v": list(v.residues),
    })


def self_mult_iso(
    G: GroupDescriptor,
    cap: Optional[int] = None,
    include_minus_one: bool = True,
) -> Verdict:
    """``G ≅ Mult G`` iff ``G`` is rigid and ``s² ∈ ΓV∞``."""
    require_valid(G)
    if not is_rigid(G):
        return Verdict(False, diagnostics=("G is not rigid, so r(G) != r(Mult G)",))
    s = s_tuple(G)
    if not in_gamma_vinf(G, s ** 2, cap, include_minus_one):
        return Verdict(False, diagnostics=("s^2 is not in ΓV∞",))
    return Verdict(True, {"moduli": list(s.moduli), "s_squared": list((s ** 2).residues)})


def realizable(M: GroupDescriptor) -> Verdict:
    """``M ≅ Mult G`` for some ``G`` in the class iff every rank is a cube."""
    require_valid(M)
    bad = [c.type.key for c in M.components if integer_cube_root(c.rank) is None]
    if bad:
        return Verdict(False, diagnostics=tuple(f"rank at type {{{k}}} is not a cube" for k in bad))
    return Verdict(True)


def realize(M: GroupDescriptor) -> GroupDescriptor:
    """A group ``G`` with ``Mult G ≅ M``: cube-root ranks, inverted ``s``."""
    require_valid(M)
    comps = []
    for c in M.components:
        k = integer_cube_root(c.rank)
        if k is None:
            raise RealizabilityError(f"rank {c.rank} at type {{{c.type.key}}} is not a perfect cube")
        comps.append(TypeComponent(c.type, k, c.m, s_inverse(c) if c.m > 1 else None))
    return GroupDescriptor(tuple(comps))
