"""Exact rational and elementary number-theoretic primitives.

Rationals are :class:`fractions.Fraction` values: always in lowest terms with
the sign on the numerator, which is exactly the normal form the rest of the
package relies on for equality.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Optional, Sequence, Tuple

Rational = Fraction

_RATIONAL_RE = re.compile(r"^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$")


class UndefinedValuation(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class NotReducible(ValueError):
    pass


class EmptyProgression(ValueError):
    pass


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise TypeError(f"cannot interpret {x!r} as an exact rational")
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    """Serialize as ``"a"`` or ``"a/b"`` (lowest terms, ``b > 0``)."""
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; rejects anything not in normal form."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    value = Fraction(text)
    if str(value) != text:
        raise ValueError(f"rational literal not in lowest terms: {text!r}")
    return value


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    f = 5
    limit = isqrt(n)
    while f <= limit:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``|n|`` by trial division; ``{}`` for 0 and ±1."""
    n = abs(n)
    out: dict[int, int] = {}
    if n < 2:
        return out
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def p_adic_valuation(x, p: int) -> int:
    x = to_rational(x)
    if x == 0:
        raise UndefinedValuation("valuation of 0 is undefined")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _strip(n: int, primes: Iterable[int]) -> int:
    n = abs(n)
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def is_p_number(x: int, primes: Iterable[int]) -> bool:
    """True iff ``x != 0`` and every prime divisor of ``x`` is in ``primes``.

    ``±1`` have no prime divisors, so they are P-numbers for every ``P``.
    """
    if x == 0:
        return False
    return _strip(x, primes) == 1


def is_p_fraction(x, primes: Iterable[int]) -> bool:
    x = to_rational(x)
    if x == 0:
        return False
    primes = tuple(primes)
    return is_p_number(x.numerator, primes) and is_p_number(x.denominator, primes)


def avoids_primes(x: int, primes: Iterable[int]) -> bool:
    """True iff no prime of ``primes`` divides the nonzero integer ``x``.

    With ``primes = P∞(τ)`` this is the P₀(τ)-number test.
    """
    return x != 0 and all(x % p for p in primes)


def mod_inverse(a: int, m: int) -> int:
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if m == 1:
        return 0
    if gcd(a, m) != 1:
        raise NotInvertible(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError(f"euler_phi needs m >= 1, got {m}")
    result = m
    for p in factorize(m):
        result -= result // p
    return result


def lcm(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def crt_solve(pairs: Sequence[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
    """Solve simultaneous congruences ``x ≡ r_i (mod m_i)``.

    Returns ``(r, lcm(m_i))`` or ``None`` when the residues conflict.
    Moduli need not be coprime. The empty system gives ``(0, 1)``.
    """
    r, m = 0, 1
    for ri, mi in pairs:
        if mi < 1:
            raise ValueError(f"modulus must be >= 1, got {mi}")
        ri %= mi
        g = gcd(m, mi)
        if (ri - r) % g:
            return None
        # r + m*t ≡ ri (mod mi)  <=>  (m/g) t ≡ (ri - r)/g (mod mi/g)
        step = mi // g
        t = ((ri - r) // g) * mod_inverse((m // g) % step, step) % step if step > 1 else 0
        r = r + m * t
        m = m * step
        r %= m
    return r, m


def primes_in_progression(a: int, d: int, count: int) -> list[int]:
    """The ``count`` smallest primes ``≡ a (mod d)``, ascending."""
    if d < 1 or count < 1:
        raise ValueError("need d >= 1 and count >= 1")
    if gcd(a, d) != 1:
        raise EmptyProgression(f"gcd({a}, {d}) != 1: no primes in the progression")
    out: list[int] = []
    n = a % d
    if n == 0:
        n = d
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += d
    return out


def reduce_rational_mod(x, m: int) -> int:
    """Image of ``x`` in ``ℤ/m`` (numerator times inverse of denominator)."""
    x = to_rational(x)
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if gcd(x.denominator, m) != 1:
        raise NotReducible(f"{x} has a denominator sharing a factor with {m}")
    return x.numerator * mod_inverse(x.denominator, m) % m


def in_localization(x, primes: Iterable[int]) -> bool:
    """Membership in the subring of ℚ whose denominators are P-numbers."""
    return is_p_number(to_rational(x).denominator, primes)


def least_unit_representative(residue: int, m: int, p_inf: Sequence[int]) -> int:
    """Least positive integer ``≡ residue (mod m)`` divisible by no prime in ``p_inf``.

    The class must consist of units mod ``m`` and ``m`` must avoid ``p_inf``;
    then a suitable power of the residue lies in the class, so the scan ends.
    """
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    r = residue % m
    if m > 1 and gcd(r, m) != 1:
        raise NotInvertible(f"{residue} is not a unit modulo {m}")
    if r == 0:
        r = m
    while not avoids_primes(r, p_inf):
        r += m
    return r


def integer_cube_root(n: int) -> Optional[int]:
    """Exact cube root of a positive integer, or ``None`` if ``n`` is not a cube."""
    if n < 1:
        return None
    lo, hi = 1, 1 << (n.bit_length() // 3 + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        c = mid ** 3
        if c == n:
            return mid
        if c < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None
