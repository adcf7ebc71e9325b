"""Canonical conjugacy-class keys for BS(1,k).

Conjugating ``(x, m)`` by ``(y, l)`` gives ``(k^l x + y (1 - k^m), m)``, so
the t-exponent ``m`` is a class invariant and:

* ``m == 0``: the class of ``(x, 0)`` is ``{k^l x}``.  Its key is the integer
  obtained by clearing the denominator of ``x`` and then stripping every
  factor of ``k``.
* ``m != 0``: ``y (1 - k^m)`` ranges over the ideal generated by
  ``M = k^|m| - 1`` in Z[1/k] (for ``m < 0``, ``1 - k^m = M / k^|m|`` is a unit
  multiple of ``M``).  Since ``k`` is a unit mod ``M`` this ideal quotient is
  Z/M, and the class is determined by the orbit of the residue of ``x`` under
  multiplication by ``k``.  The key is the orbit minimum; the orbit size
  divides ``|m|`` because ``k^|m| = 1 (mod M)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Set, Tuple

from .group import GroupElement, KAdicRational

# k^|m| beyond this many bits is refused rather than silently allocated
MAX_MODULUS_BITS = 1 << 22


@dataclass(frozen=True, order=True)
class ConjKey:
    """``m`` plus either the reduced integer (``m == 0``) or the minimal residue."""

    m: int
    value: int

    @property
    def is_abelian(self) -> bool:
        return self.m == 0

    def __str__(self):
        if self.m == 0:
            return f"[x={self.value}]"
        return f"[m={self.m}, r={self.value}]"


def modulus(k: int, m: int) -> int:
    if m == 0:
        raise ValueError("the torus modulus is only defined for m != 0")
    if abs(m) * k.bit_length() > MAX_MODULUS_BITS:
        raise ValueError(f"k^|m| for k={k}, m={m} exceeds the modulus budget")
    return k ** abs(m) - 1


def raw_key(p: int, e: int, m: int, k: int) -> Tuple[int, int]:
    """Key of the element ``(p / k^e, m)`` as a plain ``(m, value)`` tuple."""
    if m == 0:
        if p == 0:
            return (0, 0)
        while p % k == 0:
            p //= k
        return (0, p)
    M = modulus(k, m)
    if M == 1:
        return (m, 0)
    r = p * pow(k, -e, M) % M if e else p % M
    best = r
    for _ in range(abs(m) - 1):
        r = r * k % M
        if r < best:
            best = r
    return (m, best)


def canonical_key(g: GroupElement) -> ConjKey:
    return ConjKey(*raw_key(g.x.num, g.x.exp, g.m, g.k))


def are_conjugate(g: GroupElement, h: GroupElement) -> bool:
    if g.k != h.k:
        raise ValueError("elements come from different groups")
    return canonical_key(g) == canonical_key(h)


def orbit_residues(k: int, m: int, r: int) -> Set[int]:
    """The multiplication-by-k orbit of ``r`` modulo ``k^|m| - 1``."""
    M = modulus(k, m)
    if not 0 <= r < M:
        raise ValueError(f"residue {r} outside [0, {M})")
    orbit = {r}
    x = r * k % M
    while x not in orbit:
        orbit.add(x)
        x = x * k % M
    return orbit


def _residue(x: KAdicRational, M: int) -> int:
    if M == 1:
        return 0
    return x.num * pow(x.k, -x.exp, M) % M


def find_conjugator(g: GroupElement, h: GroupElement) -> Optional[GroupElement]:
    """An element ``c`` with ``c g c^-1 == h``, built from the key arithmetic.

    Returns ``None`` when ``g`` and ``h`` are not conjugate.
    """
    k = g.k
    if g.m != h.m:
        return None
    if g.m == 0:
        if g.x.num == 0 or h.x.num == 0:
            return GroupElement(KAdicRational(k, 0), 0) if g.x == h.x else None
        ratio = h.x.to_fraction() / g.x.to_fraction()
        l = 0
        while ratio.denominator != 1:
            if gcd(ratio.denominator, k) == 1:
                return None
            ratio *= k
            l -= 1
        while ratio != 1 and ratio.numerator % k == 0:
            ratio /= k
            l += 1
        if ratio != 1:
            return None
        return GroupElement(KAdicRational(k, 0), l)
    M = modulus(k, g.m)
    rg, rh = _residue(g.x, M), _residue(h.x, M)
    for l in range(abs(g.m)):
        if rg * pow(k, l, M) % M == rh:
            break
    else:
        return None
    # solve k^l x + y (1 - k^m) = target for y in Z[1/k]
    gap = h.x.to_fraction() - g.x.scale(l).to_fraction()
    y = gap / (1 - Fraction(k) ** g.m)
    return GroupElement(KAdicRational.from_fraction(k, y), l)
