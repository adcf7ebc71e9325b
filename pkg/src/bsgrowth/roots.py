"""Exact isolation of the smallest positive root of an integer polynomial.

Signs of integer polynomials at rational points are exact, so the search
is done entirely in :class:`fractions.Fraction`.  Intervals without a sign
change are cleared by a Lipschitz bound: on ``[a, b]`` with ``b >= 0``,
``|p'| <= sum i |c_i| max(|a|, |b|)^(i-1)``, so ``|p(a)| > L (b - a)`` rules
out a root.  Split points are dyadic so exact dyadic roots such as 1/2 are
hit and returned as degenerate intervals.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .series import (
    Poly,
    abelian_series,
    poly_derivative,
    poly_eval,
    poly_trim,
    sequence_series,
)

DEFAULT_WIDTH = Fraction(1, 10**6)
MAX_DEPTH = 200


class RootNotFound(ArithmeticError):
    """No positive root up to the bound, or a root that cannot be isolated."""


@dataclass(frozen=True)
class IntervalRoot:
    poly: Poly
    lo: Fraction
    hi: Fraction
    width: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.midpoint)

    def reciprocal(self) -> Tuple[Fraction, Fraction]:
        """Enclosure of ``1 / root``."""
        return 1 / self.hi, 1 / self.lo

    def refine(self, width) -> "IntervalRoot":
        width = Fraction(width)
        if self.exact or self.hi - self.lo <= width:
            return IntervalRoot(self.poly, self.lo, self.hi, width)
        lo, hi = _bisect(self.poly, self.lo, self.hi, width)
        return IntervalRoot(self.poly, lo, hi, width)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def lipschitz(p: Sequence[int], a: Fraction, b: Fraction) -> Fraction:
    m = max(abs(a), abs(b))
    return sum((i * abs(c) * m ** (i - 1) for i, c in enumerate(p) if i), Fraction(0))


def root_bound(p: Sequence[int]) -> Fraction:
    """A power of two exceeding every root modulus (Cauchy bound)."""
    lead = abs(p[-1])
    cauchy = 1 + Fraction(max((abs(c) for c in p[:-1]), default=0), lead)
    b = Fraction(1)
    while b < cauchy:
        b *= 2
    return b


def deflate(p: Sequence, c: Fraction) -> Tuple[Fraction, ...]:
    """Quotient of ``p`` by ``(z - c)`` for a root ``c`` (synthetic division)."""
    out = [Fraction(0)] * (len(p) - 1)
    acc = Fraction(0)
    for i in range(len(p) - 1, 0, -1):
        acc = acc * c + p[i]
        out[i - 1] = acc
    return tuple(out)


def _poly_divmod(p: Sequence, q: Sequence) -> Tuple[List[Fraction], List[Fraction]]:
    p = [Fraction(c) for c in p]
    q = [Fraction(c) for c in q]
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    while len(p) >= len(q) and any(p):
        shift = len(p) - len(q)
        c = p[-1] / q[-1]
        quot[shift] = c
        for i, b in enumerate(q):
            p[i + shift] -= c * b
        p.pop()
        while len(p) > 1 and p[-1] == 0:
            p.pop()
    return quot, p


def _primitive(p: Sequence[Fraction]) -> Poly:
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return poly_trim([c // g for c in ints]) if g else (0,)


def squarefree(p: Sequence[int]) -> Poly:
    """``p / gcd(p, p')`` as a primitive integer polynomial: same roots, all simple."""
    p = poly_trim(p)
    if len(p) <= 2:
        return p
    a, b = list(map(Fraction, p)), list(map(Fraction, poly_derivative(p)))
    while any(b):
        _, rem = _poly_divmod(a, b)
        a, b = b, rem if any(rem) else [Fraction(0)]
    if len(a) == 1:
        return p
    quot, _ = _poly_divmod(p, a)
    return _primitive(quot)


def _first_root(p, a, b, pa, pb, depth) -> Optional[Tuple[Fraction, Fraction]]:
    """Leftmost interval in ``[a, b]`` holding a root, ``None`` if certified root-free.

    A returned non-degenerate interval holds exactly one root (p is monotone on it).
    """
    if pa == 0:
        return (a, a)
    if pb == 0:
        q = deflate(p, b)
        if len(q) > 1:
            inner = _first_root(q, a, b, poly_eval(q, a), poly_eval(q, b), depth)
            if inner is not None and inner[0] < b:
                return inner
        return (b, b)
    L = lipschitz(p, a, b)
    if abs(pa) > L * (b - a) or abs(pb) > L * (b - a):
        return None
    if _sign(pa) != _sign(pb) and _monotone(p, a, b):
        return (a, b)
    if depth > MAX_DEPTH:
        raise RootNotFound(f"could not separate roots near {float(a)}")
    m = (a + b) / 2
    pm = poly_eval(p, m)
    left = _first_root(p, a, m, pa, pm, depth + 1)
    if left is not None:
        return left
    return _first_root(p, m, b, pm, pb, depth + 1)


def _monotone(p, a, b) -> bool:
    dp = tuple(i * c for i, c in enumerate(p))[1:]
    return len(dp) <= 1 or root_free(dp, a, b)


def _bisect(p, lo, hi, width) -> Tuple[Fraction, Fraction]:
    plo = poly_eval(p, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        pm = poly_eval(p, mid)
        if pm == 0:
            return mid, mid
        if _sign(pm) == _sign(plo):
            lo, plo = mid, pm
        else:
            hi = mid
    return lo, hi


def smallest_positive_root(p: Sequence[int], width=DEFAULT_WIDTH, bound=None) -> IntervalRoot:
    """Isolate the smallest positive real root of ``p`` to within ``width``.

    Raises :class:`RootNotFound` when ``p`` has no positive root below the
    bound (default: a Cauchy bound, so "no positive root at all").  Repeated
    roots are handled by isolating on the squarefree part, which is the
    polynomial stored in the returned :class:`IntervalRoot`.
    """
    p = tuple(p)
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if p[0] == 0:
        raise ValueError("p(0) must be nonzero")
    if len(p) == 1:
        raise RootNotFound("constant polynomial has no roots")
    p = squarefree(p)
    b = Fraction(bound) if bound is not None else root_bound(p)
    a = Fraction(0)
    # coarse grid first so the recursion stays shallow on wide ranges
    steps = 64
    h = b / steps
    for i in range(steps):
        x0, x1 = a + i * h, a + (i + 1) * h
        found = _first_root(p, x0, x1, poly_eval(p, x0), poly_eval(p, x1), 0)
        if found is not None:
            root = IntervalRoot(p, found[0], found[1], width)
            return root.refine(width)
    raise RootNotFound(f"no positive root of {p} up to {b}")


def root_free(p: Sequence[int], lo, hi) -> bool:
    """Certify that ``p`` has no root in the closed interval ``[lo, hi]``."""
    lo, hi = Fraction(lo), Fraction(hi)
    plo, phi = poly_eval(p, lo), poly_eval(p, hi)
    if plo == 0 or phi == 0 or _sign(plo) != _sign(phi):
        return False
    try:
        return _root_free(tuple(p), lo, hi, plo, phi, 0)
    except RootNotFound:
        return False


def _root_free(p, a, b, pa, pb, depth) -> bool:
    L = lipschitz(p, a, b)
    if abs(pa) > L * (b - a) or abs(pb) > L * (b - a):
        return True
    if depth > MAX_DEPTH:
        raise RootNotFound("certification depth exceeded")
    m = (a + b) / 2
    pm = poly_eval(p, m)
    if pm == 0 or _sign(pm) != _sign(pa):
        return False
    return _root_free(p, a, m, pa, pm, depth + 1) and _root_free(p, m, b, pm, pb, depth + 1)


def certify_nonzero_at(num: Sequence[int], root: IntervalRoot, max_rounds: int = 60) -> Tuple[bool, IntervalRoot]:
    """Refine ``root`` until ``num`` provably keeps one nonzero sign on it.

    Returns ``(certified, refined_root)``.
    """
    for _ in range(max_rounds):
        if root.exact:
            return poly_eval(num, root.lo) != 0, root
        if root_free(num, root.lo, root.hi):
            return True, root
        root = root.refine((root.hi - root.lo) / 4)
    return False, root


@dataclass
class RateReport:
    k: int
    abelian_root: IntervalRoot
    conjugacy_root: IntervalRoot
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def abelian_rate(self) -> Tuple[Fraction, Fraction]:
        return self.abelian_root.reciprocal()

    @property
    def conjugacy_rate(self) -> Tuple[Fraction, Fraction]:
        return self.conjugacy_root.reciprocal()

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _decide(root: IntervalRoot, test, limit: int = 80) -> Tuple[Optional[bool], IntervalRoot]:
    """Refine until ``test(lo_rate, hi_rate)`` returns a definite True/False."""
    for _ in range(limit):
        lo_rate, hi_rate = root.reciprocal()
        verdict = test(lo_rate, hi_rate)
        if verdict is not None:
            return verdict, root
        if root.exact:
            return None, root
        root = root.refine((root.hi - root.lo) / 4)
    return None, root


def _in_open_range(lo_val, hi_val, a, b):
    if a < lo_val and hi_val < b:
        return True
    if hi_val <= a or lo_val >= b:
        return False
    return None


def growth_rates(k: int, width=DEFAULT_WIDTH) -> RateReport:
    """Abelian-class rate and overall conjugacy rate for BS(1,k), certified.

    The abelian rate comes from the denominator of the abelian series,
    after checking the numerator does not cancel that root; the conjugacy
    rate is ``1/rho`` with ``rho`` the smallest positive root of the
    sequence-series denominator.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    ab = abelian_series(k)
    seq = sequence_series(k)
    ab_root = smallest_positive_root(ab.den, width)
    conj_root = smallest_positive_root(seq.den, width)
    checks: Dict[str, bool] = {}
    ok, ab_root = certify_nonzero_at(ab.num, ab_root)
    checks["abelian numerator nonzero at its root"] = ok
    ok, conj_root = certify_nonzero_at(seq.num, conj_root)
    checks["sequence numerator nonzero at rho"] = ok
    # no negative real root of smaller modulus
    checks["no negative root of smaller modulus (abelian)"] = root_free(ab.den, -ab_root.hi, 0)
    checks["no negative root of smaller modulus (conjugacy)"] = root_free(seq.den, -conj_root.hi, 0)
    if k >= 3:
        verdict, ab_root = _decide(
            ab_root, lambda lo, hi: _in_open_range(lo, hi, Fraction(4, 3), Fraction(2))
        )
        checks["abelian rate in (4/3, 2)"] = bool(verdict)

    def dominance(_lo, _hi):
        a_lo, a_hi = ab_root.reciprocal()
        c_lo, c_hi = conj_root.reciprocal()
        if c_lo > a_hi:
            return True
        if c_hi <= a_lo:
            return False
        return None

    verdict, conj_root = _decide(conj_root, dominance)
    checks["conjugacy rate > abelian rate"] = bool(verdict)
    return RateReport(k, ab_root, conj_root, checks)
