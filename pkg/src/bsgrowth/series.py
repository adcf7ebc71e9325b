"""Exact truncated power series and the generating functions of BS(1,k).

Polynomials are tuples of integer coefficients, lowest degree first.  All
series arithmetic is over :class:`fractions.Fraction`; the cycle
construction has genuinely fractional intermediate coefficients, so the
integrality of its output is checked rather than assumed.

Notation: ``k = 2r + 1`` (odd) or ``k = 2r`` (even).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

Poly = Tuple[int, ...]


def _half(k: int) -> int:
    if k < 2:
        raise ValueError("k must be >= 2")
    return k // 2


# ---------------------------------------------------------------------------
# polynomials


def poly(terms: Dict[int, int]) -> Poly:
    """Build a polynomial from ``{degree: coefficient}``; repeated degrees add up."""
    if not terms:
        return (0,)
    out = [0] * (max(terms) + 1)
    for d, c in terms.items():
        if d < 0:
            raise ValueError("negative degree")
        out[d] += c
    return poly_trim(out)


def poly_from_pairs(pairs: Iterable[Tuple[int, int]]) -> Poly:
    acc: Dict[int, int] = {}
    for d, c in pairs:
        acc[d] = acc.get(d, 0) + c
    return poly(acc)


def poly_trim(p: Sequence[int]) -> Poly:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p) if p else (0,)


def poly_add(p: Sequence[int], q: Sequence[int]) -> Poly:
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_neg(p: Sequence[int]) -> Poly:
    return tuple(-c for c in p)


def poly_mul(p: Sequence[int], q: Sequence[int]) -> Poly:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_eval(p: Sequence[int], x):
    """Horner evaluation; exact for ``int`` / ``Fraction`` arguments."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_derivative(p: Sequence[int]) -> Poly:
    return poly_trim([i * c for i, c in enumerate(p)][1:] or [0])


def poly_str(p: Sequence[int], var: str = "z") -> str:
    parts = []
    for d, c in enumerate(p):
        if c == 0:
            continue
        mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
        if mono and abs(c) == 1:
            coef = "-" if c < 0 else "+"
        else:
            coef = f"{c:+d}"
        parts.append(f"{coef}{mono}")
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


# ---------------------------------------------------------------------------
# power series


class PowerSeries:
    """Coefficients ``0..order`` of a formal power series, exact rationals.

    Binary operations on series of different orders truncate to the
    smaller order.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int = None):
        c = [Fraction(x) for x in coeffs]
        if order is not None:
            c = (c + [Fraction(0)] * (order + 1))[: order + 1]
        if not c:
            raise ValueError("a power series needs at least the constant term")
        self.coeffs: Tuple[Fraction, ...] = tuple(c)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([0], order)

    @classmethod
    def from_poly(cls, p: Sequence[int], order: int) -> "PowerSeries":
        return cls(p, order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PowerSeries({[str(c) for c in self.coeffs]})"

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, order)

    def _align(self, other: "PowerSeries"):
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1]

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        a, b = self._align(other)
        return PowerSeries([x + y for x, y in zip(a, b)])

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        a, b = self._align(other)
        return PowerSeries([x - y for x, y in zip(a, b)])

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-x for x in self.coeffs])

    def scale(self, c) -> "PowerSeries":
        c = Fraction(c)
        return PowerSeries([c * x for x in self.coeffs])

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            return self.scale(other)
        a, b = self._align(other)
        n = len(a)
        out = [Fraction(0)] * n
        for i, x in enumerate(a):
            if x:
                for j in range(n - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return PowerSeries(out)

    __rmul__ = __mul__

    def substitute_power(self, j: int) -> "PowerSeries":
        """``S(z^j)``, kept at the same truncation order."""
        if j < 1:
            raise ValueError("j must be >= 1")
        out = [Fraction(0)] * len(self.coeffs)
        for i in range(0, self.order // j + 1):
            out[i * j] = self.coeffs[i]
        return PowerSeries(out)

    def reciprocal(self) -> "PowerSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        out[0] = 1 / c0
        for i in range(1, n):
            acc = sum((self.coeffs[j] * out[i - j] for j in range(1, i + 1)), Fraction(0))
            out[i] = -acc / c0
        return PowerSeries(out)

    def neg_log_one_minus(self) -> "PowerSeries":
        """``-log(1 - S) = sum_{i>=1} S^i / i`` for ``S`` with zero constant term."""
        if self.coeffs[0] != 0:
            raise ValueError("-log(1 - S) needs S(0) = 0")
        total = PowerSeries.zero(self.order)
        term = self
        for i in range(1, self.order + 1):
            # valuation(S^i) >= i, so later powers cannot reach the truncation order
            total = total + term.scale(Fraction(1, i))
            term = term * self
        return total

    def integer_coefficients(self) -> List[int]:
        out = []
        for n, c in enumerate(self.coeffs):
            if c.denominator != 1:
                raise ValueError(f"coefficient {n} is not an integer: {c}")
            out.append(c.numerator)
        return out


# ---------------------------------------------------------------------------
# rational functions


@dataclass(frozen=True)
class RationalFunction:
    num: Poly
    den: Poly

    def __post_init__(self):
        object.__setattr__(self, "num", poly_trim(self.num))
        object.__setattr__(self, "den", poly_trim(self.den))
        if self.den[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")

    def equivalent(self, other: "RationalFunction") -> bool:
        return poly_mul(self.num, other.den) == poly_mul(other.num, self.den)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den)),
            poly_mul(self.den, other.den),
        )

    def __str__(self):
        return f"({poly_str(self.num)}) / ({poly_str(self.den)})"


def expand(f: RationalFunction, order: int) -> PowerSeries:
    """Taylor coefficients ``0..order`` of ``num / den`` by long division."""
    if order < 0:
        raise ValueError("order must be non-negative")
    den = f.den
    if den[0] == 0:
        raise ZeroDivisionError("denominator vanishes at 0")
    d0 = Fraction(den[0])
    out: List[Fraction] = []
    for n in range(order + 1):
        acc = Fraction(f.num[n]) if n < len(f.num) else Fraction(0)
        for j in range(1, min(n, len(den) - 1) + 1):
            if den[j]:
                acc -= den[j] * out[n - j]
        out.append(acc / d0)
    return PowerSeries(out)


# ---------------------------------------------------------------------------
# the generating functions


def printed_abelian_series(k: int) -> RationalFunction:
    """The abelian-class series exactly as printed for odd k, even k and k = 2.

    The odd-k formula is correct.  The printed k = 2 and even-k formulas
    disagree with brute force (from length 7 and 6 respectively); use
    :func:`abelian_series` for the corrected forms.
    """
    r = _half(k)
    if k == 2:
        return RationalFunction(
            poly({0: 1, 1: 2, 2: -1, 5: -2, 6: -2, 7: 2, 8: -2}), poly({0: 1, 2: -1, 5: -2})
        )
    if k % 2:
        return _odd_abelian(r)
    num = poly_from_pairs([
        (0, -1), (2, 2), (3, 2), (4, 1), (r + 2, -2), (r + 3, -6), (r + 4, 6),
        (r + 5, 2), (r + 6, -4), (2 * r + 2, 2), (2 * r + 4, -6), (2 * r + 6, 4),
        (2 * r + 7, -2), (2 * r + 8, -2), (3 * r + 4, 4), (3 * r + 6, -4), (3 * r + 8, 4),
    ])
    den = poly_mul(_even_abelian_den(r), (-1, 1))
    return RationalFunction(num, den)


def _odd_abelian(r: int) -> RationalFunction:
    num = poly_from_pairs([
        (r + 6, 2), (r + 5, -2), (r + 4, -4), (r + 2, 2), (3, 3), (2, 1), (1, -1), (0, -1),
    ])
    den = poly_from_pairs([(3, 1), (r + 3, -2), (2, 1), (1, 1), (0, -1)])
    return RationalFunction(num, den)


def _even_abelian_den(r: int) -> Poly:
    return poly_from_pairs([
        (2 * r + 4, 2), (r + 4, -2), (3, -1), (r + 2, 2), (2, -1), (1, -1), (0, 1),
    ])


def abelian_series(k: int) -> RationalFunction:
    """Strict growth series of the conjugacy classes lying in Z[1/k].

    Odd k uses the printed formula unchanged.  For k = 2 and even k >= 4
    the numerators come from solving the corrected grammars of
    :mod:`bsgrowth.grammar`; the denominators equal the printed ones.
    """
    r = _half(k)
    if k % 2:
        return _odd_abelian(r)
    if k == 2:
        return RationalFunction(
            poly({0: 1, 1: 2, 2: -1, 5: -2, 6: -2, 8: -2, 9: 2}), poly({0: 1, 2: -1, 5: -2})
        )
    num = poly_from_pairs([
        (0, 1), (1, 1), (2, -1), (3, -3), (r + 2, -2), (r + 3, 4), (r + 4, 2),
        (r + 5, -4), (2 * r + 3, -2), (2 * r + 5, 4), (2 * r + 6, 2), (2 * r + 7, -2),
    ])
    return RationalFunction(num, _even_abelian_den(r))


def syllable_series(k: int) -> RationalFunction:
    """Length census of the syllable alphabet (S_o for odd k, S_e for even k)."""
    r = _half(k)
    if k % 2:
        terms = [(1, 1)] + [(i, 2) for i in range(2, r + 2)]
    else:
        # t; a^{+-i} t for 0 < i < r; a^{+-r} t a^{+-j} t for 0 <= j < r
        terms = [(1, 1)] + [(i, 2) for i in range(2, r + 1)]
        terms += [(i, 2) for i in range(r + 2, 2 * r + 2)]
    return RationalFunction(poly_from_pairs(terms), (1,))


def sequence_series(k: int) -> RationalFunction:
    """``1 / (1 - S(z))``, written as ``(1 - z) / p(z)`` with ``p = (1 - z)(1 - S)``."""
    s = syllable_series(k)
    one_minus = poly_add((1,), poly_neg(s.num))
    return RationalFunction((1, -1), poly_mul((1, -1), one_minus))


def euler_totient(j: int) -> int:
    if j < 1:
        raise ValueError("totient is defined for j >= 1")
    result, n, p = j, j, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def cycle_construction(S: PowerSeries, order: int = None) -> PowerSeries:
    """Necklace series ``sum_j phi(j)/j * -log(1 - S(z^j))``."""
    if order is None:
        order = S.order
    S = S.truncate(order)
    if S[0] != 0:
        raise ValueError("cycle construction needs S(0) = 0")
    base = S.neg_log_one_minus()
    total = PowerSeries.zero(order)
    for j in range(1, order + 1):
        total = total + base.substitute_power(j).scale(Fraction(euler_totient(j), j))
    total.integer_coefficients()
    return total


def exclusion_period(k: int) -> int:
    r = _half(k)
    return r + 1 if k % 2 else 2 * r + 1


def exclusion_series(k: int) -> RationalFunction:
    """One excluded necklace per period: ``z^L / (1 - z^L)``."""
    L = exclusion_period(k)
    return RationalFunction(poly({L: 1}), poly({0: 1, L: -1}))


def nonabelian_half(k: int, order: int) -> PowerSeries:
    """Classes with ``m > 0``: ``Cyc(S) - N``."""
    S = expand(syllable_series(k), order)
    return cycle_construction(S, order) - expand(exclusion_series(k), order)


def full_conjugacy_series(k: int, order: int, abelian: RationalFunction = None) -> PowerSeries:
    """Abelian part plus twice ``Cyc(S) - N`` (classes with m > 0 and m < 0)."""
    if abelian is None:
        abelian = abelian_series(k)
    total = expand(abelian, order) + nonabelian_half(k, order).scale(2)
    coeffs = total.integer_coefficients()
    if any(c < 0 for c in coeffs):
        raise ArithmeticError(f"negative class count in series for k={k}: {coeffs}")
    return total
