"""Exact arithmetic in BS(1,k) = <a, t | t a t^-1 = a^k>.

Elements are stored in the semidirect normal form ``(x, m)`` of
Z[1/k] x| Z, where ``t`` acts on Z[1/k] by multiplication by ``k``::

    (x, m) * (y, n) = (x + k**m * y, m + n),   a = (1, 0),   t = (0, 1)

``x`` is a :class:`KAdicRational` ``p / k**e`` kept in lowest terms, so
structural equality is value equality. Conjugation follows the single
convention ``g^h = h g h^-1`` everywhere in the package.

Words are tuples over the four letters ``'a', 'A', 't', 'T'`` where the
capital letter is the inverse generator.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

Word = Tuple[str, ...]

LETTERS = ("a", "A", "t", "T")
INVERSE_LETTER = {"a": "A", "A": "a", "t": "T", "T": "t"}


def _check_base(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"base k must be an integer >= 2, got {k!r}")


@dataclass(frozen=True)
class KAdicRational:
    """The number ``num / k**exp`` in Z[1/k], always in canonical form."""

    k: int
    num: int
    exp: int = 0

    def __post_init__(self):
        if self.exp < 0:
            raise ValueError("denominator exponent must be non-negative")
        if self.num == 0 and self.exp != 0:
            raise ValueError("zero must have exponent 0")
        if self.exp > 0 and self.num % self.k == 0:
            raise ValueError(f"{self.num}/{self.k}^{self.exp} is not reduced")

    @classmethod
    def from_fraction(cls, k: int, value) -> "KAdicRational":
        value = Fraction(value)
        den = value.denominator
        e, scale = 0, 1
        # if den | k^e at all, it does so for some e <= log2(den)
        while scale % den:
            if e > den.bit_length():
                raise ValueError(f"{value} is not in Z[1/{k}]")
            e += 1
            scale *= k
        return normalize(value.numerator * (scale // den), e, k)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.k ** self.exp)

    def _same_base(self, other: "KAdicRational") -> None:
        if other.k != self.k:
            raise ValueError(f"mixing Z[1/{self.k}] with Z[1/{other.k}]")

    def __add__(self, other: "KAdicRational") -> "KAdicRational":
        self._same_base(other)
        e = max(self.exp, other.exp)
        p = self.num * self.k ** (e - self.exp) + other.num * self.k ** (e - other.exp)
        return normalize(p, e, self.k)

    def __neg__(self) -> "KAdicRational":
        return KAdicRational(self.k, -self.num, self.exp)

    def __sub__(self, other: "KAdicRational") -> "KAdicRational":
        return self + (-other)

    def scale(self, j: int) -> "KAdicRational":
        """Multiply by ``k**j`` (``j`` may be negative)."""
        if j >= 0:
            return normalize(self.num * self.k ** j, self.exp, self.k)
        return normalize(self.num, self.exp - j, self.k)

    def __str__(self):
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{self.k}^{self.exp}"


def normalize(p: int, e: int, k: int) -> KAdicRational:
    """Canonical form of ``p / k**e``: cancel common factors of ``k``."""
    _check_base(k)
    if e < 0:
        raise ValueError("e must be non-negative")
    if p == 0:
        return KAdicRational(k, 0, 0)
    while e > 0 and p % k == 0:
        p //= k
        e -= 1
    return KAdicRational(k, p, e)


@dataclass(frozen=True)
class GroupElement:
    x: KAdicRational
    m: int

    @property
    def k(self) -> int:
        return self.x.k

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def inverse(self) -> "GroupElement":
        return invert(self)

    def as_tuple(self) -> Tuple[int, int, int]:
        """The hashable triple ``(numerator, denom_exponent, m)``."""
        return (self.x.num, self.x.exp, self.m)

    def __str__(self):
        return f"({self.x}, {self.m})"


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.k != h.k:
        raise ValueError(f"cannot multiply elements of BS(1,{g.k}) and BS(1,{h.k})")
    return GroupElement(g.x + h.x.scale(g.m), g.m + h.m)


def invert(g: GroupElement) -> GroupElement:
    # (x, m)^-1 = (-x / k^m, -m)
    return GroupElement((-g.x).scale(-g.m), -g.m)


def conjugate(g: GroupElement, h: GroupElement) -> GroupElement:
    """Return ``g^h = h g h^-1``."""
    return multiply(multiply(h, g), invert(h))


class BaumslagSolitar:
    """The group BS(1,k); carries the base ``k`` for everything built from it."""

    def __init__(self, k: int):
        _check_base(k)
        self.k = k
        self.identity = GroupElement(KAdicRational(k, 0), 0)
        self.a = GroupElement(KAdicRational(k, 1), 0)
        self.t = GroupElement(KAdicRational(k, 0), 1)
        self._letters = {
            "a": self.a,
            "A": invert(self.a),
            "t": self.t,
            "T": invert(self.t),
        }

    def __repr__(self):
        return f"BaumslagSolitar({self.k})"

    def element(self, x, m: int = 0) -> GroupElement:
        """Build ``(x, m)`` from an int, Fraction or ``(num, exp)`` pair."""
        if isinstance(x, tuple):
            return GroupElement(normalize(x[0], x[1], self.k), m)
        return GroupElement(KAdicRational.from_fraction(self.k, x), m)

    def letter(self, c: str) -> GroupElement:
        return self._letters[c]

    def eval_word(self, word: Iterable[str]) -> GroupElement:
        return eval_word(word, self.k)


def eval_word(word: Iterable[str], k: int) -> GroupElement:
    """Left-to-right product of the letter images; the empty word is the identity."""
    _check_base(k)
    # right multiplication by a generator only touches one coordinate
    p, e, m = 0, 0, 0
    for c in word:
        if c == "t":
            m += 1
        elif c == "T":
            m -= 1
        elif c in ("a", "A"):
            s = 1 if c == "a" else -1
            if m + e >= 0:
                p += s * k ** (m + e)
            else:
                p = p * k ** (-m - e) + s
                e = -m
            if p == 0:
                e = 0
            while e > 0 and p % k == 0:
                p //= k
                e -= 1
        else:
            raise ValueError(f"unknown letter {c!r}")
    return GroupElement(KAdicRational(k, p, e), m)


# ---------------------------------------------------------------------------
# words


_TOKEN = re.compile(r"([aAtT])\s*(?:\^\s*\{?\s*([+-]?\d+)\s*\}?|([⁻⁰¹²³⁴⁵⁶⁷⁸⁹]+))?")
_SUPERSCRIPT = str.maketrans("⁻⁰¹²³⁴⁵⁶⁷⁸⁹", "-0123456789")


def parse_word(text: str) -> Word:
    """Parse ``"a t a^2 t^-1"``, ``"a t a² t⁻¹"`` or ``"ataaT"`` into letters.

    ``"1"``, ``"e"`` and ``"ε"`` denote the empty word.
    """
    text = text.strip()
    if text in ("", "1", "e", "ε"):
        return ()
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace() or text[pos] in "·*":
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if not match:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        gen, exp, sup = match.groups()
        if exp is not None:
            n = int(exp)
        elif sup is not None:
            n = int(sup.translate(_SUPERSCRIPT))
        else:
            n = 1
        if gen.isupper():
            gen, n = gen.lower(), -n
        letter = gen if n > 0 else gen.upper()
        out.extend(letter * abs(n))
        pos = match.end()
    return tuple(out)


def format_word(word: Sequence[str]) -> str:
    """Inverse of :func:`parse_word`, grouping runs as powers."""
    if not word:
        return "ε"
    parts = []
    for gen, n in runs(word):
        parts.append(gen if n == 1 else f"{gen}^{n}")
    return " ".join(parts)


def runs(word: Sequence[str]) -> list:
    """Collapse a word into ``[(generator, exponent), ...]`` with merged runs.

    Consecutive letters of the same generator are merged even when they
    cancel, so a zero exponent never appears in the output.
    """
    out: list = []
    for c in word:
        gen = c.lower()
        s = 1 if c.islower() else -1
        if out and out[-1][0] == gen:
            n = out[-1][1] + s
            if n == 0:
                out.pop()
            else:
                out[-1] = (gen, n)
        else:
            out.append((gen, s))
    return out


def power(gen: str, n: int) -> Word:
    return tuple((gen if n > 0 else gen.upper()) * abs(n))


def free_reduce(word: Sequence[str]) -> Word:
    stack: list = []
    for c in word:
        if stack and stack[-1] == INVERSE_LETTER[c]:
            stack.pop()
        else:
            stack.append(c)
    return tuple(stack)


def inverse_word(word: Sequence[str]) -> Word:
    return tuple(INVERSE_LETTER[c] for c in reversed(word))
