"""Word languages of geodesic and conjugacy representatives for BS(1,k).

Abelian families (elements and classes inside Z[1/k]) are words

    t^-b a^x0 t a^x1 t ... t a^xd t^-c

and their side conditions are predicates on the digit string
``xs = (x0, ..., xd)``.  Each condition is a :class:`Clause` carrying its
source wording, so a membership failure can be traced to the exact rule.
Clauses marked ``added`` are corrections found by comparing against the
BFS oracle; ``literal=True`` drops them (and, for C_e, uses the strict
inequalities) to reproduce the rules exactly as originally stated.

Non-abelian families are cyclic words of syllables ``a^x t`` (A_plus) or
their inverses (A_minus); two members are conjugate iff they are syllable
rotations of each other, so counting is by necklaces.

Throughout, ``k = 2r + 1`` or ``k = 2r``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from .group import Word, eval_word, free_reduce, inverse_word, power, runs

FAMILIES = ("E_o", "E_e", "E_2", "C_o", "C_e", "C_2", "A_plus", "A_minus")

Digits = Tuple[int, ...]


@dataclass(frozen=True)
class Clause:
    text: str
    test: Callable[[Digits, int], bool]
    added: bool = False


# ---------------------------------------------------------------------------
# digit-string clauses; every test receives (xs, r) with d = len(xs) - 1 >= 1


def _pairs(xs):
    """(x_{i-1}, x_i) for 0 < i < d."""
    return zip(xs[:-2], xs[1:-1])


def _ends_with(xs, pattern) -> bool:
    return len(xs) >= len(pattern) and tuple(xs[-len(pattern):]) == tuple(pattern)


ODD_A = (
    Clause("|x_d| <= r+1", lambda xs, r: abs(xs[-1]) <= r + 1),
    Clause("|x_i| <= r for i < d", lambda xs, r: all(abs(x) <= r for x in xs[:-1])),
    Clause(
        "if x_{d-1} = +-r then x_d != -+1",
        lambda xs, r: not (xs[-2] == r and xs[-1] == -1) and not (xs[-2] == -r and xs[-1] == 1),
    ),
)


def _even_a(strict: bool) -> Tuple[Clause, ...]:
    lo = 1 if strict else 0
    tag = "0 < x_i < r" if strict else "0 <= x_i < r"
    return (
        Clause("|x_d| <= r+1", lambda xs, r: abs(xs[-1]) <= r + 1),
        Clause("|x_i| <= r for i < d", lambda xs, r: all(abs(x) <= r for x in xs[:-1])),
        Clause(
            f"if x_{{i-1}} = r then {tag} for i < d",
            lambda xs, r: all(lo <= b < r for a, b in _pairs(xs) if a == r),
        ),
        Clause(
            "if x_{i-1} = -r then -r < x_i <= 0" if not strict else "if x_{i-1} = -r then -r < x_i < 0",
            lambda xs, r: all(-r < b <= -lo for a, b in _pairs(xs) if a == -r),
        ),
        Clause(
            "if x_{d-1} = r then x_d >= 0, if x_{d-1} = -r then x_d <= 0",
            lambda xs, r: not (xs[-2] == r and xs[-1] < 0) and not (xs[-2] == -r and xs[-1] > 0),
            added=True,
        ),
    )


EVEN_B = (
    Clause(
        "no subword a^{+-r} t a^{+-(r-2)} t a^{-+1} t^-1",
        lambda xs, r: not any(_ends_with(xs, (s * r, s * (r - 2), -s)) for s in (1, -1)),
    ),
    Clause(
        "no subword a^{+-(r-1)} t a^{-+1} t^-1",
        lambda xs, r: not any(_ends_with(xs, (s * (r - 1), -s)) for s in (1, -1)),
    ),
)

TWO_A = (
    Clause("|x_i| <= 1 for i < d", lambda xs, r: all(abs(x) <= 1 for x in xs[:-1])),
    Clause(
        "if x_{i-1} != 0 then x_i = 0 for i < d",
        lambda xs, r: all(b == 0 for a, b in _pairs(xs) if a != 0),
    ),
    Clause("if x_d > 0 then x_{d-1} >= 0", lambda xs, r: not (xs[-1] > 0 and xs[-2] < 0)),
    Clause("if x_d < 0 then x_{d-1} <= 0", lambda xs, r: not (xs[-1] < 0 and xs[-2] > 0)),
)

TWO_TAIL = (
    Clause(
        "no final syllables (x_{d-2}, x_{d-1}, x_d) = (-+1, 0, +-2)",
        lambda xs, r: not any(_ends_with(xs, (-s, 0, 2 * s)) for s in (1, -1)),
        added=True,
    ),
)

X0 = Clause("x_0 != 0", lambda xs, r: xs[0] != 0)
XD = Clause("x_d != 0", lambda xs, r: xs[-1] != 0)
XD_23 = Clause("|x_d| in {2, 3}", lambda xs, r: abs(xs[-1]) in (2, 3))
XD_LE3 = Clause("|x_d| <= 3", lambda xs, r: abs(xs[-1]) <= 3, added=True)


@dataclass(frozen=True)
class Form:
    """One word shape of an abelian family plus its clauses.

    ``shape`` is ``"b"`` (b = 0, c = d), ``"c"`` (b, c >= 1, d = b + c) or
    ``"d"`` (c = 0, b = d); the bare powers ``a^x`` are handled separately.
    ``top_nonzero`` judges the digits only up to the last nonzero one.
    """

    shape: str
    clauses: Tuple[Clause, ...]
    top_nonzero: bool = False


@dataclass(frozen=True)
class AbelianRules:
    powers: Tuple[int, ...]
    forms: Tuple[Form, ...]


def _abelian_rules(family: str, k: int, literal: bool, strict: bool) -> AbelianRules:
    r = k // 2
    if family in ("E_o", "C_o"):
        if k % 2 == 0:
            raise ValueError(f"{family} needs odd k")
        powers = tuple(range(-(r + 1), r + 2))
        if family == "C_o":
            return AbelianRules(powers, (Form("b", (X0, XD) + ODD_A),))
        return AbelianRules(powers, (
            Form("b", (XD,) + ODD_A),
            Form("c", (X0, XD) + ODD_A),
            Form("d", (X0,) + ODD_A, top_nonzero=not literal),
        ))
    if family in ("E_e", "C_e"):
        if k % 2 or k == 2:
            raise ValueError(f"{family} needs even k >= 4")
        powers = tuple(range(-(r + 1), r + 2))
        if family == "C_e":
            # the class statement itself uses the strict inequalities
            a = _even_a(strict or literal)
            return AbelianRules(powers, (Form("b", (X0, XD) + a + EVEN_B),))
        a = _even_a(strict)
        return AbelianRules(powers, (
            Form("b", (XD,) + a + EVEN_B),
            Form("c", (X0, XD) + a + EVEN_B),
            Form("d", (X0,) + a),
        ))
    if family in ("E_2", "C_2"):
        if k != 2:
            raise ValueError(f"{family} needs k = 2")
        if family == "C_2":
            return AbelianRules((-3, -1, 0, 1, 3), (Form("b", (X0, XD_23) + TWO_A + TWO_TAIL),))
        return AbelianRules(tuple(range(-3, 4)), (
            Form("b", (XD_23,) + TWO_A + TWO_TAIL),
            Form("c", (X0, XD_23) + TWO_A + TWO_TAIL),
            Form("d", (X0, XD_LE3) + TWO_A),
        ))
    raise ValueError(f"unknown abelian family {family!r}")


def _shape_of(b: int, c: int, d: int) -> Optional[str]:
    if b == 0 and c == d:
        return "b"
    if b >= 1 and c >= 1 and d == b + c:
        return "c"
    if c == 0 and b == d:
        return "d"
    return None


def abelian_shape(word: Sequence[str]) -> Optional[Tuple[int, Digits, int]]:
    """Split ``t^-b a^x0 t ... t a^xd t^-c`` into ``(b, xs, c)``; None if not of that shape."""
    word = tuple(word)
    if free_reduce(word) != word:
        return None
    b = 0
    while b < len(word) and word[b] == "T":
        b += 1
    end = len(word)
    while end > b and word[end - 1] == "T":
        end -= 1
    c = len(word) - end
    xs = [0]
    for letter in word[b:end]:
        if letter == "t":
            xs.append(0)
        elif letter == "T":
            return None
        else:
            xs[-1] += 1 if letter == "a" else -1
    return b, tuple(xs), c


def abelian_word(b: int, xs: Sequence[int], c: int) -> Word:
    out: List[str] = ["T"] * b
    for i, x in enumerate(xs):
        if i:
            out.append("t")
        out.extend(power("a", x))
    out.extend(["T"] * c)
    return tuple(out)


# ---------------------------------------------------------------------------
# non-abelian syllable words


def plus_syllables(word: Sequence[str]) -> Optional[Digits]:
    """Exponents of ``a^x0 t a^x1 t ... a^x_{m-1} t``; None for any other shape."""
    word = tuple(word)
    if not word or word[-1] != "t" or free_reduce(word) != word:
        return None
    xs = [0]
    for letter in word:
        if letter == "t":
            xs.append(0)
        elif letter == "T":
            return None
        else:
            xs[-1] += 1 if letter == "a" else -1
    xs.pop()
    return tuple(xs)


def minus_syllables(word: Sequence[str]) -> Optional[Digits]:
    """Exponents of ``t^-1 a^y0 t^-1 a^y1 ... t^-1 a^y_{m-1}``."""
    word = tuple(word)
    inv = plus_syllables(inverse_word(word))
    if inv is None:
        return None
    return tuple(-x for x in reversed(inv))


def plus_word(xs: Sequence[int]) -> Word:
    out: List[str] = []
    for x in xs:
        out.extend(power("a", x))
        out.append("t")
    return tuple(out)


def minus_word(ys: Sequence[int]) -> Word:
    out: List[str] = []
    for y in ys:
        out.append("T")
        out.extend(power("a", y))
    return tuple(out)


def syllable_length(xs: Sequence[int]) -> int:
    return sum(abs(x) + 1 for x in xs)


def least_rotation(seq: Sequence) -> int:
    """Start index of the lexicographically least rotation (Booth's algorithm)."""
    s = list(seq) * 2
    n = len(seq)
    fail = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = fail[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if i == -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k % n if n else 0


def canonical_rotation(seq: Sequence) -> tuple:
    i = least_rotation(seq)
    return tuple(seq[i:]) + tuple(seq[:i])


def _plus_excluded(xs: Digits, k: int) -> bool:
    r, m = k // 2, len(xs)
    if k % 2:
        return all(x == -r for x in xs)
    if m % 2:
        return False
    return xs in ((-(r - 1), -r) * (m // 2), (-r, -(r - 1)) * (m // 2))


def plus_member(xs: Digits, k: int) -> bool:
    """A_plus membership of a syllable sequence (cyclic index convention x_{-1} = x_{m-1})."""
    r, m = k // 2, len(xs)
    if m == 0 or any(abs(x) > r for x in xs):
        return False
    if k % 2 == 0:
        for i in range(m):
            prev, cur = xs[i - 1], xs[i]
            if prev == r and not 0 <= cur < r:
                return False
            if prev == -r and not -r < cur <= 0:
                return False
    return not _plus_excluded(xs, k)


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class LanguageFamily:
    name: str
    k: int
    literal: bool = False
    strict: bool = False

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ValueError(f"unknown family {self.name!r}; expected one of {FAMILIES}")
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.strict and self.name not in ("E_e", "C_e"):
            raise ValueError("the strict reading only exists for the even families")
        if self.is_abelian:
            _abelian_rules(self.name, self.k, self.literal, self.strict)

    @property
    def is_abelian(self) -> bool:
        return self.name not in ("A_plus", "A_minus")

    @property
    def r(self) -> int:
        return self.k // 2

    def _rules(self) -> AbelianRules:
        return _abelian_rules(self.name, self.k, self.literal, self.strict)

    def _clauses(self, form: Form) -> Tuple[Clause, ...]:
        if self.literal:
            return tuple(c for c in form.clauses if not c.added)
        return form.clauses

    def violations(self, word: Sequence[str]) -> List[str]:
        """Texts of the failed conditions; ``[]`` means the word is a member."""
        if not self.is_abelian:
            return [] if self.is_member(word) else ["not a member"]
        shape = abelian_shape(word)
        if shape is None:
            return ["not of the form t^-b a^x0 t ... t a^xd t^-c"]
        b, xs, c = shape
        rules = self._rules()
        if len(xs) == 1:
            if b or c:
                return ["t-exponent sum is not 0"]
            return [] if xs[0] in rules.powers else [f"a^{xs[0]} is not an allowed power"]
        shape_name = _shape_of(b, c, len(xs) - 1)
        form = next((f for f in rules.forms if f.shape == shape_name), None)
        if form is None:
            return ["no form of this family has this (b, d, c) shape"]
        digits = xs
        if form.top_nonzero:
            digits = list(xs)
            while len(digits) > 1 and digits[-1] == 0:
                digits.pop()
            digits = tuple(digits)
            if len(digits) == 1:
                return [] if xs[0] != 0 and abs(xs[0]) <= self.r + 1 else ["x_0 out of range"]
        return [cl.text for cl in self._clauses(form) if not cl.test(digits, self.r)]

    def is_member(self, word: Sequence[str]) -> bool:
        if self.name == "A_plus":
            xs = plus_syllables(word)
            return xs is not None and plus_member(xs, self.k)
        if self.name == "A_minus":
            return self.is_member_plus(inverse_word(word))
        return not self.violations(word)

    def is_member_plus(self, word) -> bool:
        xs = plus_syllables(word)
        return xs is not None and plus_member(xs, self.k)

    def words(self, n: int) -> List[Word]:
        """Members of length ``n``; for A_plus / A_minus one word per necklace."""
        if n < 0:
            raise ValueError("length must be non-negative")
        if self.name == "A_plus":
            return [plus_word(xs) for xs in necklaces(self.k, n)]
        if self.name == "A_minus":
            out = []
            for xs in necklaces(self.k, n):
                ys = tuple(-x for x in reversed(xs))
                out.append(minus_word(canonical_rotation(ys)))
            return sorted(out)
        return [abelian_word(*shape) for shape in self._abelian_shapes(n)]

    def _abelian_shapes(self, n: int) -> Iterator[Tuple[int, Digits, int]]:
        rules = self._rules()
        bound = max(abs(p) for p in rules.powers)
        if n <= bound:
            for x in (n, -n) if n else (0,):
                if x in rules.powers:
                    yield (0, (x,), 0)
        for form in rules.forms:
            for d in range(1, n // 2 + 1):
                for b, c in _bc_pairs(form.shape, d):
                    budget = n - b - c - d
                    if budget < 0:
                        continue
                    for xs in _digit_strings(d + 1, budget, bound):
                        word = abelian_word(b, xs, c)
                        if self.is_member(word):
                            yield (b, xs, c)

    def count_by_length(self, n: int) -> int:
        if self.is_abelian:
            return sum(1 for _ in self._abelian_shapes(n))
        return len(necklaces(self.k, n))

    def counts(self, max_n: int) -> List[int]:
        return [self.count_by_length(n) for n in range(max_n + 1)]


def _bc_pairs(shape: str, d: int):
    if shape == "b":
        yield (0, d)
    elif shape == "c":
        for b in range(1, d):
            yield (b, d - b)
    else:
        yield (d, 0)


def _digit_strings(length: int, total: int, bound: int) -> Iterator[Digits]:
    """Integer tuples with ``sum |x_i| == total`` and every ``|x_i| <= bound``."""
    if length == 0:
        if total == 0:
            yield ()
        return
    for x in range(-min(bound, total), min(bound, total) + 1):
        for rest in _digit_strings(length - 1, total - abs(x), bound):
            yield (x,) + rest


def necklaces(k: int, n: int) -> List[Digits]:
    """Least-rotation representatives of A_plus necklaces of length ``n``."""
    r = k // 2
    out = []

    def extend(prefix: List[int], remaining: int):
        if remaining == 0:
            xs = tuple(prefix)
            if plus_member(xs, k) and canonical_rotation(xs) == xs:
                out.append(xs)
            return
        for x in range(-r, r + 1):
            cost = abs(x) + 1
            if cost > remaining:
                continue
            if k % 2 == 0 and prefix:
                prev = prefix[-1]
                if prev == r and not 0 <= x < r:
                    continue
                if prev == -r and not -r < x <= 0:
                    continue
            prefix.append(x)
            extend(prefix, remaining - cost)
            prefix.pop()

    if n > 0:
        extend([], n)
    return sorted(out)


def necklace_counts(k: int, max_n: int) -> List[int]:
    return [len(necklaces(k, n)) for n in range(max_n + 1)]


def conjugacy_family(k: int) -> str:
    if k == 2:
        return "C_2"
    return "C_o" if k % 2 else "C_e"


def element_family(k: int) -> str:
    if k == 2:
        return "E_2"
    return "E_o" if k % 2 else "E_e"


def language_conjugacy_growth(k: int, max_n: int) -> List[int]:
    """c(0..max_n) from the representative languages: C_* + A_plus + A_minus."""
    abelian = LanguageFamily(conjugacy_family(k), k).counts(max_n)
    neck = necklace_counts(k, max_n)
    return [a + 2 * b for a, b in zip(abelian, neck)]


# ---------------------------------------------------------------------------
# rewriting to a representative


class RewriteError(RuntimeError):
    """The normalization procedure did not settle; indicates a bug."""


_MAX_ROUNDS = 10_000


def _reduce_exponents(xs: List[int], k: int) -> None:
    """Carry ``a^{+-(r+1)} t -> a^{-+(k-r-1)} t a^{+-1}`` until every ``|x_i| <= r`` (i < m).

    ``xs`` has ``m + 1`` entries, the last being the trailing power ``a^{x_m}``;
    the trailing power is cyclically moved to the front whenever nonzero.
    """
    r, m = k // 2, len(xs) - 1
    for _ in range(_MAX_ROUNDS):
        for i in range(m):
            if abs(xs[i]) > r:
                # several single rewrites at once
                s = 1 if xs[i] > 0 else -1
                q = (abs(xs[i]) - r + k - 1) // k
                xs[i] -= s * q * k
                xs[i + 1] += s * q
        if xs[m] == 0:
            return
        xs[0] += xs[m]
        xs[m] = 0
    raise RewriteError("exponent reduction did not terminate")


def _even_pass(xs: List[int], k: int) -> bool:
    """One left-most rewrite of the even-k normalization; False when nothing applies."""
    r, m = k // 2, len(xs) - 1
    for i in range(1, m):
        for s in (1, -1):
            if xs[i - 1] == s * r and s * xs[i] < 0:
                xs[i - 1] = -s * r
                xs[i] += s
                return True
    for i in range(1, m):
        for s in (1, -1):
            if xs[i - 1] == s * r and xs[i] == s * r:
                xs[i - 1] = -s * r
                xs[i] = -s * (r - 1)
                xs[i + 1] += s
                return True
    return False


def _to_plus_representative(xs: List[int], k: int) -> Digits:
    r = k // 2
    m = len(xs) - 1
    for _ in range(_MAX_ROUNDS):
        _reduce_exponents(xs, k)
        body = tuple(xs[:m])
        if plus_member(body, k):
            return body
        if _plus_excluded(body, k):
            # conjugate by a: shift every exponent by the same period
            if k % 2:
                return (r,) * m
            return _even_swap(body, r)
        if k % 2 == 0:
            if _even_pass(xs, k):
                continue
            # only the wrap-around pair (x_{m-1}, x_0) is left: rotate one syllable
            # (conjugation by a^x0 t) so that it becomes an interior pair
            xs[:m] = xs[1:m] + xs[:1]
            if m == 1:
                xs[0] = _single_syllable(xs[0], k)
            continue
        raise RewriteError(f"stuck at {body}")
    raise RewriteError("normalization did not terminate")


def _even_swap(body: Digits, r: int) -> Digits:
    """(a^{-(r-1)} t a^{-r} t)^{m/2} is conjugate to (a^{r} t a^{r-1} t)^{m/2}."""
    return tuple(r if x == -(r - 1) else r - 1 for x in body)


def _single_syllable(x: int, k: int) -> int:
    """Reduce ``a^x t`` to the A_plus syllable in its class (m = 1, M = k - 1)."""
    r, M = k // 2, k - 1
    for y in sorted(range(-r, r + 1), key=abs):
        if (x - y) % M == 0 and plus_member((y,), k):
            return y
    raise RewriteError(f"no syllable for a^{x} t")


def rewrite_to_representative(word: Sequence[str], k: int) -> Word:
    """Conjugate ``word`` to a member of A_plus (m > 0) or A_minus (m < 0).

    Follows the conjugacy-geodesic construction: push the element into the
    form ``a^X t^m``, carry oversize exponents along the syllables, then
    (even k) apply the left-most sign rewrites.  The result is a minimal
    length word in the conjugacy class of ``word``.
    """
    word = tuple(word)
    g = eval_word(word, k)
    if g.m == 0:
        raise ValueError("rewriting needs an element with nonzero t-exponent")
    if g.m < 0:
        return inverse_word(rewrite_to_representative(inverse_word(word), k))
    # conjugating by t^e clears the denominator: (x, m) ~ (k^e x, m)
    X = g.x.num
    xs = [X] + [0] * g.m
    return plus_word(_to_plus_representative(xs, k))


# ---------------------------------------------------------------------------
# geodesic subword conditions


def check_geodesic_subwords(word: Sequence[str]) -> bool:
    """Necessary conditions for a geodesic word.

    1. every ``t^-R a^i0 t ... t a^in t^-S`` (i0, in != 0, n >= 1) has R + S <= n;
    2. the mirror condition with t and t^-1 swapped;
    3. at most one pinch ``t^-1 a^i t`` and at most one pinch ``t a^i t^-1``.

    A word that is not freely reduced is never geodesic and fails.
    """
    word = tuple(word)
    if free_reduce(word) != word:
        return False
    rs = runs(word)
    for sign in (1, -1):
        # sign = 1 checks t^-R ... t^-S, sign = -1 checks t^R ... t^S
        for i, (gen, e) in enumerate(rs):
            if gen != "t" or e * sign >= 0:
                continue
            n = 0
            j = i + 1
            while j < len(rs) and not (rs[j][0] == "t" and rs[j][1] * sign < 0):
                if rs[j][0] == "t":
                    n += abs(rs[j][1])
                j += 1
            if j == len(rs) or n == 0:
                continue
            if rs[i + 1][0] != "a" or rs[j - 1][0] != "a":
                continue
            if abs(e) + abs(rs[j][1]) > n:
                return False
    down = up = 0
    for (g1, e1), (g2, _), (g3, e3) in zip(rs, rs[1:], rs[2:]):
        if g1 == "t" and g2 == "a" and g3 == "t":
            if e1 < 0 < e3:
                down += 1
            elif e3 < 0 < e1:
                up += 1
    return down <= 1 and up <= 1
