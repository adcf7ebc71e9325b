"""Context-free grammars with weighted terminals, and their growth series.

A terminal is ``(generator, exponent)``: ``("a", -3)`` stands for the
word a^-3 and has weight 3.  An alternative is a tuple of symbols
(variable names or terminals); ``()`` is the empty word.

The DSV translation of an unambiguous grammar turns each variable into a
power series: a terminal of weight j becomes z^j, concatenation becomes a
product and alternation a sum.  The system is solved here by fixed-point
iteration on truncated series.

Text format (one production per line, ``#`` starts a comment)::

    start S
    S -> ε | A | T
    A -> a^-2 | a^-1 | a | a^2
    T -> B t U t^-1 | a t V t^-1
"""
from __future__ import annotations

from collections import Counter
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .group import Word, power
from .series import PowerSeries

Terminal = Tuple[str, int]
Symbol = Union[str, Terminal]
Alternative = Tuple[Symbol, ...]


class GrammarError(ValueError):
    pass


def weight(sym: Terminal) -> int:
    return abs(sym[1])


def _is_terminal(sym: Symbol) -> bool:
    return isinstance(sym, tuple)


class Grammar:
    """An immutable grammar, validated on construction.

    Every variable must be defined, productive and reachable from the
    start variable, and no derivation cycle may have total weight zero
    (so enumeration by length and the series iteration terminate).
    """

    def __init__(self, productions: Mapping[str, Iterable[Sequence[Symbol]]], start: str = "S"):
        prods: Dict[str, Tuple[Alternative, ...]] = {}
        for var, alts in productions.items():
            clean = []
            for alt in alts:
                alt = tuple(alt)
                for sym in alt:
                    if _is_terminal(sym):
                        gen, e = sym
                        if gen not in ("a", "t") or e == 0:
                            raise GrammarError(f"bad terminal {sym!r} in {var}")
                clean.append(alt)
            prods[var] = tuple(clean)
        self.productions = prods
        self.start = start
        self._validate()

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(self.productions)

    def __eq__(self, other):
        if not isinstance(other, Grammar):
            return NotImplemented
        return self.start == other.start and self.productions == other.productions

    def __repr__(self):
        return f"Grammar(start={self.start!r}, variables={list(self.productions)})"

    def _validate(self):
        if self.start not in self.productions:
            raise GrammarError(f"start variable {self.start} has no productions")
        for var, alts in self.productions.items():
            if not alts:
                raise GrammarError(f"variable {var} has no alternatives")
            for alt in alts:
                for sym in alt:
                    if not _is_terminal(sym) and sym not in self.productions:
                        raise GrammarError(f"{var} refers to undefined variable {sym}")
        low = self.min_weights()
        dead = [v for v in self.productions if v not in low]
        if dead:
            raise GrammarError(f"unproductive variables: {dead}")
        seen, stack = {self.start}, [self.start]
        while stack:
            for alt in self.productions[stack.pop()]:
                for sym in alt:
                    if not _is_terminal(sym) and sym not in seen:
                        seen.add(sym)
                        stack.append(sym)
        unreachable = [v for v in self.productions if v not in seen]
        if unreachable:
            raise GrammarError(f"unreachable variables: {unreachable}")
        self._check_zero_cycles(low)

    def min_weights(self) -> Dict[str, int]:
        """Least weight of a word derivable from each productive variable."""
        low: Dict[str, int] = {}
        changed = True
        while changed:
            changed = False
            for var, alts in self.productions.items():
                for alt in alts:
                    if all(_is_terminal(s) or s in low for s in alt):
                        w = sum(weight(s) if _is_terminal(s) else low[s] for s in alt)
                        if var not in low or w < low[var]:
                            low[var] = w
                            changed = True
        return low

    def _check_zero_cycles(self, low: Dict[str, int]):
        # edge A -> B when some alternative of A can derive B plus weight 0
        edges: Dict[str, set] = {v: set() for v in self.productions}
        for var, alts in self.productions.items():
            for alt in alts:
                total = sum(weight(s) if _is_terminal(s) else low[s] for s in alt)
                for i, sym in enumerate(alt):
                    if not _is_terminal(sym) and total - low[sym] == 0:
                        edges[var].add(sym)
        state: Dict[str, int] = {}

        def visit(v, path):
            state[v] = 1
            for u in edges[v]:
                if state.get(u) == 1:
                    raise GrammarError(f"zero-weight cycle through {' -> '.join(path + [u])}")
                if u not in state:
                    visit(u, path + [u])
            state[v] = 2

        for v in self.productions:
            if v not in state:
                visit(v, [v])

    # -- text format -----------------------------------------------------

    def dumps(self) -> str:
        lines = [f"start {self.start}"]
        for var, alts in self.productions.items():
            lines.append(f"{var} -> " + " | ".join(_format_alt(a) for a in alts))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Grammar":
        start = None
        prods: Dict[str, List[Alternative]] = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("start "):
                start = line.split()[1]
                continue
            head, arrow, body = line.partition("->")
            if not arrow:
                raise GrammarError(f"cannot parse line {raw!r}")
            var = head.strip()
            prods.setdefault(var, []).extend(_parse_alt(a) for a in body.split("|"))
        if start is None:
            raise GrammarError("missing 'start' line")
        return cls(prods, start)


def _format_alt(alt: Alternative) -> str:
    if not alt:
        return "ε"
    parts = []
    for sym in alt:
        if _is_terminal(sym):
            gen, e = sym
            parts.append(gen if e == 1 else f"{gen}^{e}")
        else:
            parts.append(sym)
    return " ".join(parts)


def _parse_alt(text: str) -> Alternative:
    toks = text.split()
    if toks in ([], ["ε"], ["eps"]):
        return ()
    out: List[Symbol] = []
    for tok in toks:
        gen, _, exp = tok.partition("^")
        if gen in ("a", "t"):
            out.append((gen, int(exp) if exp else 1))
        elif gen[:1].isupper() and not exp:
            out.append(gen)
        else:
            raise GrammarError(f"bad symbol {tok!r}")
    return tuple(out)


def terminal_word(sym: Terminal) -> Word:
    return power(*sym)


# ---------------------------------------------------------------------------
# enumeration and series


def language_up_to(g: Grammar, n: int) -> Dict[Word, int]:
    """Every word of weight <= n derivable from the start variable, with its
    number of distinct derivations (parse trees)."""
    if n < 0:
        raise ValueError("length must be non-negative")
    # table[var][w] = Counter(word -> derivations) for words of weight exactly w
    table: Dict[str, List[Counter]] = {v: [Counter() for _ in range(n + 1)] for v in g.productions}
    low = g.min_weights()

    def combine(alt: Alternative, w: int) -> Counter:
        out: Counter = Counter()
        if not alt:
            if w == 0:
                out[()] = 1
            return out
        head, rest = alt[0], alt[1:]
        rest_low = sum(weight(s) if _is_terminal(s) else low[s] for s in rest)
        if _is_terminal(head):
            hw = weight(head)
            if hw + rest_low > w:
                return out
            word = terminal_word(head)
            for tail, c in combine(rest, w - hw).items():
                out[word + tail] += c
            return out
        for hw in range(low[head], w - rest_low + 1):
            heads = table[head][hw]
            if not heads:
                continue
            tails = combine(rest, w - hw)
            for hword, hc in heads.items():
                for tword, tc in tails.items():
                    out[hword + tword] += hc * tc
        return out

    for w in range(n + 1):
        # variables at equal weight only depend on each other through unit-like
        # alternatives; without zero-weight cycles this settles in |V| rounds
        for _ in range(len(g.productions) + 1):
            changed = False
            for var, alts in g.productions.items():
                level: Counter = Counter()
                for alt in alts:
                    level.update(combine(alt, w))
                if level != table[var][w]:
                    table[var][w] = level
                    changed = True
            if not changed:
                break
    result: Dict[Word, int] = {}
    for w in range(n + 1):
        result.update(table[g.start][w])
    return result


def counts_by_length(derivations: Mapping[Word, int], n: int) -> List[int]:
    out = [0] * (n + 1)
    for word, c in derivations.items():
        if len(word) <= n:
            out[len(word)] += c
    return out


def dsv_series(g: Grammar, order: int) -> PowerSeries:
    """Start-variable series of the DSV system, by fixed-point iteration."""
    if order < 0:
        raise ValueError("order must be non-negative")
    zero = PowerSeries.zero(order)
    one = PowerSeries([1], order)
    sol = {v: zero for v in g.productions}

    def term_series(sym: Terminal) -> PowerSeries:
        w = weight(sym)
        return PowerSeries([0] * w + [1], order) if w <= order else zero

    terminals = {}
    limit = (order + 2) * (len(g.productions) + 1)
    for _ in range(limit):
        new = {}
        for var, alts in g.productions.items():
            total = zero
            for alt in alts:
                prod = one
                for sym in alt:
                    if _is_terminal(sym):
                        if sym not in terminals:
                            terminals[sym] = term_series(sym)
                        prod = prod * terminals[sym]
                    else:
                        prod = prod * sol[sym]
                total = total + prod
            new[var] = total
        if new == sol:
            return sol[g.start]
        sol = new
    raise GrammarError("series iteration did not converge")


# ---------------------------------------------------------------------------
# the conjugacy-representative grammars


def _a(j: int) -> Terminal:
    return ("a", j)


T1, T_1 = ("t", 1), ("t", -1)


def _powers(lo: int, hi: int, skip=(0,)) -> List[Alternative]:
    return [(_a(j),) for j in range(lo, hi + 1) if j not in skip]


def _odd_grammar(r: int) -> Dict[str, List[Alternative]]:
    prods = {
        "S": [(), ("A",), ("T",)],
        "A": _powers(-r - 1, r + 1),
        "B": _powers(-r + 1, r - 1),
        "T": [("B", T1, "U", T_1), (_a(r), T1, "V", T_1), (_a(-r), T1, "W", T_1)],
        "U": [("A",), (T1, "U", T_1), ("T",)],
        "V": [(T1, "U", T_1), ("T",)] + _powers(-r - 1, r + 1, skip=(0, -1)),
        "W": [(T1, "U", T_1), ("T",)] + _powers(-r - 1, r + 1, skip=(0, 1)),
    }
    return prods


def _drop_empty(prods: Dict[str, List[Alternative]]) -> Dict[str, List[Alternative]]:
    """Remove variables with no alternatives (e.g. B when its range is empty)
    together with every alternative that mentions them."""
    while True:
        empty = {v for v, alts in prods.items() if not alts}
        if not empty:
            return prods
        prods = {
            v: [alt for alt in alts if not any(s in empty for s in alt)]
            for v, alts in prods.items()
            if v not in empty
        }


def _even_printed(r: int) -> Dict[str, List[Alternative]]:
    mid = [(_a(j), T1, "U", T_1) for j in range(0, r - 2)]
    mid_neg = [(_a(-j), T1, "U", T_1) for j in range(0, r - 2)]
    mid = [tuple(s for s in alt if s != ("a", 0)) for alt in mid]
    mid_neg = [tuple(s for s in alt if s != ("a", 0)) for alt in mid_neg]
    return {
        "S": [(), ("A",), ("T",)],
        "A": _powers(-(r + 1), r + 1),
        "T": [
            ("B", T1, "U", T_1),
            (_a(r), T1, "V", T_1),
            (_a(-r), T1, "W", T_1),
            (_a(r - 1), T1, "X", T_1),
            (_a(-(r - 1)), T1, "Y", T_1),
        ],
        "B": _powers(-(r - 2), r - 2),
        "U": [(T1, "U", T_1), ("T",)],
        "V": _powers(1, r - 1) + mid + [_strip0((_a(r - 2), T1, "X", T_1)), (_a(r - 1), T1, "X", T_1)],
        "W": _powers(-(r - 1), -1) + mid_neg
        + [_strip0((_a(-(r - 2)), T1, "Y", T_1)), (_a(-(r - 1)), T1, "Y", T_1)],
        "X": _powers(-(r + 1), -2) + _powers(1, r + 1) + [("U",)],
        "Y": _powers(-(r + 1), -1) + _powers(2, r + 1) + [("U",)],
    }


def _strip0(alt: Alternative) -> Alternative:
    return tuple(s for s in alt if s != ("a", 0))


def _even_corrected(r: int) -> Dict[str, List[Alternative]]:
    mid = [_strip0((_a(j), T1, "U", T_1)) for j in range(0, r - 2)]
    mid_neg = [_strip0((_a(-j), T1, "U", T_1)) for j in range(0, r - 2)]
    return {
        "S": [(), ("A",), ("T",)],
        "A": _powers(-(r + 1), r + 1),
        "T": [
            ("B", T1, "U", T_1),
            (_a(r), T1, "V", T_1),
            (_a(-r), T1, "W", T_1),
            (_a(r - 1), T1, "X", T_1),
            (_a(-(r - 1)), T1, "Y", T_1),
        ],
        "B": _powers(-(r - 2), r - 2),
        "U": [("A",), (T1, "U", T_1), ("T",)],
        "V": _powers(1, r + 1) + mid
        + [_strip0((_a(r - 2), T1, "X", T_1)), (_a(r - 1), T1, "X", T_1)],
        "W": _powers(-(r + 1), -1) + mid_neg
        + [_strip0((_a(-(r - 2)), T1, "Y", T_1)), (_a(-(r - 1)), T1, "Y", T_1)],
        "X": _powers(-(r + 1), -2) + _powers(1, r + 1) + [(T1, "U", T_1), ("T",)],
        "Y": _powers(-(r + 1), -1) + _powers(2, r + 1) + [(T1, "U", T_1), ("T",)],
    }


T2, T_2 = ("t", 2), ("t", -2)


def _two_printed() -> Dict[str, List[Alternative]]:
    return {
        "S": [(), ("A",), ("T",)],
        "A": [(_a(-3),), (_a(-1),), (_a(1),), (_a(3),)],
        "T": [
            (_a(1), T2, "U", T_2),
            (_a(-1), T2, "U", T_2),
            (_a(1), T1, _a(2), T_1),
            (_a(1), T1, _a(3), T_1),
            (_a(-1), T1, _a(2), T_1),
            (_a(-1), T1, _a(3), T_1),
        ],
        "U": [(T1, "U", T_1), ("T",), (_a(-3),), (_a(-2),), (_a(2),), (_a(3),)],
    }


def _two_corrected() -> Dict[str, List[Alternative]]:
    return {
        "S": [(), ("A",), ("T",)],
        "A": [(_a(-3),), (_a(-1),), (_a(1),), (_a(3),)],
        "T": [
            (_a(1), T2, "P", T_2),
            (_a(-1), T2, "Q", T_2),
            (_a(1), T1, _a(2), T_1),
            (_a(1), T1, _a(3), T_1),
            (_a(-1), T1, _a(-2), T_1),
            (_a(-1), T1, _a(-3), T_1),
        ],
        # P / Q: the digit after (+1, 0) / (-1, 0) may not be -2 / +2
        "P": [(T1, "U", T_1), ("T",), (_a(-3),), (_a(2),), (_a(3),)],
        "Q": [(T1, "U", T_1), ("T",), (_a(-3),), (_a(-2),), (_a(3),)],
        "U": [(T1, "U", T_1), ("T",), (_a(-3),), (_a(-2),), (_a(2),), (_a(3),)],
    }


def printed_grammar(k: int) -> Grammar:
    """The grammar exactly as originally printed for this k.

    The odd-k grammar is correct.  The k = 2 and even-k transcriptions
    generate wrong languages; they are kept for comparison only.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    r = k // 2
    if k == 2:
        return Grammar(_two_printed())
    if k % 2:
        return Grammar(_drop_empty(_odd_grammar(r)))
    return Grammar(_drop_empty(_even_printed(r)))


def build_conjugacy_grammar(k: int) -> Grammar:
    """Unambiguous grammar for the abelian conjugacy representatives C_o, C_e or C_2."""
    if k < 2:
        raise ValueError("k must be >= 2")
    r = k // 2
    if k == 2:
        return Grammar(_two_corrected())
    if k % 2:
        return Grammar(_drop_empty(_odd_grammar(r)))
    return Grammar(_drop_empty(_even_corrected(r)))
