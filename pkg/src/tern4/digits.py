"""Exact engine for base-3 expansions over the redundant digit alphabet {0,1,2,3}.

A digit string is a finite word, optionally followed by a repeating block,
over the alphabet {0,1,2,3}.  Read in base 3 it denotes the number
``sum(digit_k * 3**-k)``, which lies in [0, 3/2].  Because the alphabet has
one digit more than the base, most numbers have many expansions.  Everything
in this module is exact rational arithmetic: evaluation, the value-preserving
pair rewrites (03<->10, 13<->20, 23<->30), cylinder intervals, admissible
prefixes, and the unique / finite / countable / continuum classification of
how many expansions a number has.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

BASE = 3
MAX_DIGIT = 3
#: supremum of a digit tail: sum over k >= 1 of 3 * 3**-k
TAIL_SUP = Fraction(3, 2)

#: the six oriented value-preserving adjacent-pair substitutions
REWRITES: dict[tuple[int, int], tuple[int, int]] = {
    (0, 3): (1, 0), (1, 0): (0, 3),
    (1, 3): (2, 0), (2, 0): (1, 3),
    (2, 3): (3, 0), (3, 0): (2, 3),
}


class ParseError(ValueError):
    """Text does not match the digit-string grammar ``[0-3]*(\\([0-3]+\\))?``."""


def _check_digits(word: Sequence[int]) -> tuple[int, ...]:
    out = tuple(int(c) for c in word)
    for c in out:
        if not 0 <= c <= MAX_DIGIT:
            raise ValueError(f"digit {c!r} outside 0..{MAX_DIGIT}")
    return out


def _primitive_root(word: tuple[int, ...]) -> tuple[int, ...]:
    """Shortest word whose repetition equals `word`."""
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d]
    return word


@dataclass(frozen=True)
class DigitString:
    """A finite digit word plus an optional repeating block, kept canonical.

    Canonical form: the repeating block is primitive (not a power of a
    shorter word) and the preperiod never ends with the block's last digit;
    trailing matches are rotated into the block.  Two digit strings denote
    the same infinite digit sequence iff their canonical forms are equal,
    so dataclass equality is sequence equality.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...] | None = None

    def __post_init__(self):
        pre = _check_digits(self.preperiod)
        per = None if self.period is None else _check_digits(self.period)
        if per is not None:
            if not per:
                raise ValueError("period must be non-empty when present")
            per = _primitive_root(per)
            while pre and pre[-1] == per[-1]:
                per = (per[-1],) + per[:-1]
                pre = pre[:-1]
        if not pre and per is None:
            raise ValueError("digit string needs at least one digit")
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    def expand(self, n: int) -> tuple[int, ...]:
        """First n digits of the digit sequence (fewer if the word is finite)."""
        if self.period is None or n <= len(self.preperiod):
            return self.preperiod[:n]
        out = list(self.preperiod)
        i = 0
        while len(out) < n:
            out.append(self.period[i % len(self.period)])
            i += 1
        return tuple(out)

    def __str__(self) -> str:
        body = "".join(map(str, self.preperiod))
        if self.period is not None:
            body += "(" + "".join(map(str, self.period)) + ")"
        return body


_GRAMMAR = re.compile(r"^(?P<pre>[0-3]*)(?:\((?P<per>[0-3]+)\))?$")


def parse(text: str) -> DigitString:
    """Parse ``digits`` or ``digits(period)`` into a canonical DigitString."""
    m = _GRAMMAR.match(text)
    if m is None:
        raise ParseError(f"not a digit string: {text!r}")
    pre = tuple(int(c) for c in m.group("pre"))
    per = m.group("per")
    if per is None and not pre:
        raise ParseError("empty digit string")
    return DigitString(pre, None if per is None else tuple(int(c) for c in per))


def word_value(word: Sequence[int], base: int = BASE) -> Fraction:
    """Value of a finite digit word: sum of digit_k * base**-k."""
    acc = 0
    for c in word:
        acc = acc * base + c
    return Fraction(acc, base ** len(word))


def evaluate(d: DigitString, base: int = BASE) -> Fraction:
    """Exact value of an eventually periodic digit string in the given base."""
    if d.period is None:
        raise ValueError("finite digit word has no value; append a period such as '(0)'")
    if base < 2:
        raise ValueError("base must be at least 2")
    acc = 0
    for c in d.period:
        acc = acc * base + c
    head = word_value(d.preperiod, base)
    return head + Fraction(acc, (base ** len(d.period) - 1) * base ** len(d.preperiod))


# ---------------------------------------------------------------------------
# rewrites

@dataclass(frozen=True)
class RewriteSite:
    """A value-preserving substitution of the digit pair starting at `position` (1-based)."""

    position: int
    src: tuple[int, int]
    dst: tuple[int, int]

    def __str__(self) -> str:
        return "%d%d->%d%d" % (*self.src, *self.dst)


def rewrite_sites(d: DigitString, horizon: int) -> list[RewriteSite]:
    """All pair substitutions starting at positions <= horizon of the expansion."""
    if horizon < 1:
        raise ValueError("horizon must be positive")
    digits = d.expand(horizon + 1)
    sites = []
    for k in range(len(digits) - 1):
        pair = (digits[k], digits[k + 1])
        if pair in REWRITES:
            sites.append(RewriteSite(k + 1, pair, REWRITES[pair]))
    return sites


def apply_rewrite(d: DigitString, site: RewriteSite) -> DigitString:
    """Apply a pair substitution; the value is unchanged and the result canonical."""
    if site not in rewrite_sites(d, site.position):
        raise ValueError(f"no rewrite {site} at position {site.position} of {d}")
    k = site.position
    if d.period is None:
        head = list(d.preperiod)
        head[k - 1:k + 1] = site.dst
        return DigitString(tuple(head))
    n = max(k + 1, len(d.preperiod))
    head = list(d.expand(n))
    head[k - 1:k + 1] = site.dst
    shift = (n - len(d.preperiod)) % len(d.period)
    return DigitString(tuple(head), d.period[shift:] + d.period[:shift])


# ---------------------------------------------------------------------------
# cylinders

@dataclass(frozen=True)
class Cylinder:
    """The set of numbers with an expansion starting with `base` (rank = len(base))."""

    base: tuple[int, ...]

    def __post_init__(self):
        word = _check_digits(self.base)
        if not word:
            raise ValueError("a cylinder needs a base of rank >= 1")
        object.__setattr__(self, "base", word)

    @property
    def rank(self) -> int:
        return len(self.base)


def cylinder_interval(c: Cylinder) -> tuple[Fraction, Fraction]:
    """Endpoints [a, a + 3**-m] with a = sum of base_k * 3**-k."""
    a = word_value(c.base)
    return a, a + Fraction(1, BASE ** c.rank)


def cylinder_number_interval(c: Cylinder) -> tuple[Fraction, Fraction]:
    """Endpoints [a, a + (3/2) * 3**-m]: all numbers continuing the base (tail sup 3/2)."""
    a = word_value(c.base)
    return a, a + TAIL_SUP / BASE ** c.rank


def cylinder_overlap(base: Sequence[int], i: int) -> Cylinder:
    """Intersection of the adjacent child cylinders for digits i and i+1.

    The overlap is itself a cylinder of the next rank: base+(i,3), which names
    the same number set as base+(i+1,0).
    """
    if i not in (0, 1, 2):
        raise ValueError("digit 3 has no right neighbour")
    word = _check_digits(base)
    lo_child = cylinder_number_interval(Cylinder(word + (i,)))
    hi_child = cylinder_number_interval(Cylinder(word + (i + 1,)))
    meet = (max(lo_child[0], hi_child[0]), min(lo_child[1], hi_child[1]))
    overlap = Cylinder(word + (i, 3))
    assert cylinder_number_interval(overlap) == meet
    assert cylinder_number_interval(Cylinder(word + (i + 1, 0))) == meet
    return overlap


# ---------------------------------------------------------------------------
# admissible prefixes and expansion counts

def _digit_span(y: Fraction) -> range:
    """Digits c with 0 <= 3y - c <= 3/2, i.e. the residual stays representable."""
    top = 3 * y
    cmin = max(0, math.ceil(top - TAIL_SUP))
    cmax = min(MAX_DIGIT, math.floor(top))
    return range(cmin, cmax + 1)


def admissible_prefixes(x, m: int) -> list[tuple[int, ...]]:
    """All length-m words that begin some expansion of x, in lexicographic order."""
    x = Fraction(x)
    if not 0 <= x <= TAIL_SUP:
        raise ValueError(f"value {x} outside [0, 3/2]")
    if m < 1:
        raise ValueError("prefix length must be positive")
    out: list[tuple[int, ...]] = []
    word: list[int] = []

    def rec(y: Fraction, depth: int) -> None:
        if depth == m:
            out.append(tuple(word))
            return
        for c in _digit_span(y):
            word.append(c)
            rec(3 * y - c, depth + 1)
            word.pop()

    rec(x, 0)
    return out


def count_expansion_prefixes(x, m: int) -> int:
    """Number of admissible length-m prefixes of x (memoised, no enumeration)."""
    x = Fraction(x)
    if not 0 <= x <= TAIL_SUP:
        raise ValueError(f"value {x} outside [0, 3/2]")
    if m < 0:
        raise ValueError("depth must be non-negative")
    memo: dict[tuple[Fraction, int], int] = {}

    def rec(y: Fraction, rem: int) -> int:
        if rem == 0:
            return 1
        key = (y, rem)
        if key not in memo:
            memo[key] = sum(rec(3 * y - c, rem - 1) for c in _digit_span(y))
        return memo[key]

    return rec(x, m)


# ---------------------------------------------------------------------------
# classification of expansion cardinality

class Cardinality(Enum):
    UNIQUE = "unique"
    FINITE = "finite"
    COUNTABLE = "countable"
    CONTINUUM = "continuum"


@dataclass(frozen=True)
class ReprCardinality:
    """How many expansions a number has; `count` is set only for FINITE (>= 2)."""

    kind: Cardinality
    count: int | None = None

    def __post_init__(self):
        if self.kind is Cardinality.FINITE:
            if self.count is None or self.count < 2:
                raise ValueError("finite cardinality needs a count >= 2")
        elif self.count is not None:
            raise ValueError(f"{self.kind.value} carries no count")


_STABLE_DEPTH_CAP = 24


def classify_cardinality(d: DigitString) -> ReprCardinality:
    """Decide whether the value of d has one, finitely, countably or continuum many expansions.

    Decision on the canonical form: the endpoints 0 and 3/2 are unique; any
    other one-digit repeating block gives countably many; a repeating block
    containing a rewritable pair in cyclic reading gives a continuum.  The
    remaining blocks are words over {1,2} using both digits: there the number
    of expansions is finite and equals the stabilised count of admissible
    prefixes.
    """
    if d.period is None:
        raise ValueError("classification needs an eventually periodic digit string")
    per = d.period
    if not d.preperiod and per in ((0,), (3,)):
        return ReprCardinality(Cardinality.UNIQUE)
    if len(per) == 1:
        return ReprCardinality(Cardinality.COUNTABLE)
    if any((per[j], per[(j + 1) % len(per)]) in REWRITES for j in range(len(per))):
        return ReprCardinality(Cardinality.CONTINUUM)
    # a primitive block with no cyclic rewrite pair must use exactly {1,2}:
    # any 0 or 3 next to a different digit forms one of the six pairs
    assert set(per) == {1, 2}
    x = evaluate(d)
    m = max(len(d.preperiod), 1)
    prev = count_expansion_prefixes(x, m)
    while m + 2 <= _STABLE_DEPTH_CAP:
        m += 2
        cur = count_expansion_prefixes(x, m)
        if cur == prev:
            if cur == 1:
                return ReprCardinality(Cardinality.UNIQUE)
            return ReprCardinality(Cardinality.FINITE, cur)
        prev = cur
    raise ValueError(f"prefix count failed to stabilise by depth {_STABLE_DEPTH_CAP}")


def _tail_cycles(y0: Fraction, max_states: int = 4096) -> list[tuple[int, ...]]:
    """Digit blocks t such that t repeated forever is an expansion of y0.

    Walks the residual-value graph y -> 3y - c and collects the simple cycles
    through y0; repeated or combined cycles canonicalise away or only occur
    for continuum-many expansions, which callers exclude.
    """
    cycles: list[tuple[int, ...]] = []
    seen = {y0}
    path: list[int] = []

    def rec(y: Fraction) -> None:
        if len(seen) > max_states:
            raise ValueError("tail state space too large")
        for c in _digit_span(y):
            nxt = 3 * y - c
            if nxt == y0:
                cycles.append(tuple(path) + (c,))
            elif nxt not in seen:
                seen.add(nxt)
                path.append(c)
                rec(nxt)
                path.pop()
                seen.discard(nxt)

    rec(y0)
    return cycles


def enumerate_representations(d: DigitString, m: int) -> list[DigitString]:
    """All expansions of the value of d whose canonical preperiod is at most m digits.

    Refuses continuum inputs.  Each admissible length-m prefix is completed by
    every purely repeating tail of its residual value; results are canonical,
    deduplicated and sorted by preperiod length then digits.
    """
    card = classify_cardinality(d)
    if card.kind is Cardinality.CONTINUUM:
        raise ValueError("continuum many expansions; enumeration refused")
    if m < len(d.preperiod):
        raise ValueError("depth must cover the preperiod")
    x = evaluate(d)
    prefixes = admissible_prefixes(x, m) if m >= 1 else [()]
    found: set[DigitString] = set()
    for w in prefixes:
        y = x
        for c in w:
            y = 3 * y - c
        if y.denominator % 3 == 0:
            continue  # no purely repeating tail starts at this cut
        for tail in _tail_cycles(y):
            found.add(DigitString(w, tail))
    return sorted(found, key=lambda r: (len(r.preperiod), r.preperiod, r.period))
