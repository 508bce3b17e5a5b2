"""Box-counting dimension estimates for digit-restricted expansion sets.

Level-n cells are the distinct left endpoints sum(c_k * base**-k) over words
from a digit alphabet; their growth rate in log base `base` estimates the
fractal dimension of the closure.  Also hosts the entropy (digit-frequency)
dimension formula, the reinterpretation map from ordinary base-4 expansions
to redundant base-3 digit strings, and its level sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from tern4 import digits
from tern4.digits import Cardinality, DigitString, ReprCardinality

#: dimension of any two-digit expansion set (no colliding digit sums)
DIM_TWO_DIGITS = math.log(2, 3)
#: dimension of the {0,1,3} and {0,2,3} expansion sets (counts grow like (3+sqrt 5)/2)
DIM_SPARSE_TRIPLE = math.log((3 + math.sqrt(5)) / 2, 3)

_LEVEL_LIMITS = {1: 60, 2: 20, 3: 14, 4: 14}


def _checked_digit_set(digit_set: Iterable[int], base: int) -> tuple[int, ...]:
    V = tuple(sorted(set(int(c) for c in digit_set)))
    if not V:
        raise ValueError("digit set must be non-empty")
    if any(c < 0 or c > base for c in V):
        raise ValueError(f"digits {V} do not fit base {base}")
    return V


def _cell_counts(V: tuple[int, ...], n_max: int, base: int) -> list[int]:
    # distinct digit sums at level n are exactly {base*a + c} over level n-1 sums
    counts = []
    frontier = {0}
    for _ in range(n_max):
        frontier = {base * a + c for a in frontier for c in V}
        counts.append(len(frontier))
    return counts


def count_cells(digit_set: Iterable[int], n: int, base: int = 3) -> int:
    """Number of distinct level-n cells: values sum(c_k * base**(n-k)) over words."""
    V = _checked_digit_set(digit_set, base)
    limit = _LEVEL_LIMITS[len(V)]
    if n < 1:
        raise ValueError("level must be positive")
    if n > limit:
        raise ValueError(f"level {n} too large for a {len(V)}-digit alphabet (limit {limit})")
    return _cell_counts(V, n, base)[-1]


@dataclass(frozen=True)
class DimensionEstimate:
    """Cell counts per level and the fitted log-slope over the upper half of levels."""

    counts: tuple[tuple[int, int], ...]
    slope: float
    r2: float
    base: int = 3


def box_dimension(digit_set: Iterable[int], n_max: int, base: int = 3) -> DimensionEstimate:
    """Least-squares slope of log_base(N(n)) against n, fitted on levels > n_max/2."""
    V = _checked_digit_set(digit_set, base)
    limit = _LEVEL_LIMITS[len(V)]
    if not 1 <= n_max <= limit:
        raise ValueError(f"n_max must be in 1..{limit} for a {len(V)}-digit alphabet")
    counts = _cell_counts(V, n_max, base)
    levels = list(range(1, n_max + 1))
    logs = [math.log(c) / math.log(base) for c in counts]
    xs = levels[n_max // 2:]
    ys = logs[n_max // 2:]
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    sxx = sum((u - xbar) ** 2 for u in xs)
    slope = sum((u - xbar) * (v - ybar) for u, v in zip(xs, ys)) / sxx if sxx else 0.0
    ss_res = sum((v - ybar - slope * (u - xbar)) ** 2 for u, v in zip(xs, ys))
    ss_tot = sum((v - ybar) ** 2 for v in ys)
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return DimensionEstimate(tuple(zip(levels, counts)), slope, r2, base)


def dimension_target(digit_set: Iterable[int]) -> float:
    """Known dimension of the base-3 expansion set over the given digits."""
    V = frozenset(int(c) for c in digit_set)
    if not V <= {0, 1, 2, 3} or not V:
        raise ValueError("digit set must be a non-empty subset of {0,1,2,3}")
    if len(V) == 1:
        return 0.0
    if len(V) == 2:
        return DIM_TWO_DIGITS
    if V in ({0, 1, 3}, {0, 2, 3}):
        return DIM_SPARSE_TRIPLE
    return 1.0  # three consecutive digits, or all four, fill an interval


def eggleston_dimension(frequencies: Sequence) -> float:
    """Entropy dimension -sum(p * log3 p) of the set with prescribed digit frequencies."""
    fs = [Fraction(f) if not isinstance(f, float) else f for f in frequencies]
    if any(f <= 0 for f in fs):
        raise ValueError("frequencies must be positive")
    total = sum(fs)
    exact = all(isinstance(f, Fraction) for f in fs)
    if (exact and total != 1) or (not exact and abs(float(total) - 1.0) > 1e-12):
        raise ValueError(f"frequencies sum to {total}, expected 1")
    return -sum(float(f) * math.log(float(f), 3) for f in fs)


def dimension_equation_root(tol: float = 1e-12) -> float:
    """Root in (0,1) of 3**-x + sum_{n>=0} 2**n * 3**-(n+2)x = 1, by bisection.

    For 2*3**-x >= 1 the series diverges, so the excess is taken as +inf there.
    """

    def excess(x: float) -> float:
        b = 3.0 ** -x
        if 2 * b >= 1:
            return math.inf
        return b + b * b / (1 - 2 * b) - 1

    lo, hi = 1e-9, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


# ---------------------------------------------------------------------------
# the base-4 reinterpretation map and its level sets

def quaternary_to_delta(d: DigitString) -> DigitString:
    """Reinterpret an ordinary base-4 expansion as a redundant base-3 digit string.

    The digit sequence is unchanged; only the value changes, from
    evaluate(d, base=4) in [0,1] to evaluate(d, base=3) in [0,3/2].  Base-4
    rationals have two expansions and the repeating-0 form is the one this map
    is defined on, so repeating-3 inputs are rejected; the bare "(3)" (the
    number one, which has no other base-4 expansion) is the one exception.
    """
    if d.period is None:
        raise ValueError("the map is defined on eventually periodic expansions")
    if d.period == (3,) and d.preperiod:
        raise ValueError("use the repeating-0 form of this base-4 rational")
    return d


@dataclass(frozen=True)
class LevelSet:
    """Preimage of one value: its cardinality, and either the base-4 points or,
    for continuum preimages, the free rewrite positions of the repeating block."""

    cardinality: ReprCardinality
    members: tuple[Fraction, ...] | None = None
    constraints: tuple[tuple[int, tuple[int, int], tuple[int, int]], ...] | None = None


def level_set(y: DigitString, depth: int) -> LevelSet:
    """Level set of the reinterpretation map at the value of y.

    Preimage points correspond one-to-one with expansions of the value, so the
    cardinality is the expansion cardinality.  For non-continuum levels the
    members are the base-4 values of the expansions visible at `depth`; for
    continuum levels the independently rewritable pairs of the repeating block
    are reported instead.
    """
    card = digits.classify_cardinality(y)
    if card.kind is Cardinality.CONTINUUM:
        per = y.period
        cons = []
        for j in range(len(per)):
            pair = (per[j], per[(j + 1) % len(per)])
            if pair in digits.REWRITES:
                cons.append((j + 1, pair, digits.REWRITES[pair]))
        return LevelSet(card, constraints=tuple(cons))
    reps = digits.enumerate_representations(y, depth)
    return LevelSet(card, members=tuple(digits.evaluate(r, base=4) for r in reps))


#: base-16 digits 4a+b packed from the continuation pairs (a,b) in {(1,0),(0,3)}
HEX_PAIR_DIGITS = (4, 3)


def continuum_levelset_dimension(n_max: int = 10) -> DimensionEstimate:
    """Box counting in base 16 for the continuum level set with pairs {(1,0),(0,3)}.

    Packing consecutive digit pairs via 4a+b turns those expansions into
    base-16 expansions over the digits {3,4}; their cell counts are exactly
    2**n, so the slope is log_16(2) = 1/4.
    """
    return box_dimension(HEX_PAIR_DIGITS, n_max, base=16)
