"""Exact-arithmetic tests for digit strings, rewrites, cylinders and expansion counts."""

import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tern4 import digits as D
from tern4.digits import Cardinality, Cylinder, DigitString, ParseError

F = Fraction
HALF_WIDTH = F(3, 2)


# ---------------------------------------------------------------------------
# parsing and canonical form

def test_parse_basic():
    assert D.parse("3(0)") == DigitString((3,), (0,))
    assert D.parse("(12)") == DigitString((), (1, 2))
    assert D.parse("101") == DigitString((1, 0, 1))


def test_parse_canonicalizes():
    assert D.parse("12(1212)") == D.parse("(12)")
    assert D.parse("2(12)") == D.parse("(21)")
    assert D.parse("0(0)") == D.parse("(0)")
    assert D.parse("33(3)") == D.parse("(3)")


@pytest.mark.parametrize("bad", ["", "4", "()", "1(", "(12", "1 2", "12()", "(4)", "-1"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        D.parse(bad)


digit_words = st.lists(st.integers(0, 3), max_size=6).map(tuple)
periodic_strings = st.tuples(
    digit_words, st.lists(st.integers(0, 3), min_size=1, max_size=4).map(tuple)
).map(lambda t: DigitString(*t))


@given(periodic_strings)
def test_parse_render_round_trip(d):
    assert D.parse(str(d)) == d


@given(periodic_strings, st.integers(0, 6))
def test_unrolling_preserves_canonical_form(d, k):
    # moving k leading period digits into the preperiod denotes the same sequence
    L = len(d.period)
    pre = d.expand(len(d.preperiod) + k)
    per = d.period[k % L:] + d.period[:k % L]
    assert DigitString(pre, per) == d


# ---------------------------------------------------------------------------
# evaluation

@pytest.mark.parametrize("text,value", [
    ("(3)", F(3, 2)),
    ("(2)", F(1)),
    ("(12)", F(5, 8)),
    ("(1)", F(1, 2)),
    ("(0)", F(0)),
    ("3(0)", F(1)),
    ("0(3)", F(1, 2)),
])
def test_evaluate_known_values(text, value):
    assert D.evaluate(D.parse(text)) == value


def test_evaluate_other_bases():
    assert D.evaluate(D.parse("(12)"), base=4) == F(2, 5)
    assert D.evaluate(D.parse("(3)"), base=4) == F(1)


def test_evaluate_requires_period():
    with pytest.raises(ValueError):
        D.evaluate(D.parse("12"))


@given(periodic_strings)
def test_evaluate_matches_truncated_sums(d):
    # independent oracle: partial sums of the digit series bracket the value
    value = D.evaluate(d)
    n = 60
    partial = D.word_value(d.expand(n))
    assert partial <= value <= partial + HALF_WIDTH / 3 ** n


# ---------------------------------------------------------------------------
# rewrites

def test_rewrite_sites_examples():
    sites = D.rewrite_sites(D.parse("03(0)"), 4)
    assert (1, (0, 3), (1, 0)) in [(s.position, s.src, s.dst) for s in sites]
    assert D.rewrite_sites(D.parse("(12)"), 10) == []
    sites = {(s.position, s.src, s.dst) for s in D.rewrite_sites(D.parse("(30)"), 4)}
    assert {(1, (3, 0), (2, 3)), (2, (0, 3), (1, 0))} <= sites


def test_rewrite_sites_scan_is_complete():
    # every position whose pair is one of the six oriented pairs is reported
    d = D.parse("(30)")
    got = sorted(s.position for s in D.rewrite_sites(d, 5))
    assert got == [1, 2, 3, 4, 5]


def test_apply_rewrite_examples():
    d = D.parse("03(0)")
    site = D.rewrite_sites(d, 1)[0]
    assert D.apply_rewrite(d, site) == D.parse("10(0)")
    d = D.parse("1(3)")
    out = D.apply_rewrite(d, D.rewrite_sites(d, 1)[0])
    assert out == D.parse("20(3)")
    assert D.evaluate(out) == D.evaluate(d) == F(5, 6)


def test_apply_rewrite_rejects_bad_site():
    d = D.parse("(2)")
    assert D.rewrite_sites(d, 8) == []
    with pytest.raises(ValueError):
        D.apply_rewrite(d, D.RewriteSite(1, (0, 3), (1, 0)))


@given(periodic_strings, st.integers(1, 8))
@settings(max_examples=200)
def test_rewrite_invariance(d, horizon):
    value = D.evaluate(d)
    for site in D.rewrite_sites(d, horizon):
        out = D.apply_rewrite(d, site)
        assert D.evaluate(out) == value
        assert D.parse(str(out)) == out  # canonical


# ---------------------------------------------------------------------------
# cylinders

@pytest.mark.parametrize("base,lo,hi", [
    ((3,), F(1), F(4, 3)),
    ((1, 3), F(2, 3), F(7, 9)),
    ((0,), F(0), F(1, 3)),
])
def test_cylinder_interval(base, lo, hi):
    assert D.cylinder_interval(Cylinder(base)) == (lo, hi)


def test_cylinder_overlap_examples():
    c = D.cylinder_overlap((), 0)
    assert c.base == (0, 3)
    assert D.cylinder_number_interval(c) == (F(1, 3), F(1, 2))
    assert D.cylinder_overlap((2,), 1).base == (2, 1, 3)
    with pytest.raises(ValueError):
        D.cylinder_overlap((), 3)


def test_cylinder_overlap_identity_exhaustive():
    # number sets: the overlap equals the exact intersection, for all ranks <= 5
    for rank in range(0, 5):
        for base in product(range(4), repeat=rank):
            for i in range(3):
                c = D.cylinder_overlap(base, i)
                lo1, hi1 = D.cylinder_number_interval(Cylinder(base + (i,)))
                lo2, hi2 = D.cylinder_number_interval(Cylinder(base + (i + 1,)))
                assert D.cylinder_number_interval(c) == (max(lo1, lo2), min(hi1, hi2))


# ---------------------------------------------------------------------------
# admissible prefixes

def test_admissible_prefixes_examples():
    assert D.admissible_prefixes(F(0), 3) == [(0, 0, 0)]
    assert D.admissible_prefixes(F(1), 1) == [(2,), (3,)]
    assert D.admissible_prefixes(F(5, 8), 2) == [(1, 2)]


def _brute_force_prefixes(x, m):
    scaled = x * 3 ** m
    out = []
    for word in product(range(4), repeat=m):
        acc = 0
        for c in word:
            acc = acc * 3 + c
        if 0 <= scaled - acc <= HALF_WIDTH:
            out.append(word)
    return out


@pytest.mark.parametrize("x", [F(0), F(1), F(5, 8), F(245, 648), F(3, 2), F(17, 40)])
def test_admissible_prefixes_against_brute_force(x):
    for m in (1, 3, 6):
        assert D.admissible_prefixes(x, m) == _brute_force_prefixes(x, m)


def test_admissible_prefixes_brute_force_depth_8():
    x = F(5, 8)
    assert D.admissible_prefixes(x, 8) == _brute_force_prefixes(x, 8)


def test_admissible_prefixes_rejects_out_of_range():
    with pytest.raises(ValueError):
        D.admissible_prefixes(F(8, 5), 2)
    with pytest.raises(ValueError):
        D.admissible_prefixes(F(-1, 5), 2)


@given(st.fractions(min_value=0, max_value=F(3, 2), max_denominator=200), st.integers(1, 6))
@settings(max_examples=60)
def test_prefix_count_matches_listing(x, m):
    assert D.count_expansion_prefixes(x, m) == len(D.admissible_prefixes(x, m))


# ---------------------------------------------------------------------------
# cardinality classification

@pytest.mark.parametrize("text,kind,count", [
    ("(0)", Cardinality.UNIQUE, None),
    ("(3)", Cardinality.UNIQUE, None),
    ("(2)", Cardinality.COUNTABLE, None),
    ("(1)", Cardinality.COUNTABLE, None),
    ("0(3)", Cardinality.COUNTABLE, None),
    ("3(0)", Cardinality.COUNTABLE, None),
    ("(12)", Cardinality.UNIQUE, None),
    ("3333(12)", Cardinality.UNIQUE, None),
    ("(10)", Cardinality.CONTINUUM, None),
    ("(30)", Cardinality.CONTINUUM, None),
    ("03(12)", Cardinality.FINITE, 2),
])
def test_classify_cardinality(text, kind, count):
    card = D.classify_cardinality(D.parse(text))
    assert card.kind is kind
    assert card.count == count


def test_classify_finite_census_1010_12():
    # exhaustive search over all eventually periodic strings shows five expansions
    # of 245/648: the rewrite 30->23 inside 0303(12) yields the fifth, 0233(12)
    card = D.classify_cardinality(D.parse("1010(12)"))
    assert card.kind is Cardinality.FINITE
    assert card.count == 5


def test_enumerate_representations_of_one():
    reps = {str(r) for r in D.enumerate_representations(D.parse("(2)"), 3)}
    assert reps == {"(2)", "3(0)", "23(0)", "223(0)"}
    assert all(D.evaluate(r) == 1 for r in D.enumerate_representations(D.parse("(2)"), 3))


def test_enumerate_representations_unique():
    assert D.enumerate_representations(D.parse("(12)"), 6) == [D.parse("(12)")]


def test_enumerate_representations_finite_census():
    reps = {str(r) for r in D.enumerate_representations(D.parse("1010(12)"), 4)}
    assert reps == {"1010(12)", "0310(12)", "0303(12)", "1003(12)", "0233(12)"}
    values = {D.evaluate(r) for r in D.enumerate_representations(D.parse("1010(12)"), 4)}
    assert values == {F(245, 648)}


def test_enumerate_refuses_continuum():
    with pytest.raises(ValueError):
        D.enumerate_representations(D.parse("(10)"), 4)


def test_enumerate_respects_depth():
    reps = D.enumerate_representations(D.parse("(2)"), 5)
    assert all(len(r.preperiod) <= 5 for r in reps)
    assert len(reps) == 6  # (2), 3(0), 23(0), ..., 22223(0)


def _random_periodic(rng):
    pre = tuple(rng.randrange(4) for _ in range(rng.randrange(5)))
    per = tuple(rng.randrange(4) for _ in range(rng.randrange(1, 4)))
    return DigitString(pre, per)


def test_classification_against_prefix_count_oracle():
    rng = random.Random(20240611)
    for _ in range(120):
        d = _random_periodic(rng)
        card = D.classify_cardinality(d)
        x = D.evaluate(d)
        m = max(len(d.preperiod), 1) + 2
        c1 = D.count_expansion_prefixes(x, m)
        c2 = D.count_expansion_prefixes(x, m + 2)
        if card.kind is Cardinality.UNIQUE:
            assert c1 == c2 == 1
        elif card.kind is Cardinality.FINITE:
            c3 = D.count_expansion_prefixes(x, m + 6)
            assert card.count == c3 and c3 >= 2
        else:
            # counts sprout at least once per full period copy
            w = len(d.period) + 2
            assert D.count_expansion_prefixes(x, m + w) > c1


def test_enumeration_members_verify_by_value():
    rng = random.Random(7)
    for _ in range(40):
        d = _random_periodic(rng)
        card = D.classify_cardinality(d)
        if card.kind is Cardinality.CONTINUUM:
            continue
        m = len(d.preperiod) + 3
        reps = D.enumerate_representations(d, m)
        assert d in reps or any(r == d for r in reps)
        assert len({str(r) for r in reps}) == len(reps)
        for r in reps:
            assert D.evaluate(r) == D.evaluate(d)
