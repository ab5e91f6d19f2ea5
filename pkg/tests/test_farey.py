import math
from fractions import Fraction

import pytest

from rotamime.errors import DomainError, NoParentsError
from rotamime.farey import (
    farey_parents,
    format_rational,
    is_farey_neighbor,
    larger_denominator_parent,
    make_rational,
    parse_rational,
)


def brute_parents(r):
    """Closest fractions on each side of r with denominator < den(r)."""
    n = r.denominator
    cands = {Fraction(p, q) for q in range(1, n) for p in range(0, q + 1)}
    left = max(c for c in cands if c < r)
    right = min(c for c in cands if c > r)
    return left, right


ALL_UP_TO_50 = [Fraction(k, n) for n in range(2, 51) for k in range(1, n) if math.gcd(k, n) == 1]


def test_known_parents():
    assert farey_parents(Fraction(3, 11)) == (Fraction(1, 4), Fraction(2, 7))
    assert larger_denominator_parent(Fraction(3, 11)) == Fraction(2, 7)
    assert larger_denominator_parent(Fraction(1, 11)) == Fraction(1, 10)
    assert set(farey_parents(Fraction(5, 11))) == {Fraction(1, 2), Fraction(4, 9)}
    assert farey_parents(Fraction(1, 2)) == (Fraction(0, 1), Fraction(1, 1))


def test_matches_brute_force_up_to_50():
    for r in ALL_UP_TO_50:
        lo, hi = brute_parents(r)
        assert set(farey_parents(r)) == {lo, hi}, r


def test_parents_are_ordered_and_neighbors():
    for r in ALL_UP_TO_50:
        small, large = farey_parents(r)
        assert (small.denominator, small) < (large.denominator, large)
        assert small.denominator + large.denominator == r.denominator
        assert small.numerator + large.numerator == r.numerator
        assert is_farey_neighbor(small, r) and is_farey_neighbor(large, r)


def test_neighbor_predicate():
    assert is_farey_neighbor(Fraction(2, 7), Fraction(3, 11))
    assert not is_farey_neighbor(Fraction(3, 11), Fraction(3, 11))
    assert not is_farey_neighbor(Fraction(1, 3), Fraction(3, 11))


def test_make_and_parse():
    assert make_rational(3, 11) == Fraction(3, 11)
    with pytest.raises(DomainError):
        make_rational(2, 4)
    with pytest.raises(DomainError):
        make_rational(True, 3)
    with pytest.raises(DomainError):
        make_rational(3, 3)
    r = parse_rational("3/11")
    assert r == Fraction(3, 11) and format_rational(r) == "3/11"
    with pytest.raises(NoParentsError):
        farey_parents(Fraction(1, 1))
