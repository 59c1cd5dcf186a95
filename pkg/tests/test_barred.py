from itertools import product

import pytest
from hypothesis import assume, given, strategies as st

from eulerdie.barred import (
    AnchoredBarredPermutation, BarredPermutation, anchored_from_json, anchored_over,
    anchored_to_json, count_barred, enumerate_anchored, enumerate_barred, expected_class_count,
    iota1, parse_anchored, parse_barred, render_anchored, render_barred,
    restrict_to_permutation, verify_die_eq1,
)
from eulerdie.numbers import binomial, des, eulerian


def placements(n, k):
    """Oracle: every way to put balls 1..n into boxes 0..k."""
    return {BarredPermutation.from_boxes(b, k) for b in product(range(k + 1), repeat=n)}


@pytest.mark.parametrize("n,k,expected", [(3, 1, 8), (2, 2, 9), (4, 2, 81)])
def test_count_barred(n, k, expected):
    assert count_barred(n, k) == expected == (k + 1) ** n


def test_barred_enumeration_matches_placements():
    for n in range(1, 5):
        for k in range(0, 4):
            listed = list(enumerate_barred(n, k))
            assert len(listed) == len(set(listed))
            assert set(listed) == placements(n, k)


def test_worked_barred_example_is_in_set():
    beta = parse_barred("||3|56||12|4|789")
    assert beta.k == 7 and beta.n == 9
    assert beta.boxes() == (5, 5, 2, 6, 3, 3, 7, 7, 7)
    assert BarredPermutation.from_boxes((5, 5, 2, 6, 3, 3, 7, 7, 7), 7) == beta
    assert render_barred(beta) == "||3|56||12|4|789"


def test_descent_gap_needs_a_bar():
    with pytest.raises(ValueError):
        BarredPermutation((2, 1), (0, 0, 0))


@pytest.mark.parametrize("n,k,i", [(3, 1, 1), (3, 2, 0), (4, 3, 2), (5, 2, 2)])
def test_class_counts(n, k, i):
    got = sum(1 for _ in enumerate_anchored(n, k, floats=i))
    assert got == binomial(n + 1, i) * (k + 1 - i) ** n


def test_class_examples():
    assert sum(1 for _ in enumerate_anchored(3, 1, floats=1)) == 4
    assert sum(1 for _ in enumerate_anchored(4, 0, floats=0)) == 1
    total = sum(1 for _ in enumerate_anchored(5, 2))
    assert total == sum(binomial(6, i) * (3 - i) ** 5 for i in range(3)) == 243 + 192 + 15


def test_enumeration_is_sorted_and_unique():
    items = list(enumerate_anchored(3, 2))
    keys = [(b.pi, b.unnecessary, b.floats) for b in items]
    assert keys == sorted(keys)
    assert len(set(items)) == len(items)


def test_worked_toggle_pairs():
    pairs = [
        ("f||3|56|a|12f|4|789", "||3|56|a|12f|4|789"),
        ("3||56a|1f|24f|789||", "3f||56a|1f|24f|789||"),
        # third display, with the repeated 9 read as 8
        ("79a|3a|24|a|18|a|6a|5", "79a|3a|24f|a|18|a|6a|5"),
    ]
    for left, right in pairs:
        a, b = parse_anchored(left), parse_anchored(right)
        assert a.total_bars == b.total_bars == 7
        assert iota1(a) == b and iota1(b) == a
        assert a.sign == -b.sign
        assert render_anchored(a) == left


def test_worked_anchored_example_counts():
    beta = parse_anchored("f||3|56|a|12f|4|789")
    assert beta.pi == (3, 5, 6, 1, 2, 4, 7, 8, 9)
    assert (des(beta.pi), sum(beta.unnecessary), beta.float_count) == (1, 4, 2)


def test_only_anchor_element_is_fixed():
    beta = AnchoredBarredPermutation((3, 2, 1), (0,) * 4, (False,) * 4)
    assert beta.total_bars == 2 and iota1(beta) is beta


def test_parse_rejects_misplaced_anchor():
    with pytest.raises(ValueError):
        parse_anchored("12a|3")
    with pytest.raises(ValueError):
        parse_anchored("21")
    with pytest.raises(ValueError):
        parse_anchored("f|f|12")


def test_long_permutations_use_spaces():
    pi = (10, 1, 2, 3, 4, 5, 6, 7, 8, 9, 11)
    beta = AnchoredBarredPermutation(pi, (0,) * 12, (True,) + (False,) * 11)
    text = render_anchored(beta)
    assert text == "f| 10 a| 1 2 3 4 5 6 7 8 9 11"
    assert parse_anchored(text) == beta


@pytest.mark.parametrize("n,k,expected", [(3, 1, 4), (5, 2, 66), (4, 3, 1)])
def test_verify_die_eq1_examples(n, k, expected):
    r = verify_die_eq1(n, k)
    assert r.fixed_points == r.signed_sum == expected
    assert r.ok and r.paired % 2 == 0


def test_die1_range():
    for n in range(1, 6):
        for k in range(0, 5):
            r = verify_die_eq1(n, k)
            assert r.fixed_points == eulerian(n, k) == r.signed_sum
            for i in range(k + 1):
                assert r.class_counts.get(i, 0) == expected_class_count(n, k, i)


def test_restrict_examples():
    assert restrict_to_permutation(3, 1, (1, 3, 2)).signed_sum == 1
    r = restrict_to_permutation(3, 1, (3, 2, 1))
    assert r.signed_sum == 0 and sum(r.class_counts.values()) == 0
    r = restrict_to_permutation(3, 2, (1, 2, 3))
    assert r.signed_sum == 0 and r.fixed_points == 0
    # oracle: listing B_{123,2} by hand, every element has a non-anchor bar
    assert all(not b.only_anchors for b in anchored_over((1, 2, 3), 2))


def test_per_permutation_sets_partition_the_whole():
    from itertools import permutations

    for n, k in [(3, 2), (4, 2)]:
        total = sum(len(anchored_over(pi, k)) for pi in permutations(range(1, n + 1)))
        assert total == sum(1 for _ in enumerate_anchored(n, k))


@st.composite
def anchored(draw, max_n=6, max_extra=3):
    n = draw(st.integers(1, max_n))
    pi = tuple(draw(st.permutations(range(1, n + 1))))
    unn = tuple(draw(st.lists(st.integers(0, max_extra), min_size=n + 1, max_size=n + 1)))
    fl = tuple(draw(st.lists(st.booleans(), min_size=n + 1, max_size=n + 1)))
    return AnchoredBarredPermutation(pi, unn, fl)


@given(anchored())
def test_iota1_laws(beta):
    img = iota1(beta)
    assert iota1(img) == beta
    assert img.pi == beta.pi and img.total_bars == beta.total_bars
    if beta.only_anchors:
        assert img == beta
    else:
        assert img.sign == -beta.sign


@given(anchored())
def test_codecs_round_trip(beta):
    assert parse_anchored(render_anchored(beta)) == beta
    assert anchored_from_json(anchored_to_json(beta)) == beta
    plain = beta.underlying()
    assert parse_barred(render_barred(plain)) == plain


@given(st.integers(1, 5).flatmap(lambda n: st.permutations(range(1, n + 1))), st.integers(0, 4))
def test_restriction_signed_sum(pi, k):
    r = restrict_to_permutation(len(pi), k, pi)
    assert r.signed_sum == (1 if des(pi) == k else 0)
    if des(pi) > k:
        assert not r.class_counts
