import json
from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from eulerdie import BoundExceeded
from eulerdie.barred import enumerate_anchored, enumerate_barred
from eulerdie.numbers import binomial, eulerian
from eulerdie.posets import (
    Poset, PosetError, alternating_omega_sum, hasse_dot, is_p_compatible, is_p_partition,
    linear_extensions, omega, omega_via_linext, p_eulerian, parse_poset, poset_to_json,
    verify_die_peul,
)


def brute_omega(P, k):
    """Oracle: test every map {1..n} -> {0..k} against the two labelled rules."""
    count = 0
    for f in product(range(k + 1), repeat=P.n):
        ok = True
        for i, j in P.relations:
            if (i < j and not f[i - 1] <= f[j - 1]) or (i > j and not f[i - 1] < f[j - 1]):
                ok = False
                break
        count += ok
    return count


def brute_linext(P):
    return sorted(pi for pi in permutations(range(1, P.n + 1))
                  if all(pi.index(a) < pi.index(b) for a, b in P.relations))


def fig2_closed_form(k):
    return k * (k + 1) * (k + 2) * (k + 3) * (2 * k + 3) // 40


def test_parse_examples(fig1, fig2):
    assert fig1.covers == {(1, 2), (3, 2)}
    assert fig1.less(1, 2) and fig1.less(3, 2) and not fig1.less(1, 3)
    assert parse_poset('{"n":3,"covers":[]}') == Poset.antichain(3)
    assert fig2.relations == ((1, 2), (1, 3), (1, 4), (1, 5), (2, 5), (4, 3))


@pytest.mark.parametrize("source,message", [
    ('{"n":3,"covers":[[1,2],[2,3],[3,1]]}', "cycle"),
    ('{"n":3,"covers":[[1,4]]}', "out of range"),
    ('{"n":3,"covers":[[1,2],[1,2]]}', "duplicate"),
    ('{"n":3,"covers":[[2,2]]}', "cycle"),
    ('{"n":3,\n "covers":[[1,2]', "line 2"),
    ('{"covers":[]}', "malformed"),
])
def test_parse_errors(source, message):
    with pytest.raises(PosetError, match=message):
        parse_poset(source)


def test_hasse_reduction():
    P = Poset.from_relations(4, [(1, 2), (2, 3), (1, 3), (3, 4), (1, 4)])
    assert P.covers == {(1, 2), (2, 3), (3, 4)}
    with pytest.raises(PosetError, match="redundant"):
        Poset.from_relations(4, [(1, 2), (2, 3), (1, 3)], strict=True)


def test_json_and_dot(fig2):
    assert parse_poset(json.dumps(poset_to_json(fig2))) == fig2
    dot = hasse_dot(fig2)
    assert "rankdir=BT" in dot and "1 -> 2;" in dot and "4 -> 3;" in dot


def test_linear_extensions(fig1, fig2):
    assert list(linear_extensions(fig1)) == [(1, 3, 2), (3, 1, 2)]
    assert list(linear_extensions(Poset.chain([1, 2, 3]))) == [(1, 2, 3)]
    assert list(linear_extensions(fig2)) == [
        (1, 2, 4, 3, 5), (1, 2, 4, 5, 3), (1, 2, 5, 4, 3),
        (1, 4, 2, 3, 5), (1, 4, 2, 5, 3), (1, 4, 3, 2, 5),
    ]


def test_p_eulerian(fig1, fig2):
    assert [p_eulerian(fig1, k) for k in range(3)] == [0, 2, 0]
    assert [p_eulerian(fig2, k) for k in range(5)] == [0, 3, 3, 0, 0]
    anti = Poset.antichain(5)
    assert [p_eulerian(anti, k) for k in range(5)] == [eulerian(5, k) for k in range(5)]


def test_omega_examples(fig1, fig2):
    for n in range(1, 5):
        assert [omega(Poset.antichain(n), k) for k in range(4)] == [(k + 1) ** n for k in range(4)]
    assert omega(fig1, 0) == 0
    assert omega(fig2, 1) == 3 and omega(fig2, 2) == 21


def test_omega_closed_form(fig2):
    for k in range(11):
        assert omega(fig2, k) == brute_omega(fig2, k) == fig2_closed_form(k)


def test_omega_via_linext_examples(fig1, fig2):
    chain = Poset.chain([1, 2, 3])
    assert omega_via_linext(chain, 1) == brute_omega(chain, 1) == 4
    assert omega_via_linext(fig1, 1) == brute_omega(fig1, 1) == 2
    assert omega_via_linext(fig2, 3) == 81 == 3 * 4 * 5 * 6 * 9 // 40


def test_omega_search_bound(fig2):
    with pytest.raises(BoundExceeded):
        omega(fig2, 50, search_bound=10**6)


def test_p_partition_membership(fig1):
    assert is_p_partition(fig1, (0, 1, 0))
    assert not is_p_partition(fig1, (0, 1, 1))  # 3 < 2 is strict
    assert is_p_partition(fig1, (1, 1, 0))  # 1 < 2 is weak


def test_worked_p_partition_example():
    from eulerdie.barred import parse_barred

    beta = parse_barred("||3|56||12|4|789")
    assert beta.boxes() == (5, 5, 2, 6, 3, 3, 7, 7, 7)


@pytest.mark.parametrize("name", ["fig1", "fig2"])
def test_compatibility_equals_linear_extension(name, request):
    P = request.getfixturevalue(name)
    exts = set(linear_extensions(P))
    for k in range(4):
        for beta in enumerate_barred(P.n, k):
            assert is_p_compatible(P, beta) == (beta.pi in exts)
        for beta in enumerate_anchored(P.n, min(k, 2)):
            assert is_p_compatible(P, beta) == (beta.pi in exts)


@pytest.mark.parametrize("k,expected", [(0, 0), (1, 3), (2, 3), (3, 0), (4, 0), (5, 0), (6, 0)])
def test_die_peul_fig2(fig2, k, expected):
    r = verify_die_peul(fig2, k)
    assert r.ok
    assert r.signed_sum == r.alternating_sum == r.p_eulerian == r.fixed_points == expected


def test_die_peul_antichain_is_eq1():
    from eulerdie.barred import verify_die_eq1

    for k in range(4):
        r = verify_die_peul(Poset.antichain(5), k)
        base = verify_die_eq1(5, k)
        assert r.signed_sum == base.signed_sum == eulerian(5, k)
        assert r.class_counts == base.class_counts
    assert verify_die_peul(Poset.antichain(5), 2).signed_sum == 66


@st.composite
def posets(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    order = draw(st.permutations(range(1, n + 1)))
    pairs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                         .filter(lambda t: t[0] < t[1]), max_size=6))
    # orient along a random total order so there is never a cycle
    return Poset.from_relations(n, [(order[a], order[b]) for a, b in pairs])


@given(posets(), st.integers(0, 4))
def test_omega_routes_agree(P, k):
    assert omega(P, k) == omega_via_linext(P, k) == brute_omega(P, k)


@given(posets())
def test_linext_properties(P):
    exts = list(linear_extensions(P))
    assert exts == brute_linext(P)
    assert sum(p_eulerian(P, k) for k in range(P.n)) == len(exts)


@given(posets(max_n=4), st.integers(0, 3))
def test_peul_identity(P, k):
    assert alternating_omega_sum(P, k) == p_eulerian(P, k)
    r = verify_die_peul(P, k)
    assert r.ok
    for i in range(k + 1):
        assert r.class_counts.get(i, 0) == binomial(P.n + 1, i) * omega(P, k - i)
