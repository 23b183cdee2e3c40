import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cyclic_orders
from orderbij.catalog import builtin_catalog, resolve_group
from orderbij.errors import AntichainExplosion, NoChain
from orderbij.groups import CyclicModel, Family, divisors
from orderbij.solutions import (
    Chain,
    DivisorSet,
    antichains,
    build_chain,
    cyclic_union_count,
    enumerate_d_subgroups,
    is_nk_group,
    is_nk_group_naive,
    maximal_elements,
    solution_count,
    solution_set,
    union_solution_count,
    verify_chain,
)


def brute_power_count(G, m):
    """|{x : x^m = 1}| by computing x^m with repeated multiplication."""
    count = 0
    for x in range(G.order):
        y = 0
        for _ in range(m):
            y = G.multiply(y, x)
        count += y == 0
    return count


def test_solution_count_examples(group):
    assert solution_count(group("S3"), 2) == 4 == brute_power_count(group("S3"), 2)
    assert solution_count(CyclicModel(6), 4) == 2
    assert solution_count(group("S3"), 6) == 6


def test_union_counts(group):
    assert union_solution_count(CyclicModel(12), [4, 6]) == 8
    assert union_solution_count(group("S3"), [2, 3]) == 6
    assert union_solution_count(group("A4"), [1]) == 1


def test_empty_exponents_rejected(group):
    with pytest.raises(ValueError):
        solution_set(group("S3"), [])
    with pytest.raises(ValueError):
        DivisorSet.of([])


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 200), st.lists(st.integers(1, 200), min_size=1, max_size=4))
def test_cyclic_union_inclusion_exclusion(n, S):
    orders = cyclic_orders(n)
    brute = sum(1 for o in orders if any(s % o == 0 for s in S))
    assert cyclic_union_count(n, S) == brute
    assert cyclic_union_count(n, maximal_elements(S)) == brute


@pytest.mark.parametrize("name", ["S3", "Q8", "A4", "D12", "C2xC2xC2", "SL23"])
def test_monotonicity_and_frobenius(group, name):
    G = group(name)
    for s in divisors(G.order):
        Ls = set(solution_set(G, s).members)
        assert len(Ls) % s == 0  # Frobenius
        assert len(Ls) == brute_power_count(G, s)
        for t in divisors(G.order):
            if t % s == 0:
                assert Ls <= set(solution_set(G, t).members)


def test_antichains_are_correct():
    closure = divisors(12)
    got = set(antichains(closure))
    brute = {
        S for r in range(1, len(closure) + 1) for S in itertools.combinations(closure, r)
        if all(a % b and b % a for a, b in itertools.combinations(S, 2))
    }
    assert got == brute


def test_divisor_set_closure():
    d = DivisorSet.of([4, 6])
    assert d.closure == (1, 2, 3, 4, 6)
    assert all(all(e in d.closure for e in divisors(x)) for x in d.closure)


def test_nk_examples(group):
    assert is_nk_group(group("S3"), 6, [6])
    res = is_nk_group(Family(tuple(range(4)), tuple(cyclic_orders(4))), 8, [8])
    assert not res and res.antichain == (8,) and (res.count, res.cyclic_count) == (4, 8)
    assert is_nk_group(group("Q8"), 8, [8])


def test_antichain_explosion(group):
    # 720 has 30 divisors
    with pytest.raises(AntichainExplosion):
        is_nk_group(group("S6"), 720, [720])
    assert is_nk_group(group("S6"), 720, [720], max_closure=40)


def _random_family(draw_orders):
    return Family(tuple(range(len(draw_orders))), tuple(draw_orders))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([8, 12, 16, 18, 24, 30, 36]), st.data())
def test_antichain_reduction_matches_naive(n, data):
    divs = divisors(n)
    size = data.draw(st.integers(1, n))
    orders = data.draw(st.lists(st.sampled_from(divs), min_size=size, max_size=size))
    bases = data.draw(st.lists(st.sampled_from(divs), min_size=1, max_size=3))
    if len(DivisorSet.of(bases).closure) > 8:
        bases = bases[:1]
    fam = _random_family(orders)
    assert bool(is_nk_group(fam, n, bases)) == is_nk_group_naive(fam, n, bases)


def test_d_subgroup_examples(group):
    C6 = group("C6")
    res = enumerate_d_subgroups(C6, 2)
    involution = next(x for x in range(6) if C6.orders[x] == 2)
    assert res.subsets == ((0, involution),) and not res.truncated
    S3 = group("S3")
    res = enumerate_d_subgroups(S3, 2)
    assert len(res.subsets) == 3 and all(S3.orders[t] == 2 for _, t in res.subsets)
    for G in (C6, S3, group("Q8")):
        assert enumerate_d_subgroups(G, 1).subsets == ((0,),)


def test_d_subgroup_brute_force(group):
    G = group("D12")
    for d in (2, 3, 4, 6):
        pool = [x for x in range(G.order) if d % G.orders[x] == 0]
        brute = []
        for S in itertools.combinations(pool, d):
            if 0 not in S:
                continue
            ok = all(
                sum(1 for x in S if any(s % G.orders[x] == 0 for s in A))
                >= sum(1 for o in cyclic_orders(G.order) if any(s % o == 0 for s in A))
                for r in range(1, len(divisors(d)) + 1) for A in itertools.combinations(divisors(d), r)
            )
            if ok:
                brute.append(S)
        assert list(enumerate_d_subgroups(G, d).subsets) == brute


def test_d_subgroup_truncation(group):
    res = enumerate_d_subgroups(group("C2xC2xC2xC2"), 8, max_candidates=50)
    assert res.truncated


def independent_chain_check(G, chain):
    closure = chain.divisor_set.closure
    for d in closure:
        A = chain[d]
        if len(A) != d or any(d % G.orders[x] for x in A):
            return False
        for r in range(1, len(divisors(d)) + 1):
            for S in itertools.combinations(divisors(d), r):
                have = sum(1 for x in A if any(s % G.orders[x] == 0 for s in S))
                need = sum(1 for o in cyclic_orders(G.order) if any(s % o == 0 for s in S))
                if have < need:
                    return False
    return all(chain[q] & chain[s] == chain[math.gcd(q, s)] for q in closure for s in closure)


def test_chain_c12(group):
    G = group("C12")
    chain = build_chain(G, [12])
    for d in divisors(12):
        A = chain[d]
        assert len(A) == d and all(d % G.orders[x] == 0 for x in A)
    assert independent_chain_check(G, chain)


def test_chain_s3(group):
    G = group("S3")
    chain = build_chain(G, [6])
    assert chain[1] == {0}
    assert len(chain[3]) == 3 and all(G.orders[x] in (1, 3) for x in chain[3])
    assert chain[6] == set(range(6))
    assert independent_chain_check(G, chain)


def test_klein_four_chain_exists(group):
    """Brute-force settles the Klein four example: a chain for bases {4} exists."""
    G = group("C2xC2")
    found = []
    for t in range(1, 4):
        ch = Chain(DivisorSet.of([4]), {1: frozenset({0}), 2: frozenset({0, t}), 4: frozenset(range(4))})
        if independent_chain_check(G, ch):
            found.append(t)
    assert found == [1, 2, 3]
    chain = build_chain(G, [4])
    assert not verify_chain(G, chain) and independent_chain_check(G, chain)


@pytest.mark.parametrize("name", [e.name for e in builtin_catalog(24)])
def test_chains_for_catalog(name):
    G = resolve_group(name)
    chain = build_chain(G, [G.order])
    assert verify_chain(G, chain) == []
    if G.order <= 16:
        assert independent_chain_check(G, chain)


def test_chain_exponent_bases(group):
    for name in ("Q8", "A4", "SL23", "S4"):
        G = group(name)
        chain = build_chain(G, [G.exponent])
        assert verify_chain(G, chain) == []


def test_no_chain_reports_divisor(group):
    G = group("C2xC2xC2")
    with pytest.raises(ValueError):
        build_chain(G, [3])
    # no order-4 element and no completion budget: the search stops at d = 4
    with pytest.raises(NoChain) as exc:
        build_chain(G, [8], max_candidates=0, fallback=False)
    assert exc.value.divisor is not None
