"""Shared brute-force oracles.

These deliberately avoid the package's own algorithms: they multiply
permutations or walk Cayley tables directly.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter

import networkx as nx
import pytest

from orderbij.catalog import builtin_catalog, resolve_group


def brute_orders(G):
    """Element orders by repeated multiplication against the identity."""
    out = []
    for x in range(G.order):
        k, y = 1, x
        while y != 0:
            y = G.multiply(y, x)
            k += 1
        out.append(1 if x == 0 else k)
    return out


def cyclic_orders(n):
    return [n // math.gcd(n, k) for k in range(n)]


def matching_exists(left_orders, right_orders) -> bool:
    """Perfect matching in the element-level bipartite graph (networkx Hopcroft-Karp)."""
    if len(left_orders) != len(right_orders):
        return False
    B = nx.Graph()
    left = [("L", i) for i in range(len(left_orders))]
    right = [("R", j) for j in range(len(right_orders))]
    B.add_nodes_from(left, bipartite=0)
    B.add_nodes_from(right, bipartite=1)
    for i, a in enumerate(left_orders):
        for j, b in enumerate(right_orders):
            if b % a == 0:
                B.add_edge(("L", i), ("R", j))
    M = nx.bipartite.hopcroft_karp_matching(B, top_nodes=left)
    return sum(1 for v in M if v[0] == "L") == len(left_orders)


def brute_normal_subgroups(G):
    """Normal subgroups among all subgroups generated by at most three elements."""
    subs = set()
    for r in range(0, 4):
        for gens in itertools.combinations(range(1, G.order), r):
            S = {0}
            frontier = [0]
            while frontier:
                x = frontier.pop()
                for g in gens:
                    y = G.multiply(x, g)
                    if y not in S:
                        S.add(y)
                        frontier.append(y)
            subs.add(frozenset(S))
    inv = [next(y for y in range(G.order) if G.multiply(x, y) == 0) for x in range(G.order)]
    return {S for S in subs
            if all(G.multiply(G.multiply(g, h), inv[g]) in S for g in range(G.order) for h in S)}


def fingerprint(G):
    from orderbij.groups import center, conjugacy_classes, derived_subgroup, normal_subgroups

    return (G.order, tuple(sorted(Counter(G.orders).items())), center(G).order, len(derived_subgroup(G)),
            len(conjugacy_classes(G)), tuple(N.order for N in normal_subgroups(G)))


@pytest.fixture(scope="session")
def catalog_groups():
    """Built catalog groups keyed by name, up to order 120."""
    return {e.name: e.build() for e in builtin_catalog(120)}


@pytest.fixture(scope="session")
def group():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = resolve_group(name)
        return cache[name]

    return get


# acceptance lines recorded by test_acceptance.py, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
