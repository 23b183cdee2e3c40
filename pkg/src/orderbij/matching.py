"""Order-divisibility bijections via max-flow on condensed order classes.

A bijection f with o(x) | o(f(x)) exists iff the bipartite graph between
order classes (edge a -> b when a | b, capacities = multiplicities) carries a
saturating flow. When it does not, the residual cut yields a Hall violation:
a set W of right-hand orders whose demand exceeds the number of left elements
whose order divides some member of W.
"""

from __future__ import annotations

import math
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Mapping

from .errors import OrderMismatch, SizeMismatch
from .groups import Coset, CyclicCoset, CyclicModel, Family, FiniteGroup, Subgroup


@dataclass(frozen=True)
class OrderMultiset:
    counts: tuple[tuple[int, int], ...]  # sorted (order, multiplicity) pairs

    @classmethod
    def of(cls, family) -> "OrderMultiset":
        fam = family if isinstance(family, Family) else family.family()
        return cls.from_counts(Counter(fam.orders))

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "OrderMultiset":
        for o, c in counts.items():
            if o < 1 or c < 0:
                raise ValueError(f"bad entry {o}: {c}")
        return cls(tuple(sorted((o, c) for o, c in counts.items() if c > 0)))

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def expand(self) -> Family:
        """A synthetic family whose labels are positions 0..total-1."""
        orders = tuple(o for o, c in self.counts for _ in range(c))
        return Family(tuple(range(len(orders))), orders)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{o}:{c}" for o, c in self.counts) + "}"


@dataclass(frozen=True)
class HallViolation:
    blocking_orders: tuple[int, ...]
    demand: int
    supply: int
    left: OrderMultiset
    right: OrderMultiset

    ok = False

    def recount(self) -> tuple[int, int]:
        """Demand and supply recomputed from the multisets by direct counting."""
        W = self.blocking_orders
        demand = sum(c for o, c in self.right.counts if o in W)
        supply = sum(c for o, c in self.left.counts if any(w % o == 0 for w in W))
        return demand, supply

    def as_dict(self) -> dict:
        return {
            "blocking_orders": list(self.blocking_orders),
            "demand": self.demand,
            "supply": self.supply,
            "left": [list(p) for p in self.left.counts],
            "right": [list(p) for p in self.right.counts],
        }


@dataclass(frozen=True)
class DivBijection:
    left: Family
    right: Family
    pairs: tuple[tuple[int, int], ...]  # (left label, right label)
    flow: tuple[tuple[int, int, int], ...] = ()  # (left order, right order, count)

    ok = True

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)

    def certificate(self) -> list[tuple[int, int]]:
        lo = dict(zip(self.left.labels, self.left.orders))
        ro = dict(zip(self.right.labels, self.right.orders))
        return [(lo[a], ro[b]) for a, b in self.pairs]

    def as_dict(self) -> dict:
        return {"flow": [list(t) for t in self.flow], "pairs": [list(p) for p in self.pairs]}


def verify_bijection(f: DivBijection) -> list[str]:
    """Independent recheck: bijective pairing and o(x) | o(f(x)) pair by pair."""
    problems = []
    lefts = [a for a, _ in f.pairs]
    rights = [b for _, b in f.pairs]
    if sorted(lefts) != sorted(f.left.labels) or len(set(lefts)) != len(lefts):
        problems.append("pairing is not a bijection on the left family")
    if sorted(rights) != sorted(f.right.labels) or len(set(rights)) != len(rights):
        problems.append("pairing is not a bijection onto the right family")
    lo = dict(zip(f.left.labels, f.left.orders))
    ro = dict(zip(f.right.labels, f.right.orders))
    for a, b in f.pairs:
        if a in lo and b in ro and ro[b] % lo[a]:
            problems.append(f"o({a}) = {lo[a]} does not divide o({b}) = {ro[b]}")
    return problems


def _max_flow(left: list[tuple[int, int]], right: list[tuple[int, int]]):
    """Edmonds-Karp on the condensed graph.

    Returns the flow on each (left class, right class) edge and the set of
    nodes reachable from the source in the final residual graph.
    """
    L, R = len(left), len(right)
    s, t = 0, 1 + L + R
    size = t + 1
    inf = sum(c for _, c in left) + 1
    cap = [[0] * size for _ in range(size)]
    adj: list[list[int]] = [[] for _ in range(size)]

    def add(u, v, c):
        cap[u][v] += c
        adj[u].append(v)
        adj[v].append(u)

    for i, (_, c) in enumerate(left):
        add(s, 1 + i, c)
    for j, (_, c) in enumerate(right):
        add(1 + L + j, t, c)
    for i, (a, _) in enumerate(left):
        for j, (b, _) in enumerate(right):
            if b % a == 0:
                add(1 + i, 1 + L + j, inf)

    def bfs():
        parent = [-1] * size
        parent[s] = s
        q = deque([s])
        while q:
            u = q.popleft()
            for v in adj[u]:
                if parent[v] < 0 and cap[u][v] > 0:
                    parent[v] = u
                    q.append(v)
        return parent

    while True:
        parent = bfs()
        if parent[t] < 0:
            break
        v, push = t, inf
        while v != s:
            push = min(push, cap[parent[v]][v])
            v = parent[v]
        v = t
        while v != s:
            u = parent[v]
            cap[u][v] -= push
            cap[v][u] += push
            v = u
    flows = {}
    for i in range(L):
        for j in range(R):
            used = cap[1 + L + j][1 + i]
            if used > 0:
                flows[(i, j)] = used
    reachable = {v for v, p in enumerate(bfs()) if p >= 0}
    return flows, reachable


def _violation(left: OrderMultiset, right: OrderMultiset, reachable: set[int]) -> HallViolation:
    L = len(left.counts)
    W = tuple(o for j, (o, _) in enumerate(right.counts) if 1 + L + j not in reachable)
    demand = sum(c for o, c in right.counts if o in W)
    supply = sum(c for o, c in left.counts if any(w % o == 0 for w in W))
    return HallViolation(W, demand, supply, left, right)


def _materialize(left: Family, right: Family, lms, rms, flows, *, seed: int | None = None):
    rng = random.Random(seed) if seed is not None else None

    def classes(fam: Family) -> dict[int, deque]:
        out: dict[int, list] = {}
        for lab, o in sorted(zip(fam.labels, fam.orders), key=lambda p: p[0]):
            out.setdefault(o, []).append(lab)
        if rng is not None:  # tie-break shuffle within each order class
            for o in sorted(out):
                rng.shuffle(out[o])
        return {o: deque(v) for o, v in out.items()}

    by_order_l = classes(left)
    by_order_r = classes(right)
    pairs = []
    flow_summary = []
    for (i, j), amount in sorted(flows.items()):
        a, b = lms.counts[i][0], rms.counts[j][0]
        flow_summary.append((a, b, amount))
        for _ in range(amount):
            pairs.append((by_order_l[a].popleft(), by_order_r[b].popleft()))
    pairs.sort()
    return tuple(pairs), tuple(flow_summary)


def divisibility_matching(left, right, *, seed: int | None = None) -> DivBijection | HallViolation:
    """Match two element families (or order multisets) of equal size.

    With ``seed`` set, elements of equal order are paired in a shuffled order.
    """
    lf = left.expand() if isinstance(left, OrderMultiset) else (left if isinstance(left, Family) else left.family())
    rf = right.expand() if isinstance(right, OrderMultiset) else (right if isinstance(right, Family) else right.family())
    if len(lf) != len(rf):
        raise SizeMismatch(f"left has {len(lf)} elements, right has {len(rf)}")
    lms, rms = OrderMultiset.of(lf), OrderMultiset.of(rf)
    flows, reachable = _max_flow(list(lms.counts), list(rms.counts))
    if sum(flows.values()) < rms.total:
        return _violation(lms, rms, reachable)
    pairs, summary = _materialize(lf, rf, lms, rms, flows, seed=seed)
    return DivBijection(lf, rf, pairs, summary)


def match_multisets(left: OrderMultiset, right: OrderMultiset) -> tuple[tuple[int, int, int], ...] | HallViolation:
    """Class-level flow only, used where materialized pairings are not needed."""
    if left.total != right.total:
        raise SizeMismatch(f"left has {left.total} elements, right has {right.total}")
    flows, reachable = _max_flow(list(left.counts), list(right.counts))
    if sum(flows.values()) < right.total:
        return _violation(left, right, reachable)
    return tuple((left.counts[i][0], right.counts[j][0], a) for (i, j), a in sorted(flows.items()))


def find_group_bijection(G: FiniteGroup, *, seed: int | None = None) -> DivBijection | HallViolation:
    """Bijection G -> C_|G| with o(x) | o(f(x)), or the Hall certificate that none exists."""
    return divisibility_matching(G.family(), CyclicModel(G.order).family(), seed=seed)


def find_coset_bijection(coset: Coset, u_coset: CyclicCoset, *, seed: int | None = None) -> DivBijection | HallViolation:
    G = coset.parent
    if u_coset.n != G.order or u_coset.m != coset.subgroup.order:
        raise SizeMismatch(
            f"cyclic coset of C_{{{u_coset.n},{u_coset.m}}} does not match |G| = {G.order}, |N| = {coset.subgroup.order}"
        )
    qo, uo = coset.quotient_order, u_coset.quotient_order
    if qo != uo:
        raise OrderMismatch(f"o(yN) = {qo} but o(uC) = {uo}")
    return divisibility_matching(coset.family(), u_coset.family(), seed=seed)


@dataclass(frozen=True)
class SubsetEmbedding:
    subset: tuple[int, ...]
    bijection: DivBijection

    ok = True


def find_subset_embedding(G: FiniteGroup, target) -> SubsetEmbedding | HallViolation:
    """A subset A of G and a divisibility bijection from A onto ``target``.

    ``target`` is an OrderMultiset or a Family (e.g. of residues in C_n).
    Left capacities are G's full multiplicities; success requires the right
    side to be saturated.
    """
    tf = target.expand() if isinstance(target, OrderMultiset) else target
    if len(tf) > G.order:
        raise SizeMismatch(f"target has {len(tf)} elements, |G| = {G.order}")
    gf = G.family()
    lms, rms = OrderMultiset.of(gf), OrderMultiset.of(tf)
    flows, reachable = _max_flow(list(lms.counts), list(rms.counts))
    if sum(flows.values()) < rms.total:
        return _violation(lms, rms, reachable)
    pairs, summary = _materialize(gf, tf, lms, rms, flows)
    subset = tuple(sorted(a for a, _ in pairs))
    sub_family = Family(subset, tuple(G.orders[x] for x in subset))
    return SubsetEmbedding(subset, DivBijection(sub_family, tf, pairs, summary))


def cyclic_solution_family(n: int, bases) -> Family:
    """L^(bases)(C_n) as a family of residues."""
    C = CyclicModel(n)
    members = tuple(k for k in range(n) if any(b % C.order_of(k) == 0 for b in bases))
    return Family(members, tuple(C.order_of(k) for k in members))


def chain_from_embedding(G: FiniteGroup, bases):
    """Chain A(d) = f^-1(C_{n,d}) from an embedding of a subset onto L^(bases)(C_n)."""
    from .solutions import Chain, DivisorSet

    n = G.order
    emb = find_subset_embedding(G, cyclic_solution_family(n, bases))
    if not emb.ok:
        return None
    dset = DivisorSet.of(bases)
    return chain_from_pairs(emb.bijection.pairs, n, dset, "embedding")


def chain_from_pairs(pairs, n: int, dset, method: str):
    from .solutions import Chain

    C = CyclicModel(n)
    assignment = {}
    for d in dset.closure:
        sub = set(C.subgroup(d))
        assignment[d] = frozenset(a for a, b in pairs if b in sub)
    return Chain(dset, assignment, method)


def chain_from_bijection(f: DivBijection, n: int):
    """The chain q -> f^-1(C_{n,q}) carried by a full-group bijection."""
    from .solutions import DivisorSet

    return chain_from_pairs(f.pairs, n, DivisorSet.of([n]), "bijection")
