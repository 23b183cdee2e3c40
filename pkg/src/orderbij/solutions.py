"""Solution sets L^(m), the (n_1,...,n_k)-group predicate, d-subgroups and chains."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import AntichainExplosion, NoChain
from .groups import CyclicModel, Family, FiniteGroup, divisors, lcm

MAX_CLOSURE = 24
MAX_D = 12
CANDIDATE_CAP = 10_000


def _family(G) -> Family:
    return G if isinstance(G, Family) else G.family()


def _require_exponents(S: Sequence[int]) -> list[int]:
    S = list(S)
    if not S:
        raise ValueError("exponent list must be nonempty")
    if any(s < 1 for s in S):
        raise ValueError(f"exponents must be positive: {S}")
    return S


@dataclass(frozen=True)
class DivisorSet:
    base: tuple[int, ...]
    closure: tuple[int, ...]

    @classmethod
    def of(cls, base: Iterable[int]) -> "DivisorSet":
        base = tuple(_require_exponents(list(base)))
        closure = sorted({d for b in base for d in divisors(b)})
        return cls(base, tuple(closure))

    def antichains(self) -> list[tuple[int, ...]]:
        return antichains(self.closure)


@dataclass(frozen=True)
class SolutionSet:
    exponents: tuple[int, ...]
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


def solution_set(G, m: int | Sequence[int]) -> SolutionSet:
    """Members x of G (or of an element family) with x^s = 1 for some listed s."""
    S = _require_exponents([m] if isinstance(m, int) else m)
    fam = _family(G)
    members = tuple(x for x, o in zip(fam.labels, fam.orders) if any(s % o == 0 for s in S))
    return SolutionSet(tuple(S), members)


def solution_count(G, m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    if isinstance(G, CyclicModel):
        return math.gcd(m, G.n)
    return len(solution_set(G, m))


def maximal_elements(S: Iterable[int]) -> list[int]:
    S = sorted(set(S))
    return [s for s in S if not any(t != s and t % s == 0 for t in S)]


def union_solution_count(G, S: Sequence[int]) -> int:
    """|L^(s_1) u ... u L^(s_h)|; inclusion-exclusion over gcds for C_n."""
    S = _require_exponents(S)
    if isinstance(G, CyclicModel):
        return cyclic_union_count(G.n, S)
    return len(solution_set(G, S))


def cyclic_union_count(n: int, S: Sequence[int]) -> int:
    # L^(s)(C_n) = C_{n,gcd(s,n)} and C_{n,a} n C_{n,b} = C_{n,gcd(a,b)}
    gs = maximal_elements(math.gcd(s, n) for s in S)
    total = 0
    for r in range(1, len(gs) + 1):
        sign = 1 if r % 2 else -1
        for combo in itertools.combinations(gs, r):
            total += sign * math.gcd(*combo) if len(combo) > 1 else sign * combo[0]
    return total


def antichains(closure: Sequence[int]) -> list[tuple[int, ...]]:
    """All nonempty antichains of a finite set of integers under divisibility."""
    elems = sorted(closure)
    out: list[tuple[int, ...]] = []

    def extend(start: int, chosen: list[int]):
        for i in range(start, len(elems)):
            e = elems[i]
            if all(e % c and c % e for c in chosen):
                chosen.append(e)
                out.append(tuple(chosen))
                extend(i + 1, chosen)
                chosen.pop()

    extend(0, [])
    return out


@dataclass(frozen=True)
class NkResult:
    ok: bool
    antichain: tuple[int, ...] | None = None
    count: int | None = None
    cyclic_count: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_nk_group(G, n: int, bases: Sequence[int], *, max_closure: int = MAX_CLOSURE) -> NkResult:
    """Whether the family is an (n_1,...,n_k)-group inside an ambient group of order n.

    Only antichains of Div(n_1,...,n_k) are tested: L^(s) is contained in L^(t)
    when s | t, so non-maximal exponents change neither side of the inequality.
    """
    bases = _require_exponents(bases)
    for b in bases:
        if n % b:
            raise ValueError(f"base {b} does not divide ambient order {n}")
    closure = DivisorSet.of(bases).closure
    if len(closure) > max_closure:
        raise AntichainExplosion(
            f"divisor closure of {bases} has {len(closure)} elements (limit {max_closure})"
        )
    fam = _family(G)
    orders = fam.orders
    for chain in antichains(closure):
        have = sum(1 for o in orders if any(s % o == 0 for s in chain))
        need = cyclic_union_count(n, chain)
        if have < need:
            return NkResult(False, chain, have, need)
    return NkResult(True)


def is_nk_group_naive(G, n: int, bases: Sequence[int]) -> bool:
    """Reference check over every nonempty subset of the divisor closure."""
    closure = DivisorSet.of(bases).closure
    fam = _family(G)
    for r in range(1, len(closure) + 1):
        for S in itertools.combinations(closure, r):
            have = sum(1 for o in fam.orders if any(s % o == 0 for s in S))
            cyc = sum(1 for k in range(n) if any(s % (n // math.gcd(n, k)) == 0 for s in S))
            if have < cyc:
                return False
    return True


@dataclass(frozen=True)
class DSubgroups:
    subsets: tuple[tuple[int, ...], ...]
    truncated: bool


def _subset_family(G: FiniteGroup, members: Iterable[int]) -> Family:
    members = tuple(sorted(members))
    return Family(members, tuple(G.orders[x] for x in members))


def enumerate_d_subgroups(
    G: FiniteGroup, d: int, *, cap: int = CANDIDATE_CAP, max_d: int = MAX_D,
    max_candidates: int = CANDIDATE_CAP,
) -> DSubgroups:
    """N(d, G): size-d subsets of L^(d)(G) that are d-groups, found by backtracking."""
    if d < 1 or G.order % d:
        raise ValueError(f"d = {d} must be a positive divisor of |G| = {G.order}")
    if d > max_d:
        raise ValueError(f"d = {d} exceeds the enumeration limit {max_d}")
    pool = [x for x in solution_set(G, d).members if x != 0]
    found: list[tuple[int, ...]] = []
    examined = 0
    truncated = False
    for rest in itertools.combinations(pool, d - 1):
        examined += 1
        if examined > max_candidates:
            truncated = True
            break
        subset = (0,) + rest
        if is_nk_group(_subset_family(G, subset), G.order, [d]):
            found.append(subset)
            if len(found) >= cap:
                truncated = True
                break
    return DSubgroups(tuple(found), truncated)


@dataclass
class Chain:
    """d -> A(d) for every d in the divisor closure of the bases."""

    divisor_set: DivisorSet
    assignment: dict[int, frozenset[int]] = field(default_factory=dict)
    method: str = "search"

    def __getitem__(self, d: int) -> frozenset[int]:
        return self.assignment[d]

    @property
    def carrier(self) -> frozenset[int]:
        return frozenset().union(*self.assignment.values()) if self.assignment else frozenset()


def verify_chain(G: FiniteGroup, chain: Chain) -> list[str]:
    """Exhaustive check of both chain conditions; returns the list of failures."""
    problems = []
    closure = chain.divisor_set.closure
    if sorted(chain.assignment) != list(closure):
        problems.append(f"assignment keys {sorted(chain.assignment)} != closure {list(closure)}")
        return problems
    for d in closure:
        A = chain[d]
        if len(A) != d:
            problems.append(f"|A({d})| = {len(A)}")
        if any(d % G.orders[x] for x in A):
            problems.append(f"A({d}) is not inside L^({d})")
        if not is_nk_group(_subset_family(G, A), G.order, [d]):
            problems.append(f"A({d}) is not a {d}-group")
    for q in closure:
        for s in closure:
            if chain[q] & chain[s] != chain[math.gcd(q, s)]:
                problems.append(f"A({q}) n A({s}) != A({math.gcd(q, s)})")
    return problems


def _cyclic_candidates(G: FiniteGroup, d: int) -> list[frozenset[int]]:
    from .groups import generate

    seen, out = set(), []
    for x in range(G.order):
        if G.orders[x] == d:
            C = generate(G, [x])
            if C not in seen:
                seen.add(C)
                out.append(C)
    return out


def build_chain(
    G: FiniteGroup, bases: Sequence[int], *, max_candidates: int = CANDIDATE_CAP,
    fallback: bool = True,
) -> Chain:
    """A chain for ``bases`` in G.

    Divisors are assigned in increasing order. Candidates for A(d) are cyclic
    subgroups of order d first, then completions of the already forced part by
    elements of L^(d)(G) taken in increasing order. If the bounded search fails
    and ``fallback`` is set, the chain induced by a divisibility embedding onto
    L^(bases)(C_n) is tried. Raises NoChain with the blocking divisor otherwise.
    """
    bases = _require_exponents(bases)
    n = G.order
    for b in bases:
        if n % b:
            raise ValueError(f"base {b} does not divide |G| = {n}")
    dset = DivisorSet.of(bases)
    closure = list(dset.closure)
    budget = [max_candidates]
    worst = [None]

    def candidates(d: int, assigned: dict[int, frozenset[int]]):
        forced = frozenset().union(*(assigned[q] for q in assigned if d % q == 0))
        forbidden = set()
        for q, A in assigned.items():
            forbidden |= A - assigned[math.gcd(q, d)]
        if len(forced) > d or forced & forbidden:
            return
        yielded = set()
        for C in _cyclic_candidates(G, d):
            if forced <= C and not C & forbidden:
                yielded.add(C)
                yield C
        pool = sorted(
            (x for x in range(n) if d % G.orders[x] == 0 and x not in forced and x not in forbidden),
            key=lambda x: (G.orders[x], x),
        )
        for extra in itertools.combinations(pool, d - len(forced)):
            budget[0] -= 1
            if budget[0] < 0:
                return
            A = forced | frozenset(extra)
            if A not in yielded:
                yield A

    def ok(d: int, A: frozenset[int], assigned) -> bool:
        if not is_nk_group(_subset_family(G, A), n, [d]):
            return False
        return all(A & B == assigned[math.gcd(d, q)] for q, B in assigned.items())

    def search(i: int, assigned: dict[int, frozenset[int]]) -> bool:
        if i == len(closure):
            return True
        d = closure[i]
        for A in candidates(d, assigned):
            if ok(d, A, assigned):
                assigned[d] = A
                if search(i + 1, assigned):
                    return True
                del assigned[d]
        if worst[0] is None or d > worst[0]:
            worst[0] = d
        return False

    assigned: dict[int, frozenset[int]] = {}
    if search(0, assigned):
        return Chain(dset, dict(assigned), "search")
    truncated = budget[0] < 0
    if fallback:
        from .matching import chain_from_embedding

        chain = chain_from_embedding(G, bases)
        if chain is not None and not verify_chain(G, chain):
            return chain
    raise NoChain(f"no chain for {bases} in {G.name}; blocked at d = {worst[0]}", worst[0], truncated)
