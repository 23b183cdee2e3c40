"""Concrete finite groups on indexed element tables.

Elements are the integers ``0..order-1``; index 0 is always the identity.
Groups are immutable once built; derived structures (classes, normal
subgroups, ...) are memoized on the instance.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Callable, Hashable, Iterable, Sequence

from .errors import (
    CapExceeded,
    GroupError,
    InvalidPermutation,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotNormal,
)

ELEMENT_CAP = 10_000
DENSE_LIMIT = 512
SUBGROUP_CAP = 4096
FULL_ASSOC_LIMIT = 64


def lcm(*values: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_prime_power(n: int) -> bool:
    return n > 1 and len(prime_factors(n)) == 1


@dataclass(frozen=True)
class Family:
    """An indexed element family: labels with their element orders."""

    labels: tuple[int, ...]
    orders: tuple[int, ...]
    name: str = ""

    def __len__(self) -> int:
        return len(self.labels)

    def order_of(self, label: int) -> int:
        return self.orders[self.labels.index(label)]


class FiniteGroup:
    """A fully enumerated finite group.

    ``labels`` are arbitrary hashable element representations with
    ``labels[0]`` the identity, and ``op`` multiplies two labels. For
    ``order <= DENSE_LIMIT`` the Cayley table is materialized.
    """

    def __init__(
        self,
        labels: Sequence[Hashable],
        op: Callable[[Hashable, Hashable], Hashable] | None,
        *,
        name: str,
        source: str,
        generators: Iterable[int] | None = None,
        table: list[list[int]] | None = None,
    ):
        if source not in ("permutation-generators", "cayley-table", "constructor"):
            raise ValueError(f"unknown source {source!r}")
        self.name = name
        self.source = source
        self.labels = tuple(labels)
        self.order = len(self.labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._op = op
        if table is None and self.order <= DENSE_LIMIT:
            lab, idx = self.labels, self._index
            table = [[idx[op(a, b)] for b in lab] for a in lab]
        self._table = table
        self._cache: dict = {}
        self.orders, self.inverses = self._orders_and_inverses()
        self.exponent = lcm(*self.orders)
        if generators is None:
            generators = self._greedy_generators()
        self.generators = tuple(generators)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    def multiply(self, a: int, b: int) -> int:
        if self._table is not None:
            return self._table[a][b]
        return self._index[self._op(self.labels[a], self.labels[b])]

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    def order_of(self, a: int) -> int:
        return self.orders[a]

    def index_of(self, label: Hashable) -> int:
        return self._index[label]

    def power(self, a: int, k: int) -> int:
        k %= self.orders[a]
        result, base = 0, a
        while k:
            if k & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            k >>= 1
        return result

    def conjugate(self, x: int, g: int) -> int:
        """g x g^-1"""
        return self.multiply(self.multiply(g, x), self.inverses[g])

    def elements(self) -> range:
        return range(self.order)

    def family(self) -> Family:
        return Family(tuple(range(self.order)), tuple(self.orders), self.name)

    @property
    def table(self) -> list[list[int]]:
        if self._table is None:
            self._table = [[self.multiply(a, b) for b in range(self.order)] for a in range(self.order)]
        return self._table

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(self.multiply(a, b) == self.multiply(b, a) for a in gens for b in gens)

    @cached_property
    def is_cyclic(self) -> bool:
        return self.order in self.orders

    def _orders_and_inverses(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        orders = [0] * self.order
        inverses = [0] * self.order
        for x in range(self.order):
            if orders[x]:
                continue
            prev, y, k = 0, x, 1
            powers = [0, x]
            while y != 0:
                prev = y
                y = self.multiply(y, x)
                k += 1
                powers.append(y)
                if k > self.order:
                    raise NoInverse(f"element {x} has no finite order", (x,))
            o = k if x != 0 else 1
            orders[x] = o
            inverses[x] = prev if x != 0 else 0
            # every power x^j with gcd(j, o) = 1 shares the order; its inverse is x^(o-j)
            if x != 0:
                for j in range(1, o):
                    if math.gcd(j, o) == 1:
                        orders[powers[j]] = o
                        inverses[powers[j]] = powers[o - j]
        return tuple(orders), tuple(inverses)

    def _greedy_generators(self) -> list[int]:
        gens: list[int] = []
        covered = {0}
        for x in sorted(range(self.order), key=lambda e: (-self.orders[e], e)):
            if x not in covered:
                gens.append(x)
                covered = generate(self, gens)
                if len(covered) == self.order:
                    break
        return gens


def generate(G: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    """Member set of the subgroup generated by ``gens``.

    Generators already inside the running closure are skipped, so passing a
    whole conjugacy class costs about as much as passing a few of its members.
    """
    used: list[int] = []
    seen = {0}
    for g in dict.fromkeys(gens):
        if g in seen:
            continue
        used.append(g)
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for s in used:
                y = G.multiply(x, s)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return frozenset(seen)


def _product_set(G: FiniteGroup, A: frozenset[int], B: Iterable[int]) -> frozenset[int]:
    """A*B for a subgroup A; built coset by coset."""
    result = set(A)
    for b in B:
        if b not in result:
            result.update(G.multiply(a, b) for a in A)
    return frozenset(result)


# ---------------------------------------------------------------- constructors


def _parse_perm(degree: int, images: Sequence[int]) -> tuple[int, ...]:
    if len(images) != degree or sorted(images) != list(range(1, degree + 1)):
        raise InvalidPermutation(f"{list(images)} is not a permutation of 1..{degree}")
    return tuple(i - 1 for i in images)


def close_generators(
    degree: int,
    generators: Sequence[Sequence[int]],
    *,
    name: str = "",
    cap: int = ELEMENT_CAP,
) -> FiniteGroup:
    """Permutation group generated by 1-based one-line images.

    The product ``p*q`` applies ``q`` first, i.e. ``(p*q)(i) = p(q(i))``.
    """
    perms = [_parse_perm(degree, g) for g in generators]
    identity = tuple(range(degree))

    def op(p, q):
        return tuple(p[i] for i in q)

    labels = close_labels(identity, perms, op, cap=cap)
    index = {lab: i for i, lab in enumerate(labels)}
    gen_idx = sorted({index[p] for p in perms} - {0})
    return FiniteGroup(
        labels, op, name=name or f"<{len(perms)} gens on {degree}>",
        source="permutation-generators", generators=gen_idx,
    )


def close_labels(identity, gens, op, *, cap: int = ELEMENT_CAP) -> list:
    """Breadth-first closure of ``gens`` under ``op`` starting from ``identity``."""
    labels = [identity]
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = op(x, s)
            if y not in seen:
                seen.add(y)
                labels.append(y)
                if len(labels) > cap:
                    raise CapExceeded(f"closure exceeds element cap {cap}")
                queue.append(y)
    return labels


def from_cayley_table(table: Sequence[Sequence[int]], *, name: str = "", cap: int = ELEMENT_CAP) -> FiniteGroup:
    """Validate a Cayley table exhaustively and wrap it as a group.

    If the identity is not index 0 the elements are renumbered so that it is.
    """
    k = len(table)
    if k == 0:
        raise NoIdentity("empty table has no identity")
    if k > cap:
        raise CapExceeded(f"table of size {k} exceeds element cap {cap}")
    rows = [list(map(int, r)) for r in table]
    for i, r in enumerate(rows):
        if len(r) != k:
            raise ValueError(f"row {i} has {len(r)} entries, expected {k}")
        for v in r:
            if not 0 <= v < k:
                raise ValueError(f"entry {v} in row {i} out of range 0..{k - 1}")
    ident = next(
        (e for e in range(k) if rows[e] == list(range(k)) and all(rows[i][e] == i for i in range(k))),
        None,
    )
    if ident is None:
        raise NoIdentity("no two-sided identity element")
    if ident != 0:
        perm = list(range(k))
        perm[0], perm[ident] = ident, 0  # new index -> old index
        old_to_new = {old: new for new, old in enumerate(perm)}
        rows = [[old_to_new[rows[perm[i]][perm[j]]] for j in range(k)] for i in range(k)]
    for x in range(k):
        right = [y for y in range(k) if rows[x][y] == 0]
        if not right or rows[right[0]][x] != 0:
            raise NoInverse(f"element {x} has no two-sided inverse", (x,))
    _check_associative(rows)
    G = FiniteGroup(range(k), None, name=name or f"table{k}", source="cayley-table", table=rows)
    return G


def _check_associative(rows: list[list[int]]) -> None:
    k = len(rows)
    if k <= FULL_ASSOC_LIMIT:
        for a in range(k):
            ra = rows[a]
            for b in range(k):
                ab = ra[b]
                rab, rb = rows[ab], rows[b]
                for c in range(k):
                    if rab[c] != ra[rb[c]]:
                        raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", (a, b, c))
        return
    # Light's test: associativity on a generating set (right-multiplication closure) suffices
    gens: list[int] = []
    reach = {0}
    for x in range(k):
        if x not in reach:
            gens.append(x)
            queue = deque(reach | {x})
            reach.add(x)
            while queue:
                y = queue.popleft()
                for s in gens:
                    z = rows[y][s]
                    if z not in reach:
                        reach.add(z)
                        queue.append(z)
    for s in gens:
        for a in range(k):
            ras = rows[rows[a][s]]
            ra = rows[a]
            rs = rows[s]
            for c in range(k):
                if ras[c] != ra[rs[c]]:
                    raise NotAssociative(f"({a}*{s})*{c} != {a}*({s}*{c})", (a, s, c))


def direct_product(A: FiniteGroup, B: FiniteGroup, *, name: str | None = None, cap: int = ELEMENT_CAP) -> FiniteGroup:
    if A.order * B.order > cap:
        raise CapExceeded(f"{A.name}x{B.name} has {A.order * B.order} elements, cap {cap}")
    labels = [(a, b) for a in range(A.order) for b in range(B.order)]

    def op(x, y):
        return (A.multiply(x[0], y[0]), B.multiply(x[1], y[1]))

    gens = [(g, 0) for g in A.generators] + [(0, h) for h in B.generators]
    index = {lab: i for i, lab in enumerate(labels)}
    return FiniteGroup(
        labels, op, name=name or f"{A.name}x{B.name}", source="constructor",
        generators=[index[g] for g in gens],
    )


def check_axioms(G: FiniteGroup, *, samples: int = 10_000, seed: int = 0) -> None:
    """Re-verify the group axioms; exhaustive up to order 64, sampled above."""
    n = G.order
    for x in range(n):
        if G.multiply(0, x) != x or G.multiply(x, 0) != x:
            raise NoIdentity(f"index 0 is not an identity for {x}", (x,))
        if G.multiply(x, G.inverse(x)) != 0:
            raise NoInverse(f"inverse of {x} is wrong", (x,))
        if n % G.orders[x]:
            raise GroupError(f"order of {x} does not divide {n}")
    if n <= FULL_ASSOC_LIMIT:
        triples: Iterable[tuple[int, int, int]] = itertools.product(range(n), repeat=3)
    else:
        rng = random.Random(seed)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
    for a, b, c in triples:
        if G.multiply(G.multiply(a, b), c) != G.multiply(a, G.multiply(b, c)):
            raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", (a, b, c))


# ------------------------------------------------------------- substructures


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]
    minimal_normal_hint: bool | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and other.members == self.members

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.member_set

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        G, gens, covered = self.parent, [], {0}
        for x in sorted(self.members, key=lambda e: (-self.parent.orders[e], e)):
            if x not in covered:
                gens.append(x)
                covered = generate(G, gens)
                if len(covered) == len(self.members):
                    break
        return tuple(gens)

    @cached_property
    def is_normal(self) -> bool:
        G = self.parent
        return all(G.conjugate(h, g) in self.member_set for g in G.generators for h in self.generators)

    @cached_property
    def is_abelian(self) -> bool:
        G, gens = self.parent, self.generators
        return all(G.multiply(a, b) == G.multiply(b, a) for a in gens for b in gens)

    @cached_property
    def is_central(self) -> bool:
        G = self.parent
        return all(G.multiply(h, g) == G.multiply(g, h) for h in self.generators for g in G.generators)

    @cached_property
    def is_minimal_normal(self) -> bool:
        if self.minimal_normal_hint is not None:
            return self.minimal_normal_hint
        if not self.is_normal or self.order == 1:
            return False
        return any(N == self for N in normal_subgroups(self.parent) if N.is_minimal_normal)

    @property
    def flags(self) -> dict[str, bool]:
        return {
            "is_normal": self.is_normal,
            "is_abelian": self.is_abelian,
            "is_minimal_normal": self.is_minimal_normal,
            "is_central": self.is_central,
        }

    def family(self) -> Family:
        G = self.parent
        return Family(self.members, tuple(G.orders[x] for x in self.members))

    def coset(self, representative: int) -> "Coset":
        return Coset.of(self, representative)

    def cosets(self) -> list["Coset"]:
        """Left cosets, one per block, represented by their least element."""
        seen: set[int] = set()
        out = []
        for x in range(self.parent.order):
            if x not in seen:
                c = Coset.of(self, x)
                seen.update(c.members)
                out.append(c)
        return out

    def as_group(self, name: str | None = None) -> tuple[FiniteGroup, tuple[int, ...]]:
        """This subgroup as a standalone group plus the embedding new index -> parent index."""
        G = self.parent
        members = (0,) + tuple(m for m in self.members if m != 0)
        name = name or f"sub{len(members)}({G.name})"
        if len(members) > DENSE_LIMIT:
            # labels are parent indices; products are looked up in the parent
            return FiniteGroup(members, G.multiply, name=name, source="constructor"), members
        pos = {m: i for i, m in enumerate(members)}
        table = [[pos[G.multiply(a, b)] for b in members] for a in members]
        H = FiniteGroup(range(len(members)), None, name=name, source="constructor", table=table)
        return H, members


@dataclass(frozen=True)
class Coset:
    parent: FiniteGroup
    subgroup: Subgroup
    representative: int
    members: tuple[int, ...]

    @classmethod
    def of(cls, subgroup: Subgroup, representative: int) -> "Coset":
        G = subgroup.parent
        members = tuple(sorted(G.multiply(representative, h) for h in subgroup.members))
        return cls(G, subgroup, representative, members)

    def __len__(self) -> int:
        return len(self.members)

    def family(self) -> Family:
        G = self.parent
        return Family(self.members, tuple(G.orders[x] for x in self.members))

    @property
    def quotient_order(self) -> int:
        """Order of this coset in G/N (requires N normal)."""
        return coset_order(self.parent, self.subgroup.member_set, self.representative)


def coset_order(G: FiniteGroup, N: frozenset[int], x: int) -> int:
    k, y = 1, x
    while y not in N:
        y = G.multiply(y, x)
        k += 1
    return k


class CyclicModel:
    """Arithmetic model of C_n as residues mod n under addition."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n

    def __repr__(self) -> str:
        return f"CyclicModel({self.n})"

    def __len__(self) -> int:
        return self.n

    @property
    def order(self) -> int:
        return self.n

    def order_of(self, k: int) -> int:
        return self.n // math.gcd(self.n, k % self.n)

    def subgroup(self, m: int) -> tuple[int, ...]:
        """C_{n,m}: the unique subgroup of cardinality m."""
        if self.n % m:
            raise ValueError(f"{m} does not divide {self.n}")
        step = self.n // m
        return tuple(range(0, self.n, step))

    def coset(self, u: int, m: int) -> "CyclicCoset":
        return CyclicCoset(self.n, m, u)

    def cosets(self, m: int) -> list["CyclicCoset"]:
        return [CyclicCoset(self.n, m, u) for u in range(self.n // m)]

    def family(self) -> Family:
        return Family(tuple(range(self.n)), tuple(self.order_of(k) for k in range(self.n)), f"C{self.n}")


@dataclass(frozen=True)
class CyclicCoset:
    """u + C_{n,m} inside C_n, with u reduced modulo n/m."""

    n: int
    m: int
    u: int

    def __post_init__(self):
        if self.n % self.m:
            raise ValueError(f"{self.m} does not divide {self.n}")
        object.__setattr__(self, "u", self.u % (self.n // self.m))

    @property
    def members(self) -> tuple[int, ...]:
        step = self.n // self.m
        return tuple(sorted((self.u + j * step) % self.n for j in range(self.m)))

    @property
    def quotient_order(self) -> int:
        index = self.n // self.m
        return index // math.gcd(index, self.u)

    def __len__(self) -> int:
        return self.m

    def family(self) -> Family:
        n = self.n
        mem = self.members
        return Family(mem, tuple(n // math.gcd(n, k) for k in mem))


# ------------------------------------------------------------- computations


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Classes as sorted tuples, ordered by least element (identity class first)."""
    if "classes" in G._cache:
        return G._cache["classes"]
    seen = [False] * G.order
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        cls = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in G.generators:
                z = G.conjugate(y, g)
                if z not in cls:
                    cls.add(z)
                    queue.append(z)
        for y in cls:
            seen[y] = True
        classes.append(tuple(sorted(cls)))
    G._cache["classes"] = classes
    return classes


def normal_subgroups(G: FiniteGroup, *, max_subgroups: int = SUBGROUP_CAP) -> list[Subgroup]:
    """All normal subgroups, sorted by (order, members), with minimality flags.

    Every normal subgroup is the join of the normal closures of the classes it
    contains, so closing the class closures under pairwise products is complete.
    """
    key = ("normal", max_subgroups)
    if key in G._cache:
        return G._cache[key]
    closures = []
    for cls in conjugacy_classes(G)[1:]:
        M = generate(G, cls)
        if M not in closures:
            closures.append(M)
    trivial = frozenset({0})
    found = {trivial}
    queue = deque([trivial])
    while queue:
        N = queue.popleft()
        for M in closures:
            if M <= N:
                continue
            J = _product_set(G, N, M)
            if J not in found:
                found.add(J)
                if len(found) > max_subgroups:
                    raise CapExceeded(f"{G.name} has more than {max_subgroups} normal subgroups")
                queue.append(J)
    ordered = sorted(found, key=lambda s: (len(s), sorted(s)))
    minimal = set()
    for s in ordered:
        if len(s) > 1 and not any(1 < len(t) < len(s) and t < s for t in ordered):
            minimal.add(s)
    out = [Subgroup(G, tuple(s), s in minimal) for s in ordered]
    for S in out:
        S.__dict__["is_normal"] = True
    G._cache[key] = out
    return out


def is_nilpotent_subgroup(G: FiniteGroup, members: Iterable[int]) -> bool:
    """Nilpotent iff each Sylow subgroup is unique, i.e. p-elements number |H|_p."""
    members = list(members)
    h = len(members)
    for p in prime_factors(h):
        pk = 1
        while h % (pk * p) == 0:
            pk *= p
        count = sum(1 for x in members if pk % G.orders[x] == 0)
        if count != pk:
            return False
    return True


@dataclass(frozen=True)
class Distinguished:
    center: Subgroup
    fitting: Subgroup
    socle: Subgroup


def center(G: FiniteGroup) -> Subgroup:
    members = [x for x in range(G.order) if all(G.multiply(x, g) == G.multiply(g, x) for g in G.generators)]
    return Subgroup(G, tuple(members))


def join(G: FiniteGroup, subgroups: Iterable[Subgroup]) -> Subgroup:
    acc = frozenset({0})
    for S in subgroups:
        acc = _product_set(G, acc, S.members) if S.is_normal else generate(G, list(acc) + list(S.members))
    return Subgroup(G, tuple(acc))


def distinguished_subgroups(G: FiniteGroup) -> Distinguished:
    if "distinguished" in G._cache:
        return G._cache["distinguished"]
    normals = normal_subgroups(G)
    fit = join(G, [N for N in normals if is_nilpotent_subgroup(G, N.members)])
    soc = join(G, [N for N in normals if N.is_minimal_normal])
    result = Distinguished(center(G), fit, soc)
    G._cache["distinguished"] = result
    return result


@dataclass(frozen=True)
class Quotient:
    group: FiniteGroup
    projection: tuple[int, ...]  # element of G -> coset index
    representatives: tuple[int, ...]  # coset index -> least element of the coset


def quotient(G: FiniteGroup, N: Subgroup, *, name: str | None = None) -> Quotient:
    if N.parent is not G:
        raise ValueError("subgroup belongs to a different group")
    if not N.is_normal:
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    proj = [-1] * G.order
    reps = []
    for x in range(G.order):
        if proj[x] < 0:
            for h in N.members:
                proj[G.multiply(x, h)] = len(reps)
            reps.append(x)
    table = [[proj[G.multiply(a, b)] for b in reps] for a in reps]
    Q = FiniteGroup(range(len(reps)), None, name=name or f"{G.name}/N{N.order}",
                    source="constructor", table=table)
    return Quotient(Q, tuple(proj), tuple(reps))


def derived_subgroup(G: FiniteGroup, members: Sequence[int] | None = None) -> frozenset[int]:
    """Commutator subgroup of the subgroup ``members`` (default: G)."""
    H = Subgroup(G, tuple(members)) if members is not None else Subgroup(G, tuple(range(G.order)))
    gens = H.generators
    comm = set()
    for a in gens:
        for b in gens:
            c = G.multiply(G.multiply(G.inverse(a), G.inverse(b)), G.multiply(a, b))
            if c != 0:
                comm.add(c)
    # normal closure inside H
    closure = set(generate(G, comm))
    changed = True
    while changed:
        changed = False
        extra = {G.conjugate(c, h) for c in list(closure) for h in gens} - closure
        if extra:
            closure = set(generate(G, list(closure) + list(extra)))
            changed = True
    return frozenset(closure)


@dataclass(frozen=True)
class Predicates:
    is_solvable: bool
    is_semisimple: bool
    is_simple: bool
    is_abelian: bool


def structural_predicates(G: FiniteGroup) -> Predicates:
    if "predicates" in G._cache:
        return G._cache["predicates"]
    current = frozenset(range(G.order))
    while len(current) > 1:
        nxt = derived_subgroup(G, sorted(current))
        if nxt == current:
            break
        current = nxt
    solvable = len(current) == 1
    normals = normal_subgroups(G)
    semisimple = not any(N.order > 1 and N.is_abelian for N in normals)
    result = Predicates(solvable, semisimple, len(normals) == 2, G.is_abelian)
    G._cache["predicates"] = result
    return result


@dataclass(frozen=True)
class NormalizerCentralizer:
    normalizer: Subgroup
    centralizer: Subgroup


def normalizer_centralizer(G: FiniteGroup, a: int) -> NormalizerCentralizer:
    cyc = generate(G, [a])
    norm = [g for g in range(G.order) if G.conjugate(a, g) in cyc]
    cent = [g for g in norm if G.multiply(g, a) == G.multiply(a, g)]
    return NormalizerCentralizer(Subgroup(G, tuple(norm)), Subgroup(G, tuple(cent)))


def cyclic_subgroup(G: FiniteGroup, a: int) -> Subgroup:
    return Subgroup(G, tuple(generate(G, [a])))
