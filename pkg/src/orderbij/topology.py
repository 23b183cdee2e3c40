"""Finite topologies generated by subgroup-like bases, and their separation checks.

Subsets of the carrier are bitmasks over carrier positions. The opens are the
empty set together with all unions of base sets; they are materialized only
when the base has at most ``MATERIALIZE_LIMIT`` sets, and membership is
otherwise decided from the base directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .errors import NotAGroupBijection, TopologyTooLarge
from .groups import CyclicModel, divisors, lcm
from .matching import DivBijection, verify_bijection

MATERIALIZE_LIMIT = 12


class FiniteTopology:
    def __init__(self, carrier: Sequence[Hashable], base: Iterable[Iterable[Hashable]], *,
                 identity: Hashable | None = None, name: str = ""):
        self.carrier = tuple(carrier)
        self._pos = {x: i for i, x in enumerate(self.carrier)}
        if len(self._pos) != len(self.carrier):
            raise ValueError("carrier labels must be distinct")
        masks = []
        for B in base:
            m = self.mask(B)
            if m not in masks:
                masks.append(m)
        self.base = tuple(masks)
        self.full = (1 << len(self.carrier)) - 1
        self.identity = identity
        self.name = name

    def mask(self, subset: Iterable[Hashable]) -> int:
        m = 0
        for x in subset:
            if x not in self._pos:
                raise ValueError(f"{x!r} is not in the carrier")
            m |= 1 << self._pos[x]
        return m

    def members(self, mask: int) -> frozenset:
        return frozenset(x for i, x in enumerate(self.carrier) if mask >> i & 1)

    @property
    def materialized(self) -> bool:
        return len(self.base) <= MATERIALIZE_LIMIT

    @cached_property
    def opens(self) -> frozenset[int]:
        if not self.materialized:
            raise TopologyTooLarge(f"{len(self.base)} base sets exceed the limit {MATERIALIZE_LIMIT}")
        family = {0}
        for b in self.base:
            family |= {u | b for u in family}
        return frozenset(family)

    def open_sets(self) -> list[frozenset]:
        return [self.members(m) for m in sorted(self.opens, key=lambda m: (bin(m).count("1"), m))]

    def is_open(self, subset) -> bool:
        m = subset if isinstance(subset, int) else self.mask(subset)
        covered = 0
        for b in self.base:
            if b & ~m == 0:
                covered |= b
        return covered == m

    def minimal_neighbourhood(self, x: Hashable) -> int:
        bit = 1 << self._pos[x]
        m = self.full
        for b in self.base:
            if b & bit:
                m &= b
        return m if any(b & bit for b in self.base) else 0

    def axiom_failures(self) -> list[str]:
        """Exhaustive check of the topology axioms on the materialized opens."""
        carrier_mask = 0
        for b in self.base:
            carrier_mask |= b
        problems = []
        opens = self.opens
        if 0 not in opens:
            problems.append("empty set is not open")
        if carrier_mask not in opens:
            problems.append("carrier is not open")
        ordered = sorted(opens)
        for i, u in enumerate(ordered):
            for v in ordered[i:]:
                if u | v not in opens:
                    problems.append(f"union of {sorted(self.members(u))} and {sorted(self.members(v))} is not open")
                if u & v not in opens:
                    problems.append(
                        f"intersection of {sorted(self.members(u))} and {sorted(self.members(v))} is not open")
                if len(problems) > 10:
                    return problems
        return problems


def cyclic_base(n: int) -> FiniteTopology:
    """The topology on C_n whose base is its subgroups C_{n,m}."""
    C = CyclicModel(n)
    return FiniteTopology(range(n), [C.subgroup(m) for m in divisors(n)], identity=0, name=f"tau(C{n})")


def _require_group_bijection(f: DivBijection) -> int:
    n = len(f.right)
    if not f.ok or len(f.left) != n or tuple(sorted(f.right.labels)) != tuple(range(n)):
        raise NotAGroupBijection("expected a bijection from a whole group onto C_n")
    problems = verify_bijection(f)
    if problems:
        raise NotAGroupBijection("; ".join(problems))
    return n


def induce_topology(f: DivBijection, name: str = "") -> FiniteTopology:
    """Pull back the subgroup topology of C_n through f."""
    n = _require_group_bijection(f)
    inv: dict[int, list] = {}
    for a, b in f.pairs:
        inv.setdefault(b, []).append(a)
    C = CyclicModel(n)
    base = [[inv[k][0] for k in C.subgroup(m)] for m in divisors(n)]
    return FiniteTopology(sorted(f.left.labels), base, identity=inv[0][0], name=name or "tau_c")


def chain_topology(chain, name: str = "") -> FiniteTopology:
    """Opens are the empty set and unions of the chain members A(d)."""
    members = [chain[d] for d in chain.divisor_set.closure]
    carrier = sorted(frozenset().union(*members))
    ident = next(iter(chain[1])) if 1 in chain.assignment and len(chain[1]) == 1 else None
    return FiniteTopology(carrier, members, identity=ident, name=name or "tau_D")


@dataclass
class SeparationReport:
    countable_base: bool
    hausdorff: bool
    regular: bool
    hausdorff_witness: tuple | None = None
    regular_witness: dict | None = None
    identity_pattern: bool | None = None  # F = carrier minus identity is closed and inseparable
    regular_method: str = "exhaustive"

    def as_dict(self) -> dict:
        return {
            "countable_base": self.countable_base,
            "hausdorff": self.hausdorff,
            "regular": self.regular,
            "hausdorff_witness": list(self.hausdorff_witness) if self.hausdorff_witness else None,
            "regular_witness": self.regular_witness,
            "identity_pattern": self.identity_pattern,
            "regular_method": self.regular_method,
        }


def _smallest_open_containing(T: FiniteTopology, mask: int) -> int | None:
    """Union of minimal neighbourhoods; None if some point has no open neighbourhood."""
    out = 0
    for i, x in enumerate(T.carrier):
        if mask >> i & 1:
            u = T.minimal_neighbourhood(x)
            if not u:
                return None
            out |= u
    return out


def separation_report(T: FiniteTopology) -> SeparationReport:
    carrier_mask = 0
    for b in T.base:
        carrier_mask |= b
    points = [x for i, x in enumerate(T.carrier) if carrier_mask >> i & 1]
    nbhd = {x: T.minimal_neighbourhood(x) for x in points}

    # In a finite space x and y are separated iff their minimal neighbourhoods are disjoint.
    h_witness = None
    for i, x in enumerate(points):
        for y in points[i + 1:]:
            if nbhd[x] & nbhd[y]:
                h_witness = (x, y)
                break
        if h_witness:
            break

    pattern = None
    r_witness = None
    if T.identity is not None and T.identity in nbhd:
        F = carrier_mask & ~(1 << T._pos[T.identity])
        closed = T.is_open(carrier_mask & ~F)
        V = _smallest_open_containing(T, F)
        pattern = bool(F) and closed and V is not None and bool(V & nbhd[T.identity])
        if pattern:
            r_witness = {"point": T.identity, "closed_set": sorted(T.members(F))}

    method = "exhaustive"
    regular = True
    if T.materialized:
        for U in sorted(T.opens):
            F = carrier_mask & ~U
            V = _smallest_open_containing(T, F)
            for x in points:
                bit = 1 << T._pos[x]
                if F & bit:
                    continue
                if V & nbhd[x]:
                    regular = False
                    if r_witness is None:
                        r_witness = {"point": x, "closed_set": sorted(T.members(F))}
                    break
            if not regular:
                break
    else:
        method = "identity-pattern"
        regular = not pattern
    return SeparationReport(True, h_witness is None, regular, h_witness, None if regular else r_witness,
                            pattern, method)


def homeomorphism_check(f: DivBijection, T_G: FiniteTopology, T_C: FiniteTopology) -> bool:
    """Whether f carries the opens of T_G exactly onto the opens of T_C."""
    fwd = dict(f.pairs)
    if len(fwd) != len(T_G.carrier) or set(fwd) != set(T_G.carrier) or set(fwd.values()) != set(T_C.carrier):
        return False
    back = {b: a for a, b in fwd.items()}

    def image(T_src, T_dst, mapping, mask):
        return T_dst.mask(mapping[x] for x in T_src.members(mask))

    # continuity and openness on the bases
    if not all(T_C.is_open(image(T_G, T_C, fwd, b)) for b in T_G.base):
        return False
    if not all(T_G.is_open(image(T_C, T_G, back, b)) for b in T_C.base):
        return False
    if T_G.materialized and T_C.materialized:
        return {image(T_G, T_C, fwd, u) for u in T_G.opens} == set(T_C.opens)
    return True


@dataclass(frozen=True)
class SymbolicIntegerOpens:
    """A finite union of subgroups m*Z of the integers, stored by moduli."""

    moduli: frozenset[int]

    @classmethod
    def of(cls, moduli: Iterable[int]) -> "SymbolicIntegerOpens":
        ms = set(moduli)
        if any(m < 1 for m in ms):
            raise ValueError("moduli must be positive")
        # mZ lies inside kZ when k | m
        return cls(frozenset(m for m in ms if not any(k != m and m % k == 0 for k in ms)))

    def __contains__(self, z: int) -> bool:
        return any(z % m == 0 for m in self.moduli)

    def union(self, other: "SymbolicIntegerOpens") -> "SymbolicIntegerOpens":
        return SymbolicIntegerOpens.of(self.moduli | other.moduli)

    def intersection(self, other: "SymbolicIntegerOpens") -> "SymbolicIntegerOpens":
        return SymbolicIntegerOpens.of(lcm(a, b) for a in self.moduli for b in other.moduli)

    def __str__(self) -> str:
        if not self.moduli:
            return "{}"
        return " u ".join("Z" if m == 1 else f"{m}Z" for m in sorted(self.moduli))


@dataclass
class ProjectionReport:
    n: int
    certified: bool
    preimages: list[dict] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"n": self.n, "certified": self.certified, "preimages": self.preimages, "failures": self.failures}


def integer_projection_continuity(n: int, f: DivBijection, *, window: int | None = None) -> ProjectionReport:
    """Certify that z -> f^-1(z mod n) pulls every base open of tau_c(G) back to a union of mZ.

    The symbolic preimage of f^-1(C_{n,d}) is (n/d)Z. It is cross-checked
    against the map on the integers in [-window, window].
    """
    if _require_group_bijection(f) != n:
        raise NotAGroupBijection(f"bijection is onto C_{len(f.right)}, not C_{n}")
    T = induce_topology(f)
    fwd = dict(f.pairs)
    back = {b: a for a, b in fwd.items()}
    window = 2 * n if window is None else window
    report = ProjectionReport(n, True)
    for bmask in T.base:
        U = T.members(bmask)
        image = {fwd[x] for x in U}
        d = len(U)
        if n % d or image != set(CyclicModel(n).subgroup(d)):
            report.certified = False
            report.failures.append(f"image of base open of size {d} is not C_{{{n},{d}}}")
            continue
        sym = SymbolicIntegerOpens.of([n // d])
        for z in range(-window, window + 1):
            if (back[z % n] in U) != (z in sym):
                report.certified = False
                report.failures.append(f"z = {z} disagrees with {sym}")
                break
        report.preimages.append({"size": d, "preimage": str(sym), "moduli": sorted(sym.moduli)})
    return report
