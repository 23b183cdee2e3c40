"""Disjoint S_a families and lifting of coset bijections through D.

``build_sa``/``verify_dis`` realize the families S_a = {ba : b in
L^(q(n_1),...,q(n_k))(N_G(<a>))} and their maps into C_G(a)/<a>.
``lift_coset_bijection`` lifts a coset bijection of G/D to G through an
abelian minimal normal subgroup D. Each case builds its map by a fixed
recipe; a case whose recipe does not produce a valid bijection is reported,
not patched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ConstructionFailed, HypothesisViolated, NotQElement, OrderMismatch
from .groups import (
    CyclicCoset,
    Family,
    FiniteGroup,
    Subgroup,
    coset_order,
    generate,
    lcm,
    normal_subgroups,
    normalizer_centralizer,
    prime_factors,
    quotient,
)
from .matching import DivBijection, HallViolation, divisibility_matching, find_coset_bijection, verify_bijection


def strip_prime(n: int, q: int) -> int:
    """n with every factor q removed."""
    while n % q == 0:
        n //= q
    return n


@dataclass(frozen=True)
class SaFamily:
    a: int
    q: int
    reduced_bases: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]  # (b, ba)
    cyclic: frozenset[int]  # <a>
    normalizer: Subgroup
    centralizer: Subgroup

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(sorted(ba for _, ba in self.pairs))

    def coset_of(self, G: FiniteGroup, b: int) -> frozenset[int]:
        return frozenset(G.multiply(b, c) for c in self.cyclic)


def build_sa(G: FiniteGroup, a: int, bases: Sequence[int]) -> SaFamily:
    bases = list(bases)
    if not bases:
        raise ValueError("bases must be nonempty")
    if a == 0:
        raise NotQElement("a must not be the identity")
    L = lcm(*bases)
    if L == 1:
        raise NotQElement("lcm of the bases is 1; no smallest prime")
    q = prime_factors(L)[0]
    o = G.orders[a]
    if prime_factors(o) != [q]:
        raise NotQElement(f"o(a) = {o} is not a power of q = {q}")
    reduced = tuple(strip_prime(b, q) for b in bases)
    nc = normalizer_centralizer(G, a)
    pairs = tuple(
        (b, G.multiply(b, a))
        for b in nc.normalizer.members
        if any(r % G.orders[b] == 0 for r in reduced)
    )
    return SaFamily(a, q, reduced, pairs, generate(G, [a]), nc.normalizer, nc.centralizer)


@dataclass
class DisReport:
    elements: tuple[int, ...]
    disjoint: bool = True
    bijective: bool = True
    divisible: bool = True
    failures: list[dict] = field(default_factory=list)
    sizes: dict[int, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.disjoint and self.bijective and self.divisible


def d_a(G: FiniteGroup, sa: SaFamily, bases: Sequence[int]) -> dict[frozenset[int], int]:
    """Cosets b<a> in C_G(a)/<a> of order dividing some q(n_i'), with their orders.

    n_i' = gcd(n_i, |N_G(<a>)|).
    """
    primed = [strip_prime(math.gcd(b, sa.normalizer.order), sa.q) for b in bases]
    out: dict[frozenset[int], int] = {}
    seen: set[int] = set()
    for c in sa.centralizer.members:
        if c in seen:
            continue
        coset = sa.coset_of(G, c)
        seen |= coset
        o = coset_order(G, sa.cyclic, c)
        if any(p % o == 0 for p in primed):
            out[coset] = o
    return out


def verify_dis(G: FiniteGroup, class_of_a: Sequence[int], bases: Sequence[int]) -> DisReport:
    """Check pairwise disjointness of the S_a and the map ba -> b<a> onto D_a."""
    elems = tuple(class_of_a)
    report = DisReport(elems)
    if len({G.orders[a] for a in elems}) > 1:
        raise HypothesisViolated("listed elements do not share one order")
    if elems:
        a0 = elems[0]
        conj = {G.conjugate(a0, g) for g in range(G.order)}
        if not set(elems) <= conj:
            raise HypothesisViolated("listed elements are not all conjugate")
    families = {a: build_sa(G, a, bases) for a in elems}
    for i, a1 in enumerate(elems):
        report.sizes[a1] = len(families[a1].pairs)
        m1 = set(families[a1].members)
        for a2 in elems[i + 1:]:
            common = m1 & set(families[a2].members)
            if common:
                report.disjoint = False
                report.failures.append({"kind": "overlap", "a1": a1, "a2": a2, "element": min(common)})
    for a, sa in families.items():
        target = d_a(G, sa, bases)
        images = []
        for b, ba in sa.pairs:
            if G.multiply(b, a) != G.multiply(a, b):
                report.bijective = False
                report.failures.append({"kind": "not-central", "a": a, "b": b})
                continue
            coset = sa.coset_of(G, b)
            images.append(coset)
            o_coset = coset_order(G, sa.cyclic, b)
            if (o_coset * G.orders[a]) % G.orders[ba]:
                report.divisible = False
                report.failures.append({"kind": "divisibility", "a": a, "b": b, "o_ba": G.orders[ba],
                                        "o_coset": o_coset, "o_a": G.orders[a]})
        if len(set(images)) != len(images) or set(images) != set(target):
            report.bijective = False
            report.failures.append({"kind": "not-bijective", "a": a, "image": len(set(images)),
                                    "pairs": len(images), "target": len(target)})
    return report


# ------------------------------------------------------------------- lifting


@dataclass(frozen=True)
class QuotientData:
    """G/D, the image of N in it, and the cyclic side C_n/C_{n,|D|} = C_{n/|D|}."""

    quotient: object
    nbar: Subgroup
    xbar: int
    ubar: CyclicCoset


def quotient_coset_data(G: FiniteGroup, N: Subgroup, D: Subgroup, x: int, u: int) -> QuotientData:
    n = G.order
    Q = quotient(G, D)
    Gb = Q.group
    nbar = Subgroup(Gb, tuple(sorted({Q.projection[h] for h in N.members})))
    m = n // D.order
    ubar = CyclicCoset(m, nbar.order, u % m)
    return QuotientData(Q, nbar, Q.projection[x], ubar)


def quotient_coset_bijection(G: FiniteGroup, N: Subgroup, D: Subgroup, x: int, u: int):
    """The bijection x(ND)/D -> u C_{n,|ND|}/C_{n,|D|}, computed by matching in G/D."""
    qd = quotient_coset_data(G, N, D, x, u)
    return find_coset_bijection(qd.nbar.coset(qd.xbar), qd.ubar)


@dataclass(frozen=True)
class Lift:
    bijection: DivBijection
    case: str
    variant: str
    x: int  # the representative actually lifted: an element of least order in xND


def _min_order_rep(orders_of, members):
    return min(members, key=lambda e: (orders_of(e), e))


def lift_coset_bijection(
    G: FiniteGroup,
    N: Subgroup,
    D: Subgroup,
    quotient_bijection: DivBijection,
    x: int,
    u: int,
    *,
    variant: str = "i",
    fallback: bool = False,
) -> Lift:
    """Lift a bijection of G/D cosets to a bijection on xN (variant i) or xND (ii).

    ``quotient_bijection`` pairs elements of G/D (quotient indices) in x(ND)/D
    with residues of C_{n/|D|} in the image of u C_{n,|ND|}. x is first moved
    to an element of least order in xND (``Lift.x``). With
    ``fallback=True`` a failed case is replaced by generic matching and the
    case tag records it; otherwise ConstructionFailed is raised.
    """
    if variant not in ("i", "ii"):
        raise ValueError("variant must be 'i' or 'ii'")
    n = G.order
    normals = normal_subgroups(G)
    if N not in normals:
        raise HypothesisViolated("N is not normal in G")
    if not (D in normals and D.is_minimal_normal):
        raise HypothesisViolated("D is not a minimal normal subgroup of G")
    if not D.is_abelian:
        raise HypothesisViolated("D is not abelian")
    p_list = prime_factors(D.order)
    if len(p_list) != 1:
        raise HypothesisViolated(f"|D| = {D.order} is not a prime power")
    p = p_list[0]
    pm = D.order
    ND = frozenset(G.multiply(h, z) for h in N.members for z in D.members)
    nd = len(ND)
    if coset_order(G, ND, x) != CyclicCoset(n, nd, u).quotient_order:
        raise HypothesisViolated("o(xND) != o(uC_{n,|ND|})")
    qd = quotient_coset_data(G, N, D, x, u)
    Q = qd.quotient
    Gb = Q.group
    expected_left = set(qd.nbar.coset(qd.xbar).members)
    expected_right = set(qd.ubar.members)
    if set(quotient_bijection.left.labels) != expected_left or set(quotient_bijection.right.labels) != expected_right:
        raise HypothesisViolated("quotient bijection is not on x(ND)/D -> u C_{n,|ND|}/C_{n,|D|}")
    if verify_bijection(quotient_bijection):
        raise HypothesisViolated("quotient bijection fails divisibility")
    fbar = quotient_bijection.mapping
    # replace x by an element of least order in xND; variant i then lifts that coset of N
    x = _min_order_rep(lambda e: G.orders[e], [G.multiply(x, h) for h in ND])
    step = n // pm  # C_{n,p^m} = multiples of n/p^m; residue r of C_{n/p^m} <-> coset r + C_{n,p^m}

    def order_n(k: int) -> int:
        return n // math.gcd(n, k % n)

    def cyclic_coset_members(r: int) -> list[int]:
        return [(r + j * step) % n for j in range(pm)]

    D_members = list(D.members)
    Cpm = sorted(cyclic_coset_members(0))
    sigma = {0: 0}
    for z, c in zip([z for z in D_members if z != 0], [c for c in Cpm if c != 0]):
        sigma[z] = c
    for z, c in sigma.items():
        if order_n(c) % G.orders[z]:
            raise ConstructionFailed("sigma: D -> C_{n,p^m} fails divisibility", {"z": z, "c": c})

    d_in_n = set(D.members) <= N.member_set
    state = {"p": p, "pm": pm, "D_le_N": d_in_n, "variant": variant, "x": x}
    pairs: list[tuple[int, int]] = []

    if d_in_n or variant == "ii":
        case = "D<=N" if d_in_n else "D^N=1,(ii)"
        carrier = frozenset(G.multiply(x, h) for h in ND)  # ND = N when D <= N
        # transversal of D in N (or ND) via D-cosets of the carrier
        seen: set[int] = set()
        for y in sorted(carrier):
            if y in seen:
                continue
            block = [G.multiply(y, z) for z in D_members]
            seen.update(block)
            w = _min_order_rep(lambda e: G.orders[e], block)
            r = fbar[Q.projection[w]]
            uu = _min_order_rep(order_n, cyclic_coset_members(r))
            for z in D_members:
                pairs.append((G.multiply(w, z), (uu + sigma[z]) % n))
    else:
        has_meet = any(
            len(generate(G, [G.multiply(x, g)]) & D.member_set) > 1 for g in N.members
        )
        case = "D^N=1,<xg>^D!=1" if has_meet else "D^N=1,<xg>^D=1"
        target = set(CyclicCoset(n, N.order, u).members)
        for h in N.members:
            y = G.multiply(x, h)
            r = fbar[Q.projection[y]]
            options = [k for k in cyclic_coset_members(r) if k in target]
            if len(options) != 1:
                state.update({"case": case, "h": h, "image_coset": r, "choices": options})
                if fallback:
                    return _fallback(G, N, x, u, variant, case)
                raise ConstructionFailed(
                    f"{case}: image coset meets uC_{{n,|N|}} in {len(options)} points", state
                )
            pairs.append((y, options[0]))

    left_members = tuple(sorted(a for a, _ in pairs))
    right_members = tuple(sorted(b for _, b in pairs))
    f = DivBijection(
        Family(left_members, tuple(G.orders[a] for a in left_members)),
        Family(right_members, tuple(order_n(b) for b in right_members)),
        tuple(sorted(pairs)),
    )
    want_right = set(CyclicCoset(n, N.order if variant == "i" else nd, u).members)
    want_left = (
        {G.multiply(x, h) for h in N.members} if variant == "i" else {G.multiply(x, h) for h in ND}
    )
    problems = verify_bijection(f)
    if set(left_members) != want_left:
        problems.append("domain is not the requested coset")
    if set(right_members) != want_right or len(set(right_members)) != len(pairs):
        problems.append("image is not the requested cyclic coset")
    if problems:
        state.update({"case": case, "problems": problems[:5]})
        if fallback:
            return _fallback(G, N, x, u, variant, case)
        raise ConstructionFailed(f"{case}: {problems[0]}", state)
    return Lift(f, case, variant, x)


def _fallback(G, N, x, u, variant, case) -> Lift:
    n = G.order
    if variant == "ii":
        raise ConstructionFailed(f"{case}: no matching fallback for variant ii")
    # o(xN) need not equal o(uC_{n,|N|}) here, so match the families directly
    res = divisibility_matching(N.coset(x).family(), CyclicCoset(n, N.order, u).family())
    if isinstance(res, HallViolation):
        raise ConstructionFailed(f"{case}: fallback matching found a Hall violation", res.as_dict())
    return Lift(res, case + "+fallback", variant, x)
