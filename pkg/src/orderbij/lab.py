"""Class membership (Bij, Min, AM, semisimple) and batch verification with persisted reports."""

from __future__ import annotations

import json
import math
import os
import time
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable, Sequence

from .errors import CapExceeded, OrderBijError
from .groups import (
    ELEMENT_CAP,
    CyclicModel,
    FiniteGroup,
    Subgroup,
    conjugacy_classes,
    generate,
    normal_subgroups,
    prime_factors,
    structural_predicates,
)
from .matching import (
    DivBijection,
    HallViolation,
    OrderMultiset,
    divisibility_matching,
    find_group_bijection,
    match_multisets,
)

PROPERTIES = ("bij", "min", "am", "psi", "newton", "dis", "topology")
OUTCOMES = ("verified", "refuted", "skipped-cap")
READINGS = ("literal", "prime-y")


# ------------------------------------------------------------------ Bij


def check_bij(G: FiniteGroup, *, seed: int | None = None) -> DivBijection | HallViolation:
    return find_group_bijection(G, seed=seed)


# ------------------------------------------------------------------ Min


@dataclass(frozen=True)
class MinTriple:
    """One (N, yN, u + C_{n,|N|}) instance and the class-level flow that settles it."""

    normal: tuple[int, ...]
    representative: int
    u: int
    flow: tuple[tuple[int, int, int], ...]


@dataclass
class MinResult:
    ok: bool
    certificates: list[MinTriple] = field(default_factory=list)
    counterexample: dict | None = None
    weak_ok: bool = True
    normal_count: int = 0
    distinct_matchings: int = 0

    @property
    def weak_differs(self) -> bool:
        return self.ok != self.weak_ok

    def summary(self) -> dict:
        return {
            "normal_subgroups": self.normal_count,
            "triples": len(self.certificates),
            "distinct_matchings": self.distinct_matchings,
            "weak_reading_differs": self.weak_differs,
        }


def check_min(G: FiniteGroup, *, stop_at_first: bool = False) -> MinResult:
    """All normal N, all cosets yN, all u-cosets of C_{n,|N|} with o(uC) = o(yN).

    Each matching is decided on the pair of order multisets; identical pairs
    are solved once.
    """
    n = G.order
    C = CyclicModel(n)
    memo: dict[tuple[OrderMultiset, OrderMultiset], object] = {}
    right_cache: dict[tuple[int, int], OrderMultiset] = {}
    result = MinResult(True)
    normals = normal_subgroups(G)
    result.normal_count = len(normals)
    for N in normals:
        m = N.order
        index = n // m
        by_order: dict[int, list[int]] = {}
        for u in range(index):
            by_order.setdefault(index // math.gcd(index, u), []).append(u)
        for coset in N.cosets():
            lms = OrderMultiset.of(coset.family())
            some_u = False
            for u in by_order.get(coset.quotient_order, []):
                key_r = (m, u)
                if key_r not in right_cache:
                    right_cache[key_r] = OrderMultiset.of(C.coset(u, m).family())
                rms = right_cache[key_r]
                key = (lms, rms)
                if key not in memo:
                    memo[key] = match_multisets(lms, rms)
                outcome = memo[key]
                if isinstance(outcome, HallViolation):
                    if result.ok:
                        result.ok = False
                        result.counterexample = {
                            "normal": list(N.members),
                            "normal_order": m,
                            "representative": coset.representative,
                            "u": u,
                            "violation": outcome.as_dict(),
                        }
                    if stop_at_first:
                        result.distinct_matchings = len(memo)
                        return result
                    continue
                some_u = True
                result.certificates.append(MinTriple(N.members, coset.representative, u, outcome))
            if not some_u:
                result.weak_ok = False
    result.distinct_matchings = len(memo)
    return result


def replay_min_counterexample(G: FiniteGroup, cx: dict):
    """Rerun the stored failing matching from scratch."""
    N = Subgroup(G, tuple(cx["normal"]))
    coset = N.coset(cx["representative"])
    u_coset = CyclicModel(G.order).coset(cx["u"], len(N))
    return divisibility_matching(coset.family(), u_coset.family())


# ------------------------------------------------------------------- AM


@dataclass(frozen=True)
class AmWitness:
    y: int
    normal: tuple[int, ...]
    case: str  # "simple" or "power"

    def as_dict(self, G: FiniteGroup) -> dict:
        return {"y": _label(G, self.y), "y_order": G.orders[self.y], "normal_order": len(self.normal),
                "case": self.case}


@dataclass
class AmResult:
    is_semisimple: bool
    readings: dict[str, AmWitness | None]

    def member(self, reading: str) -> bool:
        return self.readings[reading] is not None


def _label(G: FiniteGroup, x: int) -> str:
    """Cycle notation (1-based) for permutations, ``str`` otherwise."""
    lab = G.labels[x]
    if not (isinstance(lab, tuple) and sorted(lab) == list(range(len(lab)))):
        return str(lab)
    seen, cycles = set(), []
    for i in range(len(lab)):
        if i in seen or lab[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = lab[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def _is_nonabelian_simple(G: FiniteGroup, members: Sequence[int]) -> bool:
    H, _ = Subgroup(G, tuple(members)).as_group()
    return not H.is_abelian and structural_predicates(H).is_simple


@dataclass(frozen=True)
class _PowerShape:
    """Minimal normal subgroups of N (as parent index sets) when N = L^k, L non-abelian simple."""

    factors: tuple[frozenset[int], ...]


def _power_shape(G: FiniteGroup, N: Subgroup) -> _PowerShape | None:
    H, emb = N.as_group()
    factors = [F for F in normal_subgroups(H) if F.is_minimal_normal]
    if len(factors) < 2:
        return None
    size = factors[0].order
    if any(F.order != size for F in factors) or size ** len(factors) != N.order:
        return None
    if not all(_is_nonabelian_simple(H, F.members) for F in factors):
        return None
    return _PowerShape(tuple(frozenset(emb[i] for i in F.members) for F in factors))


def _permutes_transitively(G: FiniteGroup, shape: _PowerShape, y: int) -> bool:
    """y has prime order equal to the number of factors and cycles through all of them."""
    p = G.orders[y]
    if p != len(shape.factors) or prime_factors(p) != [p]:
        return False
    orbit, current = {shape.factors[0]}, shape.factors[0]
    for _ in range(p):
        current = frozenset(G.conjugate(x, y) for x in current)
        orbit.add(current)
    return orbit == set(shape.factors)


def check_am(G: FiniteGroup) -> AmResult:
    """Membership in AM under both readings of the definition.

    ``literal``: G = <y>N with N minimal normal, and either N is non-abelian
    simple (any y) or N is a power L^{o(y)} with o(y) prime. ``prime-y``
    requires o(y) prime in both cases.
    """
    preds = structural_predicates(G)
    readings: dict[str, AmWitness | None] = {r: None for r in READINGS}
    if not preds.is_semisimple or G.order == 1:
        return AmResult(preds.is_semisimple, readings)
    minimal = [N for N in normal_subgroups(G) if N.is_minimal_normal]
    reps = [c[0] for c in conjugacy_classes(G)]

    def is_prime(k: int) -> bool:
        return k > 1 and prime_factors(k) == [k]

    # prime-order y first, then by order and index, so witnesses are canonical
    reps.sort(key=lambda y: (not is_prime(G.orders[y]), G.orders[y], y))
    for N in minimal:
        simple = _is_nonabelian_simple(G, N.members)
        shape = None if simple else _power_shape(G, N)
        if not simple and shape is None:
            continue
        for y in reps:
            cyc = generate(G, [y])
            inter = len(cyc & N.member_set)
            if len(cyc) * N.order // inter != G.order:
                continue
            power = shape is not None and _permutes_transitively(G, shape, y)
            case = "simple" if simple else ("power" if power else None)
            if case is None:
                continue
            w = AmWitness(y, N.members, case)
            if readings["literal"] is None:
                readings["literal"] = w
            if is_prime(G.orders[y]) and readings["prime-y"] is None:
                readings["prime-y"] = w
        if all(readings.values()):
            break
    return AmResult(True, readings)


# -------------------------------------------------------- ClassMembership


@dataclass
class ClassMembership:
    group: str
    order: int
    in_bij: bool
    bij_certificate: DivBijection | HallViolation
    in_min: bool
    min_result: MinResult
    am: AmResult
    is_semisimple: bool

    @property
    def in_am(self) -> dict[str, bool]:
        return {r: self.am.member(r) for r in READINGS}

    def as_dict(self, G: FiniteGroup) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "in_bij": self.in_bij,
            "in_min": self.in_min,
            "min": self.min_result.summary(),
            "min_counterexample": self.min_result.counterexample,
            "in_am": {r: (w.as_dict(G) if w else None) for r, w in self.am.readings.items()},
            "is_semisimple": self.is_semisimple,
        }


def classify(G: FiniteGroup, *, seed: int | None = None) -> ClassMembership:
    bij = check_bij(G, seed=seed)
    mn = check_min(G)
    am = check_am(G)
    return ClassMembership(G.name, G.order, bij.ok, bij, mn.ok, mn, am, am.is_semisimple)


# -------------------------------------------------------------- reports


def _clock_ts(wall: bool) -> str:
    if wall:
        return datetime.now(timezone.utc).replace(microsecond=0).isoformat().replace("+00:00", "Z")
    epoch = int(os.environ.get("SOURCE_DATE_EPOCH", "0"))
    return datetime.fromtimestamp(epoch, timezone.utc).isoformat().replace("+00:00", "Z")


@dataclass
class VerificationReport:
    ts: str
    group: str
    order: int
    property: str
    outcome: str
    witness: dict | None
    ms: int

    def __post_init__(self):
        if self.outcome not in OUTCOMES:
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.outcome == "refuted" and not self.witness:
            raise ValueError("a refuted report needs a witness")

    def to_json(self) -> str:
        data = OrderedDict(
            [("ts", self.ts), ("group", self.group), ("order", self.order), ("property", self.property),
             ("outcome", self.outcome), ("witness", self.witness), ("ms", self.ms)]
        )
        return json.dumps(data, ensure_ascii=False, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        return cls(d["ts"], d["group"], d["order"], d["property"], d["outcome"], d["witness"], d["ms"])


def _fr(x) -> str:
    from .symmetric import fraction_str

    return fraction_str(x)


def _property_bij(G, seed):
    f = check_bij(G, seed=seed)
    if f.ok:
        return "verified", {"flow": [list(t) for t in f.flow]}
    return "refuted", f.as_dict()


def _property_min(G, seed):
    r = check_min(G)
    if r.ok:
        return "verified", r.summary()
    return "refuted", dict(r.summary(), counterexample=r.counterexample)


def _property_am(G, seed):
    """AM membership under both readings alongside Min for the same group."""
    am = check_am(G)
    members = {r: am.member(r) for r in READINGS}
    witness = {"semisimple": am.is_semisimple,
               "in_am": {r: (w.as_dict(G) if w else None) for r, w in am.readings.items()}}
    if not any(members.values()):
        return "verified", witness
    mn = check_min(G)
    witness["in_min"] = mn.ok
    if mn.ok:
        return "verified", witness
    witness["counterexample"] = mn.counterexample
    return "refuted", witness


def _property_psi(G, seed, K: int = 6):
    from .symmetric import WeightFunction, cyclic_family, psi_elementary

    kk = min(K, G.order)
    witness: dict = {"k": kk, "cyclic": G.is_cyclic}
    outcome = "verified"
    for wname, f, sign in (("identity", WeightFunction.identity(), -1), ("reciprocal", WeightFunction.reciprocal(), 1)):
        mine = psi_elementary(G, f, kk)
        theirs = psi_elementary(cyclic_family(G.order), f, kk)
        witness[wname] = [_fr(v) for v in mine]
        witness[wname + "_cyclic"] = [_fr(v) for v in theirs]
        if G.is_cyclic:
            continue
        bad = [k + 1 for k in range(kk) if not ((mine[k] < theirs[k]) if sign < 0 else (mine[k] > theirs[k]))]
        if bad:
            outcome = "refuted"
            witness.setdefault("violations", {})[wname] = bad
    return outcome, witness


def _property_newton(G, seed, K: int = 6):
    from .symmetric import WeightFunction, newton_determinant_check

    res = newton_determinant_check(G, WeightFunction.identity(), K)
    witness = {"p": [_fr(r.power_sum) for r in res], "det": [_fr(r.determinant) for r in res]}
    return ("verified" if all(r.ok for r in res) else "refuted"), witness


def _property_dis(G, seed):
    from .lemmas import verify_dis

    if G.order == 1:
        return "verified", {"q": None, "classes": 0}
    q = prime_factors(G.order)[0]
    bases = [G.order]
    checked, failures = 0, []
    for cls in conjugacy_classes(G):
        o = G.orders[cls[0]]
        if o > 1 and prime_factors(o) == [q]:
            rep = verify_dis(G, cls, bases)
            checked += 1
            if not rep.ok:
                failures.append({"class": list(cls), "failures": rep.failures[:5]})
    witness = {"q": q, "bases": bases, "classes": checked}
    if failures:
        witness["failures"] = failures
        return "refuted", witness
    return "verified", witness


def _property_topology(G, seed):
    from .topology import cyclic_base, homeomorphism_check, induce_topology, integer_projection_continuity, separation_report

    f = check_bij(G, seed=seed)
    if not f.ok:
        return "refuted", {"no_bijection": f.as_dict()}
    T = induce_topology(f)
    axioms = T.axiom_failures() if T.materialized else []
    sep = separation_report(T)
    homeo = homeomorphism_check(f, T, cyclic_base(G.order))
    proj = integer_projection_continuity(G.order, f)
    expect_fail = G.order > 1
    ok = (not axioms and homeo and proj.certified
          and (not expect_fail or (not sep.hausdorff and not sep.regular)))
    witness = {"base_sets": len(T.base), "opens": len(T.opens) if T.materialized else None,
               "axiom_failures": axioms, "hausdorff": sep.hausdorff, "regular": sep.regular,
               "homeomorphism": homeo, "projection": [p["preimage"] for p in proj.preimages]}
    return ("verified" if ok else "refuted"), witness


_RUNNERS = {
    "bij": _property_bij,
    "min": _property_min,
    "am": _property_am,
    "psi": _property_psi,
    "newton": _property_newton,
    "dis": _property_dis,
    "topology": _property_topology,
}


def run_property(G: FiniteGroup, prop: str, *, seed: int | None = None, wall_clock: bool = False) -> VerificationReport:
    if prop not in _RUNNERS:
        raise ValueError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")
    start = time.perf_counter()
    outcome, witness = _RUNNERS[prop](G, seed)
    ms = int((time.perf_counter() - start) * 1000) if wall_clock else 0
    return VerificationReport(_clock_ts(wall_clock), G.name, G.order, prop, outcome, witness, ms)


def _skipped(name: str, order: int | None, prop: str, reason: str, wall_clock: bool) -> VerificationReport:
    return VerificationReport(_clock_ts(wall_clock), name, order or 0, prop, "skipped-cap", {"reason": reason}, 0)


def _run_item(item, properties: Sequence[str], cap: int, seed: int | None, wall_clock: bool) -> list[VerificationReport]:
    if isinstance(item, FiniteGroup):
        G = item
    else:
        if item.order is not None and item.order > cap:
            return [_skipped(item.name, item.order, p, f"order {item.order} exceeds cap {cap}", wall_clock)
                    for p in properties]
        try:
            G = item.build(cap)
        except CapExceeded as exc:
            return [_skipped(item.name, item.order, p, str(exc), wall_clock) for p in properties]
    if G.order > cap:
        return [_skipped(G.name, G.order, p, f"order {G.order} exceeds cap {cap}", wall_clock) for p in properties]
    return [run_property(G, p, seed=seed, wall_clock=wall_clock) for p in properties]


@dataclass
class BatchSummary:
    reports: list[VerificationReport]
    wall_time: float

    def count(self, outcome: str) -> int:
        return sum(1 for r in self.reports if r.outcome == outcome)

    @property
    def verified(self) -> int:
        return self.count("verified")

    @property
    def refuted(self) -> int:
        return self.count("refuted")

    @property
    def skipped(self) -> int:
        return self.count("skipped-cap")


def _sort_key(item):
    if isinstance(item, FiniteGroup):
        return (item.order, item.name)
    return (item.order if item.order is not None else 0, item.name)


def batch_verify(catalog: Iterable, properties: Sequence[str], *, store=None, jobs: int = 1,
                 cap: int = ELEMENT_CAP, seed: int | None = None, wall_clock: bool = False) -> BatchSummary:
    """Run each property on each catalog item in (order, name) order.

    Items are CatalogEntry objects or built groups; with ``jobs`` > 1 the
    entries are processed in worker processes and the reports are gathered
    back into the same deterministic order before being appended.
    """
    for p in properties:
        if p not in _RUNNERS:
            raise ValueError(f"unknown property {p!r}; choose from {', '.join(PROPERTIES)}")
    items = sorted(catalog, key=_sort_key)
    start = time.perf_counter()
    if jobs > 1 and items and not any(isinstance(i, FiniteGroup) for i in items):
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_item, i, tuple(properties), cap, seed, wall_clock) for i in items]
            chunks = [f.result() for f in futures]
    else:
        chunks = [_run_item(i, properties, cap, seed, wall_clock) for i in items]
    reports = [r for chunk in chunks for r in chunk]
    if store is not None and reports:
        store.append(reports)
    return BatchSummary(reports, time.perf_counter() - start)
