"""Acceptance criteria, one test each.

Every test prints a ``PASS``/``FAIL`` line with its wall time. Under pytest the
lines are also repeated in the terminal summary. Running this file directly
(``python3 tests/test_acceptance.py``) executes the criteria without pytest.
"""

import contextlib
import itertools
import math
import os
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE_LINES, brute_orders, cyclic_orders  # noqa: E402

from orderbij.catalog import builtin_catalog, resolve_group  # noqa: E402
from orderbij.errors import MonotonicityError  # noqa: E402
from orderbij.groups import CyclicModel, conjugacy_classes, divisors, prime_factors, structural_predicates  # noqa: E402
from orderbij.lab import check_am, check_min  # noqa: E402
from orderbij.lemmas import verify_dis  # noqa: E402
from orderbij.matching import find_group_bijection, verify_bijection  # noqa: E402
from orderbij.solutions import solution_count  # noqa: E402
from orderbij.symmetric import (  # noqa: E402
    WeightFunction,
    cyclic_family,
    newton_determinant_check,
    product_multiplicativity_check,
    psi_elementary,
)
from orderbij.topology import (  # noqa: E402
    cyclic_base,
    homeomorphism_check,
    induce_topology,
    integer_projection_continuity,
    separation_report,
)

IDENT = WeightFunction.identity()
RECIP = WeightFunction.reciprocal()


@contextlib.contextmanager
def criterion(number, label, budget=None):
    start = time.perf_counter()
    status, note = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if budget is not None and elapsed > budget:
            note = f" (over the {budget:.0f} s budget)"
            raise AssertionError(f"criterion {number} took {elapsed:.1f} s, budget {budget} s")
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        line = f"{status} [{number:>2}] {label} ({elapsed:.2f} s){note}"
        ACCEPTANCE_LINES.append(line)
        print(line)


def groups_up_to(n):
    return [e.build() for e in builtin_catalog(n)]


def test_01_bijection_up_to_120():
    with criterion(1, "order-divisibility bijection for every catalog group of order <= 120", 60):
        groups = groups_up_to(120)
        names = {G.name for G in groups}
        assert {"S5", "A5", "Q8"} <= names
        assert sum(1 for G in groups if G.order <= 16) == 42
        for G in groups:
            f = find_group_bijection(G)
            assert f.ok, (G.name, f.as_dict())
            assert verify_bijection(f) == []
            # recheck against raw orders, independent of the matcher's own bookkeeping
            own = brute_orders(G)
            cyc = cyclic_orders(G.order)
            pairs = dict(f.pairs)
            assert sorted(pairs.values()) == list(range(G.order))
            assert all(cyc[pairs[x]] % own[x] == 0 for x in range(G.order))


def test_02_min_for_solvable_up_to_64():
    with criterion(2, "every solvable catalog group of order <= 64 is in Min", 300):
        checked = 0
        for G in groups_up_to(64):
            if structural_predicates(G).is_solvable:
                r = check_min(G)
                assert r.ok, (G.name, r.counterexample)
                checked += 1
        assert checked > 50


def test_03_verify_min_s5():
    with criterion(3, "verify-min S5 with 60-element flows", 120):
        G = resolve_group("S5")
        r = check_min(G)
        assert r.ok and r.counterexample is None
        assert any(len(c.normal) == 60 for c in r.certificates)
        assert all(sum(c for _, _, c in cert.flow) == len(cert.normal) for cert in r.certificates)


def test_04_am_classification():
    with criterion(4, "S5 in AM with a transposition over A5; C6, S4, Q8 not in AM; both readings"):
        G = resolve_group("S5")
        am = check_am(G)
        for reading in ("literal", "prime-y"):
            w = am.readings[reading]
            assert w is not None
            d = w.as_dict(G)
            assert d["normal_order"] == 60 and d["y_order"] == 2
            assert sum(1 for p in range(5) if G.labels[w.y][p] != p) == 2  # a transposition
        for name in ("C6", "S4", "Q8"):
            am = check_am(resolve_group(name))
            assert not am.is_semisimple
            assert not am.member("literal") and not am.member("prime-y")


def test_05_psi_inequalities():
    with criterion(5, "psi_k(G) vs psi_k(C_n) for non-cyclic groups <= 60, k <= 3, both weights"):
        assert psi_elementary(resolve_group("S3"), IDENT, 1) == [13]
        assert psi_elementary(cyclic_family(6), IDENT, 1) == [21]
        for G in groups_up_to(60):
            if G.is_cyclic:
                continue
            k = min(3, G.order)
            for f, better in ((IDENT, lambda a, b: a < b), (RECIP, lambda a, b: a > b)):
                mine = psi_elementary(G, f, k)
                theirs = psi_elementary(cyclic_family(G.order), f, k)
                for a, b in zip(mine, theirs):
                    assert isinstance(a, Fraction) and better(a, b), (G.name, f.name, a, b)


def _brute_e(orders, k):
    return sum(math.prod(S) for S in itertools.combinations(orders, k))


def test_06_newton_identity():
    with criterion(6, "Newton determinant equals p_k for k <= 6, groups <= 60; brute e_k for |G| <= 12"):
        for G in groups_up_to(60):
            for r in newton_determinant_check(G, IDENT, 6):
                assert r.ok, (G.name, r.k, r.determinant, r.power_sum)
                assert r.power_sum == sum(o**r.k for o in G.orders)
            if G.order <= 12:
                e = psi_elementary(G, IDENT, 3)
                for k in range(1, 4):
                    assert e[k - 1] == _brute_e(brute_orders(G), k), (G.name, k)


def test_07_multiplicativity():
    with criterion(7, "psi^1(AxB) <= psi^1(A) psi^1(B), equality iff coprime orders"):
        names = ("C2", "C3", "C4", "S3", "Q8")
        for a, b in itertools.combinations_with_replacement(names, 2):
            A, B = resolve_group(a), resolve_group(b)
            rec = product_multiplicativity_check(A, B, IDENT, 1)
            assert rec.ok, (a, b, rec)
            # recompute by hand over the product's element orders
            prod_val = sum(math.lcm(x, y) for x in A.orders for y in B.orders)
            fac = sum(A.orders) * sum(B.orders)
            assert rec.product_values == (prod_val,) and rec.factor_values == (fac,)
            assert prod_val <= fac and (prod_val == fac) == (math.gcd(A.order, B.order) == 1)
        with pytest.raises(MonotonicityError):
            product_multiplicativity_check(resolve_group("C2"), resolve_group("C3"), RECIP, 1)


def test_08_dis_lemma():
    with criterion(8, "S_a families disjoint with o(ba) | o(b<a>) o(a), groups <= 24, every base"):
        runs = 0
        for G in groups_up_to(24):
            if G.order == 1:
                continue
            classes = conjugacy_classes(G)
            for base in divisors(G.order)[1:]:
                q = prime_factors(base)[0]
                for cls in classes:
                    o = G.orders[cls[0]]
                    if o > 1 and prime_factors(o) == [q]:
                        rep = verify_dis(G, cls, [base])
                        assert rep.ok, (G.name, base, cls, rep.failures[:3])
                        runs += 1
        assert runs > 500


def test_09_solution_set_oracles():
    with criterion(9, "|L^(m)(C_n)| = gcd(m, n) for m | n <= 200; m divides |L^(m)(G)| for groups <= 60"):
        for n in range(1, 201):
            C = CyclicModel(n)
            for m in divisors(n):
                brute = sum(1 for k in range(n) if (m * k) % n == 0)
                assert solution_count(C, m) == brute == math.gcd(m, n)
        for G in groups_up_to(60):
            own = brute_orders(G)
            for m in divisors(G.order):
                c = solution_count(G, m)
                assert c == sum(1 for o in own if m % o == 0) and c % m == 0, (G.name, m)


def test_10_topology():
    with criterion(10, "induced topology: axioms, not Hausdorff, not regular, homeomorphic, projection certified"):
        for G in groups_up_to(24):
            f = find_group_bijection(G)
            assert f.ok
            T = induce_topology(f)
            assert T.axiom_failures() == []
            sep = separation_report(T)
            if G.order > 1:
                assert not sep.hausdorff and not sep.regular, G.name
            assert homeomorphism_check(f, T, cyclic_base(G.order))
            proj = integer_projection_continuity(G.order, f)
            assert proj.certified and len(proj.preimages) == len(divisors(G.order))


def test_11_sweep_determinism(tmp_path):
    with criterion(11, "two sweeps over order <= 24 (bij, min, psi) give byte-identical JSONL"):
        outs = []
        for i in range(2):
            path = tmp_path / f"run{i}.jsonl"
            env = {k: v for k, v in os.environ.items() if k != "SOURCE_DATE_EPOCH"}
            proc = subprocess.run(
                [sys.executable, "-m", "orderbij", "sweep", "--max-order", "24",
                 "--property", "bij,min,psi", "--report", str(path)],
                capture_output=True, text=True, env=env)
            assert proc.returncode == 0, proc.stderr
            outs.append(path.read_bytes())
        assert outs[0] == outs[1] and outs[0].count(b"\n") == 3 * len(builtin_catalog(24))


if __name__ == "__main__":
    import tempfile

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                if "tmp_path" in fn.__code__.co_varnames[:fn.__code__.co_argcount]:
                    with tempfile.TemporaryDirectory() as d:
                        fn(Path(d))
                else:
                    fn()
            except AssertionError as exc:
                failed += 1
                print(f"    {exc}"[:300])
    sys.exit(1 if failed else 0)
