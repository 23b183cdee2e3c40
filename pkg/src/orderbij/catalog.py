"""Group constructors, the built-in catalog and group-name resolution."""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable

from .errors import CapExceeded, OrderBijError, UnknownGroup
from .groups import ELEMENT_CAP, FiniteGroup, close_generators, close_labels, direct_product, from_cayley_table

# ---------------------------------------------------------------- families


def cyclic(n: int, name: str | None = None) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    return FiniteGroup(range(n), lambda a, b: (a + b) % n, name=name or f"C{n}",
                       source="constructor", generators=[1] if n > 1 else [])


def metacyclic(m: int, k: int, r: int, s: int, name: str) -> FiniteGroup:
    """<a, b | a^m = 1, b^k = a^s, b a b^-1 = a^r> on normal forms a^i b^j."""
    r %= m
    s %= m
    if pow(r, k, m) != 1 % m or (r * s - s) % m:
        raise ValueError(f"inconsistent metacyclic data m={m} k={k} r={r} s={s}")
    rpow = [pow(r, j, m) for j in range(k)]

    def op(x, y):
        i1, j1 = x
        i2, j2 = y
        i = (i1 + rpow[j1] * i2) % m
        j = j1 + j2
        if j >= k:
            j -= k
            i = (i + s) % m
        return (i, j)

    labels = close_labels((0, 0), [(1 % m, 0), (0, 1 % k)], op)
    if len(labels) != m * k:
        raise ValueError(f"presentation collapsed to order {len(labels)}")
    return FiniteGroup(labels, op, name=name, source="constructor")


def dihedral(order: int) -> FiniteGroup:
    if order % 2 or order < 2:
        raise ValueError("dihedral groups have even order")
    n = order // 2
    return metacyclic(n, 2, -1, 0, f"D{order}")


def quaternion(order: int) -> FiniteGroup:
    if order < 8 or order & (order - 1):
        raise ValueError("generalized quaternion groups have order 2^k >= 8")
    m = order // 2
    return metacyclic(m, 2, -1, m // 2, f"Q{order}")


def dicyclic(order: int) -> FiniteGroup:
    if order % 4 or order < 8:
        raise ValueError("dicyclic groups have order 4m, m >= 2")
    m = order // 2
    return metacyclic(m, 2, -1, m // 2, f"Dic{order}")


def semidirect(p: int, q: int) -> FiniteGroup:
    """C_p : C_q with a faithful action; needs q | p - 1."""
    if (p - 1) % q:
        raise ValueError(f"{q} does not divide {p} - 1")
    r = next(r for r in range(2, p) if pow(r, q, p) == 1 and all(pow(r, e, p) != 1 for e in range(1, q)))
    return metacyclic(p, q, r, 0, f"C{p}:C{q}")


def semidirect_by_automorphism(base: FiniteGroup, aut: list[int], k: int, name: str) -> FiniteGroup:
    """base : C_k where the generator of C_k acts by the index map ``aut``."""
    powers = [list(range(base.order))]
    for _ in range(1, k):
        powers.append([aut[v] for v in powers[-1]])
    if [aut[v] for v in powers[-1]] != list(range(base.order)):
        raise ValueError("automorphism order does not divide k")

    def op(x, y):
        n1, j1 = x
        n2, j2 = y
        return (base.multiply(n1, powers[j1][n2]), (j1 + j2) % k)

    labels = [(a, j) for j in range(k) for a in range(base.order)]
    return FiniteGroup(labels, op, name=name, source="constructor")


def generalized_dihedral(base: FiniteGroup) -> FiniteGroup:
    """base : C2 with the involution acting by inversion (base must be abelian)."""
    if not base.is_abelian:
        raise ValueError("generalized dihedral groups need an abelian base")
    return semidirect_by_automorphism(base, list(base.inverses), 2, f"Dih({base.name})")


def symmetric(k: int) -> FiniteGroup:
    if k <= 1:
        return close_generators(1, [], name=f"S{k}")
    gens = [[*range(2, k + 1), 1], [2, 1, *range(3, k + 1)]]
    return close_generators(k, gens, name=f"S{k}")


def alternating(k: int) -> FiniteGroup:
    if k <= 2:
        return close_generators(max(k, 1), [], name=f"A{k}")
    three = [2, 3, 1, *range(4, k + 1)]
    if k == 3:
        return close_generators(3, [three], name="A3")
    if k % 2:
        long = [*range(2, k + 1), 1]
    else:
        long = [1, *range(3, k + 1), 2]
    return close_generators(k, [three, long], name=f"A{k}")


def matrix_group(p: int, gens: list[tuple[tuple[int, ...], ...]], name: str) -> FiniteGroup:
    """Group generated by square matrices over GF(p)."""
    dim = len(gens[0])
    ident = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))

    def op(A, B):
        return tuple(
            tuple(sum(A[i][t] * B[t][j] for t in range(dim)) % p for j in range(dim)) for i in range(dim)
        )

    gens = [tuple(tuple(v % p for v in row) for row in g) for g in gens]
    labels = close_labels(ident, gens, op)
    return FiniteGroup(labels, op, name=name, source="constructor")


def sl2(p: int) -> FiniteGroup:
    return matrix_group(p, [((1, 1), (0, 1)), ((0, -1), (1, 0))], f"SL2{p}")


def gl2(p: int) -> FiniteGroup:
    g = next(a for a in range(2, p + 1) if all(pow(a, e, p) != 1 for e in range(1, p - 1))) if p > 2 else 1
    return matrix_group(p, [((1, 1), (0, 1)), ((0, -1), (1, 0)), ((g % p, 0), (0, 1))], f"GL2{p}")


def gl32() -> FiniteGroup:
    return matrix_group(2, [((1, 1, 0), (0, 1, 0), (0, 0, 1)), ((0, 0, 1), (1, 0, 0), (0, 1, 0))], "GL32")


def a5_wreath_c2() -> FiniteGroup:
    """(A5 x A5):C2 on ten points, the swap exchanging the two factors."""
    return close_generators(10, [
        [2, 3, 1, 4, 5, 6, 7, 8, 9, 10],
        [2, 3, 4, 5, 1, 6, 7, 8, 9, 10],
        [6, 7, 8, 9, 10, 1, 2, 3, 4, 5],
    ], name="A5wrC2")


def mathieu10() -> FiniteGroup:
    """M10, the non-split extension A6.C2; elements outside A6 have order 4 or 8."""
    return close_generators(10, [
        [9, 10, 8, 2, 1, 7, 5, 4, 6, 3],  # (1 9 6 7 5)(2 10 3 8 4)
        [10, 9, 3, 6, 5, 2, 8, 1, 4, 7],  # (1 10 7 8)(2 9 4 6)
    ], name="M10")


def heisenberg(p: int) -> FiniteGroup:
    return matrix_group(p, [((1, 1, 0), (0, 1, 0), (0, 0, 1)), ((1, 0, 0), (0, 1, 1), (0, 0, 1))], f"Heis{p}")


def pauli() -> FiniteGroup:
    """Central product C4 o D8, realized by the Pauli matrices (entries in Z[i])."""
    X = ((0, 1), (1, 0))
    Z = ((1, 0), (0, -1))
    Y = ((0, -1j), (1j, 0))

    def op(A, B):
        return tuple(tuple(complex(sum(A[i][t] * B[t][j] for t in range(2))) for j in range(2)) for i in range(2))

    norm = lambda M: tuple(tuple(complex(v) for v in row) for row in M)
    ident = norm(((1, 0), (0, 1)))
    labels = close_labels(ident, [norm(X), norm(Y), norm(Z)], op)
    return FiniteGroup(labels, op, name="C4oD8", source="constructor")


def elementary_abelian(p: int, rank: int) -> FiniteGroup:
    G = cyclic(p)
    for _ in range(rank - 1):
        G = direct_product(G, cyclic(p))
    G.name = "x".join([f"C{p}"] * rank)
    return G


def c2cubed_c7() -> FiniteGroup:
    """C2^3 : C7, translations of GF(8) extended by a Singer cycle."""
    vectors = [tuple((i >> b) & 1 for b in range(3)) for i in range(8)]
    base = FiniteGroup(vectors, lambda v, w: tuple((a + b) % 2 for a, b in zip(v, w)),
                       name="C2^3", source="constructor")

    # companion matrix of x^3 + x + 1 acting on coordinates
    def act(v):
        a, b, c = v
        return (c, (a + c) % 2, b)

    aut = [base.index_of(act(v)) for v in base.labels]
    return semidirect_by_automorphism(base, aut, 7, "C2^3:C7")


def group_16_3() -> FiniteGroup:
    """(C4 x C2) : C2 with the involution acting by a -> ab, b -> b."""
    base = direct_product(cyclic(4), cyclic(2))
    idx = {lab: i for i, lab in enumerate(base.labels)}
    aut = [idx[(i, (j + i) % 2)] for (i, j) in base.labels]
    return semidirect_by_automorphism(base, aut, 2, "(C4xC2):C2")


def named_product(*parts: FiniteGroup) -> FiniteGroup:
    G = parts[0]
    for H in parts[1:]:
        G = direct_product(G, H)
    G.name = "x".join(P.name for P in parts)
    return G


# ---------------------------------------------------------------- catalog


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    constructor: str
    args: tuple = ()
    order: int | None = None

    def build(self, cap: int = ELEMENT_CAP) -> FiniteGroup:
        if self.order is not None and self.order > cap:
            raise CapExceeded(f"{self.name} has order {self.order}, cap {cap}")
        G = _build(self.constructor, self.args, cap)
        if self.order is not None and G.order != self.order:
            raise OrderBijError(f"{self.name}: built order {G.order}, expected {self.order}")
        G.name = self.name
        return G

    def as_dict(self) -> dict:
        return {"name": self.name, "constructor": self.constructor, "args": list(self.args), "order": self.order}


def _build(tag: str, args: tuple, cap: int) -> FiniteGroup:
    if tag == "cyclic":
        return cyclic(*args)
    if tag == "dihedral":
        return dihedral(*args)
    if tag == "quaternion":
        return quaternion(*args)
    if tag == "dicyclic":
        return dicyclic(*args)
    if tag == "symmetric":
        if args[0] > 6:
            raise ValueError("symmetric groups are limited to degree 6")
        return symmetric(*args)
    if tag == "alternating":
        if args[0] > 6:
            raise ValueError("alternating groups are limited to degree 6")
        return alternating(*args)
    if tag == "klein":
        return named_product(cyclic(2), cyclic(2))
    if tag == "sl23":
        return sl2(3)
    if tag == "sl25":
        return sl2(5)
    if tag == "gl23":
        return gl2(3)
    if tag == "gl32":
        return gl32()
    if tag == "a5wrc2":
        return a5_wreath_c2()
    if tag == "m10":
        return mathieu10()
    if tag == "heisenberg":
        return heisenberg(*args)
    if tag == "metacyclic":
        return metacyclic(*args)
    if tag == "semidirect":
        return semidirect(*args)
    if tag == "pauli":
        return pauli()
    if tag == "g16_3":
        return group_16_3()
    if tag == "c2cubed_c7":
        return c2cubed_c7()
    if tag == "direct-product":
        parts = [_constructed(a, cap) if isinstance(a, str) else CatalogEntry(**a).build(cap) for a in args]
        total = math.prod(P.order for P in parts)
        if total > cap:
            raise CapExceeded(f"product of order {total} exceeds cap {cap}")
        return named_product(*parts)
    if tag == "generalized-dihedral":
        return generalized_dihedral(_constructed(args[0], cap))
    if tag == "small":
        return load_small_group(args[0])
    if tag == "file":
        from .io import load_group_file

        return load_group_file(args[0], cap=cap)
    raise UnknownGroup(f"unknown constructor tag {tag!r}")


def _constructed(name: str, cap: int) -> FiniteGroup:
    """Build a named part from its constructor rather than from a data file."""
    for e in SMALL_GROUPS + EXTRA_GROUPS:
        if e.name == name:
            return e.build(cap)
    return resolve_group(name, cap=cap)


def E(name, tag, *args, order=None) -> CatalogEntry:
    return CatalogEntry(name, tag, tuple(args), order)


# every isomorphism type of order <= 16, in the order the data files list them
SMALL_GROUPS: list[CatalogEntry] = [
    E("C1", "cyclic", 1, order=1),
    E("C2", "cyclic", 2, order=2),
    E("C3", "cyclic", 3, order=3),
    E("C4", "cyclic", 4, order=4),
    E("C2xC2", "klein", order=4),
    E("C5", "cyclic", 5, order=5),
    E("C6", "cyclic", 6, order=6),
    E("S3", "symmetric", 3, order=6),
    E("C7", "cyclic", 7, order=7),
    E("C8", "cyclic", 8, order=8),
    E("C4xC2", "direct-product", "C4", "C2", order=8),
    E("C2xC2xC2", "direct-product", "C2", "C2", "C2", order=8),
    E("D8", "dihedral", 8, order=8),
    E("Q8", "quaternion", 8, order=8),
    E("C9", "cyclic", 9, order=9),
    E("C3xC3", "direct-product", "C3", "C3", order=9),
    E("C10", "cyclic", 10, order=10),
    E("D10", "dihedral", 10, order=10),
    E("C11", "cyclic", 11, order=11),
    E("C12", "cyclic", 12, order=12),
    E("C6xC2", "direct-product", "C6", "C2", order=12),
    E("D12", "dihedral", 12, order=12),
    E("A4", "alternating", 4, order=12),
    E("Dic12", "dicyclic", 12, order=12),
    E("C13", "cyclic", 13, order=13),
    E("C14", "cyclic", 14, order=14),
    E("D14", "dihedral", 14, order=14),
    E("C15", "cyclic", 15, order=15),
    E("C16", "cyclic", 16, order=16),
    E("C8xC2", "direct-product", "C8", "C2", order=16),
    E("C4xC4", "direct-product", "C4", "C4", order=16),
    E("C4xC2xC2", "direct-product", "C4", "C2", "C2", order=16),
    E("C2xC2xC2xC2", "direct-product", "C2", "C2", "C2", "C2", order=16),
    E("D16", "dihedral", 16, order=16),
    E("SD16", "metacyclic", 8, 2, 3, 0, "SD16", order=16),
    E("Q16", "quaternion", 16, order=16),
    E("M16", "metacyclic", 8, 2, 5, 0, "M16", order=16),
    E("C4:C4", "metacyclic", 4, 4, -1, 0, "C4:C4", order=16),
    E("(C4xC2):C2", "g16_3", order=16),
    E("C2xD8", "direct-product", "C2", "D8", order=16),
    E("C2xQ8", "direct-product", "C2", "Q8", order=16),
    E("C4oD8", "pauli", order=16),
]

EXTRA_GROUPS: list[CatalogEntry] = [
    E("C18", "cyclic", 18, order=18),
    E("C6xC3", "direct-product", "C6", "C3", order=18),
    E("D18", "dihedral", 18, order=18),
    E("S3xC3", "direct-product", "S3", "C3", order=18),
    E("(C3xC3):C2", "generalized-dihedral", "C3xC3", order=18),
    E("C20", "cyclic", 20, order=20),
    E("D20", "dihedral", 20, order=20),
    E("Dic20", "dicyclic", 20, order=20),
    E("C5:C4", "semidirect", 5, 4, order=20),
    E("C7:C3", "semidirect", 7, 3, order=21),
    E("C24", "cyclic", 24, order=24),
    E("S4", "symmetric", 4, order=24),
    E("SL23", "sl23", order=24),
    E("A4xC2", "direct-product", "A4", "C2", order=24),
    E("D24", "dihedral", 24, order=24),
    E("Dic24", "dicyclic", 24, order=24),
    E("Q8xC3", "direct-product", "Q8", "C3", order=24),
    E("C3:C8", "metacyclic", 3, 8, -1, 0, "C3:C8", order=24),
    E("S3xC4", "direct-product", "S3", "C4", order=24),
    E("S3xC2xC2", "direct-product", "S3", "C2", "C2", order=24),
    E("Heis3", "heisenberg", 3, order=27),
    E("C3xC3xC3", "direct-product", "C3", "C3", "C3", order=27),
    E("D30", "dihedral", 30, order=30),
    E("D32", "dihedral", 32, order=32),
    E("Q32", "quaternion", 32, order=32),
    E("C2xC2xC2xC2xC2", "direct-product", "C2", "C2", "C2", "C2", "C2", order=32),
    E("S3xS3", "direct-product", "S3", "S3", order=36),
    E("A4xC3", "direct-product", "A4", "C3", order=36),
    E("C6xC6", "direct-product", "C6", "C6", order=36),
    E("C13:C3", "semidirect", 13, 3, order=39),
    E("C7:C6", "semidirect", 7, 6, order=42),
    E("GL23", "gl23", order=48),
    E("S4xC2", "direct-product", "S4", "C2", order=48),
    E("SL23xC2", "direct-product", "SL23", "C2", order=48),
    E("C11:C5", "semidirect", 11, 5, order=55),
    E("C2^3:C7", "c2cubed_c7", order=56),
    E("C19:C3", "semidirect", 19, 3, order=57),
    E("A5", "alternating", 5, order=60),
    E("A4xC5", "direct-product", "A4", "C5", order=60),
    E("D60", "dihedral", 60, order=60),
    E("C60", "cyclic", 60, order=60),
    E("D64", "dihedral", 64, order=64),
    E("Q8xQ8", "direct-product", "Q8", "Q8", order=64),
    E("C2xC2xC2xC2xC2xC2", "direct-product", "C2", "C2", "C2", "C2", "C2", "C2", order=64),
    E("C4xC4xC4", "direct-product", "C4", "C4", "C4", order=64),
    E("S4xC3", "direct-product", "S4", "C3", order=72),
    E("C11:C10", "semidirect", 11, 10, order=110),
    E("S5", "symmetric", 5, order=120),
    E("A5xC2", "direct-product", "A5", "C2", order=120),
    E("SL25", "sl25", order=120),
    E("S4xC5", "direct-product", "S4", "C5", order=120),
    E("GL32", "gl32", order=168),
    E("A5xC3", "direct-product", "A5", "C3", order=180),
    E("A6", "alternating", 6, order=360),
    E("S6", "symmetric", 6, order=720),
    E("M10", "m10", order=720),
    E("A5xA5", "direct-product", "A5", "A5", order=3600),
    E("A5wrC2", "a5wrc2", order=7200),
]

ALIASES = {"V4": "C2xC2", "Klein": "C2xC2", "1": "C1", "PSL27": "GL32", "Pauli": "C4oD8"}


def builtin_catalog(max_order: int | None = None) -> list[CatalogEntry]:
    entries = [E(e.name, "small", e.name, order=e.order) for e in SMALL_GROUPS] + EXTRA_GROUPS
    if max_order is not None:
        entries = [e for e in entries if e.order is not None and e.order <= max_order]
    return sorted(entries, key=lambda e: (e.order, e.name))


def _entry_index() -> dict[str, CatalogEntry]:
    return {e.name: e for e in builtin_catalog()}


# ---------------------------------------------------------------- small data


def small_group_names() -> list[str]:
    return [e.name for e in SMALL_GROUPS]


def _data_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_") + ".csv"


DATA_DIR = Path(__file__).resolve().parent / "data" / "small"


def small_group_path(name: str) -> Path:
    return DATA_DIR / _data_name(name)


@lru_cache(maxsize=None)
def _small_table(name: str) -> tuple[tuple[int, ...], ...]:
    from .io import read_cayley_csv

    return tuple(tuple(r) for r in read_cayley_csv(small_group_path(name)))


def load_small_group(name: str) -> FiniteGroup:
    """A group of order <= 16 from the shipped Cayley-table data files."""
    if name not in small_group_names():
        raise UnknownGroup(f"{name!r} is not in the small-group data set")
    return from_cayley_table(_small_table(name), name=name)


def write_small_group_data(directory: Path) -> list[Path]:
    """Regenerate the shipped Cayley tables from the constructors."""
    from .io import write_cayley_csv

    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for e in SMALL_GROUPS:
        G = e.build()
        path = directory / _data_name(e.name)
        write_cayley_csv(path, G.table)
        out.append(path)
    return out


# ---------------------------------------------------------------- names


# (pattern, builder, order predicted from the match so the cap is checked before building)
_PATTERNS: list[tuple[re.Pattern, Callable, Callable]] = [
    (re.compile(r"C(\d+)"), lambda m: cyclic(int(m[1])), lambda m: int(m[1])),
    (re.compile(r"D(\d+)"), lambda m: dihedral(int(m[1])), lambda m: int(m[1])),
    (re.compile(r"Q(\d+)"), lambda m: quaternion(int(m[1])), lambda m: int(m[1])),
    (re.compile(r"Dic(\d+)"), lambda m: dicyclic(int(m[1])), lambda m: int(m[1])),
    (re.compile(r"S(\d)"), lambda m: _bounded(symmetric, int(m[1])), lambda m: 0),
    (re.compile(r"A(\d)"), lambda m: _bounded(alternating, int(m[1])), lambda m: 0),
    (re.compile(r"C(\d+):C(\d+)"), lambda m: semidirect(int(m[1]), int(m[2])), lambda m: int(m[1]) * int(m[2])),
    (re.compile(r"Heis(\d+)"), lambda m: heisenberg(int(m[1])), lambda m: int(m[1]) ** 3),
]


def _bounded(fn, k):
    if k > 6:
        raise UnknownGroup(f"degree {k} exceeds the supported limit of 6")
    return fn(k)


def resolve_group(name: str, *, cap: int = ELEMENT_CAP, catalog: dict[str, CatalogEntry] | None = None) -> FiniteGroup:
    """Build a group from a catalog name, a ``file:`` path or a product expression."""
    name = name.strip()
    name = ALIASES.get(name, name)
    if catalog and name in catalog:
        return catalog[name].build(cap)
    index = _entry_index()
    if name in index:
        return index[name].build(cap)
    if name.startswith("file:"):
        return _build("file", (name[5:],), cap)
    for pat, fn, predicted in _PATTERNS:
        m = pat.fullmatch(name)
        if m:
            if predicted(m) > cap:
                raise CapExceeded(f"{name} has order {predicted(m)}, cap {cap}")
            try:
                G = fn(m)
            except ValueError as exc:
                raise UnknownGroup(f"{name}: {exc}") from exc
            if G.order > cap:
                raise CapExceeded(f"{name} has order {G.order}, cap {cap}")
            G.name = name
            return G
    if "x" in name:
        parts = [resolve_group(p, cap=cap, catalog=catalog) for p in name.split("x")]
        total = math.prod(P.order for P in parts)
        if total > cap:
            raise CapExceeded(f"{name} has order {total}, cap {cap}")
        G = named_product(*parts)
        G.name = name
        return G
    raise UnknownGroup(f"unknown group {name!r}")
