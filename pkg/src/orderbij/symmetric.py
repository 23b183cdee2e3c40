"""Exact elementary-symmetric and power-sum aggregates of element-order weights.

For a group G and a weight table f, the multiset {f(o(x)) : x in G} has
elementary symmetric polynomials e_k (``psi_elementary``) and power sums p_k
(``psi_power``). All arithmetic uses ``fractions.Fraction``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import CapExceeded, MonotonicityError, WeightMissing
from .groups import ELEMENT_CAP, Family, FiniteGroup, direct_product

MONOTONICITY = ("increasing", "decreasing", "none")


def _fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("weights must be exact; floats are rejected")
    return Fraction(value)


@dataclass(frozen=True)
class WeightFunction:
    """A weight on element orders.

    ``rule`` covers every positive order ("identity" or "reciprocal");
    otherwise ``table`` must list each order the weight is applied to.
    """

    table: Mapping[int, Fraction]
    monotonicity: str = "none"
    rule: str | None = None
    name: str = "table"

    def __post_init__(self):
        if self.monotonicity not in MONOTONICITY:
            raise MonotonicityError(f"unknown monotonicity {self.monotonicity!r}")
        if self.rule not in (None, "identity", "reciprocal"):
            raise ValueError(f"unknown rule {self.rule!r}")
        clean = {int(k): _fraction(v) for k, v in self.table.items()}
        object.__setattr__(self, "table", clean)
        bad = _monotonicity_violation(clean, self.monotonicity)
        if bad:
            (a, wa), (b, wb) = bad
            raise MonotonicityError(
                f"declared {self.monotonicity} but f({a}) = {wa} and f({b}) = {wb}"
            )

    @classmethod
    def identity(cls) -> "WeightFunction":
        return cls({}, "increasing", "identity", "identity")

    @classmethod
    def reciprocal(cls) -> "WeightFunction":
        return cls({}, "decreasing", "reciprocal", "reciprocal")

    @classmethod
    def from_table(cls, table: Mapping[int, object], monotonicity: str = "none",
                   name: str = "table") -> "WeightFunction":
        return cls(dict(table), monotonicity, None, name)

    @classmethod
    def from_csv(cls, path, monotonicity: str = "none") -> "WeightFunction":
        from pathlib import Path

        from .io import read_weight_csv

        return cls(read_weight_csv(path), monotonicity, None, Path(path).name)

    def __call__(self, order: int) -> Fraction:
        if order in self.table:
            return self.table[order]
        if self.rule == "identity":
            return Fraction(order)
        if self.rule == "reciprocal":
            return Fraction(1, order)
        raise WeightMissing(f"weight table {self.name!r} has no entry for order {order}")

    def weights(self, G) -> list[Fraction]:
        fam = G if isinstance(G, Family) else G.family()
        return [self(o) for o in fam.orders]


def _monotonicity_violation(table: Mapping[int, Fraction], mono: str):
    if mono == "none":
        return None
    items = sorted(table.items())
    for (a, wa), (b, wb) in zip(items, items[1:]):
        if (mono == "increasing" and not wa < wb) or (mono == "decreasing" and not wa > wb):
            return (a, wa), (b, wb)
    return None


def _weight_classes(G, f: WeightFunction) -> Counter:
    fam = G if isinstance(G, Family) else G.family()
    return Counter(f(o) for o in fam.orders)


def psi_elementary(G, f: WeightFunction, K: int) -> list[Fraction]:
    """[e_1, ..., e_K] of the weight multiset.

    Each weight class w with multiplicity c contributes the factor
    (1 + w t)^c, expanded binomially; enumeration of subsets never happens.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    e = [Fraction(1)] + [Fraction(0)] * K
    for w, c in sorted(_weight_classes(G, f).items()):
        factor = [math.comb(c, j) * w**j for j in range(min(c, K) + 1)]
        e = [sum(e[k - j] * factor[j] for j in range(min(k, len(factor) - 1) + 1)) for k in range(K + 1)]
    return e[1:]


def psi_power(G, f: WeightFunction, K: int) -> list[Fraction]:
    """[p_1, ..., p_K] of the weight multiset."""
    if K < 1:
        raise ValueError("K must be at least 1")
    classes = _weight_classes(G, f)
    return [sum(c * w**k for w, c in classes.items()) for k in range(1, K + 1)]


def newton_matrix(e: Sequence[Fraction], k: int) -> list[list[Fraction]]:
    """k x k matrix whose determinant is p_k: first column i*e_i, e_{i-j+1} elsewhere."""
    ext = [Fraction(1)] + list(e)

    def at(i: int) -> Fraction:
        return ext[i] if 0 <= i < len(ext) else Fraction(0)

    rows = []
    for i in range(1, k + 1):
        row = [i * at(i)]
        for j in range(2, k + 1):
            row.append(at(i - j + 1) if i - j + 1 >= 0 else Fraction(0))
        rows.append(row)
    return rows


def exact_det(rows: list[list[Fraction]]) -> Fraction:
    import sympy

    if not rows:
        return Fraction(1)
    M = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    d = M.det(method="bareiss")
    return Fraction(int(d.p), int(d.q))


@dataclass(frozen=True)
class NewtonResult:
    k: int
    determinant: Fraction
    power_sum: Fraction

    @property
    def ok(self) -> bool:
        return self.determinant == self.power_sum


def newton_determinant_check(G, f: WeightFunction, K: int) -> list[NewtonResult]:
    e = psi_elementary(G, f, K)
    p = psi_power(G, f, K)
    return [NewtonResult(k, exact_det(newton_matrix(e, k)), p[k - 1]) for k in range(1, K + 1)]


@dataclass(frozen=True)
class Comparison:
    group: str
    order: int
    k: int
    value: Fraction
    cyclic_value: Fraction
    direction: str  # "<" or ">"

    @property
    def ok(self) -> bool:
        return self.value < self.cyclic_value if self.direction == "<" else self.value > self.cyclic_value

    def as_dict(self) -> dict:
        return {"group": self.group, "order": self.order, "k": self.k, "value": fraction_str(self.value),
                "cyclic_value": fraction_str(self.cyclic_value), "direction": self.direction, "ok": self.ok}


def cyclic_family(n: int) -> Family:
    return Family(tuple(range(n)), tuple(n // math.gcd(n, k) for k in range(n)), f"C{n}")


def inequality_sweep(groups: Iterable[FiniteGroup], f: WeightFunction, K: int = 6) -> list[Comparison]:
    """Compare each non-cyclic group against the cyclic group of the same order."""
    if f.monotonicity not in ("increasing", "decreasing"):
        raise MonotonicityError("the sweep needs a weight declared increasing or decreasing")
    direction = "<" if f.monotonicity == "increasing" else ">"
    out = []
    cache: dict[int, list[Fraction]] = {}
    for G in groups:
        if G.is_cyclic:
            continue
        kk = min(K, G.order)
        mine = psi_elementary(G, f, kk)
        if G.order not in cache or len(cache[G.order]) < kk:
            cache[G.order] = psi_elementary(cyclic_family(G.order), f, kk)
        theirs = cache[G.order]
        out.extend(Comparison(G.name, G.order, k, mine[k - 1], theirs[k - 1], direction) for k in range(1, kk + 1))
    return out


@dataclass(frozen=True)
class ProductRecord:
    left: str
    right: str
    coprime: bool
    product_values: tuple[Fraction, ...]
    factor_values: tuple[Fraction, ...]

    @property
    def inequality_holds(self) -> bool:
        return all(p <= q for p, q in zip(self.product_values, self.factor_values))

    @property
    def equality_matches(self) -> bool:
        """Equality at every l exactly when the orders are coprime."""
        return all((p == q) == self.coprime for p, q in zip(self.product_values, self.factor_values))

    @property
    def ok(self) -> bool:
        return self.inequality_holds and self.equality_matches


def product_multiplicativity_check(A: FiniteGroup, B: FiniteGroup, f: WeightFunction, L: int = 1,
                                   *, cap: int = ELEMENT_CAP) -> ProductRecord:
    if f.monotonicity != "increasing":
        raise MonotonicityError(f"weight {f.name!r} is not declared increasing")
    if A.order * B.order > cap:
        raise CapExceeded(f"|A x B| = {A.order * B.order} exceeds cap {cap}")
    P = direct_product(A, B, cap=cap)
    pa, pb, pp = psi_power(A, f, L), psi_power(B, f, L), psi_power(P, f, L)
    return ProductRecord(A.name, B.name, math.gcd(A.order, B.order) == 1, tuple(pp),
                         tuple(x * y for x, y in zip(pa, pb)))


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
