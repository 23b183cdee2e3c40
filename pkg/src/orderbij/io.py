"""File formats: Cayley-table CSV, permutation-generator files, weight tables,
catalog files and the append-only JSONL report store."""

from __future__ import annotations

import csv
import json
import os
import threading
from fractions import Fraction
from pathlib import Path

from .errors import ParseError, PersistenceFailure
from .groups import ELEMENT_CAP, FiniteGroup, close_generators, from_cayley_table


def read_cayley_csv(path) -> list[list[int]]:
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                rows.append([int(c) for c in row])
            except ValueError:
                raise ParseError(f"non-integer entry in {row}", str(path), lineno) from None
    k = len(rows)
    for lineno, r in enumerate(rows, 1):
        if len(r) != k:
            raise ParseError(f"row has {len(r)} entries, table has {k} rows", str(path), lineno)
    return rows


def write_cayley_csv(path, table) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerows(table)


def read_permutation_file(path) -> tuple[int, list[list[int]]]:
    """``{"degree": d, "generators": [[g(1), ..., g(d)], ...]}`` or the text form

    degree 5
    2 3 4 5 1
    2 1 3 4 5
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = None
    if isinstance(data, dict):
        if "degree" not in data or "generators" not in data:
            raise ParseError("missing 'degree' or 'generators'", str(path))
        return int(data["degree"]), [list(map(int, g)) for g in data["generators"]]
    degree, gens = None, []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if degree is None:
                degree = int(line.replace("degree", "").replace(":", "").strip())
            else:
                gens.append([int(t) for t in line.replace(",", " ").split()])
        except ValueError:
            raise ParseError(f"cannot parse {line!r}", str(path), lineno) from None
    if degree is None:
        raise ParseError("no degree line", str(path))
    return degree, gens


def load_group_file(path, *, cap: int = ELEMENT_CAP, name: str | None = None) -> FiniteGroup:
    """Load and fully validate a group from a Cayley CSV or permutation file."""
    p = Path(path)
    name = name or p.stem
    if p.suffix.lower() == ".csv":
        return from_cayley_table(read_cayley_csv(p), name=name, cap=cap)
    degree, gens = read_permutation_file(p)
    return close_generators(degree, gens, name=name, cap=cap)


def read_weight_csv(path) -> dict[int, Fraction]:
    """Rows ``order,numerator,denominator``; a header row is skipped."""
    table: dict[int, Fraction] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            cells = [c.strip() for c in row]
            if not cells or not any(cells):
                continue
            if lineno == 1 and not cells[0].lstrip("-").isdigit():
                continue
            if len(cells) != 3:
                raise ParseError(f"expected 3 fields, got {len(cells)}", str(path), lineno)
            try:
                order, num, den = (int(c) for c in cells)
            except ValueError:
                raise ParseError(f"non-integer field in {cells}", str(path), lineno) from None
            if den == 0:
                raise ParseError("zero denominator", str(path), lineno)
            if order in table:
                raise ParseError(f"duplicate order {order}", str(path), lineno)
            table[order] = Fraction(num, den)
    return table


def load_catalog_file(path):
    """A JSON list of catalog entries: name, constructor, args, order."""
    from .catalog import CatalogEntry

    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, str(path), exc.lineno) from None
    if not isinstance(data, list):
        raise ParseError("catalog must be a JSON list", str(path))
    entries = []
    for i, item in enumerate(data):
        try:
            entries.append(CatalogEntry(item["name"], item["constructor"], tuple(item.get("args", ())),
                                        item.get("order")))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"entry {i}: {exc}", str(path)) from None
    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        raise ParseError("catalog names must be unique", str(path))
    return entries


class ReportStore:
    """Append-only JSON-lines file; appends are serialized by a lock."""

    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, reports) -> None:
        lines = "".join(r.to_json() + "\n" for r in reports)
        with self._lock:
            try:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(lines)
                    fh.flush()
                    os.fsync(fh.fileno())
            except OSError as exc:
                raise PersistenceFailure(f"cannot append to {self.path}: {exc}") from exc

    def read(self) -> list[dict]:
        if not self.path.exists():
            return []
        out = []
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if line.strip():
                    try:
                        out.append(json.loads(line))
                    except json.JSONDecodeError:
                        raise ParseError("invalid JSON line", str(self.path), lineno) from None
        return out
