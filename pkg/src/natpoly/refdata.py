"""Published reference tables and record-by-record comparison.

The tables ship as TSV files in ``natpoly/data``: one header line, ``-`` for a
blank cell, fractions written ``p/q``. Mismatches are reported, never patched.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Iterable

from .metrics import MetricsRecord

TABLES = ("table1_1", "table3_1", "table5_1", "appendixA", "appendixB", "constants")

# expected row counts per table
ROW_COUNTS = {"table1_1": 16, "table3_1": 66, "appendixA": 448, "appendixB": 69}

APPENDIX_A_FIELDS = ("diameter", "dim", "Vol", "n_vertices", "n_edges", "n_facets", "facet_width")


class ReferenceDataError(RuntimeError):
    pass


@dataclass
class ReferenceTable:
    id: str
    columns: list[str]
    rows: dict[Any, dict[str, Any]]

    def __getitem__(self, key):
        return self.rows[key]

    def __contains__(self, key) -> bool:
        return key in self.rows

    def __len__(self) -> int:
        return len(self.rows)


def _cell(text: str, column: str):
    if text == "-":
        return None
    if column == "vertices":
        if text == "()":
            return [()]
        return [tuple(int(c) for c in v.strip("()").split(",")) for v in text.split(";")]
    if column in ("subset", "name", "quantity", "prefix"):
        return text
    if "/" in text:
        return Fraction(text)
    return int(text)


def load_reference(table_id: str) -> ReferenceTable:
    if table_id not in TABLES:
        raise KeyError(f"unknown reference table {table_id!r}; choose from {TABLES}")
    text = resources.files("natpoly").joinpath("data", f"{table_id}.tsv").read_text()
    lines = text.splitlines()
    columns = lines[0].split("\t")
    rows: dict[Any, dict[str, Any]] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split("\t")
        if len(cells) != len(columns):
            raise ReferenceDataError(f"{table_id}.tsv line {lineno}: expected {len(columns)} "
                                     f"cells, got {len(cells)}")
        try:
            row = {c: _cell(v, c) for c, v in zip(columns, cells)}
        except ValueError as exc:
            raise ReferenceDataError(f"{table_id}.tsv line {lineno}: {exc}") from exc
        if table_id == "table5_1":
            key = (row["subset"], row["N"])
        elif table_id == "constants":
            key = row["name"]
        else:
            key = row["N"]
        rows[key] = row
    expected = ROW_COUNTS.get(table_id)
    if expected is not None and len(rows) != expected:
        raise ReferenceDataError(f"{table_id}: {len(rows)} rows, expected {expected}")
    return ReferenceTable(table_id, columns, rows)


def table_vector(row: dict[str, Any], prefix: str) -> list[int]:
    """Non-blank cells of columns ``prefix0``, ``prefix1``, ... in order."""
    out = []
    i = 0
    while f"{prefix}{i}" in row:
        v = row[f"{prefix}{i}"]
        if v is None:
            break
        out.append(v)
        i += 1
    return out


def _trim(h: list[int]) -> list[int]:
    h = list(h)
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return h


@dataclass
class Entry:
    N: int
    field: str
    expected: Any
    computed: Any

    @property
    def match(self) -> bool:
        return self.expected == self.computed


@dataclass
class ComparisonReport:
    table: str
    entries: list[Entry] = field(default_factory=list)
    skipped: set[str] = field(default_factory=set)

    @property
    def mismatches(self) -> list[Entry]:
        return [e for e in self.entries if not e.match]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def merge(self, other: "ComparisonReport") -> "ComparisonReport":
        self.entries.extend(other.entries)
        self.skipped |= other.skipped
        return self

    def summary(self) -> dict:
        return {
            "table": self.table,
            "checked": len(self.entries),
            "rows": len({e.N for e in self.entries}),
            "mismatches": len(self.mismatches),
            "skipped_fields": sorted(self.skipped),
        }

    def to_json(self) -> str:
        def conv(v):
            if isinstance(v, Fraction):
                return str(v)
            if isinstance(v, (list, tuple)):
                return [conv(x) for x in v]
            return v
        data = self.summary()
        data["mismatch_list"] = [
            {"N": e.N, "field": e.field, "expected": conv(e.expected), "computed": conv(e.computed)}
            for e in self.mismatches
        ]
        return json.dumps(data, sort_keys=True)

    def to_text(self) -> str:
        s = self.summary()
        lines = [f"{self.table}: {s['rows']} rows, {s['checked']} fields checked, "
                 f"{s['mismatches']} mismatches"]
        if self.skipped:
            lines.append(f"  skipped: {', '.join(sorted(self.skipped))}")
        for e in self.mismatches:
            lines.append(f"  N={e.N} {e.field}: expected {e.expected}, computed {e.computed}")
        return "\n".join(lines)


def compare(record: MetricsRecord, table: ReferenceTable) -> ComparisonReport:
    """Field-by-field exact comparison of one record against one table."""
    rep = ComparisonReport(table.id)
    key = (record.subset, record.N) if table.id == "table5_1" else record.N
    if key not in table:
        raise KeyError(f"N={record.N} not in {table.id}")
    row = table[key]
    N = record.N

    def check(name, expected, computed):
        rep.entries.append(Entry(N, name, expected, computed))

    if table.id == "appendixA":
        for f in APPENDIX_A_FIELDS:
            check(f, row[f], getattr(record, f))
        rep.skipped.add("n_hilbert_basis")
    elif table.id == "table1_1":
        check("dim", row["dim"], record.dim)
        check("n_lattice_points", row["n_lattice_points"], record.n_lattice_points)
        check("vol", row["vol"], record.vol)
        if record.vertices is None:
            rep.skipped.add("vertices")
        else:
            check("vertices", sorted(row["vertices"]), sorted(record.vertices))
    elif table.id == "table3_1":
        check("dim", row["dim"], record.dim)
        check("Vol", row["Vol"], record.Vol)
        if record.h_star is None:
            rep.skipped.update(("h_star", "deg"))
        elif N > 1:
            h = _trim(record.h_star)
            check("h_star", table_vector(row, "h"), h)
            check("deg", row["deg"], len(h) - 1)
    elif table.id == "appendixB":
        if record.f_vector is None:
            rep.skipped.add("f_vector")
        else:
            check("f_vector", table_vector(row, "f"), record.f_vector)
    elif table.id == "table5_1":
        check("vol", row["vol"], record.vol)
        check("dim", row["dim"], record.dim)
    else:
        raise KeyError(f"table {table.id} holds no per-N records")
    return rep


def compare_many(records: Iterable[MetricsRecord], table: ReferenceTable) -> ComparisonReport:
    rep = ComparisonReport(table.id)
    for r in records:
        key = (r.subset, r.N) if table.id == "table5_1" else r.N
        if key in table:
            rep.merge(compare(r, table))
    return rep
