"""The published tables as bundled CSV data, and a registry that rebuilds
each listed code from its recipe."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .circulant import FourCirculantSpec, four_circulant_code
from .codes import LinearCode
from .extend import table4_vector, tsai_extend
from .gf2 import BitVector
from .neighbors import neighbor

TABLE_COLUMNS = {
    1: ["id", "r_A", "r_B", "family", "beta"],
    2: ["id", "parent", "support", "family", "beta"],
    3: ["id", "parent", "support"],
    4: ["id", "parent", "x", "family", "beta"],
}


class TableFormatError(ValueError):
    def __init__(self, path: str, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


@dataclass(frozen=True)
class TableRow:
    table: int
    id: str
    line: int
    r_a: str | None = None
    r_b: str | None = None
    parent: str | None = None
    support: tuple[int, ...] | None = None
    x: str | None = None
    family: str | None = None
    beta: int | None = None


def default_path(table: int) -> Path:
    return Path(str(resources.files("sdcodes") / "data" / f"table{table}.csv"))


def _bits(value: str, length: int, path: str, line: int) -> str:
    v = value.strip().strip("()")
    if len(v) != length or set(v) - {"0", "1"}:
        raise TableFormatError(path, line, f"expected a {length}-bit string, got {value!r}")
    return v


def load_table(table: int, path: str | Path | None = None) -> list[TableRow]:
    if table not in TABLE_COLUMNS:
        raise ValueError(f"no table {table}")
    path = Path(path) if path is not None else default_path(table)
    name = str(path)
    rows: list[TableRow] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != TABLE_COLUMNS[table]:
            raise TableFormatError(name, 1, f"expected header {','.join(TABLE_COLUMNS[table])}")
        for rec in reader:
            line = reader.line_num
            if not rec or all(not f.strip() for f in rec):
                continue
            if len(rec) != len(header):
                raise TableFormatError(name, line, f"expected {len(header)} fields, got {len(rec)}")
            f = dict(zip(header, (x.strip() for x in rec)))
            try:
                beta = int(f["beta"]) if "beta" in f else None
                support = tuple(int(t) for t in f["support"].strip("{}").split(",")) if "support" in f else None
            except ValueError as exc:
                raise TableFormatError(name, line, str(exc)) from None
            if table == 1:
                rows.append(
                    TableRow(1, f["id"], line, r_a=_bits(f["r_A"], 16, name, line), r_b=_bits(f["r_B"], 16, name, line),
                             family=f["family"], beta=beta)
                )
            elif table == 4:
                rows.append(
                    TableRow(4, f["id"], line, parent=f["parent"], x=_bits(f["x"], 32, name, line),
                             family=f["family"], beta=beta)
                )
            else:
                if len(support) % 2:
                    raise TableFormatError(name, line, "support size must be even")
                rows.append(TableRow(table, f["id"], line, parent=f["parent"], support=support,
                                     family=f.get("family"), beta=beta))
    return rows


class Registry:
    """Builds codes by table id (``C64_1``, ``D64_138``, ``DE64_68_2``,
    ``C66_4``), caching each one."""

    def __init__(self, paths: dict[int, str | Path] | None = None):
        paths = paths or {}
        self.rows: dict[str, TableRow] = {}
        for t in TABLE_COLUMNS:
            for row in load_table(t, paths.get(t)):
                self.rows[row.id] = row
        self._codes: dict[str, LinearCode] = {}

    def ids(self, table: int) -> list[str]:
        return [r.id for r in self.rows.values() if r.table == table]

    def row(self, code_id: str) -> TableRow:
        if code_id not in self.rows:
            raise KeyError(f"unknown code id {code_id!r}")
        return self.rows[code_id]

    def code(self, code_id: str) -> LinearCode:
        if code_id in self._codes:
            return self._codes[code_id]
        row = self.row(code_id)
        if row.table == 1:
            c = four_circulant_code(FourCirculantSpec.from_strings(row.r_a, row.r_b), name=code_id)
        elif row.table in (2, 3):
            parent = self.code(row.parent)
            c = neighbor(parent, BitVector.from_support(parent.n, row.support), name=code_id)
        else:
            parent = self.code(row.parent)
            c = tsai_extend(parent, table4_vector(row.x, parent.n), name=code_id)
        self._codes[code_id] = c
        return c

    def codes(self, ids: Iterable[str]) -> list[LinearCode]:
        return [self.code(i) for i in ids]
