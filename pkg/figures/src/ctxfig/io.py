"""Readers for the ctxgeom CSV schemas.

The files carry "#"-prefixed "key = value" metadata lines, then a header
row, then comma-separated data rows. Each reader validates the header it
expects and returns plain Python containers.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path


class SchemaError(ValueError):
    """Input file does not match the expected CSV schema."""


@dataclass(frozen=True)
class Table:
    metadata: dict[str, str]
    header: list[str]
    rows: list[list[str]]

    def column(self, name: str) -> list[float]:
        k = self.header.index(name)
        return [float(r[k]) for r in self.rows]

    def text_column(self, name: str) -> list[str]:
        k = self.header.index(name)
        return [r[k] for r in self.rows]


def read_table(path: str | Path, expected_header: list[str]) -> Table:
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"input file not found: {path}")
    metadata: dict[str, str] = {}
    header: list[str] | None = None
    rows: list[list[str]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        for raw in csv.reader(fh):
            if not raw:
                continue
            if raw[0].startswith("#"):
                text = raw[0].lstrip("#").strip()
                if "=" in text:
                    key, _, value = text.partition("=")
                    metadata[key.strip()] = value.strip()
                continue
            if header is None:
                header = [c.strip() for c in raw]
                if header != expected_header:
                    raise SchemaError(
                        f"{path}: header {header} does not match expected "
                        f"{expected_header}"
                    )
                continue
            if len(raw) != len(header):
                raise SchemaError(f"{path}: row width {len(raw)} != {len(header)}")
            rows.append(raw)
    if header is None:
        raise SchemaError(f"{path}: no header row found")
    return Table(metadata=metadata, header=header, rows=rows)


FIG1_HEADER = ["p", "chi", "cf", "bc_max_bits"]
FIG2A_HEADER = ["s", "D_total"]
FIG2B_HEADER = ["state", "D_total"]
NCYCLE_HEADER = [
    "n",
    "theta_deg",
    "E",
    "s2_per_context_bits",
    "s2_total_bits",
    "n2_s2_per_context",
]


def read_fig1(path: str | Path) -> Table:
    table = read_table(path, FIG1_HEADER)
    if "p_star" not in table.metadata:
        raise SchemaError(f"{path}: missing p_star metadata line")
    return table


def read_fig2a(path: str | Path) -> Table:
    return read_table(path, FIG2A_HEADER)


def read_fig2b(path: str | Path) -> Table:
    return read_table(path, FIG2B_HEADER)


def read_ncycle(path: str | Path) -> Table:
    return read_table(path, NCYCLE_HEADER)
