"""Deterministic tabular output for sweeps.

A :class:`SweepTable` is an immutable rectangle of floats whose first
column is the sweep axis (strictly increasing, no duplicates), plus a
small metadata mapping.  Both serializations are byte-deterministic:
metadata keys are emitted sorted, floats are written with ``repr`` /
``%.17g`` so every value survives a round trip exactly, and lines always
end with a single LF.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

__all__ = ["SweepTable", "AXIS_NAMES"]

# first-column names a table will accept; "k" covers per-mode spectra
AXIS_NAMES = frozenset({"lambda", "D", "gamma", "N", "k"})

MetaValue = int | float | str


def _format_meta(value: MetaValue) -> str:
    # repr() keeps int/float distinguishable on parse ("3" vs "3.0")
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return repr(value)
    return str(value)


def _parse_meta(text: str) -> MetaValue:
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            continue
    return text


@dataclass(frozen=True)
class SweepTable:
    """Immutable numeric table with a strictly increasing first column."""

    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    metadata: dict[str, MetaValue] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.columns:
            raise ValueError("a table needs at least one column")
        if self.columns[0] not in AXIS_NAMES:
            raise ValueError(
                f"first column must be one of {sorted(AXIS_NAMES)}, "
                f"got {self.columns[0]!r}"
            )
        if len(set(self.columns)) != len(self.columns):
            raise ValueError("duplicate column names")
        width = len(self.columns)
        previous = None
        for row in self.rows:
            if len(row) != width:
                raise ValueError(
                    f"row width {len(row)} does not match {width} columns"
                )
            axis = row[0]
            if previous is not None and not axis > previous:
                raise ValueError("axis column must be strictly increasing")
            previous = axis

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> tuple[float, ...]:
        """One column by name."""
        try:
            index = self.columns.index(name)
        except ValueError:
            raise KeyError(name) from None
        return tuple(row[index] for row in self.rows)

    # -- CSV ---------------------------------------------------------------

    def to_csv(self) -> str:
        """Comment-prefixed metadata, header line, then one row per line."""
        out = io.StringIO()
        for key in sorted(self.metadata):
            out.write(f"# {key} = {_format_meta(self.metadata[key])}\n")
        out.write(",".join(self.columns) + "\n")
        for row in self.rows:
            out.write(",".join(f"{value:.17g}" for value in row) + "\n")
        return out.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SweepTable":
        metadata: dict[str, MetaValue] = {}
        header: tuple[str, ...] | None = None
        rows: list[tuple[float, ...]] = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                key, sep, value = body.partition("=")
                if not sep:
                    raise ValueError(f"malformed metadata line: {line!r}")
                metadata[key.strip()] = _parse_meta(value.strip())
                continue
            if header is None:
                header = tuple(name.strip() for name in line.split(","))
                continue
            rows.append(tuple(float(cell) for cell in line.split(",")))
        if header is None:
            raise ValueError("no header line found")
        return cls(columns=header, rows=tuple(rows), metadata=metadata)

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> str:
        payload = {
            "metadata": {k: self.metadata[k] for k in sorted(self.metadata)},
            "columns": list(self.columns),
            "rows": [list(row) for row in self.rows],
        }
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "SweepTable":
        payload = json.loads(text)
        return cls(
            columns=tuple(payload["columns"]),
            rows=tuple(tuple(float(v) for v in row) for row in payload["rows"]),
            metadata=dict(payload.get("metadata", {})),
        )

    def dumps(self, fmt: str) -> str:
        """Serialize as ``"csv"`` or ``"json"``."""
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")
