"""Deterministic CSV emission: fixed schema per subcommand, '#'-prefixed
provenance lines, 17 significant digits for floats.  Output bytes depend only
on the data and provenance mapping, never on timing or parallelism."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


@dataclass
class ResultTable:
    columns: list
    rows: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    footer: dict = field(default_factory=dict)

    def add(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"expected {len(self.columns)} values, got {len(values)}")
        self.rows.append(tuple(values))

    def to_csv(self) -> str:
        lines = [f"# {k}={format_value(v)}" for k, v in sorted(self.provenance.items())]
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(format_value(v) for v in row))
        for k, v in sorted(self.footer.items()):
            lines.append(f"# {k}={format_value(v)}")
        return "\n".join(lines) + "\n"
