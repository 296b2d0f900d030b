"""Access to the bundled knot/link table.

One knot or link per line: `name | pd | signature | alternating-flag`.
Signature and the alternating flag are table metadata produced offline
(see tools/make_knot_table.py); the package never computes a signature
at runtime, it only consumes these as test fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .diagram import Diagram, parse_pd

DEFAULT_TABLE = "knots_upto10.pd"


@dataclass(frozen=True)
class TableEntry:
    name: str
    pd: str
    signature: int
    alternating: bool

    def diagram(self) -> Diagram:
        return parse_pd(self.pd)

    @property
    def crossings(self) -> int:
        return self.pd.count("X(")


def _parse_lines(lines) -> list[TableEntry]:
    out = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4:
            raise ValueError(f"table line {lineno}: want 4 |-separated fields")
        name, pd, sigma, alt = parts
        if alt not in ("a", "n"):
            raise ValueError(f"table line {lineno}: alternating flag must be a or n")
        out.append(TableEntry(name, pd, int(sigma), alt == "a"))
    names = [e.name for e in out]
    if len(set(names)) != len(names):
        raise ValueError("duplicate names in table")
    return out


def load_table(path: str | None = None) -> list[TableEntry]:
    """Entries of a table file, or of the bundled table when path is None."""
    if path is None:
        text = resources.files("linkhom.data").joinpath(DEFAULT_TABLE).read_text()
        return _parse_lines(text.splitlines())
    with open(path) as fh:
        return _parse_lines(fh)


def entry(name: str, path: str | None = None) -> TableEntry:
    for e in load_table(path):
        if e.name == name:
            return e
    raise KeyError(f"no table entry named {name!r}")
