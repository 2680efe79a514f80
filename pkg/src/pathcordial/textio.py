"""Text format for labelings.

A labeling file is a header line followed by the vertex labels::

    group=2x4;kind=path
    00-12-10-01-02-03-11-13

Labels are joined by ``-``.  Each label is either a residue tuple such as
``(1,2)`` or, when every factor is at most 10, the compact digit string
``12``.  One-factor groups also accept a bare integer (``15`` in ``Z_22``).
"""

from __future__ import annotations

import re

from .groups import GroupElement, GroupSpec, parse_group
from .labeling import GraphLabeling, Kind

__all__ = [
    "LabelParseError",
    "compact_allowed",
    "format_element",
    "format_labels",
    "format_labeling",
    "parse_element",
    "parse_labels",
    "parse_labeling",
]

_TUPLE_RE = re.compile(r"\(\s*-?[0-9]+(\s*,\s*-?[0-9]+)*\s*\)")
_HEADER_RE = re.compile(r"group=([^;\s]+);kind=(path|cycle)")


class LabelParseError(ValueError):
    def __init__(self, message: str, position: int | None = None, token: str | None = None):
        self.position = position
        self.token = token
        where = f" at offset {position}" if position is not None else ""
        what = f" (token {token!r})" if token is not None else ""
        super().__init__(f"{message}{where}{what}")


def compact_allowed(g: GroupSpec) -> bool:
    return g.rank == 1 or all(d <= 10 for d in g.factors)


def format_element(g: GroupSpec, a: GroupElement, compact: bool | None = None) -> str:
    if compact is None:
        compact = compact_allowed(g)
    if g.rank == 1 and compact:
        return str(a.residues[0])
    if compact:
        return "".join(str(r) for r in a.residues)
    return "(" + ",".join(str(r) for r in a.residues) + ")"


def format_labels(lab: GraphLabeling) -> str:
    compact = compact_allowed(lab.group)
    return "-".join(format_element(lab.group, a, compact) for a in lab.labels)


def format_labeling(lab: GraphLabeling) -> str:
    return f"group={lab.group};kind={lab.kind.value}\n{format_labels(lab)}\n"


def parse_element(g: GroupSpec, token: str, position: int = 0) -> GroupElement:
    if _TUPLE_RE.fullmatch(token):
        residues = [int(x) for x in token.strip("() ").split(",")]
    elif token.isdigit() and token.isascii():
        if g.rank == 1:
            residues = [int(token)]
        elif not compact_allowed(g):
            raise LabelParseError(
                f"compact labels need every factor <= 10 in group {g}", position, token
            )
        elif len(token) != g.rank:
            raise LabelParseError(
                f"compact label must have {g.rank} digits", position, token
            )
        else:
            residues = [int(c) for c in token]
    else:
        raise LabelParseError("malformed label", position, token)
    if len(residues) != g.rank:
        raise LabelParseError(f"expected {g.rank} residues", position, token)
    for r, d in zip(residues, g.factors):
        if not 0 <= r < d:
            raise LabelParseError(f"residue {r} not in range 0..{d - 1}", position, token)
    return GroupElement(tuple(residues))


def parse_labels(g: GroupSpec, text: str) -> list[GroupElement]:
    text = text.strip()
    if not text:
        raise LabelParseError("no labels given", 0)
    out = []
    pos = 0
    for token in text.split("-"):
        out.append(parse_element(g, token.strip(), pos))
        pos += len(token) + 1
    return out


def parse_labeling(text: str) -> GraphLabeling:
    """Parse the two-line file format (blank lines and ``#`` comments ignored)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if len(lines) != 2:
        raise LabelParseError(f"expected a header line and a label line, got {len(lines)} lines")
    m = _HEADER_RE.fullmatch(lines[0])
    if not m:
        raise LabelParseError("malformed header; expected 'group=<spec>;kind=<path|cycle>'", 0)
    try:
        g = parse_group(m.group(1))
    except ValueError as exc:
        raise LabelParseError(str(exc), 6) from exc
    labels = parse_labels(g, lines[1])
    try:
        return GraphLabeling(g, Kind(m.group(2)), tuple(labels))
    except ValueError as exc:
        raise LabelParseError(str(exc)) from exc
