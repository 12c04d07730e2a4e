"""Readers and writers for contexts and lattices: Burmeister CXT, JSON and DOT."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import FormatError
from .fca import ConceptLattice, FormalContext


def write_cxt(context: FormalContext) -> str:
    lines = ["B", "", str(len(context.objects)), str(len(context.attributes)), ""]
    lines.extend(context.objects)
    lines.extend(context.attributes)
    for row in context.incidence:
        lines.append("".join("X" if x else "." for x in row))
    return "\n".join(lines) + "\n"


def read_cxt(text: str) -> FormalContext:
    """Parse a Burmeister CXT document.

    Line 2 may hold a context name instead of being blank; both variants are
    written by common FCA tools.
    """
    lines = text.splitlines()
    pos = 0

    def take(section: str) -> str:
        nonlocal pos
        if pos >= len(lines):
            raise FormatError(f"CXT truncated: missing {section}", section=section)
        line = lines[pos].rstrip("\r")
        pos += 1
        return line

    if take("header").strip() != "B":
        raise FormatError("CXT must start with a line containing 'B'", section="header")
    take("header")  # name line, usually blank
    counts = []
    for label in ("object count", "attribute count"):
        raw = take(label).strip()
        try:
            counts.append(int(raw))
        except ValueError:
            raise FormatError(f"CXT {label} is not an integer: {raw!r}", section=label) from None
        if counts[-1] < 0:
            raise FormatError(f"CXT {label} is negative", section=label)
    n_obj, n_attr = counts
    if take("blank line after counts").strip():
        raise FormatError("CXT expects a blank line after the counts", section="header")
    objects = [take("object names").strip() for _ in range(n_obj)]
    attributes = [take("attribute names").strip() for _ in range(n_attr)]
    rows = []
    for g in range(n_obj):
        raw = take("incidence rows").strip()
        if len(raw) != n_attr or set(raw) - set(".Xx"):
            raise FormatError(
                f"CXT incidence row {g + 1} must have {n_attr} characters from '.X': {raw!r}",
                section="incidence rows",
            )
        rows.append(tuple(ch in "Xx" for ch in raw))
    try:
        return FormalContext(tuple(objects), tuple(attributes), tuple(rows))
    except ValueError as exc:
        raise FormatError(f"CXT content invalid: {exc}", section="names") from exc


def context_to_dict(context: FormalContext) -> dict[str, Any]:
    return {
        "objects": list(context.objects),
        "attributes": list(context.attributes),
        "incidence": [list(row) for row in context.incidence],
    }


def context_from_dict(data: dict[str, Any]) -> FormalContext:
    try:
        return FormalContext(
            tuple(data["objects"]),
            tuple(data["attributes"]),
            tuple(tuple(bool(x) for x in row) for row in data["incidence"]),
        )
    except KeyError as exc:
        raise FormatError(f"context JSON missing key {exc.args[0]!r}", section=exc.args[0]) from None
    except (TypeError, ValueError) as exc:
        raise FormatError(f"context JSON invalid: {exc}") from exc


def lattice_to_dict(lattice: ConceptLattice) -> dict[str, Any]:
    ctx = lattice.context
    out = context_to_dict(ctx)
    out["concepts"] = [
        {
            "extent": ctx.object_names(c.extent),
            "intent": ctx.attribute_names(c.intent),
        }
        for c in lattice.concepts
    ]
    out["covers"] = [list(pair) for pair in sorted(lattice.covers)]
    out["top"] = lattice.top
    out["bottom"] = lattice.bottom
    out["introduced_objects"] = dict(lattice.introduced_objects)
    out["introduced_attributes"] = dict(lattice.introduced_attributes)
    return out


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def load_context(path: str | Path) -> FormalContext:
    """Load a context from a ``.cxt`` file or a context/lattice JSON file."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
        return context_from_dict(data)
    return read_cxt(text)


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def dot_label(*lines: str) -> str:
    """A quoted DOT label with one escaped text line per argument."""
    return '"' + "\\n".join(_dot_escape(line) for line in lines) + '"'


def lattice_to_dot(lattice: ConceptLattice) -> str:
    """Hasse diagram with reduced labelling: introduced attributes / objects."""
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=ellipse];"]
    for i in range(len(lattice)):
        parts = [f"C{i + 1}", ", ".join(lattice.attributes_at(i))]
        objs = lattice.objects_at(i)
        if objs:
            parts.append("(" + ", ".join(objs) + ")")
        lines.append(f"  c{i} [label={dot_label(*parts)}];")
    for child, parent in sorted(lattice.covers):
        lines.append(f"  c{child} -> c{parent};")
    lines.append("}")
    return "\n".join(lines) + "\n"
