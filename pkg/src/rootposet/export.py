"""DOT, JSON and TikZ renderings of a root poset, plus JSON re-import.

JSON is the canonical machine format; DOT and TikZ are for drawing only.
All output is deterministic: fixed element order, sorted keys, no
timestamps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .dynkin import Root, parse_diagram
from .errors import UnsupportedDiagram
from .poset import Poset, RootPoset, level_decomposition


def _coeff_text(root: Root) -> str:
    return "".join(map(str, root.coeffs)) if max(root.coeffs) < 10 else ",".join(map(str, root.coeffs))


def table_levels(p: RootPoset) -> dict[str, list[int]] | None:
    """Printed-table level number -> element ids, or None where no table exists."""
    try:
        dec = level_decomposition(p)
    except UnsupportedDiagram:
        return None
    return {str(lv.number): sorted(lv.members) for lv in dec.levels}


def export_json(p: RootPoset) -> str:
    heights: dict[str, list[int]] = {}
    for i, h in enumerate(p.heights):
        heights.setdefault(str(h), []).append(i)
    levels: dict = {"height": heights}
    table = table_levels(p)
    if table is not None:
        levels["table"] = table
    names = p.diagram.node_names
    doc = {
        "diagram": p.diagram.name,
        "node_names": list(names),
        "elements": [
            {"id": i, "coeffs": list(r.coeffs), "height": r.height}
            for i, r in enumerate(p.elements)
        ],
        "covers": [{"lo": lo, "hi": hi, "simple": names[s]} for lo, hi, s in p.hasse],
        "levels": levels,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


@dataclass
class ImportedPoset:
    """A poset rebuilt from JSON alone (order from the covers, not the coefficients)."""

    diagram: str
    coeffs: list[tuple[int, ...]]
    heights: list[int]
    covers: list[tuple[int, int, str]]
    levels: dict
    poset: Poset

    def matches(self, p: RootPoset) -> bool:
        """Lossless round-trip check against a generated poset."""
        names = p.diagram.node_names
        return (
            self.diagram == p.diagram.name
            and self.coeffs == [r.coeffs for r in p.elements]
            and self.heights == p.heights
            and sorted(self.covers) == sorted((lo, hi, names[s]) for lo, hi, s in p.hasse)
            and bool((self.poset.leq == p.leq).all())
            and self.levels == json.loads(export_json(p))["levels"]
        )


def import_json(text: str) -> ImportedPoset:
    doc = json.loads(text)
    parse_diagram(doc["diagram"])  # validates the name
    elems = sorted(doc["elements"], key=lambda e: e["id"])
    if [e["id"] for e in elems] != list(range(len(elems))):
        raise ValueError("element ids must be 0..N-1")
    coeffs = [tuple(e["coeffs"]) for e in elems]
    covers = [(c["lo"], c["hi"], c["simple"]) for c in doc["covers"]]
    poset = Poset.from_covers(len(elems), [(lo, hi) for lo, hi, _ in covers], labels=coeffs)
    return ImportedPoset(doc["diagram"], coeffs, [e["height"] for e in elems], covers,
                         doc["levels"], poset)


def export_dot(p: RootPoset) -> str:
    names = p.diagram.node_names
    lines = [f'digraph "{p.diagram.name}" {{', "  rankdir=BT;", "  node [shape=plaintext];"]
    for i, r in enumerate(p.elements):
        lines.append(f'  n{i} [label="{_coeff_text(r)}"];')
    for lo, hi, s in sorted(p.hasse):
        lines.append(f'  n{lo} -> n{hi} [label="{names[s]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_tikz(p: RootPoset) -> str:
    """A tikzpicture with elements at (index within height level, height)."""
    names = p.diagram.node_names
    slot: dict[int, tuple[float, int]] = {}
    for h in sorted(set(p.heights)):
        row = sorted(p.level_set(h))
        for k, i in enumerate(row):
            slot[i] = (k - (len(row) - 1) / 2, h)
    lines = [f"% Hasse diagram of the positive roots of {p.diagram.name}",
             r"\begin{tikzpicture}[x=1.6cm, y=1.2cm, every node/.style={font=\scriptsize}]"]
    for i, r in enumerate(p.elements):
        x, y = slot[i]
        lines.append(f"  \\node (n{i}) at ({x:g},{y}) {{{_coeff_text(r)}}};")
    for lo, hi, s in sorted(p.hasse):
        lines.append(f"  \\draw (n{lo}) -- node[midway, fill=white, inner sep=1pt] {{${names[s]}$}} (n{hi});")
    lines.append(r"\end{tikzpicture}")
    return "\n".join(lines) + "\n"


EXPORTERS = {"dot": export_dot, "json": export_json, "tikz": export_tikz}


def export(p: RootPoset, fmt: str) -> str:
    try:
        return EXPORTERS[fmt](p)
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(EXPORTERS)}") from None


__all__ = ["export", "export_dot", "export_json", "export_tikz", "import_json",
           "ImportedPoset", "table_levels"]
