"""Graphviz dot renderings of groupoids, complexes, and orbit categories."""

from __future__ import annotations

from .complexes import GCellComplex
from .groupoids import PresentedGroupoid
from .orbit import OrbitCategory


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def groupoid_dot(name: str, g: PresentedGroupoid) -> str:
    lines = [f"digraph {_quote(name)} {{"]
    lines.append("  rankdir=LR;")
    for x in g.objects:
        lines.append(f"  {_quote(x)} [shape=circle];")
    for gen in g.generators:
        lines.append(
            f"  {_quote(gen.source)} -> {_quote(gen.target)} "
            f"[label={_quote(gen.label)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_dot(name: str, x: GCellComplex) -> str:
    """The 1-skeleton; faces are listed in a label box."""
    lines = [f"digraph {_quote(name)} {{"]
    lines.append("  rankdir=LR;")
    for v in x.vertices:
        lines.append(f"  {_quote(v)} [shape=point, xlabel={_quote(v)}];")
    for e in x.edges:
        lines.append(
            f"  {_quote(e.source)} -> {_quote(e.target)} [label={_quote(e.label)}];"
        )
    if x.faces:
        txt = "\\n".join(f"{f.label}: {f.word}" for f in x.faces)
        lines.append(f"  faces [shape=note, label={_quote(txt)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def orbit_dot(cat: OrbitCategory) -> str:
    lines = [f"digraph {_quote('orbit_category')} {{"]
    for hid in cat.objects:
        sub = cat.subgroups[hid]
        lines.append(f"  n{hid} [shape=box, label={_quote(f'G/{sub}')}];")
    for m in cat.morphisms():
        if cat.is_identity(m):
            continue
        lines.append(
            f"  n{m.source} -> n{m.target} [label={_quote(f'g{m.representative}')}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
