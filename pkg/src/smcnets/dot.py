"""Graphviz DOT output for nets and switchings.

Each region's one-sided formula tree is drawn as a cluster.  Linking edges
between sort ports are solid; edges out of unit ports are dotted, since
those are the ones rewiring may move.
"""

from __future__ import annotations

from .correctness import SwitchGraph
from .formula import Bot, NegAtom, One, Par, PosAtom, Times, UNIT_LABEL, mll_nodes, to_one_sided
from .prenet import COD, SUP, Net, PortRef


def _node_id(ref: PortRef) -> str:
    name = f"sup{ref.index}" if ref.region == SUP else ref.region
    return f'"{name}:{ref.path}"'


def _node_label(m) -> str:
    if isinstance(m, Times):
        return "(x)"
    if isinstance(m, Par):
        return "|"
    if isinstance(m, PosAtom):
        return m.sort
    if isinstance(m, NegAtom):
        return f"~{m.sort}"
    if isinstance(m, One):
        return "1"
    if isinstance(m, Bot):
        return "bot"
    raise TypeError(m)


def _cluster_title(net: Net, root: PortRef) -> str:
    if root.region == SUP:
        op = net.support[root.index]
        return f"sup{root.index}: {op.name}"
    return root.region


def _clusters(net: Net, kept=None) -> list[str]:
    """Formula-tree clusters; ``kept`` maps par nodes to the premise retained."""
    out = []
    for root, f in net.regions():
        tree = to_one_sided(f, root.region != COD)
        out.append(f"  subgraph cluster_{_node_id(root).strip(chr(34)).replace(':', '_')} {{")
        out.append(f'    label="{_cluster_title(net, root)}";')
        for m in mll_nodes(tree):
            ref = PortRef(root.region, m.path, root.index)
            shape = "box" if isinstance(m, (Times, Par)) else "ellipse"
            out.append(f'    {_node_id(ref)} [label="{_node_label(m)}", shape={shape}];')
        for m in mll_nodes(tree):
            if not isinstance(m, (Times, Par)):
                continue
            ref = PortRef(root.region, m.path, root.index)
            for side in "LR":
                child = PortRef(root.region, m.path + side, root.index)
                if kept is not None and isinstance(m, Par) and kept.get(ref) != side:
                    continue
                out.append(f"    {_node_id(ref)} -- {_node_id(child)};")
        out.append("  }")
    return out


def _links(net: Net) -> list[str]:
    out = []
    for s, t in net.edges:
        style = "dotted" if net.port(s).label == UNIT_LABEL else "solid"
        out.append(f"  {_node_id(s)} -- {_node_id(t)} [style={style}, color=blue];")
    return out


def net_to_dot(net: Net, name: str = "net") -> str:
    lines = [f"graph {name} {{", "  compound=true;"]
    lines += _clusters(net)
    lines += _links(net)
    lines.append("}")
    return "\n".join(lines) + "\n"


def switching_to_dot(net: Net, graph: SwitchGraph, highlight=(), name: str = "switching") -> str:
    """One switching of ``net``; vertices in ``highlight`` are drawn red."""
    kept = dict(graph.choice)
    lines = [f"graph {name} {{"]
    lines += _clusters(net, kept)
    lines += _links(net)
    for ref in highlight:
        lines.append(f"  {_node_id(ref)} [color=red, penwidth=2];")
    lines.append("}")
    return "\n".join(lines) + "\n"
