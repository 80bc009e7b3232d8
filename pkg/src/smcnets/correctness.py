"""Switchings of prenets and the tree criterion for correctness.

The switching graph of a net ``a -> b`` has one vertex per syntax-tree node
of ``~a'``, ``b'`` and ``~ty(op)'`` for each support entry; leaves are the
ports themselves.  Its edges are the formula-tree edges, keeping only one
premise of each par node, together with the linking edges, undirected.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .formula import Par, Times, mll_nodes, to_one_sided
from .prenet import COD, Net, PortRef


@dataclass(frozen=True)
class SwitchGraph:
    vertices: tuple[PortRef, ...]
    edges: tuple[tuple[PortRef, PortRef], ...]
    choice: tuple[tuple[PortRef, str], ...]  # (par node, kept premise "L"/"R")

    def neighbours(self) -> dict[PortRef, list[PortRef]]:
        adj: dict[PortRef, list[PortRef]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def components(self) -> list[list[PortRef]]:
        adj = self.neighbours()
        seen: set[PortRef] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            seen.add(v)
            comp, queue = [], deque([v])
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(comp)
        return comps

    def find_cycle(self) -> list[PortRef] | None:
        """Vertices of some cycle, in order, or None when the graph is a forest."""
        adj = self.neighbours()
        parent: dict[PortRef, PortRef | None] = {}
        for root in self.vertices:
            if root in parent:
                continue
            parent[root] = None
            stack = [(root, iter(adj[root]))]
            while stack:
                u, it = stack[-1]
                for w in it:
                    if w == parent[u]:
                        # one back-edge to the parent is the tree edge itself
                        parent_hits = adj[u].count(w)
                        if parent_hits < 2:
                            continue
                        return [u, w]
                    if w in parent:
                        cycle = [u]
                        x = u
                        while x != w:
                            x = parent[x]
                            cycle.append(x)
                        return cycle
                    parent[w] = u
                    stack.append((w, iter(adj[w])))
                    break
                else:
                    stack.pop()
        return None

    def is_tree(self) -> bool:
        if len(self.edges) != len(self.vertices) - 1:
            return False
        return len(self.components()) == 1


@dataclass(frozen=True)
class _Frame:
    vertices: tuple[PortRef, ...]
    fixed: tuple[tuple[PortRef, PortRef], ...]
    pars: tuple[tuple[PortRef, PortRef, PortRef], ...]  # (node, left child, right child)


@lru_cache(maxsize=None)
def _region_frame(root: PortRef, formula, negated: bool):
    vertices, fixed, pars = [], [], []
    for node in mll_nodes(to_one_sided(formula, negated)):
        ref = PortRef(root.region, node.path, root.index)
        vertices.append(ref)
        if isinstance(node, (Times, Par)):
            left = PortRef(root.region, node.path + "L", root.index)
            right = PortRef(root.region, node.path + "R", root.index)
            if isinstance(node, Par):
                pars.append((ref, left, right))
            else:
                fixed += [(ref, left), (ref, right)]
    return tuple(vertices), tuple(fixed), tuple(pars)


@lru_cache(maxsize=4096)
def _frame(net: Net) -> _Frame:
    vertices, fixed, pars = [], [], []
    for root, f in net.regions():
        v, e, p = _region_frame(root, f, root.region != COD)
        vertices += v
        fixed += e
        pars += p
    fixed += net.edges
    return _Frame(tuple(vertices), tuple(fixed), tuple(pars))


def par_count(net: Net) -> int:
    return len(_frame(net).pars)


def switching(net: Net, k: int) -> SwitchGraph:
    """The ``k``-th switching; bit ``j`` of ``k`` keeps the right premise of par ``j``."""
    fr = _frame(net)
    edges = list(fr.fixed)
    choice = []
    for j, (node, left, right) in enumerate(fr.pars):
        keep_right = (k >> j) & 1
        edges.append((node, right if keep_right else left))
        choice.append((node, "R" if keep_right else "L"))
    return SwitchGraph(fr.vertices, tuple(edges), tuple(choice))


def enumerate_switchings(net: Net) -> Iterator[SwitchGraph]:
    for k in range(2 ** par_count(net)):
        yield switching(net, k)


def is_correct_naive(net: Net) -> bool:
    """Reference check: build every switching graph and test it is a tree."""
    return all(g.is_tree() for g in enumerate_switchings(net))


def _find(parent: list[int], i: int) -> int:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


@lru_cache(maxsize=65536)
def is_correct(net: Net) -> bool:
    """True iff every switching is a tree.

    Every switching has the same vertex and edge counts, so the count test
    is done once; the fixed edges are merged once, and each switching then
    only adds its par edges between the resulting components.
    """
    fr = _frame(net)
    n = len(fr.vertices)
    if len(fr.fixed) + len(fr.pars) != n - 1:
        return False
    index = {v: i for i, v in enumerate(fr.vertices)}
    parent = list(range(n))
    for u, v in fr.fixed:
        ru, rv = _find(parent, index[u]), _find(parent, index[v])
        if ru == rv:
            return False
        parent[ru] = rv
    comp = [_find(parent, i) for i in range(n)]
    options = [((comp[index[node]], comp[index[left]]), (comp[index[node]], comp[index[right]]))
               for node, left, right in fr.pars]
    for k in range(2 ** len(options)):
        local: dict[int, int] = {}
        for j, (lft, rgt) in enumerate(options):
            a, b = rgt if (k >> j) & 1 else lft
            while a in local:
                a = local[a]
            while b in local:
                b = local[b]
            if a == b:
                return False
            local[a] = b
    return True


@lru_cache(maxsize=65536)
def is_correct_contract(net: Net) -> bool:
    """Same verdict as ``is_correct``, by contracting the paired graph.

    Unpaired edges are contracted first (a loop means a cycle); then a par
    whose two premise edges reach the same component is contracted.  The
    net is correct iff everything collapses to one vertex.
    """
    fr = _frame(net)
    n = len(fr.vertices)
    if len(fr.fixed) + len(fr.pars) != n - 1:
        return False
    index = {v: i for i, v in enumerate(fr.vertices)}
    parent = list(range(n))
    for u, v in fr.fixed:
        ru, rv = _find(parent, index[u]), _find(parent, index[v])
        if ru == rv:
            return False
        parent[ru] = rv
    pending = [(index[p], index[l], index[r]) for p, l, r in fr.pars]
    while pending:
        stuck = []
        for p, l, r in pending:
            rp, rl, rr = _find(parent, p), _find(parent, l), _find(parent, r)
            if rp == rl or rp == rr:
                return False
            if rl == rr:
                parent[rp] = rl
            else:
                stuck.append((p, l, r))
        if len(stuck) == len(pending):
            return False
        pending = stuck
    return True


def failing_switching(net: Net):
    """First switching that is not a tree, as ``(graph, reason, witness)``, or None.

    ``reason`` is ``"cycle"`` (witness: the cycle's vertices) or
    ``"disconnected"`` (witness: the connected components).
    """
    for g in enumerate_switchings(net):
        cycle = g.find_cycle()
        if cycle is not None:
            return g, "cycle", cycle
        comps = g.components()
        if len(comps) > 1:
            return g, "disconnected", comps
    return None
