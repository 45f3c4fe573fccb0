"""Isomorphism of diagrams by backtracking with invariant pruning."""

from __future__ import annotations

from .diagram import Diagram
from .errors import UsageError
from .layering import layer_index


def _invariants(d: Diagram) -> dict:
    try:
        level = layer_index(d)
    except UsageError:
        level = {}
    indeg = {n: 0 for n in d.mu}
    outdeg = {n: 0 for n in d.mu}
    for a, b in d.edges:
        outdeg[a] += 1
        indeg[b] += 1
    return {n: (repr(d.mu[n]), indeg[n], outdeg[n], level.get(n)) for n in d.mu}


def diagram_iso(d1: Diagram, d2: Diagram):
    """Return a node bijection d1 -> d2 preserving E, H and labels, or None."""
    if d1.sig != d2.sig:
        raise UsageError("diagrams are over different signatures")
    if (len(d1.mu), len(d1.edges), len(d1.order)) != (len(d2.mu), len(d2.edges), len(d2.order)):
        return None
    inv1, inv2 = _invariants(d1), _invariants(d2)
    if sorted(inv1.values()) != sorted(inv2.values()):
        return None
    nodes1 = d1.nodes
    cands = {n: [m for m in d2.nodes if inv2[m] == inv1[n]] for n in nodes1}
    mapping, used = {}, set()

    def consistent(u, v):
        for w, x in mapping.items():
            if ((u, w) in d1.edges) != ((v, x) in d2.edges):
                return False
            if ((w, u) in d1.edges) != ((x, v) in d2.edges):
                return False
        return ((u, u) in d1.edges) == ((v, v) in d2.edges)

    def order_ok():
        m = lambda e: (mapping[e[0]], mapping[e[1]])
        return all((m(e), m(f)) in d2.order for e, f in d1.order)

    def search(i):
        if i == len(nodes1):
            return order_ok()
        u = nodes1[i]
        for v in cands[u]:
            if v in used or not consistent(u, v):
                continue
            mapping[u] = v
            used.add(v)
            if search(i + 1):
                return True
            del mapping[u]
            used.discard(v)
        return False

    return dict(mapping) if search(0) else None
