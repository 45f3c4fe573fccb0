"""Rank, segmentation into layers, per-layer order, unresolved edges.

Layers are numbered from 1.  A node's layer is one more than the longest
E-path reaching it, which is the same as repeatedly stripping minimal nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import Diagram, _find_cycle, induced_first_order, node_levels, validate_diagram
from .errors import LayerOrderError, UsageError


@dataclass(frozen=True)
class Segmentation:
    layers: tuple  # tuple of tuples of node ids, in layer order
    layer_of: dict
    position_of: dict

    @property
    def rank(self) -> int:
        return len(self.layers)


def layer_index(d: Diagram) -> dict:
    level = node_levels(d.mu, d.edges)
    if level is None:
        cycle = _find_cycle(d.nodes, d.edges)
        raise UsageError("vertical comparator has a cycle through %s" % " -> ".join(cycle))
    return level


def rank(d: Diagram) -> int:
    """Length of the longest E-chain, counted in nodes.  ``d`` must be valid."""
    rep = validate_diagram(d)
    if not rep.ok:
        raise UsageError("rank of an invalid diagram: %s" % rep.violations[0])
    return max(layer_index(d).values(), default=0)


def _layer_members(d: Diagram, level: dict) -> list:
    r = max(level.values(), default=0)
    layers = [[] for _ in range(r)]
    for n in d.nodes:
        layers[level[n] - 1].append(n)
    return layers


def _order_layer(members, star):
    """Sort ``members`` by the induced node relation; return (order, bad pair)."""
    rel = {(a, b) for a, b in star if a != b and a in members and b in members}
    below = {n: sum((m, n) in rel for m in members) for n in members}
    seq = sorted(members, key=lambda n: (below[n], n))
    for i, a in enumerate(seq):
        for b in seq[i + 1:]:
            if (a, b) not in rel or (b, a) in rel:
                return seq, (a, b)
    return seq, None


def segmentation(d: Diagram) -> Segmentation:
    level = layer_index(d)
    star = induced_first_order(d.strict_order())
    layers = []
    for k, members in enumerate(_layer_members(d, level), 1):
        seq, bad = _order_layer(members, star)
        if bad is not None:
            a, b = bad
            how = "related both ways or cyclically" if (b, a) in star else "incomparable"
            raise LayerOrderError("layer %d: nodes %s and %s are %s" % (k, a, b, how), bad)
        layers.append(tuple(seq))
    position = {n: i for layer in layers for i, n in enumerate(layer)}
    return Segmentation(tuple(layers), level, position)


def loose_positions(d: Diagram) -> tuple[dict, dict]:
    """Layer index and a best-effort position for every node.

    Positions agree with :func:`segmentation` whenever every layer is totally
    ordered, and fall back to a deterministic tie-break otherwise.
    """
    level = layer_index(d)
    star = induced_first_order(d.strict_order())
    pos = {}
    for members in _layer_members(d, level):
        seq, _ = _order_layer(members, star)
        pos.update((n, i) for i, n in enumerate(seq))
    return level, pos


def unresolved_edges(d: Diagram) -> set:
    """Edges that skip over at least one layer."""
    level = layer_index(d)
    return {e for e in d.edges if level[e[1]] - level[e[0]] >= 2}


def is_resolved(d: Diagram) -> bool:
    return not unresolved_edges(d)


def layer_order(d: Diagram, k: int) -> tuple:
    level = layer_index(d)
    r = max(level.values(), default=0)
    if not 1 <= k <= r:
        raise UsageError("layer %d out of range 1..%d" % (k, r))
    members = [n for n in d.nodes if level[n] == k]
    seq, bad = _order_layer(members, induced_first_order(d.strict_order()))
    if bad is not None:
        raise LayerOrderError("layer %d is not totally ordered at %s, %s" % (k, *bad), bad)
    return tuple(seq)
