"""Incision of layer-skipping edges and the global resolver."""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram, Edge, cc_closure
from .errors import ClosureError, InvariantError, UsageError
from .layering import layer_index, loose_positions, unresolved_edges
from .signature import IdOn, factor_dom_cod


@dataclass(frozen=True)
class Incision:
    removed: Edge
    inserted_node: str
    inserted_edges: tuple  # ((src, new), (new, dst))
    cohesion: dict  # new edge set -> old edge set


@dataclass
class ResolutionTrace:
    steps: list = field(default_factory=list)

    @property
    def resistivity(self) -> int:
        return len(self.steps)


def _fresh(d: Diagram, e: Edge, step: int) -> str:
    name = "%s%%%s%%%d" % (e[0], e[1], step)
    while name in d.mu:
        step += 1
        name = "%s%%%s%%%d" % (e[0], e[1], step)
    return name


def incise(d: Diagram, e: Edge, step: int = 1) -> tuple[Diagram, Incision]:
    """Replace the skip edge ``e`` by a two-edge path through a new identity node."""
    e = tuple(e)
    if e not in unresolved_edges(d):
        raise UsageError("edge %s -> %s is not unresolved" % e)
    src, dst = e
    n = _fresh(d, e, step)
    _, cod = factor_dom_cod(d.mu[src], d.sig)
    mu = dict(d.mu)
    mu[n] = IdOn(cod)
    low, high = (src, n), (n, dst)
    edges = (d.edges - {e}) | {low, high}
    coh = {x: x for x in edges}
    coh[low] = coh[high] = e
    strict = d.strict_order()
    order = {(a, b) for a in edges for b in edges if (coh[a], coh[b]) in strict}
    order |= {(a, a) for a in edges}
    try:
        out = cc_closure(Diagram(d.sig, mu, frozenset(edges), frozenset(order)))
    except ClosureError as exc:
        raise InvariantError("incising %s -> %s broke the horizontal order: %s"
                             % (src, dst, exc)) from exc
    return out, Incision(e, n, (low, high), coh)


def edge_key(d: Diagram):
    level, pos = loose_positions(d)
    return lambda e: (level[e[0]], pos[e[0]], level[e[1]], pos[e[1]])


def resolve(d: Diagram) -> tuple[Diagram, ResolutionTrace]:
    trace = ResolutionTrace()
    while True:
        todo = unresolved_edges(d)
        if not todo:
            return d, trace
        e = min(todo, key=edge_key(d))
        d, inc = incise(d, e, len(trace.steps) + 1)
        trace.steps.append(inc)


def resistivity_bound(d: Diagram) -> int:
    """Sum of (layer gap - 1) over skip edges."""
    level = layer_index(d)
    return sum(level[b] - level[a] - 1 for a, b in unresolved_edges(d))
