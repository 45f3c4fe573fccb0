"""Monoidal diagrams: nodes, vertical comparator E, horizontal comparator H.

Edges are ``(src, dst)`` node pairs.  ``H`` is held in closed form: the
reflexive-transitive closure of whatever generating pairs were supplied.
Construction via :func:`make_diagram` also applies the conditional
construction closure unless ``close=False``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import ClosureError, StructureError
from .signature import Factor, Gen, IdOn, Signature, factor_dom_cod

Edge = tuple  # (src, dst)


@dataclass(frozen=True)
class Diagram:
    sig: Signature
    mu: Mapping[str, Factor]
    edges: frozenset
    order: frozenset  # closed H, pairs of edges, reflexive

    @property
    def nodes(self) -> list:
        return sorted(self.mu)

    def strict_order(self) -> set:
        return {(e, f) for e, f in self.order if e != f}

    def preds(self) -> dict:
        out = {n: set() for n in self.mu}
        for a, b in self.edges:
            out[b].add(a)
        return out

    def succs(self) -> dict:
        out = {n: set() for n in self.mu}
        for a, b in self.edges:
            out[a].add(b)
        return out

    def minimal_nodes(self) -> list:
        targets = {b for _, b in self.edges}
        return [n for n in self.nodes if n not in targets]

    def maximal_nodes(self) -> list:
        sources = {a for a, _ in self.edges}
        return [n for n in self.nodes if n not in sources]

    def generating_order(self) -> set:
        """A small set of strict pairs whose closure is ``order``.

        Keeps only the covering pairs of the strict order, which is enough
        for a faithful round trip once conditional construction is reapplied.
        """
        strict = self.strict_order()
        if any((f, e) in strict for e, f in strict):
            return strict
        below = defaultdict(set)
        for e, f in strict:
            below[f].add(e)
        cover = set()
        for e, f in strict:
            if not any((e, g) in strict and (g, f) in strict for g in below[f]
                       if g != e and g != f):
                cover.add((e, f))
        return cover


def transitive_closure(pairs: Iterable[tuple]) -> set:
    succ = defaultdict(set)
    for a, b in pairs:
        succ[a].add(b)
    out = set()
    for a in list(succ):
        seen = set()
        stack = list(succ[a])
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(succ.get(x, ()))
        out.update((a, x) for x in seen)
    return out


def rt_closure(pairs: Iterable[tuple], universe: Iterable) -> frozenset:
    return frozenset(transitive_closure(pairs) | {(x, x) for x in universe})


def induced_first_order(rel: Iterable[tuple], edges: Iterable[Edge] | None = None) -> frozenset:
    """Project an edge relation onto nodes: sources to sources, targets to targets.

    >>> sorted(induced_first_order({(('a', 'x'), ('b', 'x'))}))
    [('a', 'b'), ('x', 'x')]
    """
    known = None if edges is None else set(edges)
    out = set()
    for e, f in rel:
        if known is not None and (e not in known or f not in known):
            raise StructureError("pair %r references an edge outside E" % ((e, f),))
        out.add((e[0], f[0]))
        out.add((e[1], f[1]))
    return frozenset(out)


def _touching(edges: Iterable[Edge]) -> dict:
    touch = defaultdict(set)
    for e in edges:
        touch[e[0]].add(e)
        touch[e[1]].add(e)
    return touch


def _antisymmetry_witness(order: Iterable[tuple]):
    order = set(order)
    for e, f in sorted(order):
        if e != f and (f, e) in order:
            return (e, f)
    return None


def node_levels(nodes: Iterable[str], edges: Iterable[Edge]) -> dict | None:
    """Layer of every node (longest incoming E-path, counted in nodes), or None if E is cyclic."""
    nodes = list(nodes)
    preds = {n: [] for n in nodes}
    indeg = {n: 0 for n in nodes}
    succ = defaultdict(list)
    for a, b in edges:
        preds[b].append(a)
        succ[a].append(b)
        indeg[b] += 1
    level = {}
    ready = [n for n in nodes if indeg[n] == 0]
    while ready:
        n = ready.pop()
        level[n] = 1 + max((level[p] for p in preds[n]), default=0)
        for m in succ[n]:
            indeg[m] -= 1
            if indeg[m] == 0:
                ready.append(m)
    return level if len(level) == len(nodes) else None


def _point(e: Edge, k: int, level: dict):
    """Where edge ``e`` sits on layer ``k``: an endpoint, or a strand marker."""
    if level[e[0]] == k:
        return e[0]
    if level[e[1]] == k:
        return e[1]
    return ("strand", e, k)


def trigger_relation(order: Iterable[tuple], level: dict | None) -> set:
    """Off-diagonal, same-layer part of the induced node relation of ``order``.

    An edge that skips layers is treated as a strand through every layer it
    crosses, so two edges are compared on each layer they both occupy.  Pairs
    of points on different layers carry no horizontal information and are
    dropped.  With a cyclic E there are no layers and every off-diagonal pair
    of endpoints is kept.
    """
    strict = [(e, f) for e, f in order if e != f]
    if level is None:
        return {(a, b) for a, b in induced_first_order(strict) if a != b}
    out = set()
    for e, f in strict:
        lo = max(level[e[0]], level[f[0]])
        hi = min(level[e[1]], level[f[1]])
        for k in range(lo, hi + 1) if lo < hi else ():
            a, b = _point(e, k, level), _point(f, k, level)
            if a != b:
                out.add((a, b))
    return out


def forced_pairs(edges: Iterable[Edge], order: Iterable[tuple], level: dict | None) -> set:
    """Edge pairs that conditional construction demands, given ``order``.

    A pair (e, f) is forced when a point of e is related to a point of f by
    the trigger relation.  A strand point touches only its own edge.
    """
    touch = _touching(edges)
    out = set()
    for a, b in trigger_relation(order, level):
        left = (a[1],) if isinstance(a, tuple) else touch.get(a, ())
        right = (b[1],) if isinstance(b, tuple) else touch.get(b, ())
        for e in left:
            for f in right:
                if e != f:
                    out.add((e, f))
    return out


def cc_closure(d: Diagram) -> Diagram:
    """Least extension of H closed under conditional construction and transitivity."""
    h = set(rt_closure(d.order, d.edges))
    level = node_levels(d.mu, d.edges)
    while True:
        bad = _antisymmetry_witness(h)
        if bad is not None:
            raise ClosureError("closure relates edges %s and %s both ways" % bad, bad)
        new = forced_pairs(d.edges, h, level) - h
        if not new:
            break
        h = set(rt_closure(h | new, d.edges))
    return Diagram(d.sig, d.mu, d.edges, frozenset(h))


def make_diagram(sig: Signature, mu: Mapping[str, Factor], edges: Iterable[Edge],
                 order: Iterable[tuple] = (), close: bool = True) -> Diagram:
    mu = dict(mu)
    edges = frozenset(tuple(e) for e in edges)
    for node, f in mu.items():
        if not isinstance(f, (Gen, IdOn)):
            raise StructureError("node %r: label %r is not a factor" % (node, f))
        try:
            factor_dom_cod(f, sig)
        except KeyError as exc:
            raise StructureError("node %r: %s" % (node, exc)) from None
    for a, b in edges:
        for n in (a, b):
            if n not in mu:
                raise StructureError("edge %r uses undeclared node %r" % ((a, b), n))
    order = [tuple(p) for p in order]
    for e, f in order:
        for x in (e, f):
            if x not in edges:
                raise StructureError("order pair uses unknown edge %r" % (x,))
    d = Diagram(sig, mu, edges, rt_closure(order, edges))
    return cc_closure(d) if close else d


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: object

    def __str__(self):
        return "%s: %r" % (self.condition, self.witness)


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def conditions(self) -> set:
        return {v.condition for v in self.violations}

    def __bool__(self):
        return self.ok


# Condition tags, in report order.
E_IRREFLEXIVE = "E-irreflexive"
E_ANTISYMMETRIC = "E-antisymmetric"
E_ACYCLIC = "E-acyclic"
E_WEAKLY_TOTAL = "E-weakly-total"
H_PARTIAL_ORDER = "H-partial-order"
TRIANGLE = "triangle"
MINIMAL = "minimal-comparable"
CONDITIONAL = "conditional-construction"


def _find_cycle(nodes, edges):
    succ = defaultdict(list)
    for a, b in sorted(edges):
        succ[a].append(b)
    color = {}
    for root in nodes:
        if root in color:
            continue
        stack = [(root, iter(succ[root]))]
        path = [root]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                path.pop()
            elif color.get(nxt) == 1:
                return tuple(path[path.index(nxt):])
            elif nxt not in color:
                color[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
                path.append(nxt)
    return None


def validate_diagram(d: Diagram) -> ValidationReport:
    """Check every monoidal-diagram axiom; violations are returned, not raised."""
    rep = ValidationReport()
    add = lambda cond, w: rep.violations.append(Violation(cond, w))

    for a, b in sorted(d.edges):
        if a == b:
            add(E_IRREFLEXIVE, (a, b))
        elif a < b and (b, a) in d.edges:
            add(E_ANTISYMMETRIC, (a, b))
    cycle = _find_cycle(d.nodes, d.edges)
    if cycle is not None:
        add(E_ACYCLIC, cycle)
    used = {n for e in d.edges for n in e}
    for n in d.nodes:
        if n not in used:
            add(E_WEAKLY_TOTAL, n)

    bad = _antisymmetry_witness(d.order)
    if bad is not None:
        add(H_PARTIAL_ORDER, bad)

    elist = sorted(d.edges)
    for i, e in enumerate(elist):
        for f in elist[i + 1:]:
            if (e[0] == f[0] or e[1] == f[1]) and (e, f) not in d.order \
                    and (f, e) not in d.order:
                add(TRIANGLE, (e, f))

    star = induced_first_order(d.order)
    mins = d.minimal_nodes()
    for i, a in enumerate(mins):
        for b in mins[i + 1:]:
            if (a, b) not in star and (b, a) not in star:
                add(MINIMAL, (a, b))

    level = node_levels(d.mu, d.edges)
    for p in sorted(forced_pairs(d.edges, d.order, level) - d.order):
        add(CONDITIONAL, p)
    return rep


def relabel(d: Diagram, rename: Mapping[str, str]) -> Diagram:
    """Rename nodes; ``rename`` must be injective on the node set."""
    r = lambda n: rename.get(n, n)
    re_ = lambda e: (r(e[0]), r(e[1]))
    mu = {r(n): f for n, f in d.mu.items()}
    if len(mu) != len(d.mu):
        raise StructureError("renaming is not injective")
    return Diagram(d.sig, mu, frozenset(re_(e) for e in d.edges),
                   frozenset((re_(e), re_(f)) for e, f in d.order))
