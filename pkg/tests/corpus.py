"""Exhaustive small-diagram corpus shared by the property and acceptance tests."""

from __future__ import annotations

import functools
import itertools

from mondiag.diagram import make_diagram, validate_diagram
from mondiag.errors import ClosureError, DiagramError
from mondiag.iso import diagram_iso
from mondiag.readout import readout
from mondiag.semantics import parse_model
from mondiag.signature import Gen, parse_signature

CORPUS_SIGNATURE = parse_signature("""
object A
gen d : A -> A A
gen m : A A -> A
gen u : 1 -> A
""")

CORPUS_MODEL = parse_model("""
dim A 2
mat d 1,0 ; 0,1 ; 2,-1 ; 1/3,1 ;
mat m 1,0,2,1 ; 0,-1,1,1/2 ;
mat u 3 ; -2/5 ;
""", CORPUS_SIGNATURE)

NAMES = "abcd"


def _acyclic(n, edges):
    succ = {i: [b for a, b in edges if a == i] for i in range(n)}
    state = {}

    def dfs(i):
        state[i] = 1
        for j in succ[i]:
            if state.get(j) == 1 or (j not in state and not dfs(j)):
                return False
        state[i] = 2
        return True

    return all(i in state or dfs(i) for i in range(n))


def _canon(n, edges):
    return min(tuple(sorted((p[a], p[b]) for a, b in edges))
               for p in itertools.permutations(range(n)))


@functools.lru_cache(maxsize=None)
def edge_sets(max_nodes=4):
    """Vertical comparators up to relabeling: irreflexive, antisymmetric, acyclic, weakly total."""
    out = []
    for n in range(2, max_nodes + 1):
        pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
        seen = set()
        for mask in range(1, 1 << len(pairs)):
            es = [p for k, p in enumerate(pairs) if mask >> k & 1]
            if any((b, a) in es for a, b in es):
                continue
            if {x for e in es for x in e} != set(range(n)):
                continue
            if not _acyclic(n, es):
                continue
            key = _canon(n, es)
            if key in seen:
                continue
            seen.add(key)
            out.append((n, key))
    return out


def seeds(edges, size=2):
    pairs = [(e, f) for e in edges for f in edges if e != f]
    for k in range(size + 1):
        yield from itertools.combinations(pairs, k)


def _named(n, es):
    return [NAMES[i] for i in range(n)], [(NAMES[a], NAMES[b]) for a, b in es]


@functools.lru_cache(maxsize=None)
def raw_and_closed(max_nodes=4):
    """All (raw, closed-or-None) diagram pairs, every node labelled ``d``."""
    out = []
    for n, es in edge_sets(max_nodes):
        nodes, edges = _named(n, es)
        mu = {x: Gen("d") for x in nodes}
        for seed in seeds(edges):
            raw = make_diagram(CORPUS_SIGNATURE, mu, edges, seed, close=False)
            try:
                closed = make_diagram(CORPUS_SIGNATURE, mu, edges, seed)
            except ClosureError:
                closed = None
            out.append((raw, closed))
    return out


@functools.lru_cache(maxsize=None)
def structures(max_nodes=4):
    """Distinct closed diagrams that satisfy every axiom (labels all ``d``)."""
    seen, out = set(), []
    for _, d in raw_and_closed(max_nodes):
        if d is None:
            continue
        key = (d.edges, d.order)
        if key in seen:
            continue
        seen.add(key)
        if validate_diagram(d).ok:
            out.append(d)
    return out


@functools.lru_cache(maxsize=None)
def labeled_valid(max_nodes=4):
    """Every labeling of every valid structure whose readout type-checks."""
    gens = [g.name for g in CORPUS_SIGNATURE.gens]
    out = []
    for d in structures(max_nodes):
        for labels in itertools.product(gens, repeat=len(d.mu)):
            mu = {n: Gen(g) for n, g in zip(d.nodes, labels)}
            cand = type(d)(d.sig, mu, d.edges, d.order)
            try:
                readout(cand)
            except DiagramError:
                continue
            out.append(cand)
    return out


@functools.lru_cache(maxsize=None)
def representatives(max_nodes=4):
    """``labeled_valid`` reduced up to diagram isomorphism."""
    reps = []
    for d in labeled_valid(max_nodes):
        if not any(len(r.mu) == len(d.mu) and diagram_iso(r, d) is not None for r in reps):
            reps.append(d)
    return reps


@functools.lru_cache(maxsize=None)
def canonical(max_nodes=4):
    """One labeling per valid structure: the first (lexicographically) that reads out."""
    out, seen = [], set()
    for d in labeled_valid(max_nodes):
        key = (d.edges, d.order)
        if key not in seen:
            seen.add(key)
            out.append(d)
    return out
