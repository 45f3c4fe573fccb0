"""Diagram text format, printer and DOT rendering.

Grammar, one declaration per line, ``#`` starts a comment::

    use <signature-path>
    node <id> <gen-name>
    node <id> id@<word>          # word tokens as in signatures, ``1`` for the unit
    edge <eid> <src> <dst>
    ord <eid> < <eid>

Every id must be declared before it is referenced.  ``ord`` lines list
generating pairs only; the parser closes them.
"""

from __future__ import annotations

import os
import re

from .diagram import Diagram, make_diagram
from .errors import ParseError, UsageError
from .layering import segmentation
from .readout import require_structure
from .signature import Gen, IdOn, Signature, format_word, parse_signature, parse_word

# node and edge ids; wider than signature identifiers so that generated
# names (``a%c%1``, ``x.0``, ``%pad%t%2``) survive a round trip
ID = re.compile(r"[A-Za-z0-9_.%]+\Z")


def load_signature(path: str) -> Signature:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError("cannot read signature %s: %s" % (path, exc.strerror)) from None
    try:
        return parse_signature(text, os.path.abspath(path))
    except ParseError as exc:
        raise ParseError(exc.lineno, "%s: %s" % (path, exc.reason)) from None


def parse_diagram(text: str, sig: Signature | None = None, base_dir: str = ".",
                  raw: bool = False) -> Diagram:
    """Parse a diagram file.  ``sig`` is used when the file has no ``use`` line.

    The result is closed under conditional construction unless ``raw``; it is
    not validated.
    """
    mu: dict = {}
    edges: dict = {}  # eid -> (src, dst)
    pairs: list = []
    seen_use = False
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split("#", 1)[0].split()
        if not toks:
            continue
        head = toks[0]

        def fail(reason):
            raise ParseError(lineno, reason)

        if head == "use":
            if len(toks) != 2:
                fail("expected 'use <path>'")
            if seen_use:
                fail("duplicate 'use' line")
            if mu or edges:
                fail("'use' must come before any node or edge")
            seen_use = True
            path = toks[1] if os.path.isabs(toks[1]) else os.path.join(base_dir, toks[1])
            sig = load_signature(path)
        elif head == "node":
            if len(toks) < 3:
                fail("expected 'node <id> <gen>' or 'node <id> id@<word>'")
            if sig is None:
                fail("no signature: add a 'use <path>' line first")
            nid = toks[1]
            if not ID.match(nid):
                fail("bad node id %r" % nid)
            if nid in mu:
                fail("duplicate node id %r" % nid)
            if toks[2].startswith("id@"):
                word_toks = [toks[2][3:]] + toks[3:]
                if word_toks[0] == "":
                    fail("missing word after 'id@'")
                word = parse_word(word_toks)
                for x in word:
                    if x not in sig.objects:
                        fail("unknown object %r" % x)
                mu[nid] = IdOn(word)
            else:
                if len(toks) != 3:
                    fail("expected 'node <id> <gen>'")
                if not sig.has_gen(toks[2]):
                    fail("unknown generator %r" % toks[2])
                mu[nid] = Gen(toks[2])
        elif head == "edge":
            if len(toks) != 4:
                fail("expected 'edge <eid> <src> <dst>'")
            eid, src, dst = toks[1:]
            if not ID.match(eid):
                fail("bad edge id %r" % eid)
            if eid in edges:
                fail("duplicate edge id %r" % eid)
            for n in (src, dst):
                if n not in mu:
                    fail("unknown node %r" % n)
            if (src, dst) in edges.values():
                fail("edge %s -> %s declared twice" % (src, dst))
            edges[eid] = (src, dst)
        elif head == "ord":
            if len(toks) != 4 or toks[2] != "<":
                fail("expected 'ord <eid> < <eid>'")
            for eid in (toks[1], toks[3]):
                if eid not in edges:
                    fail("unknown edge %r" % eid)
            pairs.append((edges[toks[1]], edges[toks[3]]))
        else:
            fail("unknown directive %r" % head)
    if sig is None:
        raise UsageError("no signature: add a 'use <path>' line")
    return make_diagram(sig, mu, edges.values(), pairs, close=not raw)


def read_diagram(path: str, raw: bool = False, sig: Signature | None = None) -> Diagram:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc.strerror)) from None
    return parse_diagram(text, sig, os.path.dirname(os.path.abspath(path)), raw)


def format_factor(f) -> str:
    if isinstance(f, IdOn):
        return "id@" + format_word(f.word)
    return f.name


def print_diagram(d: Diagram, use: str | None = None) -> str:
    """Diagram file text for ``d``; edges get ids ``e1, e2, ...`` in sorted order."""
    lines = []
    use = use or d.sig.path
    if use:
        lines.append("use %s" % use)
    for n in d.nodes:
        lines.append("node %s %s" % (n, format_factor(d.mu[n])))
    eid = {e: "e%d" % k for k, e in enumerate(sorted(d.edges), 1)}
    for e in sorted(d.edges):
        lines.append("edge %s %s %s" % (eid[e], e[0], e[1]))
    for e, f in sorted(d.generating_order()):
        lines.append("ord %s < %s" % (eid[e], eid[f]))
    return "\n".join(lines) + "\n"


def _q(s: str) -> str:
    return '"%s"' % s.replace("\\", "\\\\").replace('"', '\\"')


def render_dot(d: Diagram) -> str:
    """DOT digraph: one same-rank subgraph per layer, nodes left to right by H*."""
    require_structure(d)
    seg = segmentation(d)
    out = ["digraph diagram {", "  rankdir=BT;", "  node [shape=box];"]
    for k, layer in enumerate(seg.layers, 1):
        out.append("  subgraph cluster_layer%d {" % k)
        out.append("    label=%s;" % _q("layer %d" % k))
        out.append("    rank=same;")
        for n in layer:
            out.append("    %s [label=%s];" % (_q(n), _q(str(d.mu[n]))))
        for a, b in zip(layer, layer[1:]):
            # invisible edges pin the left-to-right order
            out.append("    %s -> %s [style=invis];" % (_q(a), _q(b)))
        out.append("  }")
    for a, b in sorted(d.edges):
        out.append("  %s -> %s;" % (_q(a), _q(b)))
    out.append("}")
    return "\n".join(out) + "\n"

