"""Reading, validity and readout of diagrams; attachment and vertical composition."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .diagram import Diagram, cc_closure, rt_closure, validate_diagram
from .errors import ClosureError, CompositionError, InvariantError, UsageError, ValidityError
from .layering import is_resolved, layer_index, segmentation
from .resolution import resolve
from .semantics import MatrixModel, eval_term, kron_all
from .signature import IdOn, format_word, layer_dom_cod
from .term import LayeredTerm


@dataclass
class ValidityReport:
    mismatches: list = field(default_factory=list)  # (boundary, cod below, dom above)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def text_mismatches(self):
        return [(k, format_word(c), format_word(d)) for k, c, d in self.mismatches]


def reading(d: Diagram) -> list:
    """Per-layer factor sequences of a resolved diagram, in layer order."""
    if not is_resolved(d):
        raise UsageError("diagram has unresolved edges; resolve it first")
    return [tuple(d.mu[n] for n in layer) for layer in segmentation(d).layers]


def require_structure(d: Diagram) -> None:
    rep = validate_diagram(d)
    if not rep.ok:
        raise UsageError("not a monoidal diagram: %s" % rep.violations[0])


def _boundaries(d: Diagram):
    require_structure(d)
    layers = reading(resolve(d)[0])
    return layers, [layer_dom_cod(layer, d.sig) for layer in layers]


def check_validity(d: Diagram) -> ValidityReport:
    _, bounds = _boundaries(d)
    rep = ValidityReport()
    for k in range(len(bounds) - 1):
        below, above = bounds[k][1], bounds[k + 1][0]
        if below != above:
            rep.mismatches.append((k + 1, below, above))
    return rep


def readout(d: Diagram) -> LayeredTerm:
    layers, bounds = _boundaries(d)
    rep = ValidityReport([(k + 1, bounds[k][1], bounds[k + 1][0])
                          for k in range(len(bounds) - 1) if bounds[k][1] != bounds[k + 1][0]])
    if not rep.ok:
        raise ValidityError(rep)
    return LayeredTerm(bounds[0][0], tuple(layers), bounds[-1][1]).check(d.sig)


def _suffixed(d: Diagram, i: int):
    r = lambda n: "%s.%d" % (n, i)
    re_ = lambda e: (r(e[0]), r(e[1]))
    mu = {r(n): f for n, f in d.mu.items()}
    edges = {re_(e) for e in d.edges}
    order = {(re_(e), re_(f)) for e, f in d.order}
    return mu, edges, order


def _close(d: Diagram, what: str) -> Diagram:
    try:
        return cc_closure(d)
    except ClosureError as exc:
        raise InvariantError("%s produced an inconsistent order: %s" % (what, exc)) from exc


def _same_signature(ds: Sequence[Diagram]) -> None:
    for d in ds[1:]:
        if d.sig != ds[0].sig:
            raise UsageError("diagrams are over different signatures")


def _top_layer(d: Diagram) -> list:
    level = layer_index(d)
    r = max(level.values())
    return [n for n in d.nodes if level[n] == r]


def attach(ds: Sequence[Diagram]) -> Diagram:
    """Tensor of diagrams: disjoint union with later components to the right.

    Components of lower rank are first resolved and then topped up with
    identity nodes so that every component spans the same layers.
    """
    ds = list(ds)
    if not ds:
        raise UsageError("attach needs at least one diagram")
    _same_signature(ds)
    ranks = [max(layer_index(d).values(), default=0) for d in ds]
    height = max(ranks)
    mu, edges, order, groups = {}, set(), set(), []
    for i, (d, r) in enumerate(zip(ds, ranks)):
        if r < height:
            readout(d)
            d = resolve(d)[0]
            m = dict(d.mu)
            es = set(d.edges)
            # one chain per top node; a shared pad would close an undirected cycle
            for t in _top_layer(d):
                cod = IdOn(layer_dom_cod([d.mu[t]], d.sig)[1])
                prev = t
                for k in range(r + 1, height + 1):
                    pad = "%%pad%%%s%%%d" % (t, k)
                    m[pad] = cod
                    es.add((prev, pad))
                    prev = pad
            d = _close(Diagram(d.sig, m, frozenset(es), rt_closure(d.order, es)), "padding")
        cmu, ce, co = _suffixed(d, i)
        mu.update(cmu)
        edges |= ce
        order |= co
        groups.append(ce)
    for i, left in enumerate(groups):
        for right in groups[i + 1:]:
            order |= {(e, f) for e in left for f in right}
    d = Diagram(ds[0].sig, mu, frozenset(edges), rt_closure(order, edges))
    return _close(d, "attachment")


def _staircase(low: Sequence[str], high: Sequence[str]) -> set:
    """Non-crossing edges joining two ordered rows, covering both."""
    n = max(len(low), len(high))
    return {(low[min(k, len(low) - 1)], high[min(k, len(high) - 1)]) for k in range(n)}


def compose_vertical(d1: Diagram, d2: Diagram) -> Diagram:
    """Stack ``d2`` on top of ``d1``; the result reads out as readout(d2) after readout(d1)."""
    _same_signature([d1, d2])
    t1, t2 = readout(d1), readout(d2)
    if t1.cod != t2.dom:
        raise CompositionError("cannot compose: codomain %s does not match domain %s"
                               % (format_word(t1.cod), format_word(t2.dom)))
    r1, r2 = resolve(d1)[0], resolve(d2)[0]
    top = ["%s.0" % n for n in segmentation(r1).layers[-1]]
    bottom = ["%s.1" % n for n in segmentation(r2).layers[0]]
    mu0, e0, o0 = _suffixed(r1, 0)
    mu1, e1, o1 = _suffixed(r2, 1)
    edges = e0 | e1 | _staircase(top, bottom)
    d = Diagram(d1.sig, {**mu0, **mu1}, frozenset(edges), rt_closure(o0 | o1, edges))
    return _close(d, "composition")


def readout_functor_check(ds: Sequence[Diagram], model: MatrixModel) -> bool:
    """Does the readout of an attachment evaluate to the Kronecker product of readouts?"""
    whole = eval_term(model, readout(attach(ds)))
    parts = kron_all([eval_term(model, readout(d)) for d in ds])
    return whole == parts
