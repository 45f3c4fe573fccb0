"""Layered terms: a domain word and a bottom-to-top list of tensor layers."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantError
from .signature import IdOn, Signature, format_word, layer_dom_cod

TENSOR = " ⊗ "


@dataclass(frozen=True)
class LayeredTerm:
    dom: tuple
    layers: tuple  # tuple[tuple[Factor, ...], ...], layer 1 first
    cod: tuple

    def mismatches(self, sig: Signature) -> list:
        """Boundaries ``k`` (1-based) where layer k's codomain is not layer k+1's domain."""
        bad = []
        bounds = [layer_dom_cod(layer, sig) for layer in self.layers]
        for k in range(len(bounds) - 1):
            if bounds[k][1] != bounds[k + 1][0]:
                bad.append((k + 1, bounds[k][1], bounds[k + 1][0]))
        return bad

    def check(self, sig: Signature) -> "LayeredTerm":
        if self.mismatches(sig):
            raise InvariantError("incoherent term boundaries: %r" % self.mismatches(sig))
        if self.layers:
            if layer_dom_cod(self.layers[0], sig)[0] != self.dom or \
                    layer_dom_cod(self.layers[-1], sig)[1] != self.cod:
                raise InvariantError("term dom/cod disagree with its layers")
        elif self.dom != self.cod:
            raise InvariantError("empty term must be an identity")
        return self

    def to_text(self) -> str:
        lines = ["dom: " + format_word(self.dom)]
        for k, layer in enumerate(self.layers, 1):
            lines.append("layer %d: %s" % (k, TENSOR.join(str(f) for f in layer)))
        lines.append("cod: " + format_word(self.cod))
        return "\n".join(lines)

    def to_porcelain(self) -> str:
        lines = ["dom\t" + "\t".join(self.dom)]
        for k, layer in enumerate(self.layers, 1):
            lines.append("\t".join(["layer", str(k)] + [str(f) for f in layer]))
        lines.append("cod\t" + "\t".join(self.cod))
        return "\n".join(lines)


def term_of(layers, sig: Signature) -> LayeredTerm:
    """Build a coherent term from factor layers (at least one layer)."""
    layers = tuple(tuple(layer) for layer in layers)
    dom = layer_dom_cod(layers[0], sig)[0]
    cod = layer_dom_cod(layers[-1], sig)[1]
    return LayeredTerm(dom, layers, cod).check(sig)


def identity_term(word) -> LayeredTerm:
    return LayeredTerm(tuple(word), (), tuple(word))


def pad_term(t: LayeredTerm, n: int) -> LayeredTerm:
    """Append identity layers on top until ``t`` has ``n`` layers."""
    extra = ((IdOn(t.cod),),) * (n - len(t.layers))
    return LayeredTerm(t.dom, t.layers + extra, t.cod)


def compose_terms(first: LayeredTerm, second: LayeredTerm) -> LayeredTerm:
    """``second`` after ``first``: stack the layers of ``second`` on top."""
    if first.cod != second.dom:
        raise InvariantError("cannot compose: %s then %s"
                             % (format_word(first.cod), format_word(second.dom)))
    return LayeredTerm(first.dom, first.layers + second.layers, second.cod)
