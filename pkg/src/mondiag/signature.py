"""Free strict monoidal signatures: object words and morphism generators.

The monoidal unit is the empty word and the tensor on objects is plain
concatenation, so associativity and unit laws hold on the nose.

>>> sig = parse_signature('''
... object A
... object B
... gen f : A -> A A
... gen g : B -> 1
... ''')
>>> factor_dom_cod(Gen('f'), sig)
(('A',), ('A', 'A'))
>>> factor_dom_cod(Gen('g'), sig)
(('B',), ())
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import LookupFailure, ParseError

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

Word = tuple  # tuple[str, ...]; the empty tuple is the unit


def word_concat(*words: Sequence[str]) -> Word:
    """Strict n-ary tensor of object words (nullary case is the unit)."""
    out: list[str] = []
    for w in words:
        out.extend(w)
    return tuple(out)


def format_word(w: Sequence[str]) -> str:
    return " ".join(w) if w else "1"


def parse_word(tokens: Sequence[str]) -> Word:
    if list(tokens) == ["1"]:
        return ()
    return tuple(tokens)


@dataclass(frozen=True)
class MorGen:
    name: str
    dom: Word
    cod: Word


@dataclass(frozen=True)
class Gen:
    """A factor naming a morphism generator."""

    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class IdOn:
    """The identity factor on an object word."""

    word: Word = ()

    def __str__(self):
        return "id[%s]" % format_word(self.word)


Factor = Union[Gen, IdOn]


@dataclass(frozen=True)
class Signature:
    objects: tuple = ()
    gens: tuple = ()  # tuple[MorGen, ...]
    path: str | None = field(default=None, compare=False)

    def __post_init__(self):
        seen = set()
        for name in self.objects:
            if not IDENT.match(name):
                raise ValueError("bad object name %r" % name)
            if name in seen:
                raise ValueError("duplicate object %r" % name)
            seen.add(name)
        names = set()
        for g in self.gens:
            if not IDENT.match(g.name):
                raise ValueError("bad generator name %r" % g.name)
            if g.name in names:
                raise ValueError("duplicate generator %r" % g.name)
            names.add(g.name)
            self.check_word(g.dom)
            self.check_word(g.cod)

    def check_word(self, w: Iterable[str]) -> None:
        for x in w:
            if x not in self.objects:
                raise LookupFailure("unknown object %r" % x)

    def gen(self, name: str) -> MorGen:
        for g in self.gens:
            if g.name == name:
                return g
        raise LookupFailure("unknown generator %r" % name)

    def has_gen(self, name: str) -> bool:
        return any(g.name == name for g in self.gens)

    def to_text(self) -> str:
        lines = ["object %s" % o for o in self.objects]
        lines += ["gen %s : %s -> %s" % (g.name, format_word(g.dom), format_word(g.cod))
                  for g in self.gens]
        return "\n".join(lines) + "\n"


def factor_dom_cod(f: Factor, sig: Signature) -> tuple[Word, Word]:
    if isinstance(f, IdOn):
        sig.check_word(f.word)
        return tuple(f.word), tuple(f.word)
    g = sig.gen(f.name)
    return g.dom, g.cod


def layer_dom_cod(factors: Sequence[Factor], sig: Signature) -> tuple[Word, Word]:
    """Boundary words of the tensor of ``factors`` in order."""
    pairs = [factor_dom_cod(f, sig) for f in factors]
    return word_concat(*(d for d, _ in pairs)), word_concat(*(c for _, c in pairs))


def parse_signature(text: str, path: str | None = None) -> Signature:
    objects: list[str] = []
    gens: list[MorGen] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            if toks[0] == "object":
                if len(toks) != 2:
                    raise ValueError("expected 'object <Name>'")
                if not IDENT.match(toks[1]):
                    raise ValueError("bad object name %r" % toks[1])
                if toks[1] in objects:
                    raise ValueError("duplicate object %r" % toks[1])
                objects.append(toks[1])
            elif toks[0] == "gen":
                if len(toks) < 4 or toks[2] != ":" or "->" not in toks:
                    raise ValueError("expected 'gen <name> : <word> -> <word>'")
                arrow = toks.index("->")
                dom, cod = parse_word(toks[3:arrow]), parse_word(toks[arrow + 1:])
                if not dom and toks[3:arrow] != ["1"]:
                    raise ValueError("missing domain word (use 1 for the unit)")
                if not cod and toks[arrow + 1:] != ["1"]:
                    raise ValueError("missing codomain word (use 1 for the unit)")
                for x in dom + cod:
                    if x not in objects:
                        raise ValueError("unknown object %r" % x)
                if not IDENT.match(toks[1]):
                    raise ValueError("bad generator name %r" % toks[1])
                if any(g.name == toks[1] for g in gens):
                    raise ValueError("duplicate generator %r" % toks[1])
                gens.append(MorGen(toks[1], dom, cod))
            else:
                raise ValueError("unknown directive %r" % toks[0])
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
    return Signature(tuple(objects), tuple(gens), path)
