"""Finite unbiased tensors: ordinal partitions, flattening, n-ary tensors
and mechanical checks of the coherence equations and the interchange law.

Only finite ordinals are handled; the limit clauses of the infinitary
definitions have no finite counterpart.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import StructureError, UsageError
from .semantics import MatrixModel, eval_term
from .signature import Gen, IdOn, word_concat
from .term import LayeredTerm, compose_terms, pad_term, term_of

# argument words for the coherence sweep: the unit, single objects, a pair
SAMPLE_WORDS = ((), ("A",), ("B",), ("A", "B"))


@dataclass(frozen=True)
class Partition:
    parts: tuple
    total: int

    def __post_init__(self):
        if any(p < 0 for p in self.parts) or sum(self.parts) != self.total:
            raise StructureError("parts %r do not sum to %d" % (self.parts, self.total))

    @property
    def length(self) -> int:
        return len(self.parts)

    def blocks(self, items: Sequence) -> list:
        """Cut ``items`` into consecutive blocks of the given sizes."""
        if len(items) != self.total:
            raise StructureError("expected %d items, got %d" % (self.total, len(items)))
        return [list(b) for b in _cut(items, self.parts)]


@dataclass(frozen=True)
class DoublePartition:
    outer: Partition
    inners: tuple  # tuple[Partition, ...]

    def __post_init__(self):
        if len(self.inners) != len(self.outer.parts):
            raise StructureError("%d inner partitions for %d outer parts"
                                 % (len(self.inners), len(self.outer.parts)))
        for i, (p, q) in enumerate(zip(self.outer.parts, self.inners)):
            if q.total != p:
                raise StructureError("inner partition %d sums to %d, expected %d"
                                     % (i, q.total, p))


@functools.lru_cache(maxsize=None)
def _compositions(alpha: int, gamma: int) -> tuple:
    if gamma == 0:
        return ((),) if alpha == 0 else ()
    out = []
    # stars and bars: bar positions among alpha + gamma - 1 slots
    for bars in itertools.combinations(range(alpha + gamma - 1), gamma - 1):
        edges = (-1,) + bars + (alpha + gamma - 1,)
        out.append(tuple(b - a - 1 for a, b in zip(edges, edges[1:])))
    return tuple(sorted(out))


def enumerate_partitions(alpha: int, gamma: int) -> list:
    """All length-``gamma`` natural sequences summing to ``alpha``, lexicographically."""
    return [Partition(parts, alpha) for parts in _compositions(alpha, gamma)]


def flatten(dp: DoublePartition) -> Partition:
    DoublePartition(dp.outer, tuple(dp.inners))  # re-validate
    return Partition(tuple(x for q in dp.inners for x in q.parts), dp.outer.total)


def _inner_choices(parts: tuple, budget: int):
    """Tuples of inner compositions, one per outer part, with total length <= budget."""
    if not parts:
        yield ()
        return
    for delta in range(budget + 1):
        for q in _compositions(parts[0], delta):
            for rest in _inner_choices(parts[1:], budget - delta):
                yield (q,) + rest


def double_partitions(outer: Partition, max_len: int):
    """Every double partition over ``outer`` whose flattening has at most ``max_len`` parts."""
    for inners in _inner_choices(outer.parts, max_len):
        yield DoublePartition(outer, tuple(Partition(q, sum(q)) for q in inners))


def _cut(items: Sequence, sizes: Sequence[int]) -> list:
    out, i = [], 0
    for n in sizes:
        out.append(items[i:i + n])
        i += n
    return out


def _tensor_terms(terms: Sequence[LayeredTerm]) -> LayeredTerm:
    height = max((len(t.layers) for t in terms), default=0)
    padded = [pad_term(t, height) for t in terms]
    layers = []
    for k in range(height):
        # id on the empty word is the strict unit; keep it only in an otherwise empty layer
        layer = tuple(f for t in padded for f in t.layers[k] if f != IdOn(()))
        layers.append(layer or (IdOn(()),))
    layers = tuple(layers)
    return LayeredTerm(word_concat(*(t.dom for t in terms)), layers,
                       word_concat(*(t.cod for t in terms)))


def derived_tensor(args: Sequence):
    """n-ary tensor by the left fold F(0) = unit, F(k+1) = F(k) (x) args[k].

    Works on object words (tuples) or on layered terms, not a mix.  Shorter
    terms are padded with identity layers on top before tensoring layerwise.
    """
    args = list(args)
    if not args:
        return ()
    if all(type(a) is tuple for a in args):
        acc = ()
        for w in args:
            acc += w
        return acc
    if all(isinstance(a, LayeredTerm) for a in args):
        acc = LayeredTerm((), (), ())
        for t in args:
            acc = _tensor_terms([acc, t])
        return acc
    raise UsageError("derived_tensor needs all words or all terms")


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        return "%s: %d checked, %d counterexamples" % (
            self.name, self.checked, len(self.counterexamples))


def check_coherence(alpha: int = 6, words: Sequence = SAMPLE_WORDS) -> CheckReport:
    """Both unbiased coherence equations on object words, for every beta <= alpha.

    For an outer partition p of beta into gamma parts:
      T_gamma(T_p1(..), ..., T_pgamma(..)) = T_beta(x1, ..., xbeta);
    and for every double partition over p with flattening q:
      T_gamma(T_delta_i(T_q_ij(..))) = T_len(q)(T_q_k(..)).
    """
    if alpha < 0:
        raise UsageError("alpha must be a natural number")
    rep = CheckReport("coherence")
    T = derived_tensor
    for beta in range(alpha + 1):
        for gamma in range(alpha + 1):
            for p in _compositions(beta, gamma):
                for xs in _assignments(beta, words):
                    rep.checked += 1
                    if T([T(b) for b in _cut(xs, p)]) != T(list(xs)):
                        rep.counterexamples.append(("unb-1", p, xs))
                for n, inners in enumerate(_inner_choices(p, alpha)):
                    # one argument assignment per double partition, rotating
                    xs = tuple(words[(k + n) % len(words)] for k in range(beta))
                    q = tuple(x for inner in inners for x in inner)
                    leaves = [T(b) for b in _cut(xs, q)]
                    nested = T([T(g) for g in _cut(leaves, [len(i) for i in inners])])
                    flat = T(leaves)
                    outer = T([T(b) for b in _cut(xs, p)])
                    rep.checked += 1
                    if not nested == flat == outer:
                        rep.counterexamples.append(("unb-2", p, inners, xs))
    return rep


def _assignments(beta: int, words: Sequence) -> list:
    if beta == 0:
        return [()]
    return [tuple(words[(k + s) % len(words)] for k in range(beta)) for s in range(len(words))]


def _random_layer_on(word: tuple, sig, rng: random.Random) -> tuple:
    """A random single layer with domain ``word``, built left to right."""
    factors, i = [], 0
    while i < len(word):
        opts = [g for g in sig.gens if g.dom and tuple(word[i:i + len(g.dom)]) == g.dom]
        if opts and rng.random() < 0.8:
            g = rng.choice(opts)
            factors.append(Gen(g.name))
            i += len(g.dom)
        else:
            factors.append(IdOn((word[i],)))
            i += 1
    units = [g for g in sig.gens if not g.dom]
    if units and rng.random() < 0.1:
        factors.insert(rng.randrange(len(factors) + 1), Gen(rng.choice(units).name))
    if not factors:
        factors.append(IdOn(()))
    return tuple(factors)


def _random_term(word: tuple, sig, rng: random.Random) -> LayeredTerm:
    return term_of([_random_layer_on(word, sig, rng)], sig)


def check_interchange(model: MatrixModel, trials: int = 200, seed: int = 0) -> CheckReport:
    """(g.f) (x) (j.h) == (g (x) j).(f (x) h) for random composable f, g, h, j."""
    rng = random.Random(seed)
    sig = model.sig
    rep = CheckReport("interchange")
    for _ in range(trials):
        w1, w2 = (rng.choice(sig.objects),), (rng.choice(sig.objects),)
        f = _random_term(w1, sig, rng)
        g = _random_term(f.cod, sig, rng)
        h = _random_term(w2, sig, rng)
        j = _random_term(h.cod, sig, rng)
        lhs = derived_tensor([compose_terms(f, g), compose_terms(h, j)])
        rhs = compose_terms(derived_tensor([f, h]), derived_tensor([g, j]))
        rep.checked += 1
        if eval_term(model, lhs) != eval_term(model, rhs):
            rep.counterexamples.append((f, g, h, j))
    return rep
