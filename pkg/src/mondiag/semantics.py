"""Exact rational matrix semantics for signatures and layered terms.

Matrices act on column vectors, so a term with layers M1, ..., Mk evaluates
to ``Mk @ ... @ M1`` and a generator ``f : X -> Y`` is a dim(Y) x dim(X) matrix.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvariantError, ModelError, ParseError
from .signature import IdOn, Signature
from .term import LayeredTerm


@dataclass(frozen=True, eq=False)
class RationalMatrix:
    """Exact rational matrix held as integer numerators over one denominator.

    The pair (nums, den) is kept normalised (den > 0, gcd of everything 1),
    so structural equality is value equality.
    """

    rows: int
    cols: int
    nums: tuple  # row-major ints
    den: int = 1

    def __post_init__(self):
        if len(self.nums) != self.rows * self.cols:
            raise ValueError("expected %d entries, got %d"
                             % (self.rows * self.cols, len(self.nums)))
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        g = math.gcd(self.den, *self.nums)
        if g > 1:
            object.__setattr__(self, "nums", tuple(x // g for x in self.nums))
            object.__setattr__(self, "den", self.den // g)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries) -> "RationalMatrix":
        entries = [Fraction(x) for x in entries]
        den = math.lcm(1, *(x.denominator for x in entries))
        return cls(rows, cols, tuple(x.numerator * (den // x.denominator) for x in entries), den)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls.from_entries(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple:
        return tuple(Fraction(x, self.den) for x in self.nums)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.den, self.nums) == \
            (other.rows, other.cols, other.den, other.nums)

    def __hash__(self):
        return hash((self.rows, self.cols, self.den, self.nums))

    def __getitem__(self, ij):
        i, j = ij
        return Fraction(self.nums[i * self.cols + j], self.den)

    def to_rows(self) -> list:
        e = self.entries
        return [list(e[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise InvariantError("shape mismatch %s @ %s" % (self.shape, other.shape))
        a, n, m = self.nums, self.cols, other.cols
        cols = [other.nums[j::m] for j in range(m)]
        out = []
        for i in range(self.rows):
            row = a[i * n:(i + 1) * n]
            out.extend(sum(map(operator.mul, row, col)) for col in cols)
        return RationalMatrix(self.rows, m, tuple(out), self.den * other.den)

    def kron(self, other: "RationalMatrix") -> "RationalMatrix":
        p, q = other.rows, other.cols
        b = other.nums
        out = []
        for i in range(self.rows):
            arow = self.nums[i * self.cols:(i + 1) * self.cols]
            for k in range(p):
                brow = b[k * q:(k + 1) * q]
                for x in arow:
                    out.extend(x * y for y in brow)
        return RationalMatrix(self.rows * p, self.cols * q, tuple(out), self.den * other.den)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.to_rows())


def kron_all(mats: Sequence[RationalMatrix]) -> RationalMatrix:
    out = RationalMatrix.identity(1)
    for m in mats:
        out = out.kron(m)
    return out


def apply_kron(factors: Sequence[RationalMatrix], x: RationalMatrix) -> RationalMatrix:
    """``kron_all(factors) @ x`` without forming the Kronecker product.

    Each factor acts on its own tensor slot of the row index of ``x``.
    """
    if math.prod(f.cols for f in factors) != x.rows:
        raise InvariantError("layer expects %d rows, got %d"
                             % (math.prod(f.cols for f in factors), x.rows))
    shape = [f.cols for f in factors]
    data, den, ncols = list(x.nums), x.den, x.cols
    for i, f in enumerate(factors):
        if f.rows == f.cols and f.nums == RationalMatrix.identity(f.rows).nums and f.den == 1:
            shape[i] = f.rows
            continue
        before = math.prod(shape[:i])
        after = math.prod(shape[i + 1:]) * ncols
        c, r = shape[i], f.rows
        out = []
        for b in range(before):
            block = data[b * c * after:(b + 1) * c * after]
            slices = [block[k * after:(k + 1) * after] for k in range(c)]
            for row in range(r):
                coeffs = f.nums[row * c:(row + 1) * c]
                acc = [0] * after
                for k, w in enumerate(coeffs):
                    if w:
                        sl = slices[k]
                        acc = [u + w * v for u, v in zip(acc, sl)]
                out.extend(acc)
        data, den = out, den * f.den
        shape[i] = r
    return RationalMatrix(math.prod(shape), ncols, tuple(data), den)


@dataclass
class MatrixModel:
    sig: Signature
    dims: dict = field(default_factory=dict)
    mats: dict = field(default_factory=dict)

    def __post_init__(self):
        for obj, n in self.dims.items():
            if obj not in self.sig.objects:
                raise ModelError("dimension for unknown object %r" % obj)
            if not isinstance(n, int) or n < 1:
                raise ModelError("dimension of %s must be a positive integer" % obj)
        for name, m in self.mats.items():
            if not self.sig.has_gen(name):
                raise ModelError("matrix for unknown generator %r" % name)
            g = self.sig.gen(name)
            want = (eval_word(self, g.cod), eval_word(self, g.dom))
            if m.shape != want:
                raise ModelError("matrix %s has shape %s, expected %s" % (name, m.shape, want))

    def to_text(self) -> str:
        lines = ["dim %s %d" % (o, self.dims[o]) for o in self.sig.objects if o in self.dims]
        for g in self.sig.gens:
            if g.name in self.mats:
                rows = self.mats[g.name].to_rows()
                lines.append("mat %s %s" % (g.name, " ".join(
                    ",".join(str(x) for x in r) + " ;" for r in rows)))
        return "\n".join(lines) + "\n"


def eval_word(model: MatrixModel, w) -> int:
    n = 1
    for x in w:
        if x not in model.dims:
            raise ModelError("no dimension for object %r" % x)
        n *= model.dims[x]
    return n


def eval_factor(model: MatrixModel, f) -> RationalMatrix:
    if isinstance(f, IdOn):
        return RationalMatrix.identity(eval_word(model, f.word))
    if f.name not in model.mats:
        raise ModelError("no matrix for generator %r" % f.name)
    return model.mats[f.name]


def eval_layer(model: MatrixModel, layer) -> RationalMatrix:
    return kron_all([eval_factor(model, f) for f in layer])


def eval_term(model: MatrixModel, t: LayeredTerm) -> RationalMatrix:
    out = RationalMatrix.identity(eval_word(model, t.dom))
    for layer in t.layers:
        out = apply_kron([eval_factor(model, f) for f in layer], out)
    want = (eval_word(model, t.cod), eval_word(model, t.dom))
    if out.shape != want:
        raise InvariantError("term evaluated to shape %s, expected %s" % (out.shape, want))
    return out


def parse_entry(tok: str) -> Fraction:
    if not tok:
        raise ValueError("empty entry")
    return Fraction(tok)


def parse_model(text: str, sig: Signature) -> MatrixModel:
    dims, mats = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "dim":
                toks = rest.split()
                if len(toks) != 2:
                    raise ValueError("expected 'dim <Object> <n>'")
                if toks[0] in dims:
                    raise ValueError("duplicate dim for %r" % toks[0])
                dims[toks[0]] = int(toks[1])
            elif head == "mat":
                name, _, body = rest.strip().partition(" ")
                if not name:
                    raise ValueError("expected 'mat <gen> <rows>'")
                if name in mats:
                    raise ValueError("duplicate matrix for %r" % name)
                rows = [r.strip() for r in body.split(";")]
                if rows and rows[-1] == "":
                    rows.pop()
                mats[name] = RationalMatrix.from_rows(
                    [[parse_entry(x.strip()) for x in r.split(",")] for r in rows])
            else:
                raise ValueError("unknown directive %r" % head)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(lineno, str(exc)) from None
    return MatrixModel(sig, dims, mats)


def default_model() -> MatrixModel:
    """Two objects A (dim 2), B (dim 3) and a handful of generators."""
    from .signature import parse_signature

    sig = parse_signature(DEFAULT_SIGNATURE)
    return parse_model(DEFAULT_MODEL, sig)


DEFAULT_SIGNATURE = """\
object A
object B
gen p : A -> A
gen q : A -> B
gen r : B -> A
gen s : B -> B
gen t : A -> A A
gen m : A B -> B
gen c : B -> 1
gen u : 1 -> A
"""

DEFAULT_MODEL = """\
dim A 2
dim B 3
mat p 1,2 ; -1,1/2 ;
mat q 1,0 ; 2,1 ; 0,-3 ;
mat r 1,1/3,0 ; 0,2,-1 ;
mat s 0,1,0 ; 1,0,1 ; 2,0,-1/2 ;
mat t 1,0 ; 0,1 ; 1,1 ; 2,-1 ;
mat m 1,0,2,0,1,0 ; 0,1,0,1/2,0,1 ; -1,0,0,3,1,1 ;
mat c 1,-1,1/4 ;
mat u 3 ; -2 ;
"""
