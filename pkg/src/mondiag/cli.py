"""Command-line interface.

Exit codes: 0 success or the property holds, 1 domain failure (invalid
diagram, law violation, no isomorphism), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys

from .diagram import validate_diagram
from .errors import DiagramError, InvariantError, UsageError
from .formats import load_signature, print_diagram, read_diagram, render_dot
from .iso import diagram_iso
from .layering import segmentation
from .readout import attach, compose_vertical, readout, require_structure
from .resolution import resolve
from .semantics import default_model, eval_term, parse_model
from .unbiased import check_coherence, check_interchange

OK, FAIL, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage errors as exceptions instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def _emit(text: str) -> None:
    if text:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _model(path: str, sig):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError("cannot read model %s: %s" % (path, exc.strerror)) from None
    return parse_model(text, sig)


def cmd_validate(args) -> int:
    d = read_diagram(args.diagram, raw=args.raw)
    rep = validate_diagram(d)
    for v in rep.violations:
        if args.porcelain:
            _emit("violation\t%s\t%s" % (v.condition, v.witness))
        else:
            _emit(str(v))
    return OK if rep.ok else FAIL


def cmd_segment(args) -> int:
    d = read_diagram(args.diagram, raw=args.raw)
    require_structure(d)
    seg = segmentation(d)
    for k, layer in enumerate(seg.layers, 1):
        if args.porcelain:
            _emit("\t".join(["layer", str(k)] + list(layer)))
        else:
            _emit("layer %d: %s" % (k, " ".join(layer)))
    return OK


def cmd_resolve(args) -> int:
    d = read_diagram(args.diagram, raw=args.raw)
    require_structure(d)
    r, trace = resolve(d)
    for k, step in enumerate(trace.steps, 1):
        (a, b), n = step.removed, step.inserted_node
        if args.porcelain:
            _emit("incision\t%d\t%s\t%s\t%s" % (k, a, b, n))
        else:
            _emit("# incision %d: %s -> %s through %s" % (k, a, b, n))
    if args.porcelain:
        _emit("resistivity\t%d" % trace.resistivity)
    else:
        _emit("# resistivity %d" % trace.resistivity)
    _emit(print_diagram(r))
    return OK


def cmd_readout(args) -> int:
    t = readout(read_diagram(args.diagram, raw=args.raw))
    _emit(t.to_porcelain() if args.porcelain else t.to_text())
    return OK


def cmd_eval(args) -> int:
    d = read_diagram(args.diagram, raw=args.raw)
    m = eval_term(_model(args.model, d.sig), readout(d))
    for row in m.to_rows():
        cells = [str(x) for x in row]
        _emit("\t".join(["row"] + cells) if args.porcelain else " ".join(cells))
    return OK


def cmd_iso(args) -> int:
    d1 = read_diagram(args.first, raw=args.raw)
    d2 = read_diagram(args.second, raw=args.raw)
    m = diagram_iso(d1, d2)
    if m is None:
        _emit("no isomorphism" if not args.porcelain else "none")
        return FAIL
    for a in sorted(m):
        _emit(("map\t%s\t%s" if args.porcelain else "%s -> %s") % (a, m[a]))
    return OK


def cmd_attach(args) -> int:
    ds = [read_diagram(p, raw=args.raw) for p in args.diagrams]
    _emit(print_diagram(attach(ds)))
    return OK


def cmd_compose(args) -> int:
    d1 = read_diagram(args.first, raw=args.raw)
    d2 = read_diagram(args.second, raw=args.raw)
    _emit(print_diagram(compose_vertical(d1, d2)))
    return OK


def _report(args, rep) -> int:
    if args.porcelain:
        _emit("checked\t%d" % rep.checked)
        for c in rep.counterexamples:
            _emit("counterexample\t%s" % (c,))
    else:
        _emit(rep.summary())
        for c in rep.counterexamples[:20]:
            _emit("  counterexample: %s" % (c,))
    return OK if rep.ok else FAIL


def cmd_check_coherence(args) -> int:
    if args.max_alpha < 0:
        raise UsageError("--max-alpha must be non-negative")
    return _report(args, check_coherence(args.max_alpha))


def cmd_check_interchange(args) -> int:
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    if args.model is None:
        model = default_model()
    else:
        if args.signature is None:
            raise UsageError("--model needs --signature")
        model = _model(args.model, load_signature(args.signature))
    return _report(args, check_interchange(model, args.trials, args.seed))


def cmd_render(args) -> int:
    _emit(render_dot(read_diagram(args.diagram, raw=args.raw)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--porcelain", action="store_true",
                        help="tab-separated, one record per line")
    common.add_argument("--raw", action="store_true",
                        help="do not apply the conditional-construction closure on input")

    p = _Parser(prog="mondiag", description="Monoidal diagrams: validate, resolve, read out.")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check the diagram axioms").add_argument("diagram")
    add("segment", cmd_segment, "print the layers").add_argument("diagram")
    add("resolve", cmd_resolve, "incise layer-skipping edges").add_argument("diagram")
    add("readout", cmd_readout, "print the layered term").add_argument("diagram")
    sp = add("eval", cmd_eval, "evaluate the readout in a matrix model")
    sp.add_argument("diagram")
    sp.add_argument("--model", required=True)
    sp = add("iso", cmd_iso, "find an isomorphism between two diagrams")
    sp.add_argument("first")
    sp.add_argument("second")
    add("attach", cmd_attach, "tensor diagrams side by side").add_argument("diagrams", nargs="+")
    sp = add("compose", cmd_compose, "stack the second diagram on the first")
    sp.add_argument("first")
    sp.add_argument("second")
    sp = add("check-coherence", cmd_check_coherence, "sweep the unbiased coherence equations")
    sp.add_argument("--max-alpha", type=int, default=6)
    sp = add("check-interchange", cmd_check_interchange, "random interchange-law trials")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--model", help="model file (default: built-in two-object model)")
    sp.add_argument("--signature", help="signature file for --model")
    add("render", cmd_render, "DOT rendering of the diagram").add_argument("diagram")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print("mondiag: error: %s" % exc, file=sys.stderr)
        return USAGE
    except (DiagramError, InvariantError) as exc:
        print("mondiag: %s" % exc, file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
