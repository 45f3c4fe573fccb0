"""Small hand-built diagrams shared by the unit tests."""

from mondiag.diagram import make_diagram
from mondiag.signature import Gen, IdOn, parse_signature

FGH_SIG_TEXT = """\
object A
object B
gen f : A -> A A
gen g : A -> B
gen h : A -> B
gen u : A -> A
gen v : A -> A
gen k : A -> 1
gen m : A A -> A
"""

FGH_SIG = parse_signature(FGH_SIG_TEXT)


def fgh_diagram():
    """x:f below y:g and z:h, with (x,y) left of (x,z)."""
    return make_diagram(FGH_SIG, {"x": Gen("f"), "y": Gen("g"), "z": Gen("h")},
                        [("x", "y"), ("x", "z")], [(("x", "y"), ("x", "z"))])


def xyzw_diagram():
    """x -> w skips a layer beside the chain y -> z -> w; w merges both strands."""
    mu = {"x": Gen("u"), "y": Gen("u"), "z": Gen("u"), "w": Gen("m")}
    return make_diagram(FGH_SIG, mu, [("x", "w"), ("y", "z"), ("z", "w")],
                        [(("x", "w"), ("y", "z"))])


def chain(*labels, sig=FGH_SIG, prefix="n"):
    names = ["%s%d" % (prefix, i) for i in range(len(labels))]
    mu = {n: (lab if isinstance(lab, IdOn) else Gen(lab)) for n, lab in zip(names, labels)}
    return make_diagram(sig, mu, list(zip(names, names[1:])))

