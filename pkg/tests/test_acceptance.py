"""Acceptance suite: nine exact, zero-tolerance criteria over the exhaustive corpus.

Each test prints one ``PASS``/``FAIL`` line before asserting, so the summary
is visible under ``pytest -v -s`` and in the captured output on failure.
"""

import itertools
import subprocess
import sys
import time
from math import comb

import pytest

import corpus
import oracles
from helpers import FGH_SIG_TEXT
from mondiag.diagram import induced_first_order, validate_diagram
from mondiag.errors import LayerOrderError
from mondiag.formats import parse_diagram, print_diagram
from mondiag.iso import diagram_iso
from mondiag.layering import layer_order, rank, segmentation, unresolved_edges
from mondiag.readout import attach, compose_vertical, readout
from mondiag.resolution import incise, resolve
from mondiag.semantics import default_model, eval_term, kron_all
from mondiag.unbiased import check_coherence, check_interchange, enumerate_partitions

MODEL = corpus.CORPUS_MODEL


@pytest.fixture
def report(capsys):
    start = time.perf_counter()

    def emit(n, title, bad, detail):
        status = "PASS" if not bad else "FAIL"
        with capsys.disabled():
            print("\n[criterion %d] %s: %s (%s; %d violations; %.1fs)"
                  % (n, status, title, detail, len(bad), time.perf_counter() - start))
        assert not bad, bad[:5]
    return emit


def _ev(d):
    return eval_term(MODEL, readout(d))


def test_criterion_1_validator_matches_oracle(report):
    bad, n = [], 0
    for raw, closed in corpus.raw_and_closed():
        for d in (raw, closed):
            if d is None:
                continue
            n += 1
            got = validate_diagram(d).conditions()
            want = oracles.naive_violations(d.mu, d.edges, d.order)
            if got != want:
                bad.append((d, got, want))
    report(1, "validator agrees with direct-quantifier checker", bad, "%d diagrams" % n)


def test_criterion_2_segmentation_partitions(report):
    bad, ds = [], corpus.structures()
    for d in ds:
        layers = segmentation(d).layers
        flat = [x for layer in layers for x in layer]
        longest = max(oracles.longest_chain_levels(d.mu, d.edges).values())
        if len(flat) != len(set(flat)) or set(flat) != set(d.mu) \
                or len(layers) != rank(d) or len(layers) != longest:
            bad.append(d)
    report(2, "segmentation partitions nodes, layer count = rank", bad, "%d diagrams" % len(ds))


def _strict_total(rel, members):
    rel = {(a, b) for a, b in rel if a in members and b in members and a != b}
    total = all((a, b) in rel or (b, a) in rel for a, b in itertools.combinations(members, 2))
    antisym = not any((b, a) in rel for a, b in rel)
    trans = all((a, c) in rel for a, b in rel for b2, c in rel if b == b2)
    return total and antisym and trans


def test_criterion_3_layers_well_ordered(report):
    bad, n = [], 0
    for d in corpus.structures():
        r, _ = resolve(d)
        star = induced_first_order(r.strict_order())
        for k in range(1, rank(r) + 1):
            n += 1
            try:
                seq = layer_order(r, k)
            except LayerOrderError as exc:
                bad.append((r, k, str(exc)))
                continue
            ok = _strict_total(star, set(seq)) and all(
                (a, b) in star for a, b in zip(seq, seq[1:]))
            if not ok:
                bad.append((r, k, seq))
    report(3, "layer order is a strict total order after resolution", bad, "%d layers" % n)


def _all_orders(d, step=1):
    todo = sorted(unresolved_edges(d))
    if not todo:
        yield d
        return
    for e in todo:
        yield from _all_orders(incise(d, e, step)[0], step + 1)


def test_criterion_4_resolution(report):
    bad, multi = [], 0
    ds = corpus.labeled_valid()
    for d in ds:
        level = oracles.longest_chain_levels(d.mu, d.edges)
        bound = sum(level[b] - level[a] - 1 for a, b in d.edges if level[b] - level[a] > 1)
        r, trace = resolve(d)
        if trace.resistivity > bound or unresolved_edges(r) or not validate_diagram(r).ok:
            bad.append(("resolve", d))
            continue
        if len(unresolved_edges(d)) >= 2:
            multi += 1
            want = _ev(r)
            for alt in _all_orders(d):
                if diagram_iso(r, alt) is None or _ev(alt) != want:
                    bad.append(("order", d, alt))
    report(4, "resolution terminates, is bounded and order-independent", bad,
           "%d diagrams, %d with several skip edges" % (len(ds), multi))


def test_criterion_5_interchange(report):
    rep = check_interchange(default_model(), trials=200, seed=0)
    bad = list(rep.counterexamples)
    if rep.checked != 200:
        bad.append(("checked", rep.checked))
    report(5, "interchange law on random quadruples", bad, rep.summary())


def test_criterion_6_readout_is_monoidal(report):
    bad, n = [], 0
    can = corpus.canonical()
    ev = {id(d): _ev(d) for d in itertools.chain(can, corpus.representatives())}
    for a, b in itertools.product(can, repeat=2):
        n += 1
        if _ev(attach([a, b])) != ev[id(a)].kron(ev[id(b)]):
            bad.append((a, b))
    small = [d for d in corpus.representatives() if len(d.mu) <= 3]
    for ds in itertools.product(small, repeat=3):
        n += 1
        if _ev(attach(list(ds))) != kron_all([ev[id(d)] for d in ds]):
            bad.append(ds)
    report(6, "readout of attachment = Kronecker product", bad,
           "%d pairs and triples" % n)


def test_criterion_7_composition(report):
    bad, n = [], 0
    reps = corpus.representatives()
    terms = {id(d): readout(d) for d in reps}
    ev = {id(d): eval_term(MODEL, terms[id(d)]) for d in reps}
    for a, b in itertools.product(reps, repeat=2):
        if terms[id(a)].cod != terms[id(b)].dom:
            continue
        n += 1
        if _ev(compose_vertical(a, b)) != ev[id(b)] @ ev[id(a)]:
            bad.append((a, b))
    report(7, "vertical composition reads out as matrix product", bad,
           "%d composable pairs" % n)


def test_criterion_8_unbiased_coherence(report):
    rep = check_coherence(6)
    bad = list(rep.counterexamples)
    for alpha in range(9):
        for gamma in range(1, 9):
            if len(enumerate_partitions(alpha, gamma)) != comb(alpha + gamma - 1, gamma - 1):
                bad.append(("count", alpha, gamma))
    report(8, "unbiased coherence for alpha <= 6, partition counts", bad, rep.summary())


XYZW = """\
use sig.txt
node x u
node y u
node z u
node w m
edge e1 x w
edge e2 y z
edge e3 z w
ord e1 < e2
"""

TRIANGLE = "use sig.txt\nnode a u\nnode b u\nnode c u\nedge e1 a b\nedge e2 a c\n"


def test_criterion_9_cli_contract(report, tmp_path):
    bad = []
    (tmp_path / "sig.txt").write_text(FGH_SIG_TEXT)
    (tmp_path / "xyzw.dgm").write_text(XYZW)
    (tmp_path / "tri.dgm").write_text(TRIANGLE)
    (tmp_path / "uu.dgm").write_text("use sig.txt\nnode a u\nnode b u\nedge e a b\n")
    (tmp_path / "bad.dgm").write_text("use sig.txt\nnode x nope\n")
    (tmp_path / "corpus.txt").write_text(corpus.CORPUS_SIGNATURE.to_text())

    def cli(*argv):
        return subprocess.run([sys.executable, "-m", "mondiag", *argv], cwd=tmp_path,
                              capture_output=True, text=True)

    # round trip: print then parse gives back an isomorphic diagram
    for d in corpus.representatives():
        text = print_diagram(d, use="corpus.txt")
        back = parse_diagram(text, base_dir=str(tmp_path))
        if diagram_iso(d, back) is None:
            bad.append(("round-trip", d))
    proc = cli("resolve", "xyzw.dgm")
    resolved = "\n".join(x for x in proc.stdout.splitlines() if not x.startswith("#"))
    (tmp_path / "r.dgm").write_text(resolved + "\n")
    if cli("iso", "r.dgm", "r.dgm").returncode != 0:
        bad.append(("round-trip", "resolve output"))

    # deterministic DOT
    outs = {cli("render", "xyzw.dgm").stdout for _ in range(3)}
    if len(outs) != 1 or not next(iter(outs)).startswith("digraph"):
        bad.append(("dot", outs))

    # exit-code matrix
    matrix = [
        (("validate", "xyzw.dgm"), 0),
        (("validate", "tri.dgm"), 1),
        (("readout", "xyzw.dgm"), 0),
        (("iso", "xyzw.dgm", "tri.dgm"), 1),
        (("compose", "uu.dgm", "uu.dgm"), 0),
        (("compose", "xyzw.dgm", "xyzw.dgm"), 1),
        (("check-coherence", "--max-alpha", "2"), 0),
        (("check-interchange", "--trials", "5"), 0),
        (("readout", "missing.dgm"), 2),
        (("readout", "bad.dgm"), 2),
        (("segment", "tri.dgm"), 2),
        (("frobnicate",), 2),
        ((), 2),
    ]
    for argv, code in matrix:
        got = cli(*argv).returncode
        if got != code:
            bad.append(("exit", argv, got, code))
    report(9, "CLI round trip, deterministic DOT, exit codes", bad,
           "%d exit-code cases" % len(matrix))
