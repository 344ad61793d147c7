"""Regenerate the sample proof corpus under tests/data/proofs.

Usage: python scripts/build_corpus.py [--check]
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from gkml.proofs import ProofDocument, ProofSystem, format_proof, lift_box, lift_diamond
from gkml.proofs.builder import ProofBuilder
from gkml.proofs.transforms import deduction_transform
from gkml.syntax import Atom, parse

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "proofs"
p, q, r = Atom("p"), Atom("q"), Atom("r")
F = parse


def doc(system, pb):
    return ProofDocument(system, list(pb.assumptions), pb.proof())


def box_and_elim():
    # []((p & q) -> p) by nec, then K and MP
    pb = ProofBuilder()
    g2 = pb.axiom("G2", phi=p, psi=q)
    nec = pb.nec(g2)
    k = pb.axiom("KBox", phi=F("p & q"), psi=p)
    pb.mp(nec, k)
    return doc(ProofSystem("GBox"), pb)


def explosion():
    pb = ProofBuilder()
    pb.axiom("G8", phi=p)
    return doc(ProofSystem("G"), pb)


def box_modus_ponens():
    pb = ProofBuilder([F("[](p -> q)"), F("[]p")])
    k = pb.axiom("KBox", phi=p, psi=q)
    a1 = pb.assume(0)
    step = pb.mp(a1, k)
    pb.mp(pb.assume(1), step)
    return doc(ProofSystem("GBox"), pb)


def diamond_and_elim():
    pb = ProofBuilder()
    pb.mon(pb.axiom("G2", phi=p, psi=q))
    return doc(ProofSystem("GDia"), pb)


def diamond_falsum():
    pb = ProofBuilder()
    pb.axiom("FDia")
    return doc(ProofSystem("GDia"), pb)


def box_double_negation():
    pb = ProofBuilder()
    pb.axiom("ZBox", theta=F("p & q"))
    return doc(ProofSystem("GBox"), pb)


def diamond_double_negation():
    pb = ProofBuilder()
    z = pb.axiom("ZDia", phi=p)
    pb.chain(pb.mon(pb.axiom("G2", phi=F("~~p"), psi=q)), z)
    return doc(ProofSystem("GDia"), pb)


def nec_inside_assumptions():
    # nec on a theorem is fine even when the proof has assumptions
    pb = ProofBuilder([p])
    g2 = pb.axiom("G2", phi=p, psi=q)
    boxed = pb.nec(g2)
    w = pb.weakening(pb.formula(boxed), p)
    pb.mp(pb.assume(0), pb.mp(boxed, w))
    return doc(ProofSystem("GBox"), pb)


def gbox_t():
    pb = ProofBuilder()
    k = box_and_elim().proof.steps
    for s in k:
        pb.steps.append(s)
    pb.chain(len(pb.steps) - 1, pb.axiom("TBox", phi=p))
    return doc(ProofSystem("GBox", frozenset({"T"})), pb)


def gbox_four():
    pb = ProofBuilder()
    for s in box_and_elim().proof.steps:
        pb.steps.append(s)
    pb.chain(len(pb.steps) - 1, pb.axiom("FourBox", phi=p))
    return doc(ProofSystem("GBox", frozenset({"Four"})), pb)


def gbox_b():
    pb = ProofBuilder()
    pb.chain(pb.axiom("G2", phi=p, psi=q), pb.axiom("BBox", phi=p))
    return doc(ProofSystem("GBox", frozenset({"B"})), pb)


def gdia_t():
    pb = ProofBuilder()
    pb.chain(pb.axiom("G2", phi=p, psi=q), pb.axiom("TDia", phi=p))
    return doc(ProofSystem("GDia", frozenset({"T"})), pb)


def gdia_four():
    pb = ProofBuilder()
    inner = pb.mon(pb.axiom("G2", phi=p, psi=q))      # <>(p & q) -> <>p
    outer = pb.mon(inner)                              # <><>(p & q) -> <><>p
    pb.chain(outer, pb.axiom("FourDia", phi=p))
    return doc(ProofSystem("GDia", frozenset({"Four"})), pb)


def gdia_b():
    pb = ProofBuilder()
    pb.chain(pb.axiom("G2", phi=p, psi=q), pb.axiom("BDia", phi=p))
    return doc(ProofSystem("GDia", frozenset({"B"})), pb)


def gs4_box():
    pb = ProofBuilder()
    pb.chain(pb.axiom("FourBox", phi=p), pb.axiom("TBox", phi=F("[]p")))
    return doc(ProofSystem("GBox", frozenset({"T", "Four"})), pb)


def box_constants():
    pb = ProofBuilder()
    quarter, half = F("{1/4}"), F("{1/2}")
    pb.chain(pb.axiom("R1a", r=quarter, s=half), pb.axiom("R2", r=half))
    return doc(ProofSystem("GBox", constants={Fraction(1, 4), Fraction(1, 2)}), pb)


def diamond_constants():
    pb = ProofBuilder()
    half, three = F("{1/2}"), F("{3/4}")
    pb.chain(pb.axiom("R5", r=half), pb.axiom("R1a", r=half, s=three))
    return doc(ProofSystem("GDia", constants={Fraction(1, 2), Fraction(3, 4)}), pb)


def constants_reverse():
    pb = ProofBuilder()
    pb.axiom("R1b", r=F("{3/4}"), s=F("{1/4}"))
    return doc(ProofSystem("G", constants={Fraction(1, 4), Fraction(3, 4)}), pb)


def connecting_axiom():
    # <>(p -> q) & []p -> <>q
    pb = ProofBuilder()
    fs1 = pb.axiom("FS1", phi=p, psi=q)
    pb.mp(fs1, pb.importation(F("<>(p -> q)"), F("[]p"), F("<>q")))
    return doc(ProofSystem("GBoxDia"), pb)


def prelinearity_cases():
    # proof by cases on the prelinearity axiom, both cases give r -> r
    pb = ProofBuilder()
    g7 = pb.axiom("G7", phi=p, psi=q, chi=F("r -> r"))
    ident = pb.identity(r)
    w1 = pb.weakening(pb.formula(ident), F("p -> q"))
    w2 = pb.weakening(pb.formula(ident), F("q -> p"))
    first = pb.mp(pb.mp(ident, w1), g7)
    pb.mp(pb.mp(ident, w2), first)
    return doc(ProofSystem("G"), pb)


def lifted_box():
    pb = ProofBuilder([F("p & q")])
    pb.mp(pb.assume(0), pb.axiom("G2", phi=p, psi=q))
    d = doc(ProofSystem("GBox"), pb)
    return lift_box(d.system, d.assumptions, d.proof)


def lifted_diamond():
    pb = ProofBuilder([F("p & q")])
    pb.mp(pb.assume(0), pb.axiom("G2", phi=p, psi=q))
    d = doc(ProofSystem("GDia"), pb)
    return lift_diamond(d.system, d.assumptions, d.proof)


def discharged():
    d = box_modus_ponens()
    proof = deduction_transform(d.system, d.assumptions[:1], d.assumptions[1], d.proof)
    return ProofDocument(d.system, d.assumptions[:1], proof)


CORPUS = {
    "box_and_elim": box_and_elim,
    "explosion": explosion,
    "box_modus_ponens": box_modus_ponens,
    "diamond_and_elim": diamond_and_elim,
    "diamond_falsum": diamond_falsum,
    "box_double_negation": box_double_negation,
    "diamond_double_negation": diamond_double_negation,
    "nec_inside_assumptions": nec_inside_assumptions,
    "gbox_t": gbox_t,
    "gbox_four": gbox_four,
    "gbox_b": gbox_b,
    "gdia_t": gdia_t,
    "gdia_four": gdia_four,
    "gdia_b": gdia_b,
    "gs4_box": gs4_box,
    "box_constants": box_constants,
    "diamond_constants": diamond_constants,
    "constants_reverse": constants_reverse,
    "connecting_axiom": connecting_axiom,
    "prelinearity_cases": prelinearity_cases,
    "lifted_box": lifted_box,
    "lifted_diamond": lifted_diamond,
    "discharged": discharged,
}


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--check", action="store_true", help="fail if files are stale")
    args = parser.parse_args()
    OUT.mkdir(parents=True, exist_ok=True)
    stale = False
    for name, make in CORPUS.items():
        text = format_proof(make())
        path = OUT / f"{name}.proof"
        if args.check:
            if not path.exists() or path.read_text() != text:
                print(f"stale: {path}")
                stale = True
        else:
            path.write_text(text)
    return 1 if stale else 0


if __name__ == "__main__":
    sys.exit(main())
