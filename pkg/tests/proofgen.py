"""Random small proofs for closure tests of the proof transformations."""

import random

from gkml.generators import random_formula
from gkml.proofs import ProofSystem
from gkml.proofs.builder import ProofBuilder
from gkml.proofs.core import dependency_flags
from gkml.syntax import Implies

ATOMS = ("p", "q", "r")


def random_proof(rng: random.Random, system: ProofSystem, n_assumptions: int,
                 length: int = 6):
    modal = "box" if system.has_box and not system.has_diamond else (
        "diamond" if system.has_diamond and not system.has_box else "none")

    def small():
        return random_formula(rng, 2, atoms=ATOMS, modal=modal, sugar=False)

    pb = ProofBuilder([small() for _ in range(n_assumptions)])
    if n_assumptions:
        pb.assume(rng.randrange(n_assumptions))
    else:
        pb.axiom("G2", phi=small(), psi=small())
    while len(pb.steps) < length:
        i = rng.randrange(len(pb.steps))
        a = pb.formula(i)
        theorem = not dependency_flags(pb.proof())[i]
        move = rng.random()
        if move < 0.2 and pb.assumptions:
            pb.assume(rng.randrange(len(pb.assumptions)))
        elif move < 0.4:
            pb.mp(i, pb.axiom("G6", phi=a))                    # a & a
        elif move < 0.6:
            pb.mp(i, pb.weakening(a, small()))                 # x -> a
        elif move < 0.75 and isinstance(a, Implies):
            j = next((k for k in range(len(pb.steps)) if pb.formula(k) == a.left), None)
            if j is not None:
                pb.mp(j, i)
            else:
                pb.mp(i, pb.axiom("G6", phi=a))
        elif theorem and "NRBox" in system.rules:
            pb.nec(i)
        elif theorem and "RNDia" in system.rules and isinstance(a, Implies):
            pb.mon(i)
        else:
            pb.axiom("G8", phi=small())
    return pb.assumptions, pb.proof()
