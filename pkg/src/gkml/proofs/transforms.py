"""Proof transformations: deduction theorem and the modal lifting rules."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from typing import Sequence

from gkml.proofs.core import (MP, Assumption, Axiom, NRBox, Proof, RNDia, Step, check_proof,
                              dependency_flags, renumber)
from gkml.proofs.fileformat import ProofDocument, parse_proof
from gkml.proofs.schemes import ProofSystem
from gkml.syntax import Atom, Box, Diamond, Formula, Implies, substitute

# Lemma files are written over the atoms a, b, c:
#   identity:      a -> a
#   weakening:     b -> (a -> b)
#   distribution:  (a -> (b -> c)) -> ((a -> b) -> (a -> c))
LEMMAS = ("identity", "weakening", "distribution")


class TransformError(ValueError):
    pass


@lru_cache(maxsize=None)
def lemma(name: str) -> ProofDocument:
    text = resources.files("gkml.proofs").joinpath("lemmas", f"{name}.proof").read_text("utf-8")
    return parse_proof(text)


def _instantiate_step(step: Step, mapping: dict[str, Formula]) -> Step:
    j = step.justification
    if isinstance(j, Axiom) and j.substitution is not None:
        j = Axiom(j.scheme, {k: substitute(v, mapping) for k, v in j.substitution.items()})
    return Step(substitute(step.formula, mapping), j)


class _Splicer:
    """Accumulates output steps; splices instantiated lemma proofs."""

    def __init__(self) -> None:
        self.steps: list[Step] = []

    def add(self, formula: Formula, justification) -> int:
        self.steps.append(Step(formula, justification))
        return len(self.steps) - 1

    def lemma(self, name: str, **mapping: Formula) -> int:
        offset = len(self.steps)
        for step in lemma(name).proof.steps:
            s = _instantiate_step(step, mapping)
            self.steps.append(Step(s.formula, renumber(s.justification, offset)))
        return len(self.steps) - 1

    def mp(self, minor: int, major: int) -> int:
        return self.add(self.steps[major].formula.right, MP(minor, major))


def _require_accepted(system: ProofSystem, assumptions: Sequence[Formula], proof: Proof) -> None:
    verdict = check_proof(system, assumptions, proof)
    if not verdict.accepted:
        raise TransformError(f"input proof rejected: {verdict.summary()}")


def deduction_transform(system: ProofSystem, assumptions: Sequence[Formula], alpha: Formula,
                        proof: Proof) -> Proof:
    """Turn a proof of phi from ``assumptions + [alpha]`` into one of alpha -> phi.

    ``alpha`` is the assumption with index ``len(assumptions)``; references to
    the other assumptions are kept.  Steps not resting on ``alpha`` are copied
    verbatim, the rest are rebuilt by induction on the proof.
    """
    assumptions = list(assumptions)
    alpha_index = len(assumptions)
    _require_accepted(system, assumptions + [alpha], proof)

    # which steps rest on alpha specifically
    on_alpha: list[bool] = []
    for k, step in enumerate(proof.steps):
        j = step.justification
        if isinstance(j, Assumption):
            on_alpha.append(j.index == alpha_index)
        elif isinstance(j, MP):
            on_alpha.append(on_alpha[j.minor] or on_alpha[j.major])
        else:
            # NRBox/RNDia premises are theorems, axioms rest on nothing
            on_alpha.append(False)

    out = _Splicer()
    copied: dict[int, int] = {}      # original step -> output step proving it
    implied: dict[int, int] = {}     # original step -> output step proving alpha -> it

    def plain(k: int) -> int:
        return copied[k]

    def under_alpha(k: int) -> int:
        if k in implied:
            return implied[k]
        f = proof.steps[k].formula
        i = out.lemma("weakening", a=alpha, b=f)        # f -> (alpha -> f)
        implied[k] = out.mp(plain(k), i)
        return implied[k]

    for k, step in enumerate(proof.steps):
        j = step.justification
        if not on_alpha[k]:
            copied[k] = out.add(step.formula, renumber(j, mapping=copied))
            continue
        if isinstance(j, Assumption):
            implied[k] = out.lemma("identity", a=alpha)
            continue
        # MP with at least one premise resting on alpha
        phi = proof.steps[j.minor].formula
        psi = step.formula
        dist = out.lemma("distribution", a=alpha, b=phi, c=psi)
        first = out.mp(under_alpha(j.major), dist)
        implied[k] = out.mp(under_alpha(j.minor), first)

    last = len(proof.steps) - 1
    under_alpha(last)
    result = Proof(tuple(out.steps))
    final = result.conclusion
    target = Implies(alpha, proof.conclusion)
    if final != target:
        raise TransformError("internal error: transformed proof has the wrong conclusion")
    return result


def discharge_all(system: ProofSystem, assumptions: Sequence[Formula], proof: Proof) -> Proof:
    """Apply the deduction theorem to every assumption, last first.

    The result proves mu1 -> (mu2 -> ... (muk -> phi)) with no assumptions.
    """
    assumptions = list(assumptions)
    while assumptions:
        alpha = assumptions.pop()
        proof = deduction_transform(system, assumptions, alpha, proof)
    return proof


def lift_box(system: ProofSystem, assumptions: Sequence[Formula],
             proof: Proof) -> ProofDocument:
    """From mu1..muk |- phi build []mu1..[]muk |- []phi."""
    if "NRBox" not in system.rules:
        raise TransformError(f"{system} has no necessitation rule")
    _require_accepted(system, assumptions, proof)
    theorem = discharge_all(system, assumptions, proof)
    out = _Splicer()
    for step in theorem.steps:
        out.add(step.formula, step.justification)
    current = out.add(Box(theorem.conclusion), NRBox(len(out.steps) - 1))
    rest = theorem.conclusion
    for k, mu in enumerate(assumptions):
        # rest = mu -> rest'
        tail = rest.right
        kbox = out.add(Implies(Box(Implies(mu, tail)), Implies(Box(mu), Box(tail))),
                       Axiom("KBox", {"phi": mu, "psi": tail}))
        dist = out.mp(current, kbox)
        boxed_mu = out.add(Box(mu), Assumption(k))
        current = out.mp(boxed_mu, dist)
        rest = tail
    boxed = [Box(mu) for mu in assumptions]
    return ProofDocument(system, boxed, Proof(tuple(out.steps)))


def lift_diamond(system: ProofSystem, assumptions: Sequence[Formula],
                 proof: Proof) -> ProofDocument:
    """From phi |- psi build <>phi |- <>psi."""
    if "RNDia" not in system.rules:
        raise TransformError(f"{system} has no <> monotonicity rule")
    if len(assumptions) != 1:
        raise TransformError("lift_diamond needs exactly one assumption")
    _require_accepted(system, assumptions, proof)
    theorem = deduction_transform(system, [], assumptions[0], proof)
    out = _Splicer()
    for step in theorem.steps:
        out.add(step.formula, step.justification)
    imp = theorem.conclusion
    mono = out.add(Implies(Diamond(imp.left), Diamond(imp.right)), RNDia(len(out.steps) - 1))
    asm = out.add(Diamond(assumptions[0]), Assumption(0))
    out.mp(asm, mono)
    return ProofDocument(system, [Diamond(assumptions[0])], Proof(tuple(out.steps)))
