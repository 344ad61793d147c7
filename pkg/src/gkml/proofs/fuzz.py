"""Semantic cross-checks for proofs: soundness fuzzing and step mutation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from gkml.algebra import ONE, format_rational
from gkml.generators import random_model, trial_rng
from gkml.proofs.core import Proof, Step, check_proof
from gkml.proofs.schemes import ProofSystem
from gkml.semantics import value_table
from gkml.syntax import Atom, Formula, atoms, positions, replace_at, share_subterms


@dataclass(frozen=True)
class Violation:
    trial: int
    step: int
    world: str
    premise_value: Fraction
    step_value: Fraction
    model_json: dict

    def __str__(self) -> str:
        return (f"trial {self.trial}, step {self.step + 1}, world {self.world}: "
                f"assumptions {format_rational(self.premise_value)} > "
                f"step value {format_rational(self.step_value)}")


@dataclass
class FuzzReport:
    trials: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def soundness_fuzz(system: ProofSystem, assumptions: Sequence[Formula], proof: Proof,
                   trials: int = 1000, seed: int = 0, max_worlds: int = 4) -> FuzzReport:
    """Check min(assumption values) <= value of every step on random models.

    Models are drawn from the frame class the system is sound for (reflexive
    for T, min-transitive for Four, symmetric for B).  Any violation is a bug
    in the checker or the evaluator.
    """
    verdict = check_proof(system, assumptions, proof)
    if not verdict.accepted:
        raise ValueError(f"proof must be accepted before fuzzing: {verdict.summary()}")
    names = set()
    for f in (*assumptions, *(s.formula for s in proof.steps)):
        names |= atoms(f)
    names = sorted(names) or ["p"]
    shared = share_subterms([*assumptions, *(s.formula for s in proof.steps)])
    assumptions, formulas = shared[:len(assumptions)], shared[len(assumptions):]
    report = FuzzReport(trials)
    for t in range(trials):
        rng = trial_rng(seed, t)
        m = random_model(rng, names, max_worlds=max_worlds, frame=system.frame,
                         constants=system.constants)
        n = len(m.worlds)
        memo: dict = {}
        floor = [ONE] * n
        for a in assumptions:
            floor = [min(x, y) for x, y in zip(floor, value_table(m, a, memo))]
        for k, f in enumerate(formulas):
            values = value_table(m, f, memo)
            for i in range(n):
                if floor[i] > values[i]:
                    report.violations.append(
                        Violation(t, k, m.worlds[i], floor[i], values[i], m.to_json()))
                    break
            if report.violations and report.violations[-1].trial == t:
                break
    return report


MUTANT_ATOM = "mutant"


def mutate_step(proof: Proof, rng: random.Random) -> tuple[Proof, int]:
    """Replace a random subformula of a random step by a fresh atom.

    Returns the mutated proof and the index of the mutated step.
    """
    k = rng.randrange(len(proof.steps))
    step = proof.steps[k]
    path = rng.choice(list(positions(step.formula)))
    mutated = replace_at(step.formula, path, Atom(MUTANT_ATOM))
    steps = list(proof.steps)
    steps[k] = Step(mutated, step.justification)
    return Proof(tuple(steps)), k
