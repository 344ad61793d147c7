"""Hilbert proofs and the proof checker.

Step references are 0-based internally; diagnostics and the file format
number steps and assumptions from 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from gkml.proofs.schemes import (SCHEMES, ProofSystem, SchemeMismatch, instantiate,
                                 match_scheme)
from gkml.syntax import Box, Diamond, Formula, Implies, expand_derived, to_text


@dataclass(frozen=True)
class Axiom:
    scheme: str
    # None means "find the substitution by matching"
    substitution: Mapping[str, Formula] | None = None


@dataclass(frozen=True)
class Assumption:
    index: int


@dataclass(frozen=True)
class MP:
    minor: int  # step proving phi
    major: int  # step proving phi -> psi


@dataclass(frozen=True)
class NRBox:
    premise: int


@dataclass(frozen=True)
class RNDia:
    premise: int


Justification = Union[Axiom, Assumption, MP, NRBox, RNDia]


@dataclass(frozen=True)
class Step:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Proof:
    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def conclusion(self) -> Formula:
        return self.steps[-1].formula


def references(j: Justification) -> tuple[int, ...]:
    if isinstance(j, MP):
        return (j.minor, j.major)
    if isinstance(j, (NRBox, RNDia)):
        return (j.premise,)
    return ()


def dependency_flags(proof: Proof) -> list[bool]:
    """Per step: does it rest on an assumption?  Out-of-range references count as False."""
    flags: list[bool] = []
    for k, step in enumerate(proof.steps):
        j = step.justification
        if isinstance(j, Assumption):
            flags.append(True)
        else:
            flags.append(any(flags[i] for i in references(j) if 0 <= i < k))
    return flags


def same_formula(a: Formula, b: Formula) -> bool:
    """Equality up to unfolding the defined connectives."""
    return a == b or expand_derived(a) == expand_derived(b)


@dataclass(frozen=True)
class StepDiagnostic:
    index: int
    ok: bool
    depends_on_assumptions: bool
    message: str = ""

    def __str__(self) -> str:
        status = "ok" if self.ok else "REJECTED"
        tail = f": {self.message}" if self.message else ""
        dep = " [depends on assumptions]" if self.depends_on_assumptions else ""
        return f"step {self.index + 1}: {status}{dep}{tail}"


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    diagnostics: tuple[StepDiagnostic, ...]
    conclusion: Formula | None
    conclusion_depends: bool
    error: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    @property
    def first_failure(self) -> StepDiagnostic | None:
        return next((d for d in self.diagnostics if not d.ok), None)

    def summary(self) -> str:
        if self.accepted:
            dep = "from assumptions" if self.conclusion_depends else "as a theorem"
            return f"ACCEPTED: {to_text(self.conclusion)} ({dep})"
        bad = self.first_failure
        if bad is None:
            return f"REJECTED: {self.error}"
        return f"REJECTED at step {bad.index + 1}: {bad.message}"


def _check_axiom(system: ProofSystem, j: Axiom, f: Formula) -> str | None:
    if j.scheme not in SCHEMES:
        return f"unknown scheme {j.scheme}"
    if j.scheme not in system.schemes:
        return f"scheme {j.scheme} is not an axiom of {system}"
    if j.substitution is None:
        try:
            match_scheme(j.scheme, f)
        except SchemeMismatch as exc:
            try:
                match_scheme(j.scheme, f, expand=True)
            except SchemeMismatch:
                return f"wrong scheme: not an instance of {j.scheme} ({exc})"
        return None
    try:
        expected = instantiate(j.scheme, j.substitution)
    except SchemeMismatch as exc:
        return f"wrong instance: {exc}"
    if same_formula(expected, f):
        return None
    try:
        match_scheme(j.scheme, f)
    except SchemeMismatch:
        return f"wrong scheme: formula is not an instance of {j.scheme}"
    return f"wrong instance: substitution yields {to_text(expected)}"


def check_proof(system: ProofSystem, assumptions: Sequence[Formula], proof: Proof) -> Verdict:
    """Validate every step; rejection is reported in the verdict, never raised."""
    if not proof.steps:
        return Verdict(False, (), None, False, "empty proof")
    flags = dependency_flags(proof)
    diags = []
    for k, step in enumerate(proof.steps):
        f, j = step.formula, step.justification
        message = system.language_error(f)
        if message is None:
            refs = references(j)
            bad_ref = next((i for i in refs if not 0 <= i < k), None)
            if bad_ref is not None:
                message = f"reference to step {bad_ref + 1} is not an earlier step"
            elif isinstance(j, Axiom):
                message = _check_axiom(system, j, f)
            elif isinstance(j, Assumption):
                if not 0 <= j.index < len(assumptions):
                    message = f"no assumption number {j.index + 1}"
                elif not same_formula(assumptions[j.index], f):
                    message = f"formula differs from assumption {j.index + 1}"
            elif isinstance(j, MP):
                minor = proof.steps[j.minor].formula
                major = proof.steps[j.major].formula
                if not same_formula(major, Implies(minor, f)):
                    message = (f"modus ponens needs step {j.major + 1} to be "
                               f"{to_text(Implies(minor, f))}")
            elif isinstance(j, NRBox):
                if "NRBox" not in system.rules:
                    message = f"rule nec (NRBox) is not available in {system}"
                elif flags[j.premise]:
                    message = "rule restricted to theorems: premise depends on assumptions"
                elif not same_formula(f, Box(proof.steps[j.premise].formula)):
                    message = f"nec must conclude []({to_text(proof.steps[j.premise].formula)})"
            elif isinstance(j, RNDia):
                if "RNDia" not in system.rules:
                    message = f"rule mon (RNDia) is not available in {system}"
                elif flags[j.premise]:
                    message = "rule restricted to theorems: premise depends on assumptions"
                else:
                    message = _check_rndia(proof.steps[j.premise].formula, f)
            else:
                message = f"unknown justification {j!r}"
        diags.append(StepDiagnostic(k, message is None, flags[k], message or ""))
    accepted = all(d.ok for d in diags)
    return Verdict(accepted, tuple(diags), proof.conclusion, flags[-1])


def _check_rndia(premise: Formula, f: Formula) -> str | None:
    if isinstance(premise, Implies):
        a, b = premise.left, premise.right
        if same_formula(f, Implies(Diamond(a), Diamond(b))):
            return None
    ep = expand_derived(premise)
    if not isinstance(ep, Implies):
        return "mon needs a premise of the form phi -> psi"
    if expand_derived(f) == Implies(Diamond(ep.left), Diamond(ep.right)):
        return None
    return f"mon must conclude <>({to_text(ep.left)}) -> <>({to_text(ep.right)})"


def renumber(j: Justification, offset: int = 0, mapping: Mapping[int, int] | None = None,
             assumption_map: Mapping[int, int] | None = None) -> Justification:
    """Shift step references (by ``offset`` or via ``mapping``) for splicing."""
    def ref(i: int) -> int:
        return mapping[i] if mapping is not None else i + offset

    if isinstance(j, MP):
        return MP(ref(j.minor), ref(j.major))
    if isinstance(j, NRBox):
        return NRBox(ref(j.premise))
    if isinstance(j, RNDia):
        return RNDia(ref(j.premise))
    if isinstance(j, Assumption) and assumption_map is not None:
        return Assumption(assumption_map[j.index])
    return j
