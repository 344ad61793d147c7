"""Line-oriented proof files.

::

    system: GBox+T
    constants: 1/4, 1/2, 3/4        (optional)
    assume: <formula>               (repeatable)
    1. <formula> ; ax KBox [phi=p, psi=q]
    2. <formula> ; asm 1
    3. <formula> ; mp 1 2
    4. <formula> ; nec 3
    5. <formula> ; mon 3

Blank lines and ``#`` comments are ignored.  Step numbers must run 1, 2, ...
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from gkml.algebra import format_rational
from gkml.proofs.core import MP, Assumption, Axiom, NRBox, Proof, RNDia, Step
from gkml.proofs.schemes import GREEK, SCHEMES, ProofSystem, ProofSystemError, parse_constant
from gkml.syntax import Formula, FormulaSyntaxError, parse, to_text


class ProofFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class ProofDocument:
    system: ProofSystem
    assumptions: list[Formula] = field(default_factory=list)
    proof: Proof = field(default_factory=lambda: Proof(()))


_STEP = re.compile(r"^\s*(\d+)\s*\.\s*(.*)$")


def _formula(text: str, line: int) -> Formula:
    try:
        return parse(text)
    except FormulaSyntaxError as exc:
        raise ProofFormatError(f"bad formula {text.strip()!r}: {exc}", line) from None


def _justification(text: str, line: int):
    words = text.split()
    if not words:
        raise ProofFormatError("missing justification", line)
    kind = words[0]

    def ints(count: int) -> list[int]:
        if len(words) != count + 1 or not all(w.isdigit() for w in words[1:]):
            raise ProofFormatError(f"'{kind}' takes {count} step number(s)", line)
        return [int(w) - 1 for w in words[1:]]

    if kind == "asm":
        return Assumption(*ints(1))
    if kind == "mp":
        return MP(*ints(2))
    if kind == "nec":
        return NRBox(*ints(1))
    if kind == "mon":
        return RNDia(*ints(1))
    if kind != "ax":
        raise ProofFormatError(f"unknown justification {kind!r}", line)
    rest = text.strip()[2:].strip()
    scheme, _, subst_text = rest.partition(" ")
    if scheme not in SCHEMES:
        raise ProofFormatError(f"unknown scheme {scheme!r}", line)
    subst_text = subst_text.strip()
    if not subst_text:
        return Axiom(scheme)
    if not (subst_text.startswith("[") and subst_text.endswith("]")):
        raise ProofFormatError("substitution must be written [name=formula, ...]", line)
    binding = {}
    for item in subst_text[1:-1].split(","):
        if not item.strip():
            continue
        name, eq, value = item.partition("=")
        if not eq:
            raise ProofFormatError(f"malformed substitution entry {item.strip()!r}", line)
        name = GREEK.get(name.strip(), name.strip())
        binding[name] = _formula(value, line)
    return Axiom(scheme, binding)


def parse_proof(text: str) -> ProofDocument:
    system_text = None
    constants = None
    assumptions: list[Formula] = []
    steps: list[Step] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _STEP.match(line)
        if m:
            number, body = int(m.group(1)), m.group(2)
            if number != len(steps) + 1:
                raise ProofFormatError(f"expected step {len(steps) + 1}, found {number}", lineno)
            formula_text, sep, just_text = body.rpartition(";")
            if not sep:
                raise ProofFormatError("step needs '<formula> ; <justification>'", lineno)
            steps.append(Step(_formula(formula_text, lineno), _justification(just_text, lineno)))
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise ProofFormatError(f"unrecognised line {line!r}", lineno)
        if steps and key in ("system", "constants", "assume"):
            raise ProofFormatError(f"header '{key}' after the first step", lineno)
        if key == "system":
            system_text = value.strip()
        elif key == "constants":
            try:
                constants = [parse_constant(c) for c in value.split(",") if c.strip()]
            except ProofSystemError as exc:
                raise ProofFormatError(str(exc), lineno) from None
        elif key == "assume":
            assumptions.append(_formula(value, lineno))
        else:
            raise ProofFormatError(f"unknown header {key!r}", lineno)
    if system_text is None:
        raise ProofFormatError("missing 'system:' header")
    try:
        system = ProofSystem.parse(system_text, constants)
    except ProofSystemError as exc:
        raise ProofFormatError(str(exc)) from None
    return ProofDocument(system, assumptions, Proof(tuple(steps)))


def load_proof(path: str | Path) -> ProofDocument:
    return parse_proof(Path(path).read_text(encoding="utf-8"))


def _format_justification(j) -> str:
    if isinstance(j, Assumption):
        return f"asm {j.index + 1}"
    if isinstance(j, MP):
        return f"mp {j.minor + 1} {j.major + 1}"
    if isinstance(j, NRBox):
        return f"nec {j.premise + 1}"
    if isinstance(j, RNDia):
        return f"mon {j.premise + 1}"
    if j.substitution is None:
        return f"ax {j.scheme}"
    entries = ", ".join(f"{k}={to_text(v)}" for k, v in sorted(j.substitution.items()))
    return f"ax {j.scheme} [{entries}]"


def format_proof(doc: ProofDocument) -> str:
    lines = [f"system: {doc.system}"]
    consts = doc.system.constants
    if consts is not None:
        lines.append("constants: " + ", ".join(format_rational(c) for c in sorted(consts)))
    lines.extend(f"assume: {to_text(a)}" for a in doc.assumptions)
    for k, step in enumerate(doc.proof.steps, 1):
        lines.append(f"{k}. {to_text(step.formula)} ; {_format_justification(step.justification)}")
    return "\n".join(lines) + "\n"
