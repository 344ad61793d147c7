"""Axiom-scheme catalog and proof-system definitions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from gkml.algebra import ONE, ZERO, AlgebraError, format_rational, parse_rational
from gkml.syntax import (Atom, Bottom, Box, Const, Diamond, Formula, Top,
                         expand_derived, iter_nodes, parse, substitute, to_text)

FORMULA_METAVARS = ("phi", "psi", "chi", "theta")
CONSTANT_METAVARS = ("r", "s")
GREEK = {"φ": "phi", "ψ": "psi", "χ": "chi", "θ": "theta"}


@dataclass(frozen=True)
class Scheme:
    id: str
    text: str
    template: Formula
    metavars: frozenset[str]
    constant_metavars: frozenset[str]
    side_condition: Callable[[Mapping[str, Fraction]], bool] | None = None
    condition_text: str = ""


def _scheme(id: str, text: str, cond=None, cond_text: str = "") -> Scheme:
    template = parse(text)
    names = {g.name for g in iter_nodes(template) if isinstance(g, Atom)}
    unknown = names - set(FORMULA_METAVARS) - set(CONSTANT_METAVARS)
    assert not unknown, unknown
    return Scheme(id, text, template, frozenset(names & set(FORMULA_METAVARS)),
                  frozenset(names & set(CONSTANT_METAVARS)), cond, cond_text)


_CATALOG = [
    # Goedel logic (Hajek's basis, in the listed order)
    _scheme("G1", "(phi -> psi) -> ((psi -> chi) -> (phi -> chi))"),
    _scheme("G2", "phi & psi -> phi"),
    _scheme("G3", "phi & psi -> psi & phi"),
    _scheme("G4", "(phi -> (psi -> chi)) <-> (phi & psi -> chi)"),
    _scheme("G5", "(phi & psi -> chi) <-> (phi -> (psi -> chi))"),
    _scheme("G6", "phi -> phi & phi"),
    _scheme("G7", "((phi -> psi) -> chi) -> (((psi -> phi) -> chi) -> chi)"),
    _scheme("G8", "bot -> phi"),
    # box fragment
    _scheme("KBox", "[](phi -> psi) -> ([]phi -> []psi)"),
    _scheme("ZBox", "~~[]theta -> []~~theta"),
    # diamond fragment
    _scheme("DDia", "<>(phi | psi) -> (<>phi | <>psi)"),
    _scheme("ZDia", "<>~~phi -> ~~<>phi"),
    _scheme("FDia", "~<>bot"),
    # frame extensions
    _scheme("TBox", "[]phi -> phi"),
    _scheme("TDia", "phi -> <>phi"),
    _scheme("FourBox", "[]phi -> [][]phi"),
    _scheme("FourDia", "<><>phi -> <>phi"),
    _scheme("BBox", "phi -> []~[]~phi"),
    _scheme("BDia", "phi -> ~<>~<>phi"),
    # truth constants
    _scheme("R1a", "r -> s", lambda c: c["r"] <= c["s"], "r <= s"),
    _scheme("R1b", "(r -> s) -> s", lambda c: c["s"] < c["r"], "s < r"),
    _scheme("R2", "r -> []r"),
    _scheme("R3", "(r -> []theta) -> [](r -> theta)"),
    _scheme("R4", "(([]theta -> r) -> r) -> []((theta -> r) -> r)"),
    _scheme("R5", "<>r -> r"),
    _scheme("R6", "<>(r -> phi) -> (r -> <>phi)"),
    _scheme("R7", "<>((phi -> r) -> r) -> ((<>phi -> r) -> r)"),
    # connecting axioms for the bimodal language
    _scheme("FS1", "<>(phi -> psi) -> ([]phi -> <>psi)"),
    _scheme("FS2", "(<>phi -> []psi) -> [](phi -> psi)"),
]

SCHEMES: dict[str, Scheme] = {s.id: s for s in _CATALOG}

_EXT_SCHEMES = {
    "T": ("TBox", "TDia"),
    "Four": ("FourBox", "FourDia"),
    "B": ("BBox", "BDia"),
}
_EXT_ALIASES = {"T": "T", "4": "Four", "Four": "Four", "B": "B"}
BASES = ("G", "GBox", "GDia", "GBoxDia")
EXTENSION_FRAMES = {"T": "reflexive", "Four": "transitive", "B": "symmetric"}


class ProofSystemError(ValueError):
    pass


@dataclass(frozen=True)
class ProofSystem:
    base: str = "G"
    extensions: frozenset[str] = frozenset()
    constants: frozenset[Fraction] | None = None

    def __post_init__(self) -> None:
        if self.base not in BASES:
            raise ProofSystemError(f"unknown base system {self.base!r}")
        exts = frozenset(_EXT_ALIASES.get(e, e) for e in self.extensions)
        if exts - set(_EXT_SCHEMES):
            raise ProofSystemError(f"unknown extension(s) {sorted(exts - set(_EXT_SCHEMES))}")
        if exts and self.base == "G":
            raise ProofSystemError("modal extensions need a modal base system")
        object.__setattr__(self, "extensions", exts)
        if self.constants is not None:
            object.__setattr__(self, "constants", frozenset(self.constants) | {ZERO, ONE})

    @classmethod
    def parse(cls, text: str, constants=None) -> "ProofSystem":
        """Parse names like ``GBox``, ``GDia+T+Four``."""
        base, *exts = [t.strip() for t in text.split("+")]
        return cls(base, frozenset(exts), constants)

    @property
    def has_box(self) -> bool:
        return self.base in ("GBox", "GBoxDia")

    @property
    def has_diamond(self) -> bool:
        return self.base in ("GDia", "GBoxDia")

    @property
    def rules(self) -> frozenset[str]:
        rules = {"MP"}
        if self.has_box:
            rules.add("NRBox")
        if self.has_diamond:
            rules.add("RNDia")
        return frozenset(rules)

    @property
    def schemes(self) -> frozenset[str]:
        ids = {f"G{i}" for i in range(1, 9)}
        if self.has_box:
            ids |= {"KBox", "ZBox"}
        if self.has_diamond:
            ids |= {"DDia", "ZDia", "FDia"}
        if self.base == "GBoxDia":
            ids |= {"FS1", "FS2"}
        for ext in self.extensions:
            box_id, dia_id = _EXT_SCHEMES[ext]
            if self.has_box:
                ids.add(box_id)
            if self.has_diamond:
                ids.add(dia_id)
        if self.constants is not None:
            ids |= {"R1a", "R1b"}
            if self.has_box:
                ids |= {"R2", "R3", "R4"}
            if self.has_diamond:
                ids |= {"R5", "R6", "R7"}
        return frozenset(ids)

    @property
    def frame(self) -> frozenset[str]:
        """Frame conditions under which the system is sound."""
        return frozenset(EXTENSION_FRAMES[e] for e in self.extensions)

    def language_error(self, f: Formula) -> str | None:
        """Why ``f`` is outside the system's language, or None."""
        for g in iter_nodes(f):
            if isinstance(g, Box) and not self.has_box:
                return "formula uses [] outside the system's language"
            if isinstance(g, Diamond) and not self.has_diamond:
                return "formula uses <> outside the system's language"
            if isinstance(g, Const):
                if self.constants is None:
                    return "truth constants are not part of this system's language"
                if g.value not in self.constants:
                    return f"constant {format_rational(g.value)} not in the declared set"
        return None

    def __str__(self) -> str:
        order = ("T", "Four", "B")
        return "+".join([self.base, *[e for e in order if e in self.extensions]])


# --------------------------------------------------------------------------
# Matching and instantiation

class SchemeMismatch(ValueError):
    def __init__(self, message: str, path: tuple[int, ...] = ()):
        self.path = path
        where = "root" if not path else ".".join(str(i + 1) for i in path)
        super().__init__(f"{message} at position {where}")


def constant_value(f: Formula) -> Fraction | None:
    if isinstance(f, Bottom):
        return ZERO
    if isinstance(f, Top):
        return ONE
    if isinstance(f, Const):
        return f.value
    return None


def match_scheme(scheme_id: str, f: Formula, expand: bool = False) -> dict[str, Formula]:
    """Find the substitution making the scheme's template equal to ``f``.

    Matching is structural on the sugar-preserving trees; ``expand=True``
    matches the expanded template against the expanded formula instead.
    Side conditions on constants are checked; the constants domain is not
    (that belongs to the proof system).
    """
    scheme = SCHEMES[scheme_id]
    template = scheme.template
    if expand:
        template, f = expand_derived(template), expand_derived(f)
    binding: dict[str, Formula] = {}

    def go(t: Formula, g: Formula, path: tuple[int, ...]) -> None:
        if isinstance(t, Atom):
            if t.name in scheme.constant_metavars and constant_value(g) is None:
                raise SchemeMismatch(f"{t.name} must be a truth constant", path)
            prior = binding.setdefault(t.name, g)
            if prior != g:
                raise SchemeMismatch(
                    f"{t.name} bound to both {to_text(prior)} and {to_text(g)}", path)
            return
        if type(t) is not type(g):
            raise SchemeMismatch(
                f"expected {type(t).__name__}, found {type(g).__name__}", path)
        for i, (tk, gk) in enumerate(zip(t.children(), g.children())):
            go(tk, gk, path + (i,))

    go(template, f, ())
    _check_side_condition(scheme, binding)
    return binding


def _check_side_condition(scheme: Scheme, binding: Mapping[str, Formula]) -> None:
    if scheme.side_condition is None:
        return
    values = {k: constant_value(binding[k]) for k in scheme.constant_metavars}
    if not scheme.side_condition(values):
        shown = ", ".join(f"{k}={format_rational(v)}" for k, v in sorted(values.items()))
        raise SchemeMismatch(f"side condition {scheme.condition_text} fails for {shown}")


def instantiate(scheme_id: str, binding: Mapping[str, Formula]) -> Formula:
    """Instantiate a scheme, validating metavariables and side conditions."""
    scheme = SCHEMES[scheme_id]
    binding = {GREEK.get(k, k): v for k, v in binding.items()}
    needed = scheme.metavars | scheme.constant_metavars
    missing = needed - set(binding)
    extra = set(binding) - needed
    if missing or extra:
        parts = []
        if missing:
            parts.append(f"missing {', '.join(sorted(missing))}")
        if extra:
            parts.append(f"unexpected {', '.join(sorted(extra))}")
        raise SchemeMismatch(f"{scheme_id} substitution: {'; '.join(parts)}")
    for k in scheme.constant_metavars:
        if constant_value(binding[k]) is None:
            raise SchemeMismatch(f"{k} must be a truth constant")
    _check_side_condition(scheme, binding)
    return substitute(scheme.template, binding)


def parse_constant(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except AlgebraError as exc:
        raise ProofSystemError(str(exc)) from None
