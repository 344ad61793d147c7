"""Finite Goedel-Kripke models: storage, JSON I/O, frame checks, builtins."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from gkml.algebra import (ONE, ZERO, AlgebraError, OrderMap, format_rational,
                          parse_rational, tnorm, truth)


class ModelError(ValueError):
    """Malformed or inconsistent model data."""


@dataclass(frozen=True)
class GKModel:
    """A finite model with fuzzy accessibility ``S`` and atomic valuation ``e``.

    ``access[i][j]`` is S(worlds[i], worlds[j]); ``valuation[i][k]`` is
    e(worlds[i], atoms[k]).  Atoms outside ``atoms`` evaluate to 0.
    """

    worlds: tuple[str, ...]
    atoms: tuple[str, ...]
    access: tuple[tuple[Fraction, ...], ...]
    valuation: tuple[tuple[Fraction, ...], ...]
    constants: frozenset[Fraction] | None = None
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.worlds)
        if n == 0:
            raise ModelError("a model needs at least one world")
        if len(set(self.worlds)) != n:
            dup = next(w for w in self.worlds if self.worlds.count(w) > 1)
            raise ModelError(f"duplicate world {dup!r}")
        if len(self.access) != n or any(len(row) != n for row in self.access):
            raise ModelError("accessibility matrix has the wrong shape")
        if len(self.valuation) != n or any(len(r) != len(self.atoms) for r in self.valuation):
            raise ModelError("valuation table has the wrong shape")
        for row in (*self.access, *self.valuation):
            for v in row:
                if not ZERO <= v <= ONE:
                    raise ModelError(f"value {v} outside [0,1]")
        if self.constants is not None:
            object.__setattr__(self, "constants", frozenset(self.constants) | {ZERO, ONE})
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.worlds)})

    @classmethod
    def from_maps(cls, worlds: Iterable[str],
                  S: Mapping[tuple[str, str], object] | None = None,
                  e: Mapping[str, Mapping[str, object]] | None = None,
                  constants: Iterable[object] | None = None) -> "GKModel":
        """Build a model from sparse maps; missing entries default to 0."""
        worlds = tuple(worlds)
        index = {w: i for i, w in enumerate(worlds)}
        if len(index) != len(worlds):
            raise ModelError("duplicate world in world list")
        S = S or {}
        e = e or {}

        def value(v) -> Fraction:
            try:
                return truth(v)
            except (AlgebraError, TypeError, ValueError) as exc:
                raise ModelError(str(exc)) from None

        access = [[ZERO] * len(worlds) for _ in worlds]
        for (x, y), v in S.items():
            for w in (x, y):
                if w not in index:
                    raise ModelError(f"unknown world {w!r} in accessibility")
            access[index[x]][index[y]] = value(v)
        atom_names = sorted({a for row in e.values() for a in row})
        val = [[ZERO] * len(atom_names) for _ in worlds]
        for w, row in e.items():
            if w not in index:
                raise ModelError(f"unknown world {w!r} in valuation")
            for a, v in row.items():
                val[index[w]][atom_names.index(a)] = value(v)
        consts = None if constants is None else frozenset(value(c) for c in constants)
        return cls(worlds, tuple(atom_names), tuple(map(tuple, access)),
                   tuple(map(tuple, val)), consts)

    def index(self, world: str) -> int:
        try:
            return self._index[world]
        except KeyError:
            raise KeyError(world) from None

    def S(self, x: str, y: str) -> Fraction:
        return self.access[self.index(x)][self.index(y)]

    def e(self, x: str, atom: str) -> Fraction:
        row = self.valuation[self.index(x)]
        try:
            return row[self.atoms.index(atom)]
        except ValueError:
            return ZERO

    def values(self) -> set[Fraction]:
        """Every value occurring in S, e or the constants domain."""
        out = {v for row in self.access for v in row}
        out.update(v for row in self.valuation for v in row)
        if self.constants:
            out.update(self.constants)
        return out

    def with_constants(self, constants: Iterable[Fraction] | None) -> "GKModel":
        consts = None if constants is None else frozenset(constants)
        return GKModel(self.worlds, self.atoms, self.access, self.valuation, consts)

    def to_json(self) -> dict:
        data = {
            "worlds": list(self.worlds),
            "S": {f"{x},{y}": format_rational(self.access[i][j])
                  for i, x in enumerate(self.worlds) for j, y in enumerate(self.worlds)},
            "e": {w: {a: format_rational(self.valuation[i][k]) for k, a in enumerate(self.atoms)}
                  for i, w in enumerate(self.worlds)},
        }
        if self.constants is not None:
            data["constants"] = [format_rational(c) for c in sorted(self.constants)]
        return data


def model_from_json(data: object) -> GKModel:
    """Validate a decoded model-file object."""
    if not isinstance(data, dict):
        raise ModelError("model file must contain a JSON object")
    unknown = set(data) - {"worlds", "S", "e", "constants", "witness"}
    if unknown:
        raise ModelError(f"unknown model fields: {sorted(unknown)}")
    worlds = data.get("worlds")
    if not isinstance(worlds, list) or not worlds or not all(isinstance(w, str) for w in worlds):
        raise ModelError('"worlds" must be a nonempty array of strings')
    if len(set(worlds)) != len(worlds):
        dup = next(w for w in worlds if worlds.count(w) > 1)
        raise ModelError(f"duplicate world {dup!r}")
    for w in worlds:
        if "," in w or not w:
            raise ModelError(f"invalid world name {w!r}")

    def rational(v: object, where: str) -> Fraction:
        if not isinstance(v, str):
            raise ModelError(f"{where}: values must be rational strings")
        try:
            return parse_rational(v)
        except AlgebraError as exc:
            raise ModelError(f"{where}: {exc}") from None

    S_raw = data.get("S", {})
    if not isinstance(S_raw, dict):
        raise ModelError('"S" must be an object')
    S = {}
    for key, v in S_raw.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise ModelError(f"malformed accessibility key {key!r}")
        S[tuple(p.strip() for p in parts)] = rational(v, f"S[{key}]")
    e_raw = data.get("e", {})
    if not isinstance(e_raw, dict) or not all(isinstance(r, dict) for r in e_raw.values()):
        raise ModelError('"e" must map worlds to objects')
    e = {w: {a: rational(v, f"e[{w}][{a}]") for a, v in row.items()} for w, row in e_raw.items()}
    for row in e.values():
        for a in row:
            if not a or not a[0].islower():
                raise ModelError(f"invalid atom name {a!r}")
    consts = data.get("constants")
    if consts is not None:
        if not isinstance(consts, list):
            raise ModelError('"constants" must be an array')
        consts = [rational(c, "constants") for c in consts]
    return GKModel.from_maps(worlds, S, e, consts)


def load_model(path: str | Path) -> GKModel:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: malformed JSON: {exc}") from None
    return model_from_json(data)


def dumps_model(m: GKModel, extra: Mapping[str, object] | None = None) -> str:
    data = m.to_json()
    if extra:
        data.update(extra)
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_model(m: GKModel, path: str | Path) -> None:
    Path(path).write_text(dumps_model(m), encoding="utf-8")


# --------------------------------------------------------------------------
# Frame properties

@dataclass(frozen=True)
class FrameReport:
    crisp: bool
    reflexive: bool
    transitive: bool
    symmetric: bool
    witnesses: dict[str, tuple]

    def lines(self) -> list[str]:
        out = []
        for prop in ("crisp", "reflexive", "transitive", "symmetric"):
            ok = getattr(self, prop)
            line = f"{prop}: {'yes' if ok else 'no'}"
            if not ok:
                w = self.witnesses[prop]
                line += "  witness " + " ".join(
                    format_rational(x) if isinstance(x, Fraction) else str(x) for x in w)
            out.append(line)
        return out


def frame_properties(m: GKModel) -> FrameReport:
    W = m.worlds
    S = m.access
    n = len(W)
    witnesses: dict[str, tuple] = {}
    for i in range(n):
        for j in range(n):
            if S[i][j] not in (ZERO, ONE):
                witnesses["crisp"] = (W[i], W[j], S[i][j])
                break
        if "crisp" in witnesses:
            break
    for i in range(n):
        if S[i][i] != ONE:
            witnesses["reflexive"] = (W[i], S[i][i])
            break
    trans = next(((i, j, k) for i in range(n) for j in range(n) for k in range(n)
                  if tnorm(S[i][j], S[j][k]) > S[i][k]), None)
    if trans:
        i, j, k = trans
        witnesses["transitive"] = (W[i], W[j], W[k], S[i][j], S[j][k], S[i][k])
    sym = next(((i, j) for i in range(n) for j in range(i + 1, n) if S[i][j] != S[j][i]), None)
    if sym:
        i, j = sym
        witnesses["symmetric"] = (W[i], W[j], S[i][j], S[j][i])
    return FrameReport(
        crisp="crisp" not in witnesses,
        reflexive="reflexive" not in witnesses,
        transitive="transitive" not in witnesses,
        symmetric="symmetric" not in witnesses,
        witnesses=witnesses,
    )


def transform_model(m: GKModel, g: OrderMap) -> GKModel:
    """Apply ``g`` pointwise to every accessibility and valuation value.

    The constants domain is left alone: truth constants denote themselves.
    """
    missing = {v for row in (*m.access, *m.valuation) for v in row} - g.domain
    if missing:
        shown = ", ".join(format_rational(v) for v in sorted(missing))
        raise ModelError(f"order map does not cover value(s) {shown}")
    access = tuple(tuple(g(v) for v in row) for row in m.access)
    valuation = tuple(tuple(g(v) for v in row) for row in m.valuation)
    return GKModel(m.worlds, m.atoms, access, valuation, m.constants)


# --------------------------------------------------------------------------
# Named example models

BUILTIN_MODELS = ("sec5-truncated", "sec6-crisp-fail", "sec3-slice")


def builtin_model(name: str, n: int = 1) -> GKModel:
    """Finite models reconstructing the worked examples.

    ``sec5-truncated``: worlds 0..n-1, S identically 1, e(k, p) = 1/(k+1).
    ``sec6-crisp-fail``: x -(1/2)-> y, e(x,p) = e(y,p) = 1, other edges 0.
    ``sec3-slice``: one world; q = 1/2 and p_i = (1/2)(1 - 1/(i+1)) for i <= n.
    """
    if name not in BUILTIN_MODELS:
        raise ModelError(f"unknown builtin model {name!r}; choose from {', '.join(BUILTIN_MODELS)}")
    if n < 1:
        raise ModelError("builtin models need n >= 1")
    if name == "sec5-truncated":
        worlds = [str(k) for k in range(n)]
        S = {(x, y): ONE for x in worlds for y in worlds}
        e = {str(k): {"p": Fraction(1, k + 1)} for k in range(n)}
        return GKModel.from_maps(worlds, S, e)
    if name == "sec6-crisp-fail":
        return GKModel.from_maps(["x", "y"], {("x", "y"): Fraction(1, 2)},
                                 {"x": {"p": ONE}, "y": {"p": ONE}})
    row = {"q": Fraction(1, 2)}
    row.update({f"p{i}": Fraction(1, 2) * (1 - Fraction(1, i + 1)) for i in range(1, n + 1)})
    return GKModel.from_maps(["w"], {("w", "w"): ZERO}, {"w": row})
