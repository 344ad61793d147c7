"""Evaluation of formulas over finite GK-models and the two consequence checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gkml.algebra import ONE, ZERO, format_rational, join, neg, residuum, tnorm
from gkml.model import GKModel
from gkml.syntax import (And, Atom, Bottom, Box, Const, Diamond, Formula, Iff,
                         Implies, Not, Or, Top, to_text)


class EvaluationError(ValueError):
    pass


class UnknownWorldError(EvaluationError):
    pass


class UndeclaredConstantError(EvaluationError):
    pass


def _world_index(m: GKModel, x: str) -> int:
    try:
        return m.index(x)
    except KeyError:
        raise UnknownWorldError(f"unknown world {x!r}") from None


def value_table(m: GKModel, f: Formula,
                memo: dict[int, list[Fraction]] | None = None) -> list[Fraction]:
    """Values of ``f`` at every world of ``m``, in world-list order.

    inf/sup over worlds become min/max since the world set is finite.
    ``memo`` (keyed by node identity) may be shared between calls on the same
    model, as long as the formulas it was filled from are still alive.
    """
    n = len(m.worlds)
    S = m.access
    atom_col = {a: k for k, a in enumerate(m.atoms)}
    if memo is None:
        memo = {}

    def go(g: Formula) -> list[Fraction]:
        key = id(g)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(g, Atom):
            k = atom_col.get(g.name)
            out = [ZERO] * n if k is None else [row[k] for row in m.valuation]
        elif isinstance(g, Bottom):
            out = [ZERO] * n
        elif isinstance(g, Top):
            out = [ONE] * n
        elif isinstance(g, Const):
            if m.constants is not None and g.value not in m.constants:
                raise UndeclaredConstantError(
                    f"constant {format_rational(g.value)} not in the model's constants domain")
            out = [g.value] * n
        elif isinstance(g, And):
            out = [tnorm(a, b) for a, b in zip(go(g.left), go(g.right))]
        elif isinstance(g, Implies):
            out = [residuum(a, b) for a, b in zip(go(g.left), go(g.right))]
        elif isinstance(g, Or):
            out = [join(a, b) for a, b in zip(go(g.left), go(g.right))]
        elif isinstance(g, Iff):
            out = [tnorm(residuum(a, b), residuum(b, a)) for a, b in zip(go(g.left), go(g.right))]
        elif isinstance(g, Not):
            out = [neg(a) for a in go(g.sub)]
        elif isinstance(g, Box):
            sub = go(g.sub)
            out = [min(residuum(s, v) for s, v in zip(S[i], sub)) for i in range(n)]
        elif isinstance(g, Diamond):
            sub = go(g.sub)
            out = [max(tnorm(s, v) for s, v in zip(S[i], sub)) for i in range(n)]
        else:
            raise TypeError(f"not a formula: {g!r}")
        memo[key] = out
        return out

    return go(f)


def evaluate(m: GKModel, x: str, f: Formula) -> Fraction:
    """The value e(x, f)."""
    i = _world_index(m, x)
    return value_table(m, f)[i]


@dataclass(frozen=True)
class EvalTrace:
    formula: Formula
    world: str
    value: Fraction
    children: tuple["EvalTrace", ...] = ()
    # modal nodes: (y, S(x,y), e(y, sub)) for every world y
    support: tuple[tuple[str, Fraction, Fraction], ...] = ()

    def render(self, indent: int = 0, unicode: bool = False) -> list[str]:
        pad = "  " * indent
        lines = [f"{pad}e({self.world}, {to_text(self.formula, unicode)}) = "
                 f"{format_rational(self.value)}"]
        if self.support:
            for y, s, v in self.support:
                lines.append(f"{pad}  via {y}: S={format_rational(s)} sub={format_rational(v)}")
        for child in self.children:
            lines.extend(child.render(indent + 1, unicode))
        return lines


def eval_trace(m: GKModel, x: str, f: Formula) -> EvalTrace:
    """Evaluation with the full recomputation tree attached."""
    i = _world_index(m, x)
    tables: dict[int, list[Fraction]] = {}

    def table(g: Formula) -> list[Fraction]:
        if id(g) not in tables:
            tables[id(g)] = value_table(m, g)
        return tables[id(g)]

    def go(g: Formula, wi: int) -> EvalTrace:
        w = m.worlds[wi]
        value = table(g)[wi]
        if isinstance(g, (Box, Diamond)):
            sub = table(g.sub)
            support = tuple((y, m.access[wi][j], sub[j]) for j, y in enumerate(m.worlds))
            kids = tuple(go(g.sub, j) for j in range(len(m.worlds)))
            return EvalTrace(g, w, value, kids, support)
        return EvalTrace(g, w, value, tuple(go(k, wi) for k in g.children()))

    return go(f, i)


@dataclass(frozen=True)
class Validity:
    valid: bool
    world: str | None = None  # a world of minimal value when not valid
    value: Fraction = ONE

    def __bool__(self) -> bool:
        return self.valid


def valid_in_model(m: GKModel, f: Formula) -> Validity:
    values = value_table(m, f)
    low = min(values)
    if low == ONE:
        return Validity(True)
    return Validity(False, m.worlds[values.index(low)], low)


def consequence_gk(m: GKModel, x: str, theory: Sequence[Formula], f: Formula) -> bool:
    """False iff world ``x`` makes every premise true and ``f`` less than true."""
    i = _world_index(m, x)
    if all(value_table(m, t)[i] == ONE for t in theory):
        return value_table(m, f)[i] == ONE
    return True


def consequence_leq(m: GKModel, x: str, theory: Sequence[Formula], f: Formula) -> bool:
    """True iff the infimum of premise values at ``x`` is at most the value of ``f``."""
    i = _world_index(m, x)
    low = min((value_table(m, t)[i] for t in theory), default=ONE)
    return low <= value_table(m, f)[i]
