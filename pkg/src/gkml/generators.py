"""Seeded random models and formulas for fuzzing."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence

from gkml.algebra import ONE, ZERO
from gkml.model import GKModel
from gkml.syntax import (And, Atom, Bottom, Box, Diamond, Formula, Iff, Implies,
                         Not, Or, Top, const)

GRID_DENOMINATORS = (1, 2, 3, 4, 5, 6, 8, 12)


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent stream for one trial, so results do not depend on scheduling."""
    return random.Random(f"gkml:{seed}:{trial}")


def random_value(rng: random.Random, denominator: int) -> Fraction:
    # extremes are oversampled: most interesting behaviour sits at 0 and 1
    r = rng.random()
    if r < 0.2:
        return ZERO
    if r < 0.4:
        return ONE
    return Fraction(rng.randint(0, denominator), denominator)


def closure_min_transitive(S: list[list[Fraction]]) -> list[list[Fraction]]:
    """Smallest max-min transitive relation above ``S``."""
    n = len(S)
    S = [row[:] for row in S]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                best = max(min(S[i][k], S[k][j]) for k in range(n))
                if best > S[i][j]:
                    S[i][j] = best
                    changed = True
    return S


def random_model(rng: random.Random, atoms: Sequence[str], max_worlds: int = 4,
                 frame: Iterable[str] = (), constants: Iterable[Fraction] | None = None,
                 denominator: int | None = None, min_worlds: int = 1) -> GKModel:
    """A random model, optionally forced into a frame class.

    ``frame`` may contain ``"reflexive"``, ``"transitive"``, ``"symmetric"``
    and ``"crisp"``.
    """
    frame = set(frame)
    n = rng.randint(min_worlds, max_worlds)
    d = denominator or rng.choice(GRID_DENOMINATORS)
    edge_d = 1 if "crisp" in frame else d
    S = [[random_value(rng, edge_d) for _ in range(n)] for _ in range(n)]
    if "symmetric" in frame:
        for i in range(n):
            for j in range(i):
                S[i][j] = S[j][i]
    if "transitive" in frame:
        S = closure_min_transitive(S)
    if "reflexive" in frame:
        for i in range(n):
            S[i][i] = ONE
    atoms = tuple(sorted(set(atoms)))
    val = tuple(tuple(random_value(rng, d) for _ in atoms) for _ in range(n))
    worlds = tuple(f"w{i}" for i in range(n))
    consts = None if constants is None else frozenset(constants)
    return GKModel(worlds, atoms, tuple(map(tuple, S)), val, consts)


def random_formula(rng: random.Random, depth: int, atoms: Sequence[str] = ("p", "q"),
                   modal: str = "both", constants: Sequence[Fraction] = (),
                   sugar: bool = True) -> Formula:
    """A random formula of depth at most ``depth``.

    ``modal`` is one of ``"none"``, ``"box"``, ``"diamond"``, ``"both"``.
    """
    unary: list = []
    if sugar:
        unary.append(Not)
    if modal in ("box", "both"):
        unary.append(Box)
    if modal in ("diamond", "both"):
        unary.append(Diamond)
    binary: list = [And, Implies] + ([Or, Iff] if sugar else [])

    def leaf() -> Formula:
        r = rng.random()
        if r < 0.1:
            return Bottom()
        if r < 0.15 and sugar:
            return Top()
        if r < 0.3 and constants:
            return const(rng.choice(list(constants)))
        return Atom(rng.choice(list(atoms)))

    def go(d: int) -> Formula:
        if d == 0 or rng.random() < 0.25:
            return leaf()
        if unary and rng.random() < 0.4:
            return rng.choice(unary)(go(d - 1))
        return rng.choice(binary)(go(d - 1), go(d - 1))

    return go(depth)
