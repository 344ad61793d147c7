"""Bounded countermodel search and a brute-force validity oracle.

Goedel connectives and finite min/max only look at the relative order of
their inputs and at coincidence with 0 and 1 (and with any truth constants).
So a search over finitely many worlds only needs one model per order type of
the value slots.  The enumeration realises each order type on a grid whose
gaps between fixed points (0, constants, 1) hold as many interior points as
there are slots, using the smallest ranks in each gap ("rank-canonical"
assignments).
"""

from __future__ import annotations

import bisect
import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from gkml.algebra import ONE, ZERO
from gkml.model import GKModel
from gkml.semantics import evaluate, value_table
from gkml.syntax import (And, Atom, Bottom, Box, Const, Diamond, Formula, Fragment, Iff,
                         Implies, Not, Or, Top, atoms, constants, fragment_of,
                         nesting_degree, subformulas_by_rank)

DEFAULT_EVALUATION_CAP = 10 ** 8


class SearchBudgetExceeded(RuntimeError):
    """The time budget ran out before the space was exhausted."""

    def __init__(self, seconds: float, models: int):
        self.models = models
        super().__init__(f"time budget of {seconds:g}s exceeded after {models} models")


class SearchCapExceeded(ValueError):
    pass


def fmp_world_bound(f: Formula) -> int:
    """World bound of the finite-model construction for a <>-only formula.

    With n the nesting degree and c_j the number of <>-subformulas of rank
    <= j, the model built level by level has at most b_n worlds, where
    b_0 = 1 and b_{i+1} = b_i * (1 + c_{n-i}).
    """
    if fragment_of(f) not in (Fragment.DIAMOND_ONLY, Fragment.PROPOSITIONAL):
        raise ValueError("the world bound only applies to formulas without []")
    n = nesting_degree(f)
    b = 1
    for i in range(n):
        c = sum(1 for g in subformulas_by_rank(f, n - i) if isinstance(g, Diamond))
        b *= 1 + c
    return b


@dataclass(frozen=True)
class SearchConfig:
    max_worlds: int = 3
    grid_denominator: Union[int, str] = "auto"
    fragment_mode: Fragment | None = None  # None: derive from the formula
    time_budget: float | None = 60.0
    seed: int = 0  # reserved for randomized phase ordering; enumeration is deterministic
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.max_worlds < 1:
            raise ValueError("max_worlds must be at least 1")
        if self.grid_denominator != "auto" and (
                not isinstance(self.grid_denominator, int) or self.grid_denominator < 1):
            raise ValueError("grid_denominator must be a positive integer or 'auto'")


@dataclass(frozen=True)
class Countermodel:
    model: GKModel
    world: str
    value: Fraction
    models_searched: int = 0


@dataclass(frozen=True)
class ExhaustedComplete:
    models_searched: int
    bound: int


@dataclass(frozen=True)
class ExhaustedBounded:
    models_searched: int
    reason: str


SearchOutcome = Union[Countermodel, ExhaustedComplete, ExhaustedBounded]


# --------------------------------------------------------------------------
# Compiled integer evaluator.  Values are grid numerators; top = denominator.

_LEAF, _BOT, _TOP, _CONST, _AND, _IMP, _OR, _IFF, _NOT, _BOX, _DIA = range(11)


def _compile(f: Formula, atom_pos: dict[str, int], D: int) -> list[tuple]:
    """Post-order program over distinct subformulas; the last entry is ``f``."""
    program: list[tuple] = []
    slot: dict[Formula, int] = {}

    def go(g: Formula) -> int:
        if g in slot:
            return slot[g]
        if isinstance(g, Atom):
            op = (_LEAF, atom_pos[g.name])
        elif isinstance(g, Bottom):
            op = (_BOT,)
        elif isinstance(g, Top):
            op = (_TOP,)
        elif isinstance(g, Const):
            op = (_CONST, int(g.value * D))
        elif isinstance(g, Not):
            op = (_NOT, go(g.sub))
        elif isinstance(g, Box):
            op = (_BOX, go(g.sub))
        elif isinstance(g, Diamond):
            op = (_DIA, go(g.sub))
        else:
            kind = {And: _AND, Implies: _IMP, Or: _OR, Iff: _IFF}[type(g)]
            op = (kind, go(g.left), go(g.right))
        program.append(op)
        slot[g] = len(program) - 1
        return slot[g]

    go(f)
    return program


def _run(program: list[tuple], n: int, S: list[list[int]], E: list[list[int]], D: int) -> list[int]:
    regs: list[list[int]] = []
    W = range(n)
    for op in program:
        kind = op[0]
        if kind == _LEAF:
            k = op[1]
            v = [E[w][k] for w in W]
        elif kind == _BOT:
            v = [0] * n
        elif kind == _TOP:
            v = [D] * n
        elif kind == _CONST:
            v = [op[1]] * n
        elif kind == _AND:
            a, b = regs[op[1]], regs[op[2]]
            v = [x if x < y else y for x, y in zip(a, b)]
        elif kind == _OR:
            a, b = regs[op[1]], regs[op[2]]
            v = [x if x > y else y for x, y in zip(a, b)]
        elif kind == _IMP:
            a, b = regs[op[1]], regs[op[2]]
            v = [D if x <= y else y for x, y in zip(a, b)]
        elif kind == _IFF:
            a, b = regs[op[1]], regs[op[2]]
            v = [D if x == y else (x if x < y else y) for x, y in zip(a, b)]
        elif kind == _NOT:
            v = [D if x == 0 else 0 for x in regs[op[1]]]
        elif kind == _BOX:
            sub = regs[op[1]]
            v = [min(D if s <= y else y for s, y in zip(S[w], sub)) for w in W]
        else:
            sub = regs[op[1]]
            v = [max(s if s < y else y for s, y in zip(S[w], sub)) for w in W]
        regs.append(v)
    return regs[-1]


# --------------------------------------------------------------------------
# Slot layout and rank-canonical enumeration

@dataclass(frozen=True)
class _Layout:
    n: int
    atoms: tuple[str, ...]
    D: int
    fixed: tuple[int, ...]            # grid numerators of 0, constants, 1
    slots: tuple[tuple, ...]          # ("S", x, y) or ("e", w, k), enumeration order
    depth: int


def _auto_denominator(slot_count: int, consts: set[Fraction]) -> int:
    lcm = 1
    for c in consts:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return lcm * (slot_count + 1)


def _layout(f: Formula, n: int, grid, depth: int) -> _Layout:
    names = tuple(sorted(atoms(f)))
    consts = constants(f)
    total_slots = n * n + n * len(names) + len(consts)
    D = _auto_denominator(total_slots, consts) if grid == "auto" else grid
    for c in consts:
        if (c * D).denominator != 1:
            raise ValueError(f"constant {c} is not on the grid with denominator {D}")
    fixed = tuple(sorted({0, D} | {int(c * D) for c in consts}))
    slots: list[tuple] = []
    # only slots that can influence the value at world 0 are enumerated
    if depth >= 1:
        sources = range(n) if depth >= 2 else (0,)
        slots += [("S", x, y) for x in sources for y in range(n)]
    for w in (range(n) if depth >= 1 else (0,)):
        slots += [("e", w, k) for k in range(len(names))]
    return _Layout(n, names, D, fixed, tuple(slots), depth)


def _gap_capacity(layout: _Layout) -> int:
    return min(b - a - 1 for a, b in zip(layout.fixed, layout.fixed[1:]))


def _canonical_assignments(layout: _Layout, first_choices=None) -> Iterator[tuple[int, ...]]:
    """Rank-canonical slot vectors in lexicographic order.

    In every gap between consecutive fixed points the interior offsets used
    form an initial segment {1..m}.
    """
    fixed = layout.fixed
    fixed_set = set(fixed)
    D = layout.D
    k = len(layout.slots)
    gaps = len(fixed) - 1
    values = list(range(D + 1))
    gap_of = [0] * (D + 1)
    offset_of = [0] * (D + 1)
    for v in values:
        if v not in fixed_set:
            g = bisect.bisect_right(fixed, v) - 1
            gap_of[v], offset_of[v] = g, v - fixed[g]
    used = [set() for _ in range(gaps)]
    top = [0] * gaps
    vec = [0] * k

    def holes() -> int:
        return sum(top[g] - len(used[g]) for g in range(gaps))

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == k:
            if holes() == 0:
                yield tuple(vec)
            return
        remaining = k - i - 1
        choices = first_choices if (i == 0 and first_choices is not None) else values
        for v in choices:
            if v in fixed_set:
                vec[i] = v
                if holes() <= remaining:
                    yield from rec(i + 1)
                continue
            g, o = gap_of[v], offset_of[v]
            if o > top[g] + 1 + remaining:
                continue
            fresh = o not in used[g]
            old_top = top[g]
            if fresh:
                used[g].add(o)
            top[g] = max(old_top, o)
            if holes() <= remaining:
                vec[i] = v
                yield from rec(i + 1)
            if fresh:
                used[g].discard(o)
            top[g] = old_top

    yield from rec(0)


def _symmetry_key(layout: _Layout, vec: tuple[int, ...], world: int) -> tuple:
    parts = []
    for idx, (kind, a, b) in enumerate(layout.slots):
        if kind == "S" and (b == world and a == 0 or a == world and b in (0, world)):
            parts.append((kind, a == world, b == world, vec[idx]))
        elif kind == "e" and a == world:
            parts.append((kind, b, vec[idx]))
    return tuple(parts)


def _is_symmetry_canonical(layout: _Layout, vec: tuple[int, ...]) -> bool:
    """Worlds 1..n-1 are interchangeable; keep models whose world keys ascend."""
    keys = [_symmetry_key(layout, vec, w) for w in range(1, layout.n)]
    return all(a <= b for a, b in zip(keys, keys[1:]))


def _matrices(layout: _Layout, vec: tuple[int, ...]):
    n = layout.n
    S = [[0] * n for _ in range(n)]
    E = [[0] * len(layout.atoms) for _ in range(n)]
    for (kind, a, b), v in zip(layout.slots, vec):
        if kind == "S":
            S[a][b] = v
        else:
            E[a][b] = v
    return S, E


def _to_model(layout: _Layout, vec: tuple[int, ...]) -> GKModel:
    S, E = _matrices(layout, vec)
    D = layout.D
    worlds = tuple(f"w{i}" for i in range(layout.n))
    return GKModel(worlds, layout.atoms,
                   tuple(tuple(Fraction(v, D) for v in row) for row in S),
                   tuple(tuple(Fraction(v, D) for v in row) for row in E))


def _scan(f: Formula, layout: _Layout, deadline: float | None,
          first_choices=None) -> tuple[tuple[int, ...] | None, int]:
    """First countermodel vector in enumeration order, and models visited."""
    program = _compile(f, {a: i for i, a in enumerate(layout.atoms)}, layout.D)
    D = layout.D
    count = seen = 0
    for vec in _canonical_assignments(layout, first_choices):
        seen += 1
        if deadline is not None and seen % 512 == 0 and time.monotonic() > deadline:
            raise SearchBudgetExceeded(0, count)
        if layout.n > 2 and not _is_symmetry_canonical(layout, vec):
            continue
        count += 1
        S, E = _matrices(layout, vec)
        if _run(program, layout.n, S, E, D)[0] < D:
            return vec, count
    return None, count


def _scan_worker(args):
    f, layout, deadline, first_choices = args
    try:
        return _scan(f, layout, deadline, first_choices)
    except SearchBudgetExceeded as exc:
        return "budget", exc.models


def find_countermodel(f: Formula, cfg: SearchConfig = SearchConfig()) -> SearchOutcome:
    """Search models with 1..max_worlds worlds for a world where ``f`` < 1.

    The evaluation point is always the first world.  Worlds are tried in
    ascending number, slot vectors in lexicographic order.  For formulas
    without [] an empty search at or above the finite-model bound, on a
    grid that realises every order type, is a validity verdict.
    """
    fragment = cfg.fragment_mode or fragment_of(f)
    depth = nesting_degree(f)
    start = time.monotonic()
    deadline = None if cfg.time_budget is None else start + cfg.time_budget
    searched = 0
    order_complete = True
    world_counts = range(1, cfg.max_worlds + 1) if depth > 0 else range(1, 2)
    for n in world_counts:
        layout = _layout(f, n, cfg.grid_denominator, depth)
        if _gap_capacity(layout) < len(layout.slots):
            order_complete = False
        try:
            vec, count = _parallel_scan(f, layout, deadline, cfg.jobs)
        except SearchBudgetExceeded as exc:
            raise SearchBudgetExceeded(cfg.time_budget, searched + exc.models) from None
        searched += count
        if vec is not None:
            model = _to_model(layout, vec)
            value = evaluate(model, model.worlds[0], f)
            if value >= ONE:
                raise AssertionError("search evaluator disagrees with the semantics")
            return Countermodel(model, model.worlds[0], value, searched)

    if fragment in (Fragment.DIAMOND_ONLY, Fragment.PROPOSITIONAL) and order_complete \
            and fragment_of(f) in (Fragment.DIAMOND_ONLY, Fragment.PROPOSITIONAL):
        bound = fmp_world_bound(f)
        if cfg.max_worlds >= bound or depth == 0:
            return ExhaustedComplete(searched, bound)
        return ExhaustedBounded(searched, f"max_worlds {cfg.max_worlds} below bound {bound}")
    if not order_complete:
        return ExhaustedBounded(searched, "grid too coarse to realise every order type")
    if fragment_of(f) in (Fragment.BOX_ONLY, Fragment.BIMODAL):
        return ExhaustedBounded(searched, "[] formulas lack the finite model property")
    return ExhaustedBounded(searched, "bound reached")


def _parallel_scan(f: Formula, layout: _Layout, deadline, jobs: int):
    if jobs <= 1 or not layout.slots:
        return _scan(f, layout, deadline)
    values = list(range(layout.D + 1))
    parts = [values[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_scan_worker, [(f, layout, deadline, p) for p in parts if p]))
    if any(r[0] == "budget" for r in results):
        raise SearchBudgetExceeded(0, sum(r[1] for r in results))
    found = [r[0] for r in results if r[0] is not None]
    # each worker reports its own least candidate; the global least wins
    return (min(found) if found else None), sum(r[1] for r in results)


# --------------------------------------------------------------------------
# Brute-force oracle

@dataclass(frozen=True)
class ExhaustiveStats:
    valid: bool
    models: int
    min_value: Fraction
    witness: tuple[GKModel, str] | None = None

    def __bool__(self) -> bool:
        return self.valid


def exhaustive_validity(f: Formula, max_worlds: int, grid_denominator: int,
                        cap: int = DEFAULT_EVALUATION_CAP) -> ExhaustiveStats:
    """Evaluate ``f`` at every world of every model on the grid, via the semantics.

    No symmetry or order-type reduction: this is the independent oracle.
    """
    names = tuple(sorted(atoms(f)))
    consts = constants(f)
    D = grid_denominator
    grid = [Fraction(i, D) for i in range(D + 1)]
    total = sum(len(grid) ** (n * n + n * len(names)) * n for n in range(1, max_worlds + 1))
    if total > cap:
        raise SearchCapExceeded(f"{total} evaluations exceed the cap of {cap}")
    low, models, witness = ONE, 0, None
    for n in range(1, max_worlds + 1):
        worlds = tuple(f"w{i}" for i in range(n))
        for S_flat in itertools.product(grid, repeat=n * n):
            S = tuple(tuple(S_flat[i * n:(i + 1) * n]) for i in range(n))
            for e_flat in itertools.product(grid, repeat=n * len(names)):
                k = len(names)
                E = tuple(tuple(e_flat[i * k:(i + 1) * k]) for i in range(n))
                m = GKModel(worlds, names, S, E, frozenset(consts) if consts else None)
                models += 1
                values = value_table(m, f)
                v = min(values)
                if v < low:
                    low = v
                    witness = (m, worlds[values.index(v)])
    return ExhaustiveStats(low == ONE, models, low, witness)
