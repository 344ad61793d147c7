"""Reference evaluator used only by the tests.

Deliberately naive and independent of ``gkml.semantics``: it works on the
JSON form of a model, rewrites every defined connective into the primitive
ones first, and recomputes everything recursively.
"""

from fractions import Fraction

from gkml.syntax import And, Atom, Bottom, Box, Const, Diamond, Implies, expand_derived


def _imp(a, b):
    return Fraction(1) if a <= b else b


def oracle_value(model_json: dict, world: str, f) -> Fraction:
    worlds = model_json["worlds"]
    S = {tuple(k.split(",")): Fraction(v) for k, v in model_json.get("S", {}).items()}
    e = {w: {a: Fraction(v) for a, v in row.items()}
         for w, row in model_json.get("e", {}).items()}

    def go(g, x):
        if isinstance(g, Atom):
            return e.get(x, {}).get(g.name, Fraction(0))
        if isinstance(g, Bottom):
            return Fraction(0)
        if isinstance(g, Const):
            return g.value
        if isinstance(g, And):
            return min(go(g.left, x), go(g.right, x))
        if isinstance(g, Implies):
            return _imp(go(g.left, x), go(g.right, x))
        if isinstance(g, Box):
            return min(_imp(S.get((x, y), Fraction(0)), go(g.sub, y)) for y in worlds)
        if isinstance(g, Diamond):
            return max(min(S.get((x, y), Fraction(0)), go(g.sub, y)) for y in worlds)
        raise TypeError(f"unexpected node {type(g).__name__}")

    return go(expand_derived(f), world)
