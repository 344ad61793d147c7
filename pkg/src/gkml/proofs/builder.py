"""Incremental proof construction with a few derived rules of Goedel logic.

Only the Hajek basis and modus ponens are used, so everything built here is
a plain G-proof (modal rules are added by the callers that need them).
"""

from __future__ import annotations

from typing import Sequence

from gkml.proofs.core import MP, Assumption, Axiom, Justification, NRBox, Proof, RNDia, Step
from gkml.proofs.schemes import instantiate
from gkml.syntax import And, Formula, Iff, Implies, Box, Diamond, expand_derived


class BuildError(ValueError):
    pass


class ProofBuilder:
    def __init__(self, assumptions: Sequence[Formula] = ()):
        self.assumptions = list(assumptions)
        self.steps: list[Step] = []
        self._theorem_cache: dict[tuple, int] = {}

    def formula(self, i: int) -> Formula:
        return self.steps[i].formula

    def add(self, formula: Formula, justification: Justification) -> int:
        self.steps.append(Step(formula, justification))
        return len(self.steps) - 1

    def proof(self) -> Proof:
        return Proof(tuple(self.steps))

    # primitive steps -----------------------------------------------------

    def axiom(self, scheme: str, **binding: Formula) -> int:
        key = ("ax", scheme, tuple(sorted(binding.items(), key=lambda kv: kv[0])))
        if key in self._theorem_cache:
            return self._theorem_cache[key]
        i = self.add(instantiate(scheme, binding), Axiom(scheme, dict(binding)))
        self._theorem_cache[key] = i
        return i

    def assume(self, k: int) -> int:
        return self.add(self.assumptions[k], Assumption(k))

    def mp(self, minor: int, major: int) -> int:
        imp = self.formula(major)
        if not isinstance(imp, Implies):
            imp = expand_derived(imp)
        if not isinstance(imp, Implies):
            raise BuildError(f"step {major + 1} is not an implication")
        a, m = self.formula(minor), imp.left
        if a != m and expand_derived(a) != expand_derived(m):
            raise BuildError(f"step {minor + 1} does not match the antecedent of step {major + 1}")
        return self.add(imp.right, MP(minor, major))

    def nec(self, i: int) -> int:
        return self.add(Box(self.formula(i)), NRBox(i))

    def mon(self, i: int) -> int:
        imp = self.formula(i)
        if not isinstance(imp, Implies):
            raise BuildError(f"step {i + 1} is not an implication")
        return self.add(Implies(Diamond(imp.left), Diamond(imp.right)), RNDia(i))

    # derived rules -------------------------------------------------------

    def iff_forward(self, i: int) -> int:
        """From A <-> B infer A -> B."""
        f = self.formula(i)
        if not isinstance(f, Iff):
            raise BuildError(f"step {i + 1} is not a biconditional")
        ab, ba = Implies(f.left, f.right), Implies(f.right, f.left)
        return self.mp(i, self.axiom("G2", phi=ab, psi=ba))

    def exportation(self, a: Formula, b: Formula, c: Formula) -> int:
        """((a & b) -> c) -> (a -> (b -> c))"""
        return self.iff_forward(self.axiom("G5", phi=a, psi=b, chi=c))

    def importation(self, a: Formula, b: Formula, c: Formula) -> int:
        """(a -> (b -> c)) -> ((a & b) -> c)"""
        return self.iff_forward(self.axiom("G4", phi=a, psi=b, chi=c))

    def chain(self, i: int, j: int) -> int:
        """From a -> b and b -> c infer a -> c."""
        fi, fj = self.formula(i), self.formula(j)
        g1 = self.axiom("G1", phi=fi.left, psi=fi.right, chi=fj.right)
        return self.mp(j, self.mp(i, g1))

    def identity(self, a: Formula) -> int:
        """a -> a"""
        key = ("id", a)
        if key not in self._theorem_cache:
            self._theorem_cache[key] = self.chain(self.axiom("G6", phi=a),
                                                  self.axiom("G2", phi=a, psi=a))
        return self._theorem_cache[key]

    def weakening(self, b: Formula, a: Formula) -> int:
        """b -> (a -> b)"""
        return self.mp(self.axiom("G2", phi=b, psi=a), self.exportation(b, a, b))

    def pairing(self, a: Formula, b: Formula) -> int:
        """a -> (b -> (a & b))"""
        ab = And(a, b)
        return self.mp(self.identity(ab), self.exportation(a, b, ab))

    def right_monotone(self, x: Formula, i: int) -> int:
        """From b -> b' infer (x & b) -> (x & b')."""
        b, b2 = self.formula(i).left, self.formula(i).right
        xb2 = And(x, b2)
        pair = self.pairing(x, b2)
        g1 = self.axiom("G1", phi=b, psi=b2, chi=xb2)
        compose = self.mp(i, g1)               # (b' -> x&b') -> (b -> x&b')
        curried = self.chain(pair, compose)    # x -> (b -> x&b')
        return self.mp(curried, self.importation(x, b, xb2))

    def apply_under(self, i: int, j: int) -> int:
        """From x -> (b -> c) and x -> b infer x -> c."""
        x, bc = self.formula(i).left, self.formula(i).right
        b, c = bc.left, bc.right
        uncurried = self.mp(i, self.importation(x, b, c))       # (x & b) -> c
        dup = self.axiom("G6", phi=x)                            # x -> x & x
        widen = self.right_monotone(x, j)                        # x & x -> x & b
        return self.chain(self.chain(dup, widen), uncurried)

    def distribution(self, a: Formula, b: Formula, c: Formula) -> int:
        """(a -> (b -> c)) -> ((a -> b) -> (a -> c))"""
        p, q = Implies(a, Implies(b, c)), Implies(a, b)
        pq = And(p, q)
        x = And(pq, a)
        to_pq = self.axiom("G2", phi=pq, psi=a)
        to_a = self.chain(self.axiom("G3", phi=pq, psi=a), self.axiom("G2", phi=a, psi=pq))
        to_p = self.chain(to_pq, self.axiom("G2", phi=p, psi=q))
        pq_q = self.chain(self.axiom("G3", phi=p, psi=q), self.axiom("G2", phi=q, psi=p))
        to_q = self.chain(to_pq, pq_q)
        to_b = self.apply_under(to_q, to_a)
        to_bc = self.apply_under(to_p, to_a)
        to_c = self.apply_under(to_bc, to_b)
        step = self.mp(to_c, self.exportation(pq, a, c))        # pq -> (a -> c)
        return self.mp(step, self.exportation(p, q, Implies(a, c)))
