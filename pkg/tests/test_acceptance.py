"""Acceptance criteria, one test per criterion.

Each test enforces its own time limit; the conftest hook prints one
``CRITERION n: PASS|FAIL`` line per criterion at the end of the run.
Run on its own with ``pytest tests/test_acceptance.py``.
"""

import itertools
import random
import time
from contextlib import contextmanager
from fractions import Fraction as Fr

import pytest

from gkml.algebra import ONE, build_order_map
from gkml.generators import random_formula, random_model, trial_rng
from gkml.model import GKModel, builtin_model, transform_model
from gkml.proofs import SCHEMES, check_proof, instantiate
from gkml.proofs.fuzz import mutate_step, soundness_fuzz
from gkml.search import (Countermodel, ExhaustedComplete, SearchConfig, find_countermodel,
                         fmp_world_bound)
from gkml.semantics import consequence_gk, consequence_leq, evaluate, valid_in_model, value_table
from gkml.syntax import Atom, atoms, const, parse, share_subterms, substitute

from test_proofs import corpus

F = parse
TRIALS = 10_000
ATOMS = ("p", "q", "r")


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.1f}s, limit {seconds}s"


def all_one(m, formulas):
    """Every formula has value 1 at every world (one memo for the model)."""
    memo = {}
    return all(v == ONE for f in formulas for v in value_table(m, f, memo))


def instance(template, rng, depth=3, **kw):
    names = sorted(atoms(template))
    return substitute(template, {a: random_formula(rng, depth, atoms=ATOMS, **kw) for a in names})


# --------------------------------------------------------------------------

@pytest.mark.criterion(1, "crisp-failure example replays exactly")
def test_criterion_01():
    with within(1):
        m = builtin_model("sec6-crisp-fail")
        assert evaluate(m, "x", F("~~<>p")) == ONE
        assert evaluate(m, "x", F("<>~~p")) == Fr(1, 2)
        verdict = valid_in_model(m, F("~~<>p -> <>~~p"))
        assert not verdict.valid
        assert (verdict.world, verdict.value) == ("x", Fr(1, 2))


@pytest.mark.criterion(2, "truncation series 1/N for []p, 1 for []~~p")
def test_criterion_02():
    with within(1):
        previous = None
        for n in (2, 5, 10, 100):
            m = builtin_model("sec5-truncated", n)
            box = evaluate(m, "0", F("[]p"))
            assert box == Fr(1, n)
            assert evaluate(m, "0", F("[]~~p")) == ONE
            if previous is not None:
                assert box < previous
            previous = box


@pytest.mark.criterion(3, "[]~~theta -> ~~[]theta on 10^4 finite models")
def test_criterion_03():
    template = F("[]~~t -> ~~[]t")
    with within(60):
        for t in range(TRIALS):
            rng = trial_rng(3, t)
            m = random_model(rng, ATOMS, max_worlds=4)
            theta = random_formula(rng, rng.randint(0, 4), atoms=ATOMS)
            f = substitute(template, {"t": theta})
            assert all_one(m, [f]), (t, m.to_json(), f)


MODAL_SCHEMES = {
    "KBox": F("[](a -> b) -> ([]a -> []b)"),
    "ZBox": F("~~[]a -> []~~a"),
    "DDia": F("<>(a | b) -> (<>a | <>b)"),
    "DDia converse": F("(<>a | <>b) -> <>(a | b)"),
    "ZDia": F("<>~~a -> ~~<>a"),
    "FDia": F("~<>bot"),
}


@pytest.mark.criterion(4, "modal scheme families on exhaustive 2-world grid and 10^4 fuzz models")
def test_criterion_04():
    with within(300):
        # (a) every 2-world model over two atoms with all slots in {0, 1/2, 1}
        fillers = [F(s) for s in ("p", "q", "~p", "p & q", "p -> q", "<>p", "[]q")]
        family = []
        for template in MODAL_SCHEMES.values():
            names = sorted(atoms(template))
            for choice in itertools.product(fillers, repeat=len(names)):
                family.append(substitute(template, dict(zip(names, choice))))
        family = share_subterms(family)
        grid = (Fr(0), Fr(1, 2), ONE)
        worlds, names = ("x", "y"), ("p", "q")
        models = 0
        for values in itertools.product(grid, repeat=8):
            S = (values[0:2], values[2:4])
            e = (values[4:6], values[6:8])
            m = GKModel(worlds, names, S, e)
            assert all_one(m, family), m.to_json()
            models += 1
        assert models == 3 ** 8
        # (b) random models, random instances
        for t in range(TRIALS):
            rng = trial_rng(4, t)
            m = random_model(rng, ATOMS)
            assert all_one(m, [instance(s, rng) for s in MODAL_SCHEMES.values()]), t


FRAME_SCHEMES = {
    "reflexive": [F("[]a -> a"), F("a -> <>a")],
    "transitive": [F("[]a -> [][]a"), F("<><>a -> <>a")],
    "symmetric": [F("a -> []~[]~a"), F("a -> ~<>~<>a"), F("~a -> []~[]a")],
}


@pytest.mark.criterion(5, "frame correspondences T, 4, B on 10^4 models each")
def test_criterion_05():
    with within(120):
        for frame, schemes in FRAME_SCHEMES.items():
            for t in range(TRIALS):
                rng = trial_rng(5, t)
                m = random_model(rng, ATOMS, frame=(frame,))
                assert all_one(m, [instance(s, rng) for s in schemes]), (frame, t)


@pytest.mark.criterion(6, "crisp models validate ~~<>p -> <>~~p; fuzzy countermodel; complete search")
def test_criterion_06():
    f = F("~~<>p -> <>~~p")
    with within(120):
        for t in range(TRIALS):
            m = random_model(trial_rng(6, t), ["p"], frame=("crisp",))
            assert all_one(m, [f]), t
        bound = fmp_world_bound(f)
        assert bound == 3
        out = find_countermodel(f, SearchConfig(max_worlds=3))
        assert isinstance(out, Countermodel)
        assert len(out.model.worlds) <= bound
        assert evaluate(out.model, out.world, f) < ONE
        crisp_values = {Fr(0), ONE}
        assert any(v not in crisp_values for row in out.model.access for v in row)
        d_instance = F("<>(p | p) -> (<>p | <>p)")
        bound = fmp_world_bound(d_instance)
        assert bound == 3
        done = find_countermodel(d_instance, SearchConfig(max_worlds=bound))
        assert isinstance(done, ExhaustedComplete)


@pytest.mark.criterion(7, "finite slice of the uncountable-theory example")
def test_criterion_07():
    with within(1):
        n = 5
        m = builtin_model("sec3-slice", n)
        chain = [F(f"(p{i + 1} -> p{i}) -> q") for i in range(1, n)]
        pairs = [F(f"(p{j} -> p{i}) -> q") for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        q = F("q")
        assert evaluate(m, "w", q) == Fr(1, 2)
        for theory in (chain, pairs):
            assert all(evaluate(m, "w", t) == ONE for t in theory)
            assert not consequence_gk(m, "w", theory, q)
            assert not consequence_leq(m, "w", theory, q)


@pytest.mark.criterion(8, "proof corpus accepted, mutations rejected, soundness fuzz clean")
def test_criterion_08():
    with within(300):
        docs = corpus()
        assert len(docs) >= 20
        for required in ("box_and_elim", "lifted_box", "lifted_diamond", "lemma_identity",
                         "lemma_weakening", "lemma_distribution"):
            assert required in docs
        systems = {str(d.system) for d in docs.values()}
        assert {"GBox+T", "GBox+Four", "GBox+B", "GDia+T", "GDia+Four", "GDia+B"} <= systems
        for name, doc in docs.items():
            assert check_proof(doc.system, doc.assumptions, doc.proof), name
            rng = random.Random(f"criterion8:{name}")
            for _ in range(50):
                mutated, k = mutate_step(doc.proof, rng)
                verdict = check_proof(doc.system, doc.assumptions, mutated)
                assert not verdict.accepted and verdict.first_failure.index == k, (name, k)
            report = soundness_fuzz(doc.system, doc.assumptions, doc.proof, trials=1000, seed=8)
            assert report.ok, (name, str(report.violations[0]))


@pytest.mark.criterion(9, "order-map equivariance on 10^3 triples")
def test_criterion_09():
    with within(60):
        for t in range(1000):
            rng = trial_rng(9, t)
            m = random_model(rng, ATOMS)
            f = random_formula(rng, rng.randint(1, 5), atoms=ATOMS)
            lo = Fr(rng.randint(0, 8), 10)
            hi = Fr(rng.randint(int(lo * 10) + 1, 10), 10)
            g = build_order_map(m.values(), lo, hi - lo)
            moved = value_table(transform_model(m, g), f)
            assert moved == [g(v) for v in value_table(m, f)], t


@pytest.mark.criterion(10, "values stay in the finite subalgebra on 10^4 triples")
def test_criterion_10():
    with within(60):
        for t in range(TRIALS):
            rng = trial_rng(10, t)
            consts = rng.choice([(), (Fr(1, 3),), (Fr(1, 4), Fr(5, 7))])
            m = random_model(rng, ATOMS, constants=consts or None)
            f = random_formula(rng, rng.randint(0, 5), atoms=ATOMS, constants=consts)
            x = rng.choice(m.worlds)
            allowed = {Fr(0), ONE} | m.values() | set(consts)
            assert evaluate(m, x, f) in allowed, t


CONSTANT_SCHEMES = ["R1a", "R1b", "R2", "R3", "R4", "R5", "R6", "R7"]


@pytest.mark.criterion(11, "truth-constant schemes on 10^4 models; discreteness slice")
def test_criterion_11():
    Q = (Fr(0), Fr(1, 4), Fr(1, 2), Fr(3, 4), ONE)
    with within(120):
        for t in range(TRIALS):
            rng = trial_rng(11, t)
            m = random_model(rng, ATOMS, constants=Q)
            x = rng.choice(m.worlds)
            assert all(evaluate(m, x, const(r)) == r for r in Q)
            formulas = []
            for scheme in CONSTANT_SCHEMES:
                r, s = rng.choice(Q), rng.choice(Q)
                if scheme == "R1a":
                    r, s = min(r, s), max(r, s)
                if scheme == "R1b":
                    r, s = sorted(rng.sample(Q, 2), reverse=True)
                spec = SCHEMES[scheme]
                binding = {k: const(v) for k, v in (("r", r), ("s", s))
                           if k in spec.constant_metavars}
                for meta in sorted(spec.metavars):
                    binding[meta] = random_formula(rng, 3, atoms=ATOMS, constants=Q)
                formulas.append(instantiate(scheme, binding))
            assert all_one(m, formulas), t

        # premises r_i -> theta, r_i = 1/2 - 1/(i+2), all true while 1/2 -> theta is not
        r = [Fr(1, 2) - Fr(1, i + 2) for i in range(1, 6)]
        assert r == [Fr(1, 6), Fr(1, 4), Fr(3, 10), Fr(1, 3), Fr(5, 14)]
        theta = Atom("p")
        m = GKModel(("w",), ("p",), ((Fr(0),),), ((max(r),),), frozenset(r) | {Fr(1, 2)})
        premises = [F(f"{{{ri}}} -> p") for ri in r]
        assert all(evaluate(m, "w", prem) == ONE for prem in premises)
        half = evaluate(m, "w", F("{1/2} -> p"))
        assert half == Fr(5, 14) and half < ONE
        assert evaluate(m, "w", theta) == Fr(5, 14)


@pytest.mark.criterion(12, "connecting axioms FS1, FS2 on 10^4 models")
def test_criterion_12():
    fs1, fs2 = F("<>(a -> b) -> ([]a -> <>b)"), F("(<>a -> []b) -> [](a -> b)")
    with within(60):
        for t in range(TRIALS):
            rng = trial_rng(12, t)
            m = random_model(rng, ATOMS)
            assert all_one(m, [instance(fs1, rng), instance(fs2, rng)]), t


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
