import json
import subprocess
import sys
from pathlib import Path

import pytest

from gkml.cli import main
from gkml.model import builtin_model, model_from_json, save_model
from gkml.semantics import evaluate
from gkml.syntax import parse

CORPUS_DIR = Path(__file__).resolve().parent / "data" / "proofs"


@pytest.fixture
def sec6(tmp_path):
    path = tmp_path / "sec6.json"
    save_model(builtin_model("sec6-crisp-fail"), path)
    return str(path)


@pytest.fixture
def slice5(tmp_path):
    path = tmp_path / "slice.json"
    save_model(builtin_model("sec3-slice", 5), path)
    theory = tmp_path / "theory.txt"
    lines = ["# chain premises"] + [f"(p{i + 1} -> p{i}) -> q  # i={i}" for i in range(1, 5)]
    theory.write_text("\n".join(lines) + "\n\n")
    return str(path), str(theory)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval(capsys, sec6):
    code, out, _ = run(capsys, "eval", "--model", sec6, "--world", "x", "--formula", "<>~~p")
    assert code == 0 and out == "e(x, <>~~p) = 1/2\n"
    code, out, _ = run(capsys, "eval", "--model", sec6, "--world", "x", "--formula", "<>~~p",
                       "--decimal", "3")
    assert out == "e(x, <>~~p) = 1/2 (~0.500)\n"
    code, out, _ = run(capsys, "--unicode", "eval", "--model", sec6, "--world", "x",
                       "--formula", "<>p", "--trace")
    assert out.splitlines()[0] == "e(x, ◇p) = 1/2"
    assert "via y: S=1/2 sub=1" in out


def test_valid(capsys, sec6):
    code, out, _ = run(capsys, "valid", "--model", sec6, "--formula", "~~<>p -> <>~~p")
    assert code == 1 and out == "not valid: e(x, ~~<>p -> <>~~p) = 1/2\n"
    code, _, _ = run(capsys, "valid", "--model", sec6, "--formula", "[](p -> q) -> []p -> []q")
    assert code == 0


def test_conseq(capsys, slice5):
    model, theory = slice5
    for mode in ("gk", "leq"):
        code, out, _ = run(capsys, "conseq", "--model", model, "--world", "w", "--theory", theory,
                           "--formula", "q", "--mode", mode)
        assert code == 1
        assert "premises: 4, minimum value 1" in out and out.endswith("fails\n")
    code, _, _ = run(capsys, "conseq", "--model", model, "--world", "w", "--theory", theory,
                     "--formula", "q | top")
    assert code == 0


def test_prove(capsys, tmp_path):
    code, out, _ = run(capsys, "prove", "--proof", str(CORPUS_DIR / "box_and_elim.proof"),
                       "--fuzz", "50", "--seed", "3")
    assert code == 0
    assert out.splitlines() == ["ACCEPTED: [](p & q) -> []p (as a theorem)",
                                "soundness fuzz: 50 trials, no violations (seed 3)"]
    bad = tmp_path / "bad.proof"
    bad.write_text("system: GBox\nassume: p\n1. p ; asm 1\n2. []p ; nec 1\n")
    code, out, _ = run(capsys, "prove", "--proof", str(bad))
    assert code == 1 and "REJECTED at step 2: rule restricted to theorems" in out


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--formula", "~~<>p -> <>~~p", "--max-worlds", "2")
    assert code == 1
    data = json.loads(out)
    m = model_from_json(data)
    witness = data["witness"]
    assert evaluate(m, witness["world"], parse("~~<>p -> <>~~p")) < 1
    code, out, _ = run(capsys, "search", "--formula", "<>(p | p) -> <>p | <>p")
    assert code == 0 and out.startswith("valid: no countermodel up to the world bound 3")
    code, out, _ = run(capsys, "search", "--formula", "[]p -> []p", "--max-worlds", "2",
                       "--grid", "3")
    assert code == 0 and out.startswith("no countermodel found within the search limits")


def test_search_output_independent_of_jobs(capsys):
    outputs = set()
    for jobs in ("1", "2"):
        outputs.add(run(capsys, "search", "--formula", "<>p & <>q -> <>(p & q)",
                        "--max-worlds", "2", "--jobs", jobs))
    assert len(outputs) == 1


def test_frames(capsys, sec6):
    code, out, _ = run(capsys, "frames", "--model", sec6)
    assert code == 0
    assert out.splitlines() == ["crisp: no  witness x y 1/2", "reflexive: no  witness x 0",
                                "transitive: yes", "symmetric: no  witness x y 1/2 0"]


@pytest.mark.parametrize("name", ["sec3", "sec5", "sec6", "all"])
def test_demo(capsys, name):
    code, out, _ = run(capsys, "demo", name)
    assert code == 0 and out.endswith("all values match\n")


def test_demo_sec6_values(capsys):
    _, out, _ = run(capsys, "demo", "sec6")
    assert "e(x, ~~<>p) = 1" in out and "e(x, <>~~p) = 1/2" in out
    assert "scheme value = 1/2" in out


@pytest.mark.parametrize("argv", [
    ["eval", "--model", "/nonexistent.json", "--world", "x", "--formula", "p"],
    ["search", "--formula", "p ->"],
    ["search", "--formula", "p", "--max-worlds", "0"],
])
def test_input_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_usage_errors_exit_2(capsys, sec6):
    for argv in ([], ["demo", "sec4"], ["search", "--formula", "p", "--grid", "x"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 2
    code, _, err = run(capsys, "eval", "--model", sec6, "--world", "z", "--formula", "p")
    assert code == 2 and "z" in err


def test_budget_exceeded_exits_2(capsys):
    code, _, err = run(capsys, "search", "--formula", "[](p -> q) -> []p -> []q",
                       "--max-worlds", "3", "--budget", "0")
    assert code == 2 and "budget" in err


def test_console_script_is_deterministic():
    cmd = [sys.executable, "-m", "gkml.cli", "search", "--formula", "p -> []p",
           "--max-worlds", "2"]
    first = subprocess.run(cmd, capture_output=True, text=True)
    second = subprocess.run(cmd, capture_output=True, text=True)
    assert first.returncode == 1 and first.stdout == second.stdout
