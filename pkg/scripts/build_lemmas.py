"""Regenerate the deduction-theorem helper proofs shipped with gkml.

Usage: python scripts/build_lemmas.py [--check]
"""

import argparse
import sys
from pathlib import Path

from gkml.proofs.builder import ProofBuilder
from gkml.proofs.fileformat import ProofDocument, format_proof
from gkml.proofs.schemes import ProofSystem
from gkml.syntax import Atom

OUT = Path(__file__).resolve().parents[1] / "src" / "gkml" / "proofs" / "lemmas"
a, b, c = Atom("a"), Atom("b"), Atom("c")


def build() -> dict[str, str]:
    out = {}
    for name, make in [
        ("identity", lambda pb: pb.identity(a)),
        ("weakening", lambda pb: pb.weakening(b, a)),
        ("distribution", lambda pb: pb.distribution(a, b, c)),
    ]:
        pb = ProofBuilder()
        last = make(pb)
        assert last == len(pb.steps) - 1
        out[name] = format_proof(ProofDocument(ProofSystem("G"), [], pb.proof()))
    return out


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--check", action="store_true", help="fail if files are stale")
    args = parser.parse_args()
    stale = False
    for name, text in build().items():
        path = OUT / f"{name}.proof"
        if args.check:
            if not path.exists() or path.read_text() != text:
                print(f"stale: {path}")
                stale = True
        else:
            path.write_text(text)
            print(f"wrote {path} ({text.count(chr(10)) - 1} steps)")
    return 1 if stale else 0


if __name__ == "__main__":
    sys.exit(main())
