"""Hilbert-style proof checking for Goedel modal logics."""

from gkml.proofs.core import (MP, Assumption, Axiom, NRBox, Proof, RNDia, Step,
                              StepDiagnostic, Verdict, check_proof, dependency_flags)
from gkml.proofs.fileformat import (ProofDocument, ProofFormatError, format_proof,
                                    load_proof, parse_proof)
from gkml.proofs.schemes import (SCHEMES, ProofSystem, ProofSystemError, SchemeMismatch,
                                 instantiate, match_scheme)
from gkml.proofs.transforms import (TransformError, deduction_transform, lift_box,
                                    lift_diamond)

__all__ = [
    "MP", "Assumption", "Axiom", "NRBox", "Proof", "RNDia", "Step", "StepDiagnostic",
    "Verdict", "check_proof", "dependency_flags", "ProofDocument", "ProofFormatError",
    "format_proof", "load_proof", "parse_proof", "SCHEMES", "ProofSystem",
    "ProofSystemError", "SchemeMismatch", "instantiate", "match_scheme",
    "TransformError", "deduction_transform", "lift_box", "lift_diamond",
]
