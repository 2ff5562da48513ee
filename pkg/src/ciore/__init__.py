"""Paraconsistent 3-valued logic Ciore and its first-order extension QCiore.

Public surface: abstract syntax (`syntax`), text grammar (`parsing`), matrix
semantics (`matrix`), sequent calculi and proof checking (`sequents`),
propositional decision procedure (`prop_prover`), finite partial-structure
semantics (`fo_semantics`), first-order reduction-tree prover (`fo_prover`),
JSON forms (`serialize`) and the `ciore` command line (`cli`).
"""

from .matrix import TruthValue, eval_formula, find_countermodel, matrix_valid
from .parsing import format_formula, format_sequent, parse_formula, parse_sequent
from .prop_prover import decide
from .fo_prover import decide_fo
from .sequents import Calculus, Proof, RuleId, Sequent, check_proof

__all__ = [
    "TruthValue",
    "eval_formula",
    "find_countermodel",
    "matrix_valid",
    "format_formula",
    "format_sequent",
    "parse_formula",
    "parse_sequent",
    "decide",
    "decide_fo",
    "Calculus",
    "Proof",
    "RuleId",
    "Sequent",
    "check_proof",
]
