"""Terminating decision procedure for the propositional logic.

Backward saturation with the invertible calculus: every applied rule is
invertible, so validity is preserved in both directions and the procedure
either closes every branch (cut-free proof) or reads a countermodel off a
saturated leaf. Weight-decreasing principals are preferred; the one
weight-preserving rule (reducing a negated formula on the right in place)
is applied at most once per formula per branch, tracked by marks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .errors import AtomCapExceeded, InternalError, LogicError
from .matrix import HALF, ONE, ZERO, TruthValue, effective_atom_cap, sequent_atoms, sequent_satisfied
from .sequents import (
    Calculus,
    Proof,
    RuleId,
    Sequent,
    axiom_proof,
    formula_key,
    premises_from_schema,
    proof_error,
)
from .syntax import (
    And,
    Circ,
    Formula,
    Imp,
    Neg,
    Or,
    PropAtom,
    iff,
    is_literal,
    is_propositional,
)

R = RuleId


@dataclass(frozen=True, slots=True)
class Proved:
    proof: Proof


@dataclass(frozen=True, slots=True)
class Refuted:
    valuation: dict[str, TruthValue]


Verdict = Union[Proved, Refuted]


@dataclass(frozen=True, slots=True)
class SearchNode:
    """A sequent under reduction plus the succedent formulas the in-place
    negation rule has already been applied to on this branch."""

    sequent: Sequent
    marks: frozenset[Formula]

    def __post_init__(self):
        assert self.marks <= self.sequent.succ


StepHook = Callable[[SearchNode, RuleId, Formula, tuple[Sequent, ...]], None]

_LEFT_RULE_OF = {
    Or: R.OR_L,
    And: R.AND_L,
    Imp: R.IMP_L,
    Circ: R.CIRC_L,
}
_LEFT_NEG_RULE_OF = {
    Or: R.NEG_OR_L,
    And: R.NEG_AND_L,
    Imp: R.NEG_IMP_L,
    Neg: R.NEG_NEG_L,
    Circ: R.NEG_CIRC_L,
}
_RIGHT_RULE_OF = {
    Or: R.OR_R,
    And: R.AND_R,
    Imp: R.IMP_R,
    Circ: R.CIRC_R,
}
_RIGHT_NEG_RULE_OF = {
    Or: R.NEG_OR_R2,
    And: R.NEG_AND_R2,
    Imp: R.NEG_IMP_R2,
    Neg: R.NEG_NEG_R,
}


def _decreasing_candidates(s: Sequent) -> list[tuple[Formula, str, RuleId]]:
    """Principals whose invertible rule strictly shrinks the weight, in
    canonical order, antecedent first."""
    out = []
    for phi in s.sorted_ante():
        if is_literal(phi):
            continue
        if isinstance(phi, Neg):
            rule = _LEFT_NEG_RULE_OF.get(type(phi.body))
        else:
            rule = _LEFT_RULE_OF.get(type(phi))
        if rule is not None:
            out.append((phi, "L", rule))
    for phi in s.sorted_succ():
        if is_literal(phi):
            continue
        if isinstance(phi, Neg):
            rule = _RIGHT_NEG_RULE_OF.get(type(phi.body))
        else:
            rule = _RIGHT_RULE_OF.get(type(phi))
        if rule is not None:
            out.append((phi, "R", rule))
    return out


def _in_place_candidates(s: Sequent, marks: frozenset) -> list[Formula]:
    """Unmarked negations on the right that only the weight-preserving rule
    handles: negated consistency formulas first, negated atoms last."""
    circs, literals = [], []
    for phi in s.sorted_succ():
        if isinstance(phi, Neg) and phi not in marks:
            if isinstance(phi.body, Circ):
                circs.append(phi)
            elif isinstance(phi.body, PropAtom):
                literals.append(phi)
    return circs + literals


def _countermodel_of_leaf(s: Sequent) -> dict[str, TruthValue]:
    v: dict[str, TruthValue] = {}
    for name in sequent_atoms(s):
        atom = PropAtom(name)
        if atom in s.ante:
            v[name] = HALF if Neg(atom) in s.ante else ONE
        else:
            v[name] = ZERO
    return v


def _decide(s: Sequent, marks: frozenset, on_step: StepHook | None) -> Verdict:
    if s.closed_by_axiom:
        pivot = min(s.ante & s.succ, key=formula_key)
        return Proved(axiom_proof(pivot, s))

    candidates = _decreasing_candidates(s)
    if candidates:
        principal, _side, rule = candidates[0]
    else:
        in_place = _in_place_candidates(s, marks)
        if not in_place:
            return Refuted(_countermodel_of_leaf(s))
        principal, rule = in_place[0], R.NEG_R2

    premises = premises_from_schema(s, rule, principal)
    assert premises is not None
    if on_step is not None:
        on_step(SearchNode(s, marks), rule, principal, tuple(premises))
    new_marks = marks | {principal} if rule is R.NEG_R2 else marks
    subproofs = []
    for premise in premises:
        sub = _decide(premise, new_marks & premise.succ, on_step)
        if isinstance(sub, Refuted):
            return sub
        subproofs.append(sub.proof)
    return Proved(Proof(s, rule, principal=principal, premises=tuple(subproofs)))


def decide(s: Sequent, atom_cap: int | None = None, on_step: StepHook | None = None) -> Verdict:
    """Prove the sequent cut-free or refute it with a valuation."""
    for phi in s.ante | s.succ:
        if not is_propositional(phi):
            raise LogicError("the propositional prover takes quantifier-free input")
    names = sequent_atoms(s)
    cap = effective_atom_cap(atom_cap)
    if len(names) > cap:
        raise AtomCapExceeded(f"sequent has {len(names)} atoms, cap is {cap}")

    verdict = _decide(s, frozenset(), on_step)
    if isinstance(verdict, Refuted):
        v = dict(verdict.valuation)
        for name in names:
            v.setdefault(name, ZERO)
        if sequent_satisfied(v, s):
            raise InternalError("refuting valuation fails to falsify the sequent")
        return Refuted(v)
    return verdict


def eliminate_cut(proof: Proof) -> Proof:
    """Cut-free proof of the same end-sequent, by re-deciding it."""
    errors = [proof_error(proof, calc, allow_cut=True) for calc in (Calculus.GCIORE, Calculus.GCIORE_PRIME)]
    if all(err is not None for err in errors):
        raise LogicError(f"not a valid proof in either propositional calculus: {errors[0]}")
    verdict = decide(proof.sequent)
    if isinstance(verdict, Refuted):
        raise InternalError(
            "a checked proof's end-sequent was refuted; the checker or the prover is unsound"
        )
    return verdict.proof


def contradiction_scan(phi: Formula) -> Verdict:
    """Decide  |- phi & ~phi ; the calculus proves no contradictions, so
    this must come back refuted for every phi."""
    return decide(Sequent.make((), (And(phi, Neg(phi)),)))


def theorem_suite(a: Formula | None = None, b: Formula | None = None) -> list[tuple[str, Sequent]]:
    """Nine provable schemata: consistency facts and the propagation of both
    consistency and contradictoriness through the binary connectives."""
    a = a if a is not None else PropAtom("p")
    b = b if b is not None else PropAtom("q")

    def contradiction(f: Formula) -> Formula:
        return And(f, Neg(f))

    both = And(contradiction(a), contradiction(b))
    either_consistent = Or(Circ(a), Circ(b))
    items = [
        ("contradiction-iff-inconsistency", iff(contradiction(a), Neg(Circ(a)))),
        ("consistency-is-consistent", Circ(Circ(a))),
        ("consistency-matches-negation", iff(Circ(a), Circ(Neg(a)))),
        ("contradiction-propagates-and", iff(both, contradiction(And(a, b)))),
        ("contradiction-propagates-or", iff(both, contradiction(Or(a, b)))),
        ("contradiction-propagates-imp", iff(both, contradiction(Imp(a, b)))),
        ("consistency-propagates-and", iff(either_consistent, Circ(And(a, b)))),
        ("consistency-propagates-or", iff(either_consistent, Circ(Or(a, b)))),
        ("consistency-propagates-imp", iff(either_consistent, Circ(Imp(a, b)))),
    ]
    return [(name, Sequent.make((), (phi,))) for name, phi in items]
