"""Bounded saturation prover for the first-order calculus.

The search tree grows in stages that cycle through 27 reduction phases, one
per connective shape and side. Sequents only ever grow along a branch;
formulas already reduced are remembered by marks, and the left quantifier
instantiation phases come back to a formula once per available variable.
A tree whose leaves all share a formula across sides compiles to a cut-free
proof; a branch that a full phase cycle leaves untouched yields a candidate
countermodel, which is only reported after it verifiably falsifies the goal.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Union

from .errors import InternalError, LogicError
from .fo_semantics import Structure, Triple, fo_sequent_satisfied
from .matrix import HALF, ONE, ZERO
from .parsing import format_formula, format_sequent
from .sequents import (
    Calculus,
    DerivedRuleId,
    Proof,
    RuleId,
    Sequent,
    axiom_proof,
    check_proof,
    expand_derived_rule,
    formula_key,
    rule_schema,
)
from .syntax import (
    And,
    BoundVar,
    Circ,
    Const,
    Exists,
    Forall,
    Formula,
    FreeVar,
    FunApp,
    Imp,
    Neg,
    Or,
    PredAtom,
    PropAtom,
    free_variables,
    fresh_free_variable,
    iff,
    subformulas,
)

R = RuleId
LEFT = "L"
RIGHT = "R"

DEFAULT_MAX_NODES = 20_000
DEFAULT_MAX_DEPTH = 400


class PhaseKind(enum.Enum):
    CIRC_L = "(o=>)"
    CIRC_R = "(=>o)"
    NEG_R = "(=>~)"
    NEG_CIRC_L = "(~o=>)"
    AND_L = "(&=>)"
    AND_R = "(=>&)"
    OR_L = "(|=>)"
    OR_R = "(=>|)"
    IMP_L = "(->=>)"
    IMP_R = "(=>->)"
    NEG_OR_L = "(~|=>)"
    NEG_OR_R = "(=>~|)"
    NEG_AND_L = "(~&=>)"
    NEG_AND_R = "(=>~&)"
    NEG_IMP_L = "(~->=>)"
    NEG_IMP_R = "(=>~->)"
    NEG_NEG_L = "(~~=>)"
    NEG_NEG_R = "(=>~~)"
    FORALL_L = "(forall=>)"
    FORALL_R = "(=>forall)"
    EXISTS_L = "(exists=>)"
    EXISTS_R = "(=>exists)"
    CIRC_FORALL_L = "(oforall=>)"
    CIRC_FORALL_R = "(=>oforall)"
    CIRC_EXISTS_L = "(oexists=>)"
    CIRC_EXISTS_R = "(=>oexists)"
    COPY = "(copy)"


#: Cyclic stage order; stage k runs PHASES[k % 27].
PHASES = list(PhaseKind)
assert PHASES[0] is PhaseKind.CIRC_L and PHASES[26] is PhaseKind.COPY

ONCE, REPEAT, EIGEN = "once", "repeat", "eigen"


def _is_plain_circ(phi: Formula) -> bool:
    return isinstance(phi, Circ) and not isinstance(phi.body, (Forall, Exists))


def _is_neg_other(phi: Formula) -> bool:
    # negations the generic right-negation phase owns: everything except the
    # shapes with a dedicated phase
    return isinstance(phi, Neg) and not isinstance(phi.body, (Or, And, Imp, Neg))


def _neg_of(inner_type: type):
    return lambda phi: isinstance(phi, Neg) and isinstance(phi.body, inner_type)


def _circ_of(inner_type: type):
    return lambda phi: isinstance(phi, Circ) and isinstance(phi.body, inner_type)


_PHASE_TABLE: dict[PhaseKind, tuple[str, object, RuleId, str]] = {
    PhaseKind.CIRC_L: (LEFT, _is_plain_circ, R.CIRC_L, ONCE),
    PhaseKind.CIRC_R: (RIGHT, _is_plain_circ, R.CIRC_R, ONCE),
    PhaseKind.NEG_R: (RIGHT, _is_neg_other, R.NEG_R, ONCE),
    PhaseKind.NEG_CIRC_L: (LEFT, _neg_of(Circ), R.NEG_CIRC_L, ONCE),
    PhaseKind.AND_L: (LEFT, lambda f: isinstance(f, And), R.AND_L, ONCE),
    PhaseKind.AND_R: (RIGHT, lambda f: isinstance(f, And), R.AND_R, ONCE),
    PhaseKind.OR_L: (LEFT, lambda f: isinstance(f, Or), R.OR_L, ONCE),
    PhaseKind.OR_R: (RIGHT, lambda f: isinstance(f, Or), R.OR_R, ONCE),
    PhaseKind.IMP_L: (LEFT, lambda f: isinstance(f, Imp), R.IMP_L, ONCE),
    PhaseKind.IMP_R: (RIGHT, lambda f: isinstance(f, Imp), R.IMP_R, ONCE),
    PhaseKind.NEG_OR_L: (LEFT, _neg_of(Or), R.NEG_OR_L, ONCE),
    PhaseKind.NEG_OR_R: (RIGHT, _neg_of(Or), R.NEG_OR_R, ONCE),
    PhaseKind.NEG_AND_L: (LEFT, _neg_of(And), R.NEG_AND_L, ONCE),
    PhaseKind.NEG_AND_R: (RIGHT, _neg_of(And), R.NEG_AND_R2, ONCE),
    PhaseKind.NEG_IMP_L: (LEFT, _neg_of(Imp), R.NEG_IMP_L, ONCE),
    PhaseKind.NEG_IMP_R: (RIGHT, _neg_of(Imp), R.NEG_IMP_R2, ONCE),
    PhaseKind.NEG_NEG_L: (LEFT, _neg_of(Neg), R.NEG_NEG_L, ONCE),
    PhaseKind.NEG_NEG_R: (RIGHT, _neg_of(Neg), R.NEG_NEG_R, ONCE),
    PhaseKind.FORALL_L: (LEFT, lambda f: isinstance(f, Forall), R.FORALL_L, REPEAT),
    PhaseKind.FORALL_R: (RIGHT, lambda f: isinstance(f, Forall), R.FORALL_R, EIGEN),
    PhaseKind.EXISTS_L: (LEFT, lambda f: isinstance(f, Exists), R.EXISTS_L, EIGEN),
    PhaseKind.EXISTS_R: (RIGHT, lambda f: isinstance(f, Exists), R.EXISTS_R, REPEAT),
    PhaseKind.CIRC_FORALL_L: (LEFT, _circ_of(Forall), R.CIRC_FORALL_L, REPEAT),
    PhaseKind.CIRC_FORALL_R: (RIGHT, _circ_of(Forall), R.CIRC_FORALL_R, REPEAT),
    PhaseKind.CIRC_EXISTS_L: (LEFT, _circ_of(Exists), R.CIRC_EXISTS_L, EIGEN),
    PhaseKind.CIRC_EXISTS_R: (RIGHT, _circ_of(Exists), R.CIRC_EXISTS_R, REPEAT),
}

MarkKey = tuple[Formula, str, PhaseKind]


@dataclass(frozen=True, slots=True)
class PrincipalReduction:
    principal: Formula
    side: str
    rule: RuleId
    var: str | None
    options: tuple[tuple[tuple[Formula, ...], tuple[Formula, ...]], ...]


@dataclass
class ReductionNode:
    sequent: Sequent
    depth: int
    created_at_stage: int
    phase: PhaseKind | None = None  # phase of the reduction that created this node
    marks: frozenset[MarkKey] = frozenset()
    used_vars: dict[MarkKey, frozenset[str]] = field(default_factory=dict)
    kind: PhaseKind | None = None  # phase of the expansion below this node
    principals: tuple[PrincipalReduction, ...] = ()
    children: list["ReductionNode"] = field(default_factory=list)
    last_expanded_stage: int = 0

    @property
    def closed(self) -> bool:
        return self.sequent.closed_by_axiom

    def leaves(self):
        if not self.children:
            yield self
        else:
            for c in self.children:
                yield from c.leaves()

    def count(self) -> int:
        return 1 + sum(c.count() for c in self.children)


@dataclass
class ReductionTree:
    root: ReductionNode
    status: str  # "closed" | "refuted" | "stalled" | "budget"
    stages: int
    node_count: int
    available: tuple[str, ...]
    refuting_leaf: ReductionNode | None = None


def _check_fo_input(s: Sequent) -> None:
    arities: dict[str, int] = {}
    for phi in s.ante | s.succ:
        for f in subformulas(phi):
            if isinstance(f, PropAtom):
                raise LogicError("the first-order prover takes predicate atoms only")
            if isinstance(f, PredAtom):
                if arities.setdefault(f.name, len(f.args)) != len(f.args):
                    raise LogicError(f"predicate {f.name!r} used with two arities")
                stack = list(f.args)
                while stack:
                    t = stack.pop()
                    if isinstance(t, FunApp):
                        raise LogicError("the first-order prover does not handle function symbols")
                    if isinstance(t, Const):
                        raise LogicError("the first-order prover does not handle constants")
                    assert isinstance(t, (FreeVar, BoundVar))


def _var_index(name: str) -> int:
    return int(name[1:])


def _phase_principals(leaf: ReductionNode, kind: PhaseKind, available: list[str]) -> list[PrincipalReduction]:
    side, shape, rule, mode = _PHASE_TABLE[kind]
    found: list[PrincipalReduction] = []
    fresh_cursor = None
    for phi in sorted(leaf.sequent.side(side), key=formula_key):
        if not shape(phi):
            continue
        key: MarkKey = (phi, side, kind)
        if mode == ONCE:
            if key in leaf.marks:
                continue
            schema = rule_schema(rule, phi)
            assert schema is not None
            found.append(PrincipalReduction(phi, side, rule, None, tuple(schema[1])))
        elif mode == REPEAT:
            used = leaf.used_vars.get(key, frozenset())
            var = next((v for v in available if v not in used), None)
            if var is None:
                continue
            schema = rule_schema(rule, phi, var)
            assert schema is not None
            found.append(PrincipalReduction(phi, side, rule, var, tuple(schema[1])))
        else:  # EIGEN: once, with the next variables beyond the available ones
            if key in leaf.marks:
                continue
            if fresh_cursor is None:
                fresh_cursor = set(available)
            var = fresh_free_variable(fresh_cursor)
            fresh_cursor.add(var)
            schema = rule_schema(rule, phi, var)
            assert schema is not None
            found.append(PrincipalReduction(phi, side, rule, var, tuple(schema[1])))
    return found


def _expand_leaf(leaf: ReductionNode, kind: PhaseKind, reductions: list[PrincipalReduction], stage: int) -> list[ReductionNode]:
    _, _, _, mode = _PHASE_TABLE[kind]
    new_marks = set(leaf.marks)
    new_used = dict(leaf.used_vars)
    for red in reductions:
        key: MarkKey = (red.principal, red.side, kind)
        if mode == REPEAT:
            assert red.var is not None
            new_used[key] = new_used.get(key, frozenset()) | {red.var}
        else:
            new_marks.add(key)

    leaf.kind = kind
    leaf.principals = tuple(reductions)
    leaf.last_expanded_stage = stage
    children = []
    for choice in itertools.product(*(range(len(red.options)) for red in reductions)):
        seq = leaf.sequent
        for red, ci in zip(reductions, choice):
            add_ante, add_succ = red.options[ci]
            seq = seq.with_ante(*add_ante).with_succ(*add_succ)
        children.append(
            ReductionNode(
                sequent=seq,
                depth=leaf.depth + 1,
                created_at_stage=stage,
                phase=kind,
                marks=frozenset(new_marks),
                used_vars=new_used,
            )
        )
    leaf.children = children
    return children


def build_reduction_tree(
    s: Sequent,
    max_nodes: int = DEFAULT_MAX_NODES,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> ReductionTree:
    """Grow the staged reduction tree until it closes, a saturated branch
    refutes the goal, nothing can change anymore, or the budget runs out."""
    _check_fo_input(s)
    root = ReductionNode(sequent=s, depth=0, created_at_stage=0)
    occurring = sorted(s.free_variables(), key=_var_index)
    available: list[str] = occurring if occurring else ["a1"]

    node_count = 1
    stage = 0
    failed_leaves: set[int] = set()  # ids of saturated leaves whose extraction failed
    while True:
        open_leaves = [leaf for leaf in root.leaves() if not leaf.closed]
        if not open_leaves:
            return ReductionTree(root, "closed", stage, node_count, tuple(available))

        for leaf in open_leaves:
            if stage - max(leaf.last_expanded_stage, leaf.created_at_stage) >= 27:
                if id(leaf) in failed_leaves:
                    continue
                candidate = extract_countermodel([leaf], s)
                if candidate is not None:
                    return ReductionTree(root, "refuted", stage, node_count, tuple(available), refuting_leaf=leaf)
                failed_leaves.add(id(leaf))
        if all(
            stage - max(leaf.last_expanded_stage, leaf.created_at_stage) >= 27
            for leaf in open_leaves
        ):
            return ReductionTree(root, "stalled", stage, node_count, tuple(available))

        stage += 1
        if stage > max_depth or node_count > max_nodes:
            return ReductionTree(root, "budget", stage, node_count, tuple(available))

        kind = PHASES[stage % 27]
        if kind is PhaseKind.COPY:
            continue
        for leaf in open_leaves:
            reductions = _phase_principals(leaf, kind, available)
            if not reductions:
                continue
            children = _expand_leaf(leaf, kind, reductions, stage)
            node_count += len(children)
            for red in reductions:
                mode = _PHASE_TABLE[kind][3]
                if mode == EIGEN:
                    assert red.var is not None
                    available.append(red.var)
            if node_count > max_nodes:
                return ReductionTree(root, "budget", stage, node_count, tuple(available))


# ---------------------------------------------------------------------------
# Countermodel extraction (from a saturated open branch)


def extract_countermodel(branch: list[ReductionNode], root_sequent: Sequent) -> tuple[Structure, dict[str, str]] | None:
    """Recipe: domain = the branch's free variables; a predicate holds (1)
    where only the atom sits on the left, is inconsistent (1/2) where atom
    and negated atom both do, and fails (0) elsewhere. The result is only
    returned if it verifiably falsifies the root sequent."""
    gamma: frozenset[Formula] = frozenset()
    delta: frozenset[Formula] = frozenset()
    for node in branch:
        gamma |= node.sequent.ante
        delta |= node.sequent.succ

    variables: set[str] = set()
    arities: dict[str, int] = {}
    for phi in gamma | delta:
        for f in subformulas(phi):
            if isinstance(f, PredAtom):
                if arities.setdefault(f.name, len(f.args)) != len(f.args):
                    raise LogicError(f"predicate {f.name!r} used with two arities")
        variables |= free_variables(phi)

    domain = tuple(sorted(variables, key=_var_index)) or ("a1",)

    predicates: dict[str, Triple] = {}
    for name, arity in sorted(arities.items()):
        space = tuple(itertools.product(domain, repeat=arity))
        values = {}
        for combo in space:
            atom = PredAtom(name, tuple(FreeVar(v) for v in combo))
            if atom in gamma:
                values[combo] = HALF if Neg(atom) in gamma else ONE
            else:
                values[combo] = ZERO
        predicates[name] = Triple.from_values(space, values)

    structure = Structure(domain=domain, predicates=predicates)
    assignment = {v: v for v in domain}
    if fo_sequent_satisfied(structure, assignment, root_sequent):
        return None
    return structure, assignment


# ---------------------------------------------------------------------------
# Proof assembly (from a closed tree)


def _assemble(node: ReductionNode) -> Proof:
    if not node.children:
        pivot = min(node.sequent.ante & node.sequent.succ, key=formula_key)
        return axiom_proof(pivot, node.sequent)

    child_by_choice = dict(
        zip(itertools.product(*(range(len(red.options)) for red in node.principals)), node.children)
    )

    def derive(i: int, prefix: tuple[int, ...], current: Sequent) -> Proof:
        if i == len(node.principals):
            child = child_by_choice[prefix]
            assert child.sequent == current
            return _assemble(child)
        red = node.principals[i]
        subs = []
        for ci, (add_ante, add_succ) in enumerate(red.options):
            premise = current.with_ante(*add_ante).with_succ(*add_succ)
            subs.append(derive(i + 1, prefix + (ci,), premise))
        return Proof(current, red.rule, principal=red.principal, var=red.var, premises=tuple(subs))

    return derive(0, (), node.sequent)


# ---------------------------------------------------------------------------
# Verdicts


@dataclass(frozen=True, slots=True)
class Proved:
    proof: Proof


@dataclass(frozen=True, slots=True)
class Refuted:
    structure: Structure
    assignment: dict[str, str]


@dataclass(frozen=True, slots=True)
class Unknown:
    report: str


FoVerdict = Union[Proved, Refuted, Unknown]


def decide_fo(s: Sequent, max_nodes: int = DEFAULT_MAX_NODES, max_depth: int = DEFAULT_MAX_DEPTH) -> FoVerdict:
    """Cut-free proof, verified finite countermodel, or Unknown on budget."""
    tree = build_reduction_tree(s, max_nodes=max_nodes, max_depth=max_depth)
    if tree.status == "closed":
        proof = _assemble(tree.root)
        if not check_proof(proof, Calculus.GQCIORE, allow_cut=False):
            raise InternalError("assembled proof failed checking")
        return Proved(proof)
    if tree.status == "refuted":
        assert tree.refuting_leaf is not None
        extracted = extract_countermodel([tree.refuting_leaf], s)
        assert extracted is not None
        return Refuted(*extracted)
    report = (
        f"search {tree.status}: {tree.node_count} nodes, {tree.stages} stages "
        f"(budget {max_nodes} nodes / {max_depth} stages); no closed tree and no verified countermodel"
    )
    return Unknown(report)


# ---------------------------------------------------------------------------
# Dump format


def dump_tree(tree: ReductionTree) -> str:
    lines = [f"status={tree.status} stages={tree.stages} nodes={tree.node_count}"]

    def walk(node: ReductionNode) -> None:
        indent = "  " * node.depth
        phase = node.phase.value if node.phase else "start"
        flags = []
        if not node.children:
            flags.append("closed" if node.closed else "open")
            if node.marks:
                shown = sorted(
                    f"{side}:{kind.value}:{format_formula(f)}" for (f, side, kind) in node.marks
                )
                flags.append("marks: " + "; ".join(shown))
        suffix = f" [{'; '.join(flags)}]" if flags else ""
        lines.append(f"{indent}k={phase} {format_sequent(node.sequent)}{suffix}")
        for child in node.children:
            walk(child)

    walk(tree.root)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Regression suite


def fo_regression_suite() -> list[tuple[str, Sequent]]:
    """Quantifier facts provable within the default budget."""
    p_free = PredAtom("P", (FreeVar("a1"),))
    p_bound = PredAtom("P", (BoundVar("x"),))
    forall_p = Forall("x", p_bound)
    exists_p = Exists("x", p_bound)
    exists_circ_p = Exists("x", Circ(p_bound))
    items = [
        ("exists-introduction", Imp(p_free, exists_p)),
        ("forall-elimination", Imp(forall_p, p_free)),
        ("consistency-exists-commute", iff(Circ(exists_p), exists_circ_p)),
        ("consistency-forall-via-exists", iff(Circ(forall_p), exists_circ_p)),
    ]
    return [(name, Sequent.make((), (phi,))) for name, phi in items]


def derived_quantifier_expansions() -> list[tuple[str, Proof]]:
    """The two quantifier-introduction derived rules, replayed on provable
    premises; the expansions go through a cut."""
    p_free = PredAtom("P", (FreeVar("a1"),))
    p_bound = PredAtom("P", (BoundVar("x"),))
    forall_p = Forall("x", p_bound)
    exists_p = Exists("x", p_bound)

    out = []
    premise = decide_fo(Sequent.make((), (Imp(forall_p, p_free),)))
    if not isinstance(premise, Proved):
        raise InternalError("forall-elimination premise should be provable")
    conclusion = Sequent.make((), (Imp(forall_p, forall_p),))
    out.append(
        ("forall-introduction", expand_derived_rule(DerivedRuleId.FORALL_INTRO, conclusion, [premise.proof]))
    )
    premise = decide_fo(Sequent.make((), (Imp(p_free, exists_p),)))
    if not isinstance(premise, Proved):
        raise InternalError("exists-introduction premise should be provable")
    conclusion = Sequent.make((), (Imp(exists_p, exists_p),))
    out.append(
        ("exists-introduction", expand_derived_rule(DerivedRuleId.EXISTS_INTRO, conclusion, [premise.proof]))
    )
    return out

