"""Shared test utilities: independent oracles and random generators.

The denotation oracle here recomputes formula triples from component-set
formulas (quantifiers via assignment-set filters, connectives pointwise from
the truth tables), staying independent of the package's triple-algebra
route.
"""

from __future__ import annotations

import itertools
import random

from ciore.fo_semantics import Structure, Triple, eval_term
from ciore.matrix import AND_TABLE, IMP_TABLE, OR_TABLE, VALUE_ORDER
from ciore.sequents import Sequent
from ciore.syntax import (
    And,
    Circ,
    Exists,
    Forall,
    Formula,
    FreeVar,
    Imp,
    Neg,
    Or,
    PredAtom,
    PropAtom,
    free_variables,
    fresh_free_variable,
    instantiate,
)


def var_sorted(names) -> tuple[str, ...]:
    return tuple(sorted(names, key=lambda n: int(n[1:])))


def tuple_space(domain, k: int):
    return tuple(itertools.product(domain, repeat=k))


# ---------------------------------------------------------------------------
# Independent denotation: component sets


def _hat_forall(universe, var_pos: int, domain, subset) -> frozenset:
    """Assignments whose every update at the given coordinate lands in subset."""
    return frozenset(
        s for s in universe if all(s[:var_pos] + (m,) + s[var_pos + 1 :] in subset for m in domain)
    )


def _hat_exists(universe, var_pos: int, domain, subset) -> frozenset:
    return frozenset(
        s for s in universe if any(s[:var_pos] + (m,) + s[var_pos + 1 :] in subset for m in domain)
    )


def denote_components(phi: Formula, st: Structure, variables: tuple[str, ...]) -> Triple:
    """Triple of phi over assignment tuples for ``variables``, computed from
    the component-set characterization."""
    universe = frozenset(tuple_space(st.domain, len(variables)))

    if isinstance(phi, PredAtom):
        triple = st.predicates[phi.name]
        values = {}
        for combo in universe:
            s = dict(zip(variables, combo))
            values[combo] = triple.value_at(tuple(eval_term(t, st, s) for t in phi.args))
        return Triple.from_values(universe, values)
    if isinstance(phi, Neg):
        sub = denote_components(phi.body, st, variables)
        return Triple(universe, sub.minus, sub.plus, sub.circ)
    if isinstance(phi, Circ):
        sub = denote_components(phi.body, st, variables)
        return Triple(universe, sub.plus | sub.minus, sub.circ, frozenset())
    if isinstance(phi, (And, Or, Imp)):
        table = {And: AND_TABLE, Or: OR_TABLE, Imp: IMP_TABLE}[type(phi)]
        left = denote_components(phi.left, st, variables)
        right = denote_components(phi.right, st, variables)
        values = {s: table[left.value_at(s), right.value_at(s)] for s in universe}
        return Triple.from_values(universe, values)
    if isinstance(phi, (Forall, Exists)):
        fresh = fresh_free_variable(free_variables(phi) | set(variables))
        body = instantiate(phi, FreeVar(fresh))
        ext_vars = variables + (fresh,)
        sub = denote_components(body, st, ext_vars)
        pos = len(variables)
        dom = st.domain

        def project(subset) -> frozenset:
            # the filters act on the extended space; restrict to the original
            # coordinates (the filtered sets no longer depend on the last one)
            return frozenset(s[:pos] for s in subset)

        if isinstance(phi, Forall):
            plus = project(_hat_exists(sub.universe, pos, dom, sub.plus)) - project(
                _hat_exists(sub.universe, pos, dom, sub.minus)
            )
            minus = project(_hat_exists(sub.universe, pos, dom, sub.minus))
            circ = project(_hat_forall(sub.universe, pos, dom, sub.circ))
        else:
            minus = project(_hat_forall(sub.universe, pos, dom, sub.minus))
            circ = project(_hat_forall(sub.universe, pos, dom, sub.circ))
            plus = frozenset(universe) - (minus | circ)
        return Triple(universe, plus, minus, circ)
    raise AssertionError(f"unexpected formula {phi!r}")


# ---------------------------------------------------------------------------
# Random structures and first-order formulas


def random_structure(rng: random.Random, arities: dict[str, int], max_size: int = 3) -> Structure:
    size = rng.randint(1, max_size)
    domain = tuple(f"m{i}" for i in range(size))
    predicates = {}
    for name, arity in sorted(arities.items()):
        space = tuple_space(domain, arity)
        values = {combo: rng.choice(VALUE_ORDER) for combo in space}
        predicates[name] = Triple.from_values(space, values)
    return Structure(domain=domain, predicates=predicates)


def all_unary_structures(size: int, name: str = "P"):
    """Every structure with the given domain size and one unary predicate."""
    domain = tuple(f"m{i}" for i in range(size))
    space = tuple_space(domain, 1)
    for values in itertools.product(VALUE_ORDER, repeat=len(space)):
        yield Structure(
            domain=domain,
            predicates={name: Triple.from_values(space, dict(zip(space, values)))},
        )


# ---------------------------------------------------------------------------
# Exhaustive propositional formula enumeration


def formulas_of_complexity(atom_names: tuple[str, ...], max_connectives: int) -> list[Formula]:
    """All formulas over the atoms with at most the given connective count,
    deduplicated, in a deterministic order."""
    by_size: list[list[Formula]] = [[PropAtom(n) for n in atom_names]]
    for size in range(1, max_connectives + 1):
        layer: list[Formula] = []
        for sub in by_size[size - 1]:
            layer.append(Neg(sub))
            layer.append(Circ(sub))
        for left_size in range(size):
            right_size = size - 1 - left_size
            for left in by_size[left_size]:
                for right in by_size[right_size]:
                    layer.extend((And(left, right), Or(left, right), Imp(left, right)))
        by_size.append(layer)
    out: list[Formula] = []
    seen: set[Formula] = set()
    for layer in by_size:
        for phi in layer:
            if phi not in seen:
                seen.add(phi)
                out.append(phi)
    return out


def sides_upto(pool: list[Formula], max_size: int) -> list[tuple[Formula, ...]]:
    sides: list[tuple[Formula, ...]] = [()]
    sides.extend((phi,) for phi in pool)
    if max_size >= 2:
        sides.extend(itertools.combinations(pool, 2))
    return sides


def make_sequent(ante: tuple[Formula, ...], succ: tuple[Formula, ...]) -> Sequent:
    return Sequent.make(ante, succ)


# ---------------------------------------------------------------------------
# Random rule instances

from ciore.randgen import random_fo_formula, random_formula  # noqa: E402
from ciore.sequents import LEFT, RuleId, premises_from_schema, rule_schema  # noqa: E402
from ciore.syntax import bind, free_variables as _fv  # noqa: E402

_R = RuleId

PROP_LOGICAL_RULES = (
    _R.OR_L,
    _R.OR_R,
    _R.NEG_OR_L,
    _R.NEG_OR_R,
    _R.NEG_OR_R2,
    _R.AND_L,
    _R.AND_R,
    _R.NEG_AND_L,
    _R.NEG_AND_R,
    _R.NEG_AND_R2,
    _R.IMP_L,
    _R.IMP_R,
    _R.NEG_IMP_L,
    _R.NEG_IMP_R,
    _R.NEG_IMP_R2,
    _R.NEG_R,
    _R.NEG_R2,
    _R.NEG_NEG_L,
    _R.NEG_NEG_R,
    _R.CIRC_L,
    _R.CIRC_R,
    _R.NEG_CIRC_L,
)

QUANTIFIER_RULES = (
    _R.FORALL_L,
    _R.FORALL_R,
    _R.EXISTS_L,
    _R.EXISTS_R,
    _R.CIRC_FORALL_L,
    _R.CIRC_FORALL_R,
    _R.CIRC_EXISTS_L,
    _R.CIRC_EXISTS_R,
)

EIGEN_RULES = (_R.FORALL_R, _R.EXISTS_L, _R.CIRC_EXISTS_L)


def principal_shape(rule: RuleId, a: Formula, b: Formula) -> Formula:
    if rule in (_R.OR_L, _R.OR_R):
        return Or(a, b)
    if rule in (_R.NEG_OR_L, _R.NEG_OR_R, _R.NEG_OR_R2):
        return Neg(Or(a, b))
    if rule in (_R.AND_L, _R.AND_R):
        return And(a, b)
    if rule in (_R.NEG_AND_L, _R.NEG_AND_R, _R.NEG_AND_R2):
        return Neg(And(a, b))
    if rule in (_R.IMP_L, _R.IMP_R):
        return Imp(a, b)
    if rule in (_R.NEG_IMP_L, _R.NEG_IMP_R, _R.NEG_IMP_R2):
        return Neg(Imp(a, b))
    if rule in (_R.NEG_R, _R.NEG_R2):
        return Neg(a)
    if rule in (_R.NEG_NEG_L, _R.NEG_NEG_R):
        return Neg(Neg(a))
    if rule in (_R.CIRC_L, _R.CIRC_R):
        return Circ(a)
    if rule is _R.NEG_CIRC_L:
        return Neg(Circ(a))
    raise AssertionError(rule)


def random_prop_instance(rng: random.Random, rule: RuleId, atoms=("p", "q", "r", "s")):
    """(conclusion, premises, principal) for a random instance of a
    propositional logical rule."""
    a = random_formula(rng, atoms, rng.randint(0, 2))
    b = random_formula(rng, atoms, rng.randint(0, 2))
    principal = principal_shape(rule, a, b)
    ante = frozenset(random_formula(rng, atoms, 1) for _ in range(rng.randint(0, 2)))
    succ = frozenset(random_formula(rng, atoms, 1) for _ in range(rng.randint(0, 2)))
    side, _ = rule_schema(rule, principal)
    if side == LEFT:
        conclusion = Sequent(ante | {principal}, succ)
    else:
        conclusion = Sequent(ante, succ | {principal})
    premises = premises_from_schema(conclusion, rule, principal)
    assert premises is not None
    return conclusion, premises, principal


_FO_ARITIES = {"P": 1, "Q": 1, "R": 2}


def random_fo_rule_instance(rng: random.Random, rule: RuleId):
    """(conclusion, premises, principal, var) over a small first-order pool,
    with eigenvariable side conditions respected."""
    pool = ("a1", "a2")
    mk = lambda d: random_fo_formula(rng, _FO_ARITIES, pool, d, quantifier_chance=0.2)
    ante = frozenset(mk(1) for _ in range(rng.randint(0, 2)))
    succ = frozenset(mk(1) for _ in range(rng.randint(0, 2)))

    if rule in QUANTIFIER_RULES:
        body = random_fo_formula(rng, _FO_ARITIES, pool, rng.randint(0, 1), quantifier_chance=0.0)
        target = rng.choice(sorted(_fv(body))) if _fv(body) and rng.random() < 0.9 else "a9"
        quant = Forall if rule in (_R.FORALL_L, _R.FORALL_R, _R.CIRC_FORALL_L, _R.CIRC_FORALL_R) else Exists
        quantified = bind(body, target, "x9", quant)
        principal = Circ(quantified) if rule.value.startswith("Circ") else quantified
    else:
        principal = principal_shape(rule, mk(rng.randint(0, 1)), mk(rng.randint(0, 1)))

    side, _ = rule_schema(rule, principal, "a1") if rule in QUANTIFIER_RULES else rule_schema(rule, principal)
    if side == LEFT:
        conclusion = Sequent(ante | {principal}, succ)
    else:
        conclusion = Sequent(ante, succ | {principal})

    var = None
    if rule in QUANTIFIER_RULES:
        if rule in EIGEN_RULES or rule is _R.CIRC_FORALL_L:
            # the consistency-forall left rule only preserves validity in a
            # fixed structure when its variable is fresh, like an eigenvariable
            var = fresh_free_variable(conclusion.free_variables())
        else:
            var = rng.choice(pool)
    premises = premises_from_schema(conclusion, rule, principal, var)
    assert premises is not None
    return conclusion, premises, principal, var
