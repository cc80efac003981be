"""Grounding: from a problem instance to an indexed propositional task.

Action schemas are instantiated over all type-consistent bindings, their
preconditions normalized to conjunctions of literals and numeric
comparisons (disjunctions split into separate variants), and instantiations
that can never apply are pruned via a pair-reachability fixpoint computed
from the initial state. Pruning ignores numeric conditions, which keeps it
sound: it only ever removes actions that are impossible for boolean
reasons.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Optional

from ..ir import (
    And,
    Atom,
    Comparison,
    DomainModel,
    Expression,
    Not,
    NumAdd,
    NumConst,
    NumFluent,
    NumSub,
    NumTerm,
    NumericEffect,
    Or,
    ProblemInstance,
    SetEffect,
    ground_atoms,
)


class GroundingError(ValueError):
    pass


# ------------------------------------------------------------ normalization


def to_nnf(expr: Expression, negate: bool = False) -> Expression:
    """Push negations down to atoms; negated comparisons flip their operator."""
    if isinstance(expr, Atom):
        return Not(expr) if negate else expr
    if isinstance(expr, Not):
        return to_nnf(expr.child, not negate)
    if isinstance(expr, And):
        children = tuple(to_nnf(c, negate) for c in expr.children)
        return Or(children) if negate else And(children)
    if isinstance(expr, Or):
        children = tuple(to_nnf(c, negate) for c in expr.children)
        return And(children) if negate else Or(children)
    if isinstance(expr, Comparison):
        if not negate:
            return expr
        flipped = {"<": ">=", "<=": ">", ">=": "<", ">": "<="}
        if expr.op in flipped:
            return Comparison(flipped[expr.op], expr.left, expr.right)
        # not(=) is disjunctive
        return Or((Comparison("<", expr.left, expr.right), Comparison(">", expr.left, expr.right)))
    raise TypeError(f"not a boolean expression: {expr!r}")


def to_dnf_branches(expr: Expression) -> list[list[Expression]]:
    """NNF expression -> list of conjunctive branches (literals/comparisons)."""
    if isinstance(expr, And):
        branches: list[list[Expression]] = [[]]
        for child in expr.children:
            child_branches = to_dnf_branches(child)
            branches = [b + cb for b in branches for cb in child_branches]
        return branches
    if isinstance(expr, Or):
        out: list[list[Expression]] = []
        for child in expr.children:
            out.extend(to_dnf_branches(child))
        return out
    return [[expr]]


def substitute(expr: Expression, binding: dict[str, str]) -> Expression:
    if isinstance(expr, Atom):
        return Atom(expr.fluent, tuple(binding.get(a, a) for a in expr.args))
    if isinstance(expr, And):
        return And(tuple(substitute(c, binding) for c in expr.children))
    if isinstance(expr, Or):
        return Or(tuple(substitute(c, binding) for c in expr.children))
    if isinstance(expr, Not):
        return Not(substitute(expr.child, binding))
    if isinstance(expr, Comparison):
        return Comparison(expr.op, substitute_term(expr.left, binding), substitute_term(expr.right, binding))
    raise TypeError(f"not a boolean expression: {expr!r}")


def substitute_term(term: NumTerm, binding: dict[str, str]) -> NumTerm:
    if isinstance(term, NumConst):
        return term
    if isinstance(term, NumFluent):
        return NumFluent(term.fluent, tuple(binding.get(a, a) for a in term.args))
    if isinstance(term, NumAdd):
        return NumAdd(substitute_term(term.left, binding), substitute_term(term.right, binding))
    if isinstance(term, NumSub):
        return NumSub(substitute_term(term.left, binding), substitute_term(term.right, binding))
    raise TypeError(f"not a numeric term: {term!r}")


# ------------------------------------------------------------ linear forms


@dataclass(frozen=True)
class Linear:
    """constant + sum(coef * numeric_atom_index); all coefficients integers."""

    constant: Fraction
    coeffs: tuple[tuple[int, int], ...]  # (atom index, coefficient)

    def evaluate(self, values: tuple[Fraction, ...]) -> Fraction:
        total = self.constant
        for idx, coef in self.coeffs:
            total += values[idx] * coef
        return total


def _linearize(term: NumTerm, index: dict[NumFluent, int], sign: int, constant: list[Fraction], coeffs: dict[int, int]) -> None:
    if isinstance(term, NumConst):
        constant[0] += term.value * sign
    elif isinstance(term, NumFluent):
        if term not in index:
            raise GroundingError(f"numeric atom {term} is used but uninitialized")
        coeffs[index[term]] = coeffs.get(index[term], 0) + sign
    elif isinstance(term, NumAdd):
        _linearize(term.left, index, sign, constant, coeffs)
        _linearize(term.right, index, sign, constant, coeffs)
    elif isinstance(term, NumSub):
        _linearize(term.left, index, sign, constant, coeffs)
        _linearize(term.right, index, -sign, constant, coeffs)
    else:
        raise TypeError(f"not a numeric term: {term!r}")


def linearize(term: NumTerm, index: dict[NumFluent, int]) -> Linear:
    constant = [Fraction(0)]
    coeffs: dict[int, int] = {}
    _linearize(term, index, 1, constant, coeffs)
    return Linear(constant[0], tuple(sorted((i, c) for i, c in coeffs.items() if c != 0)))


@dataclass(frozen=True)
class GroundComparison:
    """left - right rendered as a single linear form compared against zero."""

    op: str
    form: Linear
    source: Comparison  # retained for messages

    def holds(self, values: tuple[Fraction, ...]) -> bool:
        v = self.form.evaluate(values)
        if self.op == "<":
            return v < 0
        if self.op == "<=":
            return v <= 0
        if self.op == "=":
            return v == 0
        if self.op == ">=":
            return v >= 0
        return v > 0


@dataclass(frozen=True)
class GroundNumericEffect:
    op: str  # increase | decrease | assign
    target: int
    amount: Linear


@dataclass(frozen=True)
class GroundAction:
    name: str
    args: tuple[str, ...]
    pre_pos: int  # bitmask over boolean atom indices
    pre_neg: int
    pre_num: tuple[GroundComparison, ...]
    add_mask: int
    del_mask: int
    num_effects: tuple[GroundNumericEffect, ...]

    def __str__(self) -> str:
        return f"{self.name}({', '.join(self.args)})"

    def applicable(self, bools: int, nums: tuple[Fraction, ...]) -> bool:
        if (bools & self.pre_pos) != self.pre_pos or (bools & self.pre_neg) != 0:
            return False
        return all(c.holds(nums) for c in self.pre_num)

    def apply(self, bools: int, nums: tuple[Fraction, ...]) -> tuple[int, tuple[Fraction, ...]]:
        new_bools = (bools & ~self.del_mask) | self.add_mask
        if not self.num_effects:
            return new_bools, nums
        # Amounts are evaluated against the pre-state; applications are
        # sequential in declaration order.
        working = list(nums)
        for effect in self.num_effects:
            amount = effect.amount.evaluate(nums)
            if effect.op == "increase":
                working[effect.target] += amount
            elif effect.op == "decrease":
                working[effect.target] -= amount
            else:
                working[effect.target] = amount
        return new_bools, tuple(working)


@dataclass(frozen=True)
class GroundTask:
    problem: ProblemInstance
    atoms: tuple[Atom, ...]
    atom_index: dict[Atom, int]
    num_atoms: tuple[NumFluent, ...]
    num_index: dict[NumFluent, int]
    actions: tuple[GroundAction, ...]
    init_bools: int
    init_nums: tuple[Fraction, ...]
    goal: Expression  # ground, NNF

    def goal_holds(self, bools: int, nums: tuple[Fraction, ...]) -> bool:
        return _eval_compiled(self.goal, self, bools, nums)

    def atoms_of(self, bools: int) -> frozenset[Atom]:
        return frozenset(a for i, a in enumerate(self.atoms) if bools >> i & 1)

    def numerics_of(self, nums: tuple[Fraction, ...]) -> dict[NumFluent, Fraction]:
        return {a: nums[i] for i, a in enumerate(self.num_atoms)}


def _eval_compiled(expr: Expression, task: GroundTask, bools: int, nums: tuple[Fraction, ...]) -> bool:
    if isinstance(expr, Atom):
        idx = task.atom_index.get(expr)
        return bool(bools >> idx & 1) if idx is not None else False
    if isinstance(expr, And):
        return all(_eval_compiled(c, task, bools, nums) for c in expr.children)
    if isinstance(expr, Or):
        return any(_eval_compiled(c, task, bools, nums) for c in expr.children)
    if isinstance(expr, Not):
        return not _eval_compiled(expr.child, task, bools, nums)
    if isinstance(expr, Comparison):
        return GroundComparison(expr.op, _comparison_form(expr, task.num_index), expr).holds(nums)
    raise TypeError(f"not a boolean expression: {expr!r}")


def _comparison_form(comp: Comparison, index: dict[NumFluent, int]) -> Linear:
    left = linearize(comp.left, index)
    right = linearize(comp.right, index)
    merged: dict[int, int] = dict(left.coeffs)
    for idx, coef in right.coeffs:
        merged[idx] = merged.get(idx, 0) - coef
    coeffs = tuple(sorted((i, c) for i, c in merged.items() if c != 0))
    return Linear(left.constant - right.constant, coeffs)


# ------------------------------------------------------------ instantiation


def _bindings(domain: DomainModel, parameters, objects) -> Iterable[dict[str, str]]:
    candidates = [
        sorted(o.name for o in objects if domain.is_subtype(o.type, p.type))
        for p in parameters
    ]
    names = [p.name for p in parameters]
    for combo in product(*candidates):
        yield dict(zip(names, combo))


def ground(problem: ProblemInstance) -> GroundTask:
    """Instantiate, normalize, and prune. Requires a valid problem."""
    domain = problem.domain
    grounded = ground_atoms(domain, problem.objects)
    atoms = grounded.booleans
    atom_index = {a: i for i, a in enumerate(atoms)}

    init_true = problem.init.true_atoms
    init_numeric = problem.init.numeric_map()

    # Numeric atoms get indices only when initialized; using an
    # uninitialized one is reported during linearization.
    num_atoms = tuple(a for a in grounded.numerics if a in init_numeric)
    num_index = {a: i for i, a in enumerate(num_atoms)}

    goal_nnf = to_nnf(problem.goal)
    _touch_expression(goal_nnf, num_index)  # fail fast on uninitialized goal numerics

    actions: list[GroundAction] = []
    for schema in domain.actions:
        nnf = to_nnf(schema.precondition)
        for binding in _bindings(domain, schema.parameters, problem.objects):
            bound = substitute(nnf, binding)
            for branch in to_dnf_branches(bound):
                action = _build_action(schema, binding, branch, atom_index, num_index, problem)
                if action is not None:
                    actions.append(action)

    kept = _prune_unreachable(actions, atoms, atom_index, init_true)

    init_bools = 0
    for atom in init_true:
        idx = atom_index.get(atom)
        if idx is not None:
            init_bools |= 1 << idx
    init_nums = tuple(init_numeric[a] for a in num_atoms)

    return GroundTask(
        problem=problem,
        atoms=atoms,
        atom_index=atom_index,
        num_atoms=num_atoms,
        num_index=num_index,
        actions=tuple(kept),
        init_bools=init_bools,
        init_nums=init_nums,
        goal=goal_nnf,
    )


def _touch_expression(expr: Expression, num_index: dict[NumFluent, int]) -> None:
    if isinstance(expr, (And, Or)):
        for child in expr.children:
            _touch_expression(child, num_index)
    elif isinstance(expr, Not):
        _touch_expression(expr.child, num_index)
    elif isinstance(expr, Comparison):
        linearize(expr.left, num_index)
        linearize(expr.right, num_index)


def _build_action(schema, binding, branch, atom_index, num_index, problem) -> Optional[GroundAction]:
    pre_pos = 0
    pre_neg = 0
    pre_num: list[GroundComparison] = []
    for literal in branch:
        if isinstance(literal, Atom):
            idx = atom_index.get(literal)
            if idx is None:
                return None  # cannot arise from a well-typed schema
            pre_pos |= 1 << idx
        elif isinstance(literal, Not):
            idx = atom_index.get(literal.child)
            if idx is None:
                return None
            pre_neg |= 1 << idx
        elif isinstance(literal, Comparison):
            comp = GroundComparison(literal.op, _comparison_form(literal, num_index), literal)
            if not comp.form.coeffs:
                # Constant comparison: keep the variant only when it holds.
                if not comp.holds(()):
                    return None
                continue
            pre_num.append(comp)
        else:
            raise GroundingError(f"unexpected literal {literal!r} after normalization")
    if pre_pos & pre_neg:
        return None  # p and (not p) in one branch

    add_mask = 0
    del_mask = 0
    num_effects: list[GroundNumericEffect] = []
    for effect in schema.effects:
        if isinstance(effect, SetEffect):
            atom = Atom(effect.atom.fluent, tuple(binding.get(a, a) for a in effect.atom.args))
            idx = atom_index.get(atom)
            if idx is None:
                return None
            if effect.value:
                add_mask |= 1 << idx
            else:
                del_mask |= 1 << idx
        elif isinstance(effect, NumericEffect):
            target = NumFluent(effect.target.fluent, tuple(binding.get(a, a) for a in effect.target.args))
            if target not in num_index:
                raise GroundingError(f"numeric atom {target} is used but uninitialized")
            amount = linearize(substitute_term(effect.amount, binding), num_index)
            num_effects.append(GroundNumericEffect(effect.op, num_index[target], amount))
    # Add wins over delete is forbidden upstream; keep masks disjoint anyway.
    del_mask &= ~add_mask

    args = tuple(binding[p.name] for p in schema.parameters)
    return GroundAction(
        name=schema.name,
        args=args,
        pre_pos=pre_pos,
        pre_neg=pre_neg,
        pre_num=tuple(pre_num),
        add_mask=add_mask,
        del_mask=del_mask,
        num_effects=tuple(num_effects),
    )


# ------------------------------------------------------------ pruning


def _mask_bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _prune_unreachable(actions: list[GroundAction], atoms, atom_index, init_true) -> list[GroundAction]:
    """Pair-reachability fixpoint from the initial state.

    A pair of atoms is marked when some applicable action can make both true
    together; an action survives only if every pair within its positive
    precondition is marked. Negative and numeric preconditions are treated
    as satisfiable, so the check only removes genuinely impossible actions.
    """
    n = len(atoms)
    reachable: set[tuple[int, int]] = set()

    def mark(i: int, j: int) -> bool:
        key = (i, j) if i <= j else (j, i)
        if key in reachable:
            return False
        reachable.add(key)
        return True

    init_bits = sorted(atom_index[a] for a in init_true if a in atom_index)
    for i in init_bits:
        mark(i, i)
    for i, j in combinations(init_bits, 2):
        mark(i, j)

    def pairwise_ok(bits: list[int]) -> bool:
        for i in bits:
            if (i, i) not in reachable:
                return False
        for i, j in combinations(bits, 2):
            if ((i, j) if i <= j else (j, i)) not in reachable:
                return False
        return True

    pre_bits = [_mask_bits(a.pre_pos) for a in actions]
    add_bits = [_mask_bits(a.add_mask) for a in actions]

    changed = True
    while changed:
        changed = False
        for idx, action in enumerate(actions):
            pre = pre_bits[idx]
            if not pairwise_ok(pre):
                continue
            adds = add_bits[idx]
            for i in adds:
                if mark(i, i):
                    changed = True
            for i, j in combinations(adds, 2):
                if mark(i, j):
                    changed = True
            # An added atom pairs with any atom that can co-hold with the
            # preconditions and survives the delete list.
            for i in adds:
                for r in range(n):
                    if action.del_mask >> r & 1 or action.add_mask >> r & 1:
                        continue
                    if (r, r) not in reachable:
                        continue
                    if not pairwise_ok(sorted(set(pre + [r]))):
                        continue
                    if mark(i, r):
                        changed = True

    return [a for idx, a in enumerate(actions) if pairwise_ok(pre_bits[idx])]
