"""Direct evaluation of ground expressions against explicit states.

Used by the plan validator and goal checks; deliberately independent of the
bitmask encoding the search uses, so the two sides of the solver can
cross-check each other.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..ir import (
    And,
    Atom,
    Comparison,
    Expression,
    Not,
    NumAdd,
    NumConst,
    NumFluent,
    NumSub,
    NumTerm,
    Or,
)


class UndefinedNumericError(KeyError):
    def __init__(self, target: NumFluent):
        self.target = target
        super().__init__(str(target))


def eval_term(term: NumTerm, numerics: Mapping[NumFluent, Fraction]) -> Fraction:
    if isinstance(term, NumConst):
        return term.value
    if isinstance(term, NumFluent):
        try:
            return numerics[term]
        except KeyError:
            raise UndefinedNumericError(term) from None
    if isinstance(term, NumAdd):
        return eval_term(term.left, numerics) + eval_term(term.right, numerics)
    if isinstance(term, NumSub):
        return eval_term(term.left, numerics) - eval_term(term.right, numerics)
    raise TypeError(f"not a numeric term: {term!r}")


def _compare(op: str, left: Fraction, right: Fraction) -> bool:
    if op == "<":
        return left < right
    if op == "<=":
        return left <= right
    if op == "=":
        return left == right
    if op == ">=":
        return left >= right
    if op == ">":
        return left > right
    raise ValueError(f"unknown comparison {op!r}")


def eval_ground(expr: Expression, true_atoms: frozenset[Atom] | set[Atom], numerics: Mapping[NumFluent, Fraction]) -> bool:
    if isinstance(expr, Atom):
        return expr in true_atoms
    if isinstance(expr, And):
        return all(eval_ground(c, true_atoms, numerics) for c in expr.children)
    if isinstance(expr, Or):
        return any(eval_ground(c, true_atoms, numerics) for c in expr.children)
    if isinstance(expr, Not):
        return not eval_ground(expr.child, true_atoms, numerics)
    if isinstance(expr, Comparison):
        return _compare(expr.op, eval_term(expr.left, numerics), eval_term(expr.right, numerics))
    raise TypeError(f"not a boolean expression: {expr!r}")
