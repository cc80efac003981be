"""Core value types for planning domains, problems, and edits.

Everything here is an immutable value: edits and transitions produce new
objects, so instances can be shared freely across threads. Numeric state is
held as exact `fractions.Fraction` values so that planner and validator
decisions are reproducible bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

OBJECT_TYPE = "object"

BOOLEAN = "boolean"
NUMERIC = "numeric"

COMPARISON_OPS = ("<", "<=", "=", ">=", ">")


def is_variable(name: str) -> bool:
    """Variables carry a leading '?'; anything else names an object."""
    return name.startswith("?")


@dataclass(frozen=True)
class TypeDecl:
    """A named object type; ``parent`` defaults to the universal root type."""

    name: str
    parent: str = OBJECT_TYPE


@dataclass(frozen=True)
class Parameter:
    name: str  # '?'-prefixed variable name
    type: str = OBJECT_TYPE


@dataclass(frozen=True)
class FluentDecl:
    """A state variable template: boolean (predicate) or numeric (function)."""

    name: str
    parameters: tuple[Parameter, ...] = ()
    kind: str = BOOLEAN
    description: str = ""

    @property
    def arity(self) -> int:
        return len(self.parameters)

    def signature(self) -> tuple:
        """Identity of the declaration minus documentation text."""
        return (self.name, tuple((p.name, p.type) for p in self.parameters), self.kind)


# --------------------------------------------------------------------------
# Expressions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    """A boolean fluent applied to arguments (variables or object names)."""

    fluent: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return f"({self.fluent})"
        return f"({self.fluent} {' '.join(self.args)})"


@dataclass(frozen=True)
class NumConst:
    value: Fraction

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class NumFluent:
    """A numeric fluent applied to arguments, used as an arithmetic term."""

    fluent: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return f"({self.fluent})"
        return f"({self.fluent} {' '.join(self.args)})"


@dataclass(frozen=True)
class NumAdd:
    left: "NumTerm"
    right: "NumTerm"

    def __str__(self) -> str:
        return f"(+ {self.left} {self.right})"


@dataclass(frozen=True)
class NumSub:
    left: "NumTerm"
    right: "NumTerm"

    def __str__(self) -> str:
        return f"(- {self.left} {self.right})"


NumTerm = Union[NumConst, NumFluent, NumAdd, NumSub]


@dataclass(frozen=True)
class And:
    children: tuple["Expression", ...] = ()

    def __str__(self) -> str:
        if not self.children:
            return "(and)"
        return f"(and {' '.join(str(c) for c in self.children)})"


@dataclass(frozen=True)
class Or:
    children: tuple["Expression", ...] = ()

    def __str__(self) -> str:
        if not self.children:
            return "(or)"
        return f"(or {' '.join(str(c) for c in self.children)})"


@dataclass(frozen=True)
class Not:
    child: "Expression"

    def __str__(self) -> str:
        return f"(not {self.child})"


@dataclass(frozen=True)
class Comparison:
    op: str  # one of COMPARISON_OPS
    left: NumTerm
    right: NumTerm

    def __str__(self) -> str:
        return f"({self.op} {self.left} {self.right})"


Expression = Union[Atom, And, Or, Not, Comparison]

TRUE = And(())


def conjunction(children: Iterable[Expression]) -> Expression:
    items = tuple(children)
    if len(items) == 1:
        return items[0]
    return And(items)


def walk_expression(expr: Expression) -> Iterator[Expression]:
    """Yield every boolean-level node of ``expr`` in preorder."""
    yield expr
    if isinstance(expr, (And, Or)):
        for child in expr.children:
            yield from walk_expression(child)
    elif isinstance(expr, Not):
        yield from walk_expression(expr.child)


def walk_terms(term: NumTerm) -> Iterator[NumTerm]:
    yield term
    if isinstance(term, (NumAdd, NumSub)):
        yield from walk_terms(term.left)
        yield from walk_terms(term.right)


def expression_atoms(expr: Expression) -> Iterator[Atom]:
    for node in walk_expression(expr):
        if isinstance(node, Atom):
            yield node


def expression_num_fluents(expr: Expression) -> Iterator[NumFluent]:
    for node in walk_expression(expr):
        if isinstance(node, Comparison):
            for side in (node.left, node.right):
                for term in walk_terms(side):
                    if isinstance(term, NumFluent):
                        yield term


# --------------------------------------------------------------------------
# Effects
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SetEffect:
    """Set a boolean atom to a literal truth value."""

    atom: Atom
    value: bool = True

    def __str__(self) -> str:
        return str(self.atom) if self.value else f"(not {self.atom})"


@dataclass(frozen=True)
class NumericEffect:
    """increase/decrease/assign a numeric atom by a linear term."""

    op: str  # "increase" | "decrease" | "assign"
    target: NumFluent
    amount: NumTerm

    def __str__(self) -> str:
        return f"({self.op} {self.target} {self.amount})"


Effect = Union[SetEffect, NumericEffect]

NUMERIC_EFFECT_OPS = ("increase", "decrease", "assign")


# --------------------------------------------------------------------------
# Schemas, domains, problems
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ActionSchema:
    name: str
    parameters: tuple[Parameter, ...] = ()
    precondition: Expression = TRUE
    effects: tuple[Effect, ...] = ()


@dataclass(frozen=True)
class DomainModel:
    """A planning domain: types, fluents, and action schemas.

    Declarations are kept lexicographically sorted so that independently
    built or edited models compare equal regardless of insertion order.
    Requirement flags are derived from content, which keeps the
    numeric-fluents flag consistent with the declared fluents by
    construction.
    """

    name: str
    types: tuple[TypeDecl, ...] = ()
    fluents: tuple[FluentDecl, ...] = ()
    actions: tuple[ActionSchema, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "types", tuple(sorted(self.types, key=lambda t: t.name)))
        object.__setattr__(self, "fluents", tuple(sorted(self.fluents, key=lambda f: f.name)))
        object.__setattr__(self, "actions", tuple(sorted(self.actions, key=lambda a: a.name)))

    @property
    def uses_typing(self) -> bool:
        return bool(self.types)

    @property
    def uses_numeric_fluents(self) -> bool:
        return any(f.kind == NUMERIC for f in self.fluents)

    @property
    def uses_negative_preconditions(self) -> bool:
        return self._precondition_uses(Not)

    @property
    def uses_disjunctive_preconditions(self) -> bool:
        return self._precondition_uses(Or)

    def _precondition_uses(self, node_type: type) -> bool:
        for action in self.actions:
            for node in walk_expression(action.precondition):
                if isinstance(node, node_type):
                    return True
        return False

    @property
    def requirements(self) -> tuple[str, ...]:
        flags = [":strips"]
        if self.uses_typing:
            flags.append(":typing")
        if self.uses_negative_preconditions:
            flags.append(":negative-preconditions")
        if self.uses_disjunctive_preconditions:
            flags.append(":disjunctive-preconditions")
        if self.uses_numeric_fluents:
            flags.append(":numeric-fluents")
        return tuple(flags)

    def type_map(self) -> dict[str, TypeDecl]:
        return {t.name: t for t in self.types}

    def fluent_map(self) -> dict[str, FluentDecl]:
        return {f.name: f for f in self.fluents}

    def action_map(self) -> dict[str, ActionSchema]:
        return {a.name: a for a in self.actions}

    def is_subtype(self, sub: str, sup: str) -> bool:
        """True when ``sub`` equals or descends from ``sup`` in the type forest."""
        if sup == OBJECT_TYPE or sub == sup:
            return True
        types = self.type_map()
        seen = set()
        current = sub
        while current != OBJECT_TYPE and current not in seen:
            seen.add(current)
            decl = types.get(current)
            if decl is None:
                return False
            current = decl.parent
            if current == sup:
                return True
        return False


@dataclass(frozen=True)
class ObjectDecl:
    name: str
    type: str = OBJECT_TYPE


def _freeze_numeric(values: Mapping[NumFluent, Fraction] | Iterable[tuple[NumFluent, Fraction]]) -> tuple[tuple[NumFluent, Fraction], ...]:
    items = values.items() if isinstance(values, Mapping) else values
    frozen = tuple(sorted(((k, Fraction(v)) for k, v in items), key=lambda kv: (kv[0].fluent, kv[0].args)))
    return frozen


@dataclass(frozen=True)
class Assignment:
    """Closed-world state description: true boolean atoms plus numeric values.

    Boolean atoms absent from ``true_atoms`` are false. Both components are
    kept canonically sorted so equal assignments serialize identically.
    """

    true_atoms: frozenset[Atom] = frozenset()
    numeric: tuple[tuple[NumFluent, Fraction], ...] = ()

    @staticmethod
    def create(true_atoms: Iterable[Atom] = (), numeric: Mapping[NumFluent, Fraction] | Iterable[tuple[NumFluent, Fraction]] = ()) -> "Assignment":
        return Assignment(frozenset(true_atoms), _freeze_numeric(numeric))

    def numeric_map(self) -> dict[NumFluent, Fraction]:
        return dict(self.numeric)

    def sorted_atoms(self) -> list[Atom]:
        return sorted(self.true_atoms, key=lambda a: (a.fluent, a.args))


@dataclass(frozen=True)
class ProblemInstance:
    domain: DomainModel
    objects: tuple[ObjectDecl, ...] = ()
    init: Assignment = field(default_factory=Assignment)
    goal: Expression = TRUE
    name: str = "problem"

    def __post_init__(self) -> None:
        object.__setattr__(self, "objects", tuple(sorted(self.objects, key=lambda o: o.name)))

    def object_map(self) -> dict[str, ObjectDecl]:
        return {o.name: o for o in self.objects}


# --------------------------------------------------------------------------
# Edits
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AddOrModifyFluent:
    """Request a new fluent, or a documentation update to an identical one.

    Signature changes to an existing fluent are rejected downstream; the
    destructive path is an explicit ModifyAction-style replacement.
    """

    fluent: FluentDecl
    provenance: str


@dataclass(frozen=True)
class ModifyAction:
    """Replace the precondition and/or effects of an existing action."""

    action: str
    precondition: Optional[Expression]
    effects: Optional[tuple[Effect, ...]]
    provenance: str


@dataclass(frozen=True)
class AddObjects:
    objects: tuple[ObjectDecl, ...]
    provenance: str


DomainEdit = Union[AddOrModifyFluent, ModifyAction, AddObjects]
