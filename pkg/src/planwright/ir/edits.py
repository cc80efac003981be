"""Applying agent-requested edits to a domain and its object set.

``apply_edit`` is atomic: it either returns a new model that differs only by
the requested change, or it returns the inputs untouched together with a
rejection reason. Malformed edits (unbound variables, empty provenance)
raise instead of rejecting, since they indicate a bug in the requesting
agent rather than a judgement call.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union

from .model import (
    AddObjects,
    AddOrModifyFluent,
    DomainEdit,
    DomainModel,
    ModifyAction,
    ObjectDecl,
    is_variable,
)
from .validate import (
    UNBOUND_VARIABLE,
    _Scope,
    _check_effects,
    _check_fluent_decl,
    check_expression,
    validate_domain,
)


class MalformedEditError(ValueError):
    """The edit itself is ill-formed; nothing was applied."""


@dataclass(frozen=True)
class Applied:
    detail: str = ""


@dataclass(frozen=True)
class Rejected:
    reason: str  # duplicate-fluent | unknown-action | type-conflict | duplicate-object
    message: str


EditOutcome = Union[Applied, Rejected]


@dataclass(frozen=True)
class EditResult:
    domain: DomainModel
    objects: tuple[ObjectDecl, ...]
    outcome: EditOutcome

    @property
    def applied(self) -> bool:
        return isinstance(self.outcome, Applied)


def apply_edit(domain: DomainModel, objects: tuple[ObjectDecl, ...], edit: DomainEdit) -> EditResult:
    if not getattr(edit, "provenance", ""):
        raise MalformedEditError("edit has empty provenance")
    if isinstance(edit, AddOrModifyFluent):
        return _apply_fluent(domain, objects, edit)
    if isinstance(edit, ModifyAction):
        return _apply_action(domain, objects, edit)
    if isinstance(edit, AddObjects):
        return _apply_objects(domain, objects, edit)
    raise MalformedEditError(f"unknown edit variant {type(edit).__name__}")


def _reject(domain: DomainModel, objects: tuple[ObjectDecl, ...], reason: str, message: str) -> EditResult:
    return EditResult(domain, objects, Rejected(reason, message))


def _apply_fluent(domain: DomainModel, objects, edit: AddOrModifyFluent) -> EditResult:
    new = edit.fluent
    problems: list = []
    _check_fluent_decl(domain, new, problems)
    if problems:
        return _reject(domain, objects, "type-conflict", "; ".join(str(p) for p in problems))
    existing = domain.fluent_map().get(new.name)
    if existing is not None:
        if existing == new:
            return _reject(domain, objects, "duplicate-fluent", f"fluent {new.name} already declared identically")
        if existing.signature() != new.signature():
            return _reject(
                domain,
                objects,
                "type-conflict",
                f"fluent {new.name} exists with a different signature; use an explicit replacement to change it",
            )
        # Same signature, new documentation text: the one non-destructive modification.
        fluents = tuple(new if f.name == new.name else f for f in domain.fluents)
        return EditResult(replace(domain, fluents=fluents), objects, Applied(f"updated description of {new.name}"))
    updated = replace(domain, fluents=domain.fluents + (new,))
    return _finish(domain, updated, objects, f"added fluent {new.name}")


def _apply_action(domain: DomainModel, objects, edit: ModifyAction) -> EditResult:
    if edit.precondition is None and edit.effects is None:
        raise MalformedEditError(f"action modification for {edit.action} replaces nothing")
    schema = domain.action_map().get(edit.action)
    if schema is None:
        return _reject(domain, objects, "unknown-action", f"action {edit.action} is not declared")

    new_schema = schema
    if edit.precondition is not None:
        new_schema = replace(new_schema, precondition=edit.precondition)
    if edit.effects is not None:
        new_schema = replace(new_schema, effects=tuple(edit.effects))

    bound = {p.name for p in schema.parameters}
    for part in _edit_variables(edit):
        if is_variable(part) and part not in bound:
            raise MalformedEditError(f"replacement for {edit.action} uses unbound variable {part}")

    scope = _Scope(domain, variables={p.name: p.type for p in schema.parameters})
    problems: list = []
    if edit.precondition is not None:
        check_expression(edit.precondition, scope, f"replacement precondition of {edit.action}", problems)
    if edit.effects is not None:
        _check_effects(domain, edit.action, new_schema.effects, scope, problems)
    fatal = [p for p in problems if p.code != UNBOUND_VARIABLE]
    if fatal:
        return _reject(domain, objects, "type-conflict", "; ".join(str(p) for p in fatal))

    actions = tuple(new_schema if a.name == edit.action else a for a in domain.actions)
    return _finish(domain, replace(domain, actions=actions), objects, f"modified action {edit.action}")


def _edit_variables(edit: ModifyAction):
    from .model import expression_atoms, expression_num_fluents, NumericEffect, SetEffect, walk_terms, NumFluent

    if edit.precondition is not None:
        for atom in expression_atoms(edit.precondition):
            yield from atom.args
        for ref in expression_num_fluents(edit.precondition):
            yield from ref.args
    for effect in edit.effects or ():
        if isinstance(effect, SetEffect):
            yield from effect.atom.args
        elif isinstance(effect, NumericEffect):
            yield from effect.target.args
            for term in walk_terms(effect.amount):
                if isinstance(term, NumFluent):
                    yield from term.args


def _apply_objects(domain: DomainModel, objects, edit: AddObjects) -> EditResult:
    if not edit.objects:
        raise MalformedEditError("object addition lists no objects")
    declared = {o.name for o in objects}
    type_names = {t.name for t in domain.types} | {"object"}
    for obj in edit.objects:
        if obj.name in declared:
            return _reject(domain, objects, "duplicate-object", f"object {obj.name} already declared")
        if obj.type not in type_names:
            return _reject(domain, objects, "type-conflict", f"object {obj.name} has undeclared type {obj.type}")
        declared.add(obj.name)
    merged = tuple(sorted(objects + tuple(edit.objects), key=lambda o: o.name))
    return EditResult(domain, merged, Applied(f"added objects {', '.join(o.name for o in edit.objects)}"))


def _finish(original: DomainModel, updated: DomainModel, objects, detail: str) -> EditResult:
    leftover = validate_domain(updated)
    if leftover:
        return _reject(original, objects, "type-conflict", "; ".join(str(v) for v in leftover))
    return EditResult(updated, objects, Applied(detail))
