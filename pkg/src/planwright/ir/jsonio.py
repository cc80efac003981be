"""Canonical JSON encoding of the planning IR.

This is the tree-structured text format used by fixtures, agent messages,
and CLI artifacts. Encoding is deterministic: equal values produce
byte-identical text. Numeric values are rendered as exact rational strings
("30", "3/2") to avoid any float round-tripping.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .model import (
    ActionSchema,
    AddObjects,
    AddOrModifyFluent,
    And,
    Assignment,
    Atom,
    Comparison,
    DomainEdit,
    DomainModel,
    Effect,
    Expression,
    FluentDecl,
    ModifyAction,
    Not,
    NumAdd,
    NumConst,
    NumFluent,
    NumSub,
    NumTerm,
    NumericEffect,
    ObjectDecl,
    Or,
    Parameter,
    ProblemInstance,
    SetEffect,
    TypeDecl,
)


class IRDecodeError(ValueError):
    """Raised when a JSON document does not describe a valid IR value."""


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------- encoding


def expression_to_json(expr: Expression) -> dict:
    if isinstance(expr, Atom):
        return {"op": "atom", "fluent": expr.fluent, "args": list(expr.args)}
    if isinstance(expr, And):
        return {"op": "and", "children": [expression_to_json(c) for c in expr.children]}
    if isinstance(expr, Or):
        return {"op": "or", "children": [expression_to_json(c) for c in expr.children]}
    if isinstance(expr, Not):
        return {"op": "not", "child": expression_to_json(expr.child)}
    if isinstance(expr, Comparison):
        return {"op": expr.op, "left": term_to_json(expr.left), "right": term_to_json(expr.right)}
    raise IRDecodeError(f"cannot encode expression {expr!r}")


def term_to_json(term: NumTerm) -> dict:
    if isinstance(term, NumConst):
        return {"op": "const", "value": str(term.value)}
    if isinstance(term, NumFluent):
        return {"op": "fluent", "fluent": term.fluent, "args": list(term.args)}
    if isinstance(term, NumAdd):
        return {"op": "+", "left": term_to_json(term.left), "right": term_to_json(term.right)}
    if isinstance(term, NumSub):
        return {"op": "-", "left": term_to_json(term.left), "right": term_to_json(term.right)}
    raise IRDecodeError(f"cannot encode term {term!r}")


def effect_to_json(effect: Effect) -> dict:
    if isinstance(effect, SetEffect):
        return {"op": "set", "atom": expression_to_json(effect.atom), "value": effect.value}
    if isinstance(effect, NumericEffect):
        return {"op": effect.op, "target": term_to_json(effect.target), "amount": term_to_json(effect.amount)}
    raise IRDecodeError(f"cannot encode effect {effect!r}")


def _parameter_to_json(param: Parameter) -> dict:
    return {"name": param.name, "type": param.type}


def fluent_to_json(decl: FluentDecl) -> dict:
    out = {
        "name": decl.name,
        "parameters": [_parameter_to_json(p) for p in decl.parameters],
        "kind": decl.kind,
    }
    if decl.description:
        out["description"] = decl.description
    return out


def action_to_json(action: ActionSchema) -> dict:
    return {
        "name": action.name,
        "parameters": [_parameter_to_json(p) for p in action.parameters],
        "precondition": expression_to_json(action.precondition),
        "effects": [effect_to_json(e) for e in action.effects],
    }


def domain_to_json(domain: DomainModel) -> dict:
    return {
        "name": domain.name,
        "requirements": list(domain.requirements),
        "types": [{"name": t.name, "parent": t.parent} for t in domain.types],
        "fluents": [fluent_to_json(f) for f in domain.fluents],
        "actions": [action_to_json(a) for a in domain.actions],
    }


def assignment_to_json(init: Assignment) -> dict:
    return {
        "booleans": [expression_to_json(a) for a in init.sorted_atoms()],
        "numerics": [
            {"fluent": target.fluent, "args": list(target.args), "value": str(value)}
            for target, value in init.numeric
        ],
    }


def problem_to_json(problem: ProblemInstance) -> dict:
    return {
        "name": problem.name,
        "domain": domain_to_json(problem.domain),
        "objects": [{"name": o.name, "type": o.type} for o in problem.objects],
        "init": assignment_to_json(problem.init),
        "goal": expression_to_json(problem.goal),
    }


def edit_to_json(edit: DomainEdit) -> dict:
    if isinstance(edit, AddOrModifyFluent):
        return {"edit": "add_or_modify_fluent", "fluent": fluent_to_json(edit.fluent), "provenance": edit.provenance}
    if isinstance(edit, ModifyAction):
        out: dict = {"edit": "modify_action", "action": edit.action, "provenance": edit.provenance}
        if edit.precondition is not None:
            out["precondition"] = expression_to_json(edit.precondition)
        if edit.effects is not None:
            out["effects"] = [effect_to_json(e) for e in edit.effects]
        return out
    if isinstance(edit, AddObjects):
        return {
            "edit": "add_objects",
            "objects": [{"name": o.name, "type": o.type} for o in edit.objects],
            "provenance": edit.provenance,
        }
    raise IRDecodeError(f"cannot encode edit {edit!r}")


# ---------------------------------------------------------------- decoding


def _require(data: Any, key: str, kind: type) -> Any:
    if not isinstance(data, dict):
        raise IRDecodeError(f"expected object, got {type(data).__name__}")
    if key not in data:
        raise IRDecodeError(f"missing field {key!r}")
    value = data[key]
    if kind is float:
        if not isinstance(value, (int, float)):
            raise IRDecodeError(f"field {key!r} must be a number")
        return value
    if not isinstance(value, kind):
        raise IRDecodeError(f"field {key!r} must be {kind.__name__}")
    return value


def expression_from_json(data: Any) -> Expression:
    op = _require(data, "op", str)
    if op == "atom":
        return Atom(_require(data, "fluent", str), tuple(_str_list(data.get("args", []))))
    if op in ("and", "or"):
        children = tuple(expression_from_json(c) for c in _require(data, "children", list))
        return And(children) if op == "and" else Or(children)
    if op == "not":
        return Not(expression_from_json(_require(data, "child", dict)))
    if op in ("<", "<=", "=", ">=", ">"):
        return Comparison(op, term_from_json(_require(data, "left", dict)), term_from_json(_require(data, "right", dict)))
    raise IRDecodeError(f"unknown expression op {op!r}")


def term_from_json(data: Any) -> NumTerm:
    op = _require(data, "op", str)
    if op == "const":
        raw = _require(data, "value", (int, str))  # type: ignore[arg-type]
        try:
            return NumConst(Fraction(str(raw)))
        except (ValueError, ZeroDivisionError) as exc:
            raise IRDecodeError(f"bad numeric constant {raw!r}") from exc
    if op == "fluent":
        return NumFluent(_require(data, "fluent", str), tuple(_str_list(data.get("args", []))))
    if op in ("+", "-"):
        left = term_from_json(_require(data, "left", dict))
        right = term_from_json(_require(data, "right", dict))
        return NumAdd(left, right) if op == "+" else NumSub(left, right)
    raise IRDecodeError(f"unknown term op {op!r}")


def effect_from_json(data: Any) -> Effect:
    op = _require(data, "op", str)
    if op == "set":
        atom = expression_from_json(_require(data, "atom", dict))
        if not isinstance(atom, Atom):
            raise IRDecodeError("set effect must target an atom")
        value = data.get("value", True)
        if not isinstance(value, bool):
            raise IRDecodeError("set effect value must be a boolean")
        return SetEffect(atom, value)
    if op in ("increase", "decrease", "assign"):
        target = term_from_json(_require(data, "target", dict))
        if not isinstance(target, NumFluent):
            raise IRDecodeError(f"{op} effect must target a numeric fluent")
        return NumericEffect(op, target, term_from_json(_require(data, "amount", dict)))
    raise IRDecodeError(f"unknown effect op {op!r}")


def _str_list(data: Any) -> list[str]:
    if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
        raise IRDecodeError("expected a list of strings")
    return data


def _parameter_from_json(data: Any) -> Parameter:
    name = _require(data, "name", str)
    return Parameter(name, data.get("type", "object"))


def fluent_from_json(data: Any) -> FluentDecl:
    return FluentDecl(
        name=_require(data, "name", str),
        parameters=tuple(_parameter_from_json(p) for p in data.get("parameters", [])),
        kind=data.get("kind", "boolean"),
        description=data.get("description", ""),
    )


def action_from_json(data: Any) -> ActionSchema:
    return ActionSchema(
        name=_require(data, "name", str),
        parameters=tuple(_parameter_from_json(p) for p in data.get("parameters", [])),
        precondition=expression_from_json(_require(data, "precondition", dict)),
        effects=tuple(effect_from_json(e) for e in data.get("effects", [])),
    )


def domain_from_json(data: Any) -> DomainModel:
    # "requirements" is accepted but ignored: flags are derived from content.
    return DomainModel(
        name=_require(data, "name", str),
        types=tuple(TypeDecl(_require(t, "name", str), t.get("parent", "object")) for t in data.get("types", [])),
        fluents=tuple(fluent_from_json(f) for f in data.get("fluents", [])),
        actions=tuple(action_from_json(a) for a in data.get("actions", [])),
    )


def assignment_from_json(data: Any) -> Assignment:
    atoms = []
    for entry in data.get("booleans", []):
        expr = expression_from_json(entry)
        if not isinstance(expr, Atom):
            raise IRDecodeError("init booleans must be atoms")
        atoms.append(expr)
    numerics = []
    for entry in data.get("numerics", []):
        target = NumFluent(_require(entry, "fluent", str), tuple(_str_list(entry.get("args", []))))
        raw = _require(entry, "value", (int, str))  # type: ignore[arg-type]
        try:
            numerics.append((target, Fraction(str(raw))))
        except (ValueError, ZeroDivisionError) as exc:
            raise IRDecodeError(f"bad numeric value {raw!r}") from exc
    return Assignment.create(atoms, numerics)


def problem_from_json(data: Any) -> ProblemInstance:
    return ProblemInstance(
        domain=domain_from_json(_require(data, "domain", dict)),
        objects=tuple(ObjectDecl(_require(o, "name", str), o.get("type", "object")) for o in data.get("objects", [])),
        init=assignment_from_json(data.get("init", {})),
        goal=expression_from_json(_require(data, "goal", dict)),
        name=data.get("name", "problem"),
    )


def edit_from_json(data: Any) -> DomainEdit:
    kind = _require(data, "edit", str)
    provenance = _require(data, "provenance", str)
    if kind == "add_or_modify_fluent":
        return AddOrModifyFluent(fluent_from_json(_require(data, "fluent", dict)), provenance)
    if kind == "modify_action":
        precondition = expression_from_json(data["precondition"]) if "precondition" in data else None
        effects = tuple(effect_from_json(e) for e in data["effects"]) if "effects" in data else None
        return ModifyAction(_require(data, "action", str), precondition, effects, provenance)
    if kind == "add_objects":
        objects = tuple(ObjectDecl(_require(o, "name", str), o.get("type", "object")) for o in _require(data, "objects", list))
        return AddObjects(objects, provenance)
    raise IRDecodeError(f"unknown edit kind {kind!r}")
