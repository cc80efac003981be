"""Parsing the supported PDDL subset into the IR.

Supported: STRIPS, :typing, :negative-preconditions, :disjunctive
preconditions, and :numeric-fluents with increase/decrease/assign effects.
Anything beyond that raises an `unsupported-feature` diagnostic pointing at
the construct rather than silently misreading it.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional, Union

from ..ir import (
    ActionSchema,
    And,
    Assignment,
    Atom,
    Comparison,
    DomainModel,
    Effect,
    Expression,
    FluentDecl,
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
    validate_domain,
)
from .syntax import (
    INVALID_MODEL,
    SList,
    SExpr,
    Symbol,
    SYNTAX_ERROR,
    UNDECLARED,
    UNKNOWN_REQUIREMENT,
    UNSUPPORTED_FEATURE,
    PddlError,
    PddlText,
    as_text,
    expect_list,
    expect_symbol,
    read_forms,
)

SUPPORTED_REQUIREMENTS = {
    ":strips",
    ":typing",
    ":negative-preconditions",
    ":disjunctive-preconditions",
    ":numeric-fluents",
}

# Real PDDL requirements we recognise but deliberately do not implement.
KNOWN_UNSUPPORTED_REQUIREMENTS = {
    ":adl",
    ":equality",
    ":fluents",
    ":action-costs",
    ":conditional-effects",
    ":durative-actions",
    ":existential-preconditions",
    ":universal-preconditions",
    ":quantified-preconditions",
    ":derived-predicates",
    ":preferences",
    ":constraints",
}

_NUMBER_RE = re.compile(r"^-?\d+(\.\d+)?$")

COMPARISONS = ("<", "<=", "=", ">=", ">")
NUMERIC_EFFECTS = ("increase", "decrease", "assign")


def _unsupported(what: str, line: int, col: int, filename: str) -> PddlError:
    return PddlError(UNSUPPORTED_FEATURE, f"{what} is not supported", line, col, filename)


def _head(form: SList, filename: str) -> str:
    if not form.items:
        return ""
    first = form.items[0]
    return first.text if isinstance(first, Symbol) else ""


def _parse_typed_names(items: tuple[SExpr, ...], what: str, filename: str) -> list[tuple[Symbol, str]]:
    """Parse a PDDL typed list: ``a b - t c`` pairs names with their types.

    Trailing names without a ``- type`` group default to ``object``.
    """
    out: list[tuple[Symbol, str]] = []
    pending: list[Symbol] = []
    i = 0
    while i < len(items):
        item = items[i]
        if isinstance(item, SList):
            head = _head(item, filename)
            if head == "either":
                raise _unsupported("'either' types", item.line, item.col, filename)
            raise PddlError(SYNTAX_ERROR, f"unexpected list in {what}", item.line, item.col, filename)
        if item.text == "-":
            if not pending:
                raise PddlError(SYNTAX_ERROR, f"dangling '-' in {what}", item.line, item.col, filename)
            if i + 1 >= len(items):
                raise PddlError(SYNTAX_ERROR, f"missing type after '-' in {what}", item.line, item.col, filename)
            type_form = items[i + 1]
            if isinstance(type_form, SList):
                if _head(type_form, filename) == "either":
                    raise _unsupported("'either' types", type_form.line, type_form.col, filename)
                raise PddlError(SYNTAX_ERROR, f"expected type name in {what}", type_form.line, type_form.col, filename)
            for name in pending:
                out.append((name, type_form.text))
            pending = []
            i += 2
            continue
        pending.append(item)
        i += 1
    for name in pending:
        out.append((name, "object"))
    return out


def _parse_parameters(form: SList, filename: str) -> tuple[Parameter, ...]:
    params = []
    for sym, type_name in _parse_typed_names(form.items, "parameter list", filename):
        if not sym.text.startswith("?"):
            raise PddlError(SYNTAX_ERROR, f"parameter {sym.text!r} must start with '?'", sym.line, sym.col, filename)
        params.append(Parameter(sym.text, type_name))
    return tuple(params)


class _DomainParser:
    def __init__(self, source: PddlText):
        self.source = source
        self.filename = source.filename
        self.types: list[TypeDecl] = []
        self.fluents: list[FluentDecl] = []
        self.actions: list[ActionSchema] = []
        self.name = ""

    def parse(self) -> DomainModel:
        forms = read_forms(self.source)
        if len(forms) != 1:
            raise PddlError(SYNTAX_ERROR, f"expected a single (define ...) form, found {len(forms)}", 1, 1, self.filename)
        top = expect_list(forms[0], "(define ...)", self.filename)
        items = top.items
        if not items or expect_symbol(items[0], "define", self.filename).text != "define":
            raise PddlError(SYNTAX_ERROR, "expected (define (domain ...) ...)", top.line, top.col, self.filename)
        header = expect_list(items[1], "(domain NAME)", self.filename) if len(items) > 1 else None
        if header is None or _head(header, self.filename) != "domain" or len(header.items) != 2:
            raise PddlError(SYNTAX_ERROR, "expected (domain NAME) header", top.line, top.col, self.filename)
        self.name = expect_symbol(header.items[1], "domain name", self.filename).text

        for section in items[2:]:
            self._section(expect_list(section, "domain section", self.filename))

        domain = DomainModel(self.name, tuple(self.types), tuple(self.fluents), tuple(self.actions))
        leftover = validate_domain(domain)
        if leftover:
            raise PddlError(INVALID_MODEL, "; ".join(str(v) for v in leftover), top.line, top.col, self.filename)
        return domain

    def _section(self, form: SList) -> None:
        head = _head(form, self.filename)
        if head == ":requirements":
            self._requirements(form)
        elif head == ":types":
            self._types(form)
        elif head == ":predicates":
            self._predicates(form)
        elif head == ":functions":
            self._functions(form)
        elif head == ":action":
            self._action(form)
        elif head in (":durative-action", ":constants", ":derived", ":constraints"):
            raise _unsupported(head, form.line, form.col, self.filename)
        else:
            raise PddlError(SYNTAX_ERROR, f"unknown domain section {head!r}", form.line, form.col, self.filename)

    def _requirements(self, form: SList) -> None:
        for item in form.items[1:]:
            sym = expect_symbol(item, "requirement flag", self.filename)
            if sym.text in SUPPORTED_REQUIREMENTS:
                continue
            if sym.text in KNOWN_UNSUPPORTED_REQUIREMENTS:
                raise _unsupported(f"requirement {sym.text}", sym.line, sym.col, self.filename)
            raise PddlError(UNKNOWN_REQUIREMENT, f"unknown requirement {sym.text}", sym.line, sym.col, self.filename)

    def _types(self, form: SList) -> None:
        for sym, parent in _parse_typed_names(form.items[1:], ":types", self.filename):
            if sym.text == "object":
                continue  # the universal root is built in
            self.types.append(TypeDecl(sym.text, parent))

    def _predicates(self, form: SList) -> None:
        for entry in form.items[1:]:
            decl = expect_list(entry, "predicate declaration", self.filename)
            if not decl.items:
                raise PddlError(SYNTAX_ERROR, "empty predicate declaration", decl.line, decl.col, self.filename)
            name = expect_symbol(decl.items[0], "predicate name", self.filename).text
            params = _parse_parameters(SList(decl.items[1:], decl.line, decl.col), self.filename)
            self.fluents.append(FluentDecl(name, params, kind="boolean"))

    def _functions(self, form: SList) -> None:
        i = 1
        items = form.items
        while i < len(items):
            entry = items[i]
            if isinstance(entry, Symbol) and entry.text == "-":
                # "(f ?x) - number" annotations are redundant in this subset.
                if i + 1 < len(items) and isinstance(items[i + 1], Symbol) and items[i + 1].text == "number":
                    i += 2
                    continue
                raise _unsupported("non-number function types", entry.line, entry.col, self.filename)
            decl = expect_list(entry, "function declaration", self.filename)
            if not decl.items:
                raise PddlError(SYNTAX_ERROR, "empty function declaration", decl.line, decl.col, self.filename)
            name = expect_symbol(decl.items[0], "function name", self.filename).text
            params = _parse_parameters(SList(decl.items[1:], decl.line, decl.col), self.filename)
            self.fluents.append(FluentDecl(name, params, kind="numeric"))
            i += 1

    def _action(self, form: SList) -> None:
        items = form.items
        if len(items) < 2:
            raise PddlError(SYNTAX_ERROR, "action without a name", form.line, form.col, self.filename)
        name = expect_symbol(items[1], "action name", self.filename).text
        params: tuple[Parameter, ...] = ()
        precondition: Expression = And(())
        effects: tuple[Effect, ...] = ()
        i = 2
        while i < len(items):
            key = expect_symbol(items[i], "action keyword", self.filename)
            if i + 1 >= len(items):
                raise PddlError(SYNTAX_ERROR, f"missing value after {key.text}", key.line, key.col, self.filename)
            value = items[i + 1]
            if key.text == ":parameters":
                params = _parse_parameters(expect_list(value, "parameter list", self.filename), self.filename)
            elif key.text == ":precondition":
                precondition = _parse_condition(value, self.filename)
            elif key.text == ":effect":
                effects = _parse_effects(value, self.filename)
            else:
                raise _unsupported(f"action keyword {key.text}", key.line, key.col, self.filename)
            i += 2
        self.actions.append(ActionSchema(name, params, precondition, effects))


def _atom_from(form: SList, filename: str) -> Atom:
    if not form.items:
        raise PddlError(SYNTAX_ERROR, "empty atom", form.line, form.col, filename)
    name = expect_symbol(form.items[0], "fluent name", filename).text
    args = tuple(expect_symbol(a, "argument", filename).text for a in form.items[1:])
    return Atom(name, args)


def _parse_term(expr: SExpr, filename: str, atom_check=None) -> NumTerm:
    if isinstance(expr, Symbol):
        if _NUMBER_RE.match(expr.text):
            return NumConst(Fraction(expr.text))
        raise PddlError(SYNTAX_ERROR, f"expected a numeric term, got {expr.text!r}", expr.line, expr.col, filename)
    if not expr.items:
        raise PddlError(SYNTAX_ERROR, "empty numeric term", expr.line, expr.col, filename)
    head = _head(expr, filename)
    if head == "+" or head == "-":
        if len(expr.items) != 3:
            raise PddlError(SYNTAX_ERROR, f"'{head}' takes exactly two operands", expr.line, expr.col, filename)
        left = _parse_term(expr.items[1], filename, atom_check)
        right = _parse_term(expr.items[2], filename, atom_check)
        return NumAdd(left, right) if head == "+" else NumSub(left, right)
    if head in ("*", "/"):
        raise _unsupported(f"'{head}' in numeric terms", expr.line, expr.col, filename)
    atom = _atom_from(expr, filename)
    if atom_check is not None:
        atom_check(atom, expr, "numeric")
    return NumFluent(atom.fluent, atom.args)


def _parse_condition(expr: SExpr, filename: str, atom_check=None) -> Expression:
    form = expect_list(expr, "condition", filename)
    if not form.items:
        return And(())
    head = _head(form, filename)
    if head == "and":
        return And(tuple(_parse_condition(c, filename, atom_check) for c in form.items[1:]))
    if head == "or":
        return Or(tuple(_parse_condition(c, filename, atom_check) for c in form.items[1:]))
    if head == "not":
        if len(form.items) != 2:
            raise PddlError(SYNTAX_ERROR, "'not' takes exactly one condition", form.line, form.col, filename)
        return Not(_parse_condition(form.items[1], filename, atom_check))
    if head in COMPARISONS:
        if len(form.items) != 3:
            raise PddlError(SYNTAX_ERROR, f"'{head}' takes exactly two terms", form.line, form.col, filename)
        return Comparison(head, _parse_term(form.items[1], filename, atom_check), _parse_term(form.items[2], filename, atom_check))
    if head in ("forall", "exists", "imply", "when"):
        raise _unsupported(f"'{head}' conditions", form.line, form.col, filename)
    atom = _atom_from(form, filename)
    if atom_check is not None:
        atom_check(atom, form, "boolean")
    return atom


def _parse_effects(expr: SExpr, filename: str) -> tuple[Effect, ...]:
    form = expect_list(expr, "effect", filename)
    if not form.items:
        return ()
    if _head(form, filename) == "and":
        out: list[Effect] = []
        for child in form.items[1:]:
            out.extend(_parse_effects(child, filename))
        return tuple(out)
    return (_parse_single_effect(form, filename),)


def _parse_single_effect(form: SList, filename: str) -> Effect:
    head = _head(form, filename)
    if head == "not":
        if len(form.items) != 2:
            raise PddlError(SYNTAX_ERROR, "'not' effect takes exactly one atom", form.line, form.col, filename)
        inner = expect_list(form.items[1], "atom", filename)
        return SetEffect(_atom_from(inner, filename), value=False)
    if head in NUMERIC_EFFECTS:
        if len(form.items) != 3:
            raise PddlError(SYNTAX_ERROR, f"'{head}' takes a target and an amount", form.line, form.col, filename)
        target_atom = _atom_from(expect_list(form.items[1], "numeric fluent", filename), filename)
        amount = _parse_term(form.items[2], filename)
        return NumericEffect(head, NumFluent(target_atom.fluent, target_atom.args), amount)
    if head in ("when", "forall", "assign-once", "scale-up", "scale-down"):
        raise _unsupported(f"'{head}' effects", form.line, form.col, filename)
    return SetEffect(_atom_from(form, filename), value=True)


def parse_domain(source: Union[str, PddlText], filename: Optional[str] = None) -> DomainModel:
    return _DomainParser(as_text(source, filename)).parse()


def parse_problem(source: Union[str, PddlText], domain: DomainModel, filename: Optional[str] = None) -> ProblemInstance:
    text = as_text(source, filename)
    fname = text.filename
    forms = read_forms(text)
    if len(forms) != 1:
        raise PddlError(SYNTAX_ERROR, f"expected a single (define ...) form, found {len(forms)}", 1, 1, fname)
    top = expect_list(forms[0], "(define ...)", fname)
    items = top.items
    if not items or expect_symbol(items[0], "define", fname).text != "define":
        raise PddlError(SYNTAX_ERROR, "expected (define (problem ...) ...)", top.line, top.col, fname)
    header = expect_list(items[1], "(problem NAME)", fname) if len(items) > 1 else None
    if header is None or _head(header, fname) != "problem" or len(header.items) != 2:
        raise PddlError(SYNTAX_ERROR, "expected (problem NAME) header", top.line, top.col, fname)
    name = expect_symbol(header.items[1], "problem name", fname).text

    objects: list[ObjectDecl] = []
    true_atoms: list[Atom] = []
    numerics: list[tuple[NumFluent, Fraction]] = []
    goal: Expression = And(())
    fluents = domain.fluent_map()

    def check_declared(atom: Atom, where: SList, expected_kind: str) -> None:
        decl = fluents.get(atom.fluent)
        if decl is None:
            raise PddlError(UNDECLARED, f"fluent {atom.fluent} is not declared in domain {domain.name}", where.line, where.col, fname)
        if decl.kind != expected_kind:
            raise PddlError(SYNTAX_ERROR, f"fluent {atom.fluent} is {decl.kind}, used as {expected_kind}", where.line, where.col, fname)
        if len(atom.args) != decl.arity:
            raise PddlError(SYNTAX_ERROR, f"fluent {atom.fluent} takes {decl.arity} arguments, got {len(atom.args)}", where.line, where.col, fname)
        known = {o.name for o in objects}
        for arg in atom.args:
            if arg not in known:
                raise PddlError(UNDECLARED, f"object {arg} is not declared", where.line, where.col, fname)

    for section in items[2:]:
        form = expect_list(section, "problem section", fname)
        head = _head(form, fname)
        if head == ":domain":
            declared = expect_symbol(form.items[1], "domain name", fname).text if len(form.items) > 1 else ""
            if declared != domain.name:
                raise PddlError(UNDECLARED, f"problem references domain {declared!r}, loaded domain is {domain.name!r}", form.line, form.col, fname)
        elif head == ":objects":
            for sym, type_name in _parse_typed_names(form.items[1:], ":objects", fname):
                if any(o.name == sym.text for o in objects):
                    raise PddlError(SYNTAX_ERROR, f"object {sym.text} declared twice", sym.line, sym.col, fname)
                objects.append(ObjectDecl(sym.text, type_name))
        elif head == ":init":
            for entry in form.items[1:]:
                sub = expect_list(entry, "init element", fname)
                sub_head = _head(sub, fname)
                if sub_head == "=":
                    if len(sub.items) != 3:
                        raise PddlError(SYNTAX_ERROR, "'=' init takes a fluent and a value", sub.line, sub.col, fname)
                    target = _atom_from(expect_list(sub.items[1], "numeric fluent", fname), fname)
                    check_declared(target, sub, "numeric")
                    value_sym = expect_symbol(sub.items[2], "numeric value", fname)
                    if not _NUMBER_RE.match(value_sym.text):
                        raise PddlError(SYNTAX_ERROR, f"expected a number, got {value_sym.text!r}", value_sym.line, value_sym.col, fname)
                    numerics.append((NumFluent(target.fluent, target.args), Fraction(value_sym.text)))
                elif sub_head == "not":
                    raise _unsupported("negated init literals (closed world)", sub.line, sub.col, fname)
                else:
                    atom = _atom_from(sub, fname)
                    check_declared(atom, sub, "boolean")
                    true_atoms.append(atom)
        elif head == ":goal":
            if len(form.items) != 2:
                raise PddlError(SYNTAX_ERROR, "':goal' takes exactly one condition", form.line, form.col, fname)
            goal = _parse_condition(form.items[1], fname, atom_check=check_declared)
        elif head in (":metric", ":constraints", ":length"):
            raise _unsupported(head, form.line, form.col, fname)
        else:
            raise PddlError(SYNTAX_ERROR, f"unknown problem section {head!r}", form.line, form.col, fname)

    return ProblemInstance(
        domain=domain,
        objects=tuple(objects),
        init=Assignment.create(true_atoms, numerics),
        goal=goal,
        name=name,
    )
