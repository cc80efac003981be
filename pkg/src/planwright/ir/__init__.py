"""Neutral in-memory representation of planning domains, problems, and edits."""
from .model import (
    BOOLEAN,
    NUMERIC,
    OBJECT_TYPE,
    TRUE,
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
    conjunction,
    expression_atoms,
    expression_num_fluents,
    is_variable,
    walk_expression,
    walk_terms,
)
from .validate import ValidationReport, Violation, validate, validate_domain
from .edits import Applied, EditOutcome, EditResult, MalformedEditError, Rejected, apply_edit
from .ground import GroundAtoms, ground_atoms
from . import jsonio

__all__ = [
    "BOOLEAN",
    "NUMERIC",
    "OBJECT_TYPE",
    "TRUE",
    "ActionSchema",
    "AddObjects",
    "AddOrModifyFluent",
    "And",
    "Applied",
    "Assignment",
    "Atom",
    "Comparison",
    "DomainEdit",
    "DomainModel",
    "Effect",
    "EditOutcome",
    "EditResult",
    "Expression",
    "FluentDecl",
    "GroundAtoms",
    "MalformedEditError",
    "ModifyAction",
    "Not",
    "NumAdd",
    "NumConst",
    "NumFluent",
    "NumSub",
    "NumTerm",
    "NumericEffect",
    "ObjectDecl",
    "Or",
    "Parameter",
    "ProblemInstance",
    "Rejected",
    "SetEffect",
    "TypeDecl",
    "ValidationReport",
    "Violation",
    "apply_edit",
    "conjunction",
    "expression_atoms",
    "expression_num_fluents",
    "ground_atoms",
    "is_variable",
    "jsonio",
    "validate",
    "validate_domain",
    "walk_expression",
    "walk_terms",
]
