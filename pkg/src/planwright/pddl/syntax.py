"""Tokenizing and s-expression reading with source spans.

Identifiers are case-insensitive and normalized to lower case. Every token
records its position so downstream diagnostics can point at the offending
construct; parsing never crashes on arbitrary bytes, it raises `PddlError`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

LEXICAL_ERROR = "lexical-error"
UNBALANCED = "unbalanced-parentheses"
SYNTAX_ERROR = "syntax-error"
UNKNOWN_REQUIREMENT = "unknown-requirement"
UNSUPPORTED_FEATURE = "unsupported-feature"
UNDECLARED = "undeclared-name"
INVALID_MODEL = "invalid-model"
MALFORMED_STEP = "malformed-step"


class PddlError(ValueError):
    """A diagnostic with a source span, rendered as file:line:col: code: message."""

    def __init__(self, code: str, message: str, line: int = 1, col: int = 1, filename: str = "<pddl>"):
        self.code = code
        self.message = message
        self.line = line
        self.col = col
        self.filename = filename
        super().__init__(self.render())

    def render(self) -> str:
        return f"{self.filename}:{self.line}:{self.col}: {self.code}: {self.message}"


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    col: int
    start: int  # byte offset into the source
    end: int


@dataclass(frozen=True)
class Symbol:
    text: str
    line: int
    col: int

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class SList:
    items: tuple["SExpr", ...]
    line: int
    col: int


SExpr = Union[Symbol, SList]

_DELIMS = set("()")
_WHITESPACE = set(" \t\r\n\f\v")


def tokenize(text: str, filename: str = "<pddl>") -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in _WHITESPACE:
            i += 1
            col += 1
            continue
        if ch == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _DELIMS:
            tokens.append(Token(ch, line, col, i, i + 1))
            i += 1
            col += 1
            continue
        start = i
        start_line, start_col = line, col
        while i < n and text[i] not in _WHITESPACE and text[i] not in _DELIMS and text[i] != ";" and text[i] != "\n":
            if not text[i].isprintable():
                raise PddlError(LEXICAL_ERROR, f"unprintable byte {text[i]!r}", line, col, filename)
            i += 1
            col += 1
        tokens.append(Token(text[start:i].lower(), start_line, start_col, start, i))
    return tokens


@dataclass
class PddlText:
    """Raw source paired with its token index."""

    text: str
    filename: str = "<pddl>"
    tokens: list[Token] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.tokens:
            self.tokens = tokenize(self.text, self.filename)


def read_forms(source: PddlText) -> list[SExpr]:
    """Read every top-level s-expression, enforcing balanced parentheses."""
    forms: list[SExpr] = []
    stack: list[tuple[list[SExpr], int, int]] = []
    current: list[SExpr] = []
    for tok in source.tokens:
        if tok.text == "(":
            stack.append((current, tok.line, tok.col))
            current = []
        elif tok.text == ")":
            if not stack:
                raise PddlError(UNBALANCED, "unmatched ')'", tok.line, tok.col, source.filename)
            parent, line, col = stack.pop()
            parent.append(SList(tuple(current), line, col))
            current = parent
        else:
            current.append(Symbol(tok.text, tok.line, tok.col))
    if stack:
        _, line, col = stack[-1]
        raise PddlError(UNBALANCED, "unclosed '('", line, col, source.filename)
    forms.extend(current)
    return forms


def as_text(source: Union[str, PddlText], filename: Optional[str] = None) -> PddlText:
    if isinstance(source, PddlText):
        return source
    return PddlText(source, filename or "<pddl>")


def expect_list(expr: SExpr, what: str, filename: str) -> SList:
    if not isinstance(expr, SList):
        raise PddlError(SYNTAX_ERROR, f"expected {what}, got symbol {expr.text!r}", expr.line, expr.col, filename)
    return expr


def expect_symbol(expr: SExpr, what: str, filename: str) -> Symbol:
    if not isinstance(expr, Symbol):
        raise PddlError(SYNTAX_ERROR, f"expected {what}, got a list", expr.line, expr.col, filename)
    return expr
