"""Enumeration of ground atoms for a domain and object set."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .model import BOOLEAN, Atom, DomainModel, NumFluent, ObjectDecl


@dataclass(frozen=True)
class GroundAtoms:
    booleans: tuple[Atom, ...]
    numerics: tuple[NumFluent, ...]


def ground_atoms(domain: DomainModel, objects: Iterable[ObjectDecl]) -> GroundAtoms:
    """All type-respecting instantiations of every fluent.

    Order is lexicographic by fluent name then argument names, so repeated
    calls over equal inputs enumerate identically.
    """
    objs = sorted(objects, key=lambda o: o.name)
    booleans: list[Atom] = []
    numerics: list[NumFluent] = []
    for decl in domain.fluents:
        candidates = [
            [o.name for o in objs if domain.is_subtype(o.type, param.type)]
            for param in decl.parameters
        ]
        for combo in product(*candidates):
            if decl.kind == BOOLEAN:
                booleans.append(Atom(decl.name, tuple(combo)))
            else:
                numerics.append(NumFluent(decl.name, tuple(combo)))
    booleans.sort(key=lambda a: (a.fluent, a.args))
    numerics.sort(key=lambda a: (a.fluent, a.args))
    return GroundAtoms(tuple(booleans), tuple(numerics))
