"""Deciders for the equational theories, and evaluation in models."""
from __future__ import annotations

import enum
from typing import Mapping

from .canon import _term_code, ac_plus_code, id_code
from .errors import UnboundVariable
from .models import BimonoidModel
from .poly import IdPolynomial, Polynomial
from .rewriting import normal_form, normal_form_id
from .terms import ONE, ZERO, Plus, Term, Var, postorder, simplify


class Theory(enum.Enum):
    """Equational theories, each listed with its identity names."""

    SB = ("e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8")
    RD = SB + ("e9",)
    IDRD = RD + ("e11",)
    AC = ("e1", "e2", "e4")
    ACPLUS = ("e1", "e2")
    ACID = ("e1", "e2", "e4", "e11")

    @property
    def identities(self) -> tuple:
        return self.value

    @classmethod
    def from_name(cls, name: str) -> "Theory":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown theory {name!r}") from None


def to_simple(t: Term) -> Term:
    return simplify(t)


def to_polynomial(t: Term, **caps) -> Polynomial:
    return Polynomial.of(normal_form(t, **caps).result)


def to_id_polynomial(t: Term, **caps) -> IdPolynomial:
    return IdPolynomial.of(normal_form_id(t, **caps))


def equivalent(s: Term, t: Term, th: Theory = Theory.SB, **caps) -> bool:
    """Decide s = t modulo the theory `th`.

    SB is linear: simplify, then compare AC codes.  RD and IDRD go
    through normal forms and may take exponential time.
    """
    if th is Theory.SB:
        return _term_code(simplify(s)) is _term_code(simplify(t))
    if th is Theory.RD:
        return to_polynomial(s, **caps) == to_polynomial(t, **caps)
    if th is Theory.IDRD:
        return to_id_polynomial(s, **caps) == to_id_polynomial(t, **caps)
    if th is Theory.AC:
        return _term_code(s) is _term_code(t)
    if th is Theory.ACPLUS:
        return ac_plus_code(s) is ac_plus_code(t)
    if th is Theory.ACID:
        return id_code(_term_code(s), drop_units=False) is id_code(_term_code(t), drop_units=False)
    raise ValueError(f"unknown theory {th!r}")


def evaluate(t: Term, model: BimonoidModel, assignment: Mapping):
    """Evaluate t bottom-up, reading variables from `assignment`."""
    values = {}
    for node in postorder(t):
        if node is ZERO:
            values[node] = model.zero
        elif node is ONE:
            values[node] = model.one
        elif isinstance(node, Var):
            if node.name not in assignment:
                raise UnboundVariable(node.name)
            values[node] = assignment[node.name]
        elif node.is_leaf:
            raise UnboundVariable(node.name)
        elif isinstance(node, Plus):
            values[node] = model.add(values[node.left], values[node.right])
        else:
            values[node] = model.mul(values[node.left], values[node.right])
    return values[t]
