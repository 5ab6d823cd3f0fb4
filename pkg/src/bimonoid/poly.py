"""Polynomials: AC-classes of polynomial terms, and their operations.

A polynomial term is a simple term in which the left operand of every
product is a monomial (variables joined by *).  Classes are stored as
their canonical term, so two `Polynomial` values are equal exactly when
their classes are.
"""
from __future__ import annotations

from dataclasses import dataclass

from .canon import (
    SUM, _term_code, code, id_code, make_sum, term_of,
)
from .errors import NotAPolynomial, NotAProduct, NotSimple, ZeroOperand
from .terms import (
    LEFT_MONOMIAL, MONOMIAL, ONE, ZERO, Plus, Term, Times, Var, flatten, is_simple,
    parse, product_of, render, sum_of, transform,
)


def is_monomial_term(t: Term) -> bool:
    return bool(t.flags & MONOMIAL)


def is_polynomial_term(t: Term) -> bool:
    return is_simple(t) and bool(t.flags & LEFT_MONOMIAL)


def is_id_reduced(t: Term) -> bool:
    if not is_simple(t):
        raise NotSimple(f"not a simple term: {t}")
    c = _term_code(t)
    return id_code(c, drop_units=False) is c


# ---------------------------------------------------------------- class types

@dataclass(frozen=True)
class Polynomial:
    """An element of the right-distributive polynomial bimonoid."""

    rep: Term

    @classmethod
    def of(cls, t: Term) -> "Polynomial":
        if not is_polynomial_term(t):
            raise NotAPolynomial(f"not a polynomial term: {t}")
        return cls(term_of(_term_code(t)))

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return cls.of(parse(text))

    @property
    def is_zero(self) -> bool:
        return self.rep is ZERO

    @property
    def is_one(self) -> bool:
        return self.rep is ONE

    @property
    def is_monomial(self) -> bool:
        return is_monomial_term(self.rep)

    @property
    def is_sum(self) -> bool:
        return isinstance(self.rep, Plus)

    @property
    def is_product(self) -> bool:
        return isinstance(self.rep, Times)

    @property
    def size(self) -> int:
        return self.rep.size

    @property
    def code(self):
        return _term_code(self.rep)

    def summands(self) -> list:
        return [type(self)(s) for s in flatten(self.rep, Plus)]

    def __str__(self):
        return render(self.rep)


@dataclass(frozen=True)
class IdPolynomial(Polynomial):
    """An element of the idempotent right-distributive polynomial bimonoid."""

    @classmethod
    def of(cls, t: Term) -> "IdPolynomial":
        if not is_polynomial_term(t):
            raise NotAPolynomial(f"not a polynomial term: {t}")
        if not is_id_reduced(t):
            raise NotAPolynomial(f"repeated summands in {t}")
        return cls(term_of(_term_code(t)))


def as_id(p: Polynomial) -> IdPolynomial:
    return p if isinstance(p, IdPolynomial) else IdPolynomial.of(p.rep)


def _canonical(t: Term) -> Term:
    return term_of(_term_code(t))


# ---------------------------------------------------------------- addition

def add(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero:
        return Polynomial(q.rep)
    if q.is_zero:
        return Polynomial(p.rep)
    return Polynomial(_canonical(Plus(p.rep, q.rep)))


def n_times(p: Polynomial, n: int) -> Polynomial:
    if n < 1:
        raise ValueError("n must be at least 1")
    return Polynomial(_canonical(sum_of([p.rep] * n))) if not p.is_zero else Polynomial(ZERO)


def add_id(p: IdPolynomial, q: IdPolynomial) -> IdPolynomial:
    """Summands of p, then those summands of q that p lacks."""
    if p.is_zero:
        return IdPolynomial(q.rep)
    if q.is_zero:
        return IdPolynomial(p.rep)
    seen = set()
    kept = []
    for s in flatten(p.rep, Plus) + flatten(q.rep, Plus):
        c = _term_code(s)
        if c not in seen:
            seen.add(c)
            kept.append(s)
    return IdPolynomial(_canonical(sum_of(kept)))


# ---------------------------------------------------------------- multiplication

_SUMMAND, _INNER, _RIGHTMOST = "summand", "inner", "rightmost"


def mul_direct(s: Term, t: Term) -> Term:
    """The one-pass product of two nonzero polynomial terms.

    Every 1 leaf of s becomes t, and every variable that ends a monomial
    standing as a summand (or as the whole of s) becomes x*t.
    """
    for operand in (s, t):
        if operand is ZERO:
            raise ZeroOperand("mul_direct is undefined for 0; use mul_rd")
        if not is_polynomial_term(operand):
            raise NotAPolynomial(f"not a polynomial term: {operand}")
    if s is ONE:
        return t
    if t is ONE:
        return s

    def visit(node, ctx):
        if node is ONE:
            return t
        if isinstance(node, Var):
            return Times(node, t) if ctx in (_SUMMAND, _RIGHTMOST) else node
        if isinstance(node, Plus):
            return [(node.left, _SUMMAND), (node.right, _SUMMAND)], Plus
        # a product: its left operand is a monomial and is never touched
        if node.flags & MONOMIAL:
            if ctx == _INNER:
                return node
            return [(node.right, _RIGHTMOST)], lambda r: Times(node.left, r)
        return [(node.right, _INNER)], lambda r: Times(node.left, r)

    return transform(s, visit, _SUMMAND)


def mul_rd(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero or q.is_zero:
        return Polynomial(ZERO)
    return Polynomial(_canonical(mul_direct(p.rep, q.rep)))


def mul_id(p: IdPolynomial, q: IdPolynomial) -> IdPolynomial:
    if p.is_zero or q.is_zero:
        return IdPolynomial(ZERO)
    return IdPolynomial(_canonical(mul_direct(p.rep, q.rep)))


def decompose_product(p: Polynomial):
    """Split a product class as (monomial term, sum tail) or (monomial, None)."""
    if not isinstance(p.rep, Times) and not isinstance(p.rep, Var):
        raise NotAProduct(f"not a product polynomial: {p}")
    factors = flatten(p.rep, Times)
    if isinstance(factors[-1], Var):
        return p.rep, None
    return product_of(factors[:-1]), type(p)(factors[-1])


def mul_rd_inductive(p: Polynomial, q: Polynomial) -> Polynomial:
    """The case-by-case definition of the product, kept independent of
    mul_direct so the two can be checked against each other."""
    if p.is_zero or q.is_zero:
        return Polynomial(ZERO)
    if p.is_one:
        return Polynomial(q.rep)
    if q.is_one:
        return Polynomial(p.rep)
    # explicit work stack: ("mul", poly) computes poly*q, leaving a
    # Polynomial on the value stack; other entries combine results.
    todo = [("mul", p)]
    values = []
    while todo:
        tag, arg = todo.pop()
        if tag == "mul":
            if arg.is_one:
                values.append(q)
            elif arg.is_monomial:
                values.append(Polynomial.of(Times(arg.rep, q.rep)))
            elif arg.is_sum:
                parts = arg.summands()
                todo.append(("sum", len(parts)))
                todo.extend(("mul", part) for part in reversed(parts))
            else:
                m, tail = decompose_product(arg)
                todo.append(("prefix", m))
                todo.append(("mul", tail))
        elif tag == "sum":
            parts = values[-arg:]
            del values[-arg:]
            acc = parts[0]
            for part in parts[1:]:
                acc = add(acc, part)
            values.append(acc)
        else:
            values.append(Polynomial.of(Times(arg, values.pop().rep)))
    return values[0]


# ---------------------------------------------------------------- constants

ZERO_POLY = Polynomial(ZERO)
ONE_POLY = Polynomial(ONE)
