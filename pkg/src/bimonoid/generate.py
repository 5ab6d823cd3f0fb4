"""Random terms and polynomials, for tests and benchmarks."""
from __future__ import annotations

import random

from .canon import id_reduce
from .poly import IdPolynomial, Polynomial
from .terms import ONE, ZERO, Plus, Term, Times, Var, flatten, transform

DEFAULT_VARIABLES = ("x", "y", "z")


def _combine_randomly(rng: random.Random, items: list, join) -> Term:
    """Join items left to right in order, under a random bracketing."""
    items = list(items)
    while len(items) > 1:
        i = rng.randrange(len(items) - 1)
        items[i:i + 2] = [join(items[i], items[i + 1])]
    return items[0]


def random_bracketing(rng: random.Random, items: list, kind) -> Term:
    return _combine_randomly(rng, items, kind)


def random_term(rng: random.Random, size: int, variables=DEFAULT_VARIABLES,
                p_zero: float = 0.05, p_one: float = 0.15) -> Term:
    """A uniformly-shaped-ish random term of exactly `size` symbols (odd)."""
    if size < 1 or size % 2 == 0:
        raise ValueError("term sizes are odd and positive")

    def leaf():
        u = rng.random()
        if u < p_zero:
            return ZERO
        if u < p_zero + p_one:
            return ONE
        return Var(rng.choice(variables))

    leaves = [leaf() for _ in range((size + 1) // 2)]
    return _combine_randomly(rng, leaves, lambda a, b: (Plus if rng.random() < 0.5 else Times)(a, b))


def random_monomial(rng: random.Random, size: int, variables=DEFAULT_VARIABLES) -> Term:
    leaves = [Var(rng.choice(variables)) for _ in range((size + 1) // 2)]
    return _combine_randomly(rng, leaves, Times)


def random_polynomial_term(rng: random.Random, size: int, variables=DEFAULT_VARIABLES,
                           allow_one: bool = True, p_one: float = 0.15) -> Term:
    """A polynomial term of exactly `size` symbols (odd), never 0.

    With allow_one False the result is not the single leaf 1.
    """
    if size < 1 or size % 2 == 0:
        raise ValueError("term sizes are odd and positive")
    if size == 1:
        if allow_one and rng.random() < p_one:
            return ONE
        return Var(rng.choice(variables))
    if rng.random() < 0.5:
        left = rng.randrange(1, size - 1, 2)
        return Plus(random_polynomial_term(rng, left, variables, True, p_one),
                    random_polynomial_term(rng, size - 1 - left, variables, True, p_one))
    left = rng.randrange(1, size - 1, 2)
    return Times(random_monomial(rng, left, variables),
                 random_polynomial_term(rng, size - 1 - left, variables, False, p_one))


def random_polynomial(rng: random.Random, max_size: int, variables=DEFAULT_VARIABLES,
                      allow_one: bool = True) -> Polynomial:
    size = rng.randrange(1, max_size + 1, 2)
    return Polynomial.of(random_polynomial_term(rng, size, variables, allow_one))


def random_id_polynomial(rng: random.Random, max_size: int, variables=DEFAULT_VARIABLES,
                         allow_trivial: bool = True) -> IdPolynomial:
    """An id-reduced polynomial; without allow_trivial it is neither 0 nor 1."""
    while True:
        size = rng.randrange(1, max_size + 1, 2)
        p = IdPolynomial.of(id_reduce(random_polynomial_term(rng, size, variables)))
        if allow_trivial or not (p.is_zero or p.is_one):
            return p


def ac_shuffle(rng: random.Random, t: Term) -> Term:
    """A random term in the same AC class: sums are permuted and every
    flattened sum or product gets a fresh bracketing."""

    def visit(node, _):
        if node.is_leaf:
            return node
        parts = flatten(node, type(node))
        kind = type(node)

        def combine(*done):
            done = list(done)
            if kind is Plus:
                rng.shuffle(done)
            return random_bracketing(rng, done, kind)

        return [(p, None) for p in parts], combine

    return transform(t, visit)
