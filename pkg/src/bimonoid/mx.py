"""Large polynomials and the quotient that collapses them to one element.

Everything works on AC codes of id-reduced polynomial classes.  A large
polynomial contains a pattern x*(y1*p + ... + yn*p) (with at most one yi
equal to 1); identifying all large polynomials gives an idempotent,
right-distributive strong bimonoid whose weak closures are finite.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .canon import LEAF, PROD, SUM, Code, codes_below, make_product
from .errors import InvalidOperand, IterationBudgetExceeded
from .poly import IdPolynomial, add_id, as_id, mul_id
from .terms import ONE, ZERO, Var, render

DEFAULT_MAX_ITER = 64


def _is_var(c: Code) -> bool:
    return c.kind == LEAF and c.symbol[0] == 2


def _summand_codes(c: Code) -> list:
    return list(c.children) if c.kind == SUM else [c]


# ---------------------------------------------------------------- subpolynomials

def _window(needle: tuple, hay: tuple) -> bool:
    n = len(needle)
    return any(hay[i:i + n] == needle for i in range(len(hay) - n + 1))


def is_subpolynomial(p: IdPolynomial, q: IdPolynomial) -> bool:
    """True when p's class occurs inside q's class.

    Occurrences are whole nodes of the flattened tree of q, groups of at
    least two summands of one of its sums, and runs of consecutive
    factors of one of its products.
    """
    target = p.code
    below = codes_below(q.code)
    if target in below:
        return True
    if target.kind == SUM:
        want = Counter(target.children)
        return any(c.kind == SUM and not want - Counter(c.children) for c in below)
    if target.kind == PROD:
        return any(c.kind == PROD and _window(target.children, c.children) for c in below)
    return False


# ---------------------------------------------------------------- large

def _sum_matches(s: Code, tail: Code) -> bool:
    """Is s the sum y1*tail + ... + yn*tail (one bare tail allowed)?"""
    bare = Counter(_summand_codes(tail))
    heads = 0
    for c in s.children:
        if c.kind == PROD and _is_var(c.children[0]) and make_product(c.children[1:]) is tail:
            heads += 1
        elif bare[c] > 0:
            bare[c] -= 1
        else:
            return False
    # a bare tail is either wholly present or wholly absent
    if any(bare.values()) and sum(bare.values()) != len(_summand_codes(tail)):
        return False
    return heads >= 1


def _large_code(code: Code) -> bool:
    for c in codes_below(code):
        if c.kind != PROD:
            continue
        factors = c.children
        if len(factors) >= 3:
            return True
        x, last = factors[-2], factors[-1]
        if not (_is_var(x) and last.kind == SUM):
            continue
        for summand in last.children:
            if summand.kind == PROD and _is_var(summand.children[0]):
                tail = make_product(summand.children[1:])
                if tail.kind != LEAF or _is_var(tail):
                    if _sum_matches(last, tail):
                        return True
    return False


def is_large(q: IdPolynomial) -> bool:
    q = as_id(q)
    if q.is_zero or q.is_one:
        raise InvalidOperand("largeness is defined only for polynomials other than 0 and 1")
    return _large_code(q.code)


# ---------------------------------------------------------------- the quotient

ZERO_KIND, UNIT_KIND, LARGE_KIND, SMALL_KIND = "zero", "unit", "large", "small"


@dataclass(frozen=True)
class MElement:
    kind: str
    payload: IdPolynomial | None = None

    def __post_init__(self):
        if (self.kind == SMALL_KIND) != (self.payload is not None):
            raise InvalidOperand("only small elements carry a polynomial")
        if self.kind == SMALL_KIND and (self.payload.is_zero or self.payload.is_one):
            raise InvalidOperand("a small element cannot be 0 or 1")

    def __str__(self):
        if self.kind == SMALL_KIND:
            return render(self.payload.rep)
        return {ZERO_KIND: "0", UNIT_KIND: "1", LARGE_KIND: "LARGE"}[self.kind]

    @property
    def sort_key(self):
        rank = (ZERO_KIND, UNIT_KIND, SMALL_KIND, LARGE_KIND).index(self.kind)
        return (rank, self.payload.code if self.payload else None)

    def __lt__(self, other):
        a, b = self.sort_key, other.sort_key
        if a[0] != b[0]:
            return a[0] < b[0]
        return a[1] is not None and a[1] < b[1]

    def as_polynomial(self) -> IdPolynomial:
        """A representative (0, 1 or the payload); Large has none."""
        if self.kind == ZERO_KIND:
            return IdPolynomial(ZERO)
        if self.kind == UNIT_KIND:
            return IdPolynomial(ONE)
        if self.kind == SMALL_KIND:
            return self.payload
        raise InvalidOperand("LARGE stands for a whole class")


M_ZERO = MElement(ZERO_KIND)
M_UNIT = MElement(UNIT_KIND)
M_LARGE = MElement(LARGE_KIND)


def Small(p) -> MElement:
    return MElement(SMALL_KIND, as_id(p))


def m_inject(p: IdPolynomial) -> MElement:
    p = as_id(p)
    if p.is_zero:
        return M_ZERO
    if p.is_one:
        return M_UNIT
    if _large_code(p.code):
        return M_LARGE
    return MElement(SMALL_KIND, p)


def m_add(a: MElement, b: MElement) -> MElement:
    if a.kind == ZERO_KIND:
        return b
    if b.kind == ZERO_KIND:
        return a
    if LARGE_KIND in (a.kind, b.kind):
        return M_LARGE
    return m_inject(add_id(a.as_polynomial(), b.as_polynomial()))


def m_mul(a: MElement, b: MElement) -> MElement:
    if ZERO_KIND in (a.kind, b.kind):
        return M_ZERO
    if a.kind == UNIT_KIND:
        return b
    if b.kind == UNIT_KIND:
        return a
    if LARGE_KIND in (a.kind, b.kind):
        return M_LARGE
    return m_inject(mul_id(a.payload, b.payload))


def p_witness(n: int, variable: str = "x") -> IdPolynomial:
    """p0 = x and p(k+1) = x * (1 + pk)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = IdPolynomial(Var(variable))
    one = IdPolynomial(ONE)
    p = x
    for _ in range(n):
        p = mul_id(x, add_id(one, p))
    return p


# ---------------------------------------------------------------- closures

def weak_closure(seed, max_iter: int = DEFAULT_MAX_ITER) -> frozenset:
    """Least set holding seed, 0 and 1, closed under sums and under
    products whose right operand is a seed element."""
    gens = list(dict.fromkeys(seed))
    closed = set(gens) | {M_ZERO, M_UNIT}
    for _ in range(max_iter):
        members = sorted(closed)
        fresh = set()
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                fresh.add(m_add(a, b))
            for g in gens:
                fresh.add(m_mul(a, g))
        fresh -= closed
        if not fresh:
            return frozenset(closed)
        closed |= fresh
    raise IterationBudgetExceeded(f"weak closure not stable after {max_iter} rounds")


def multiplicative_closure(gens, max_iter: int = DEFAULT_MAX_ITER) -> frozenset:
    """Submonoid generated by `gens` under the product alone."""
    closed = set(gens) | {M_UNIT}
    for _ in range(max_iter):
        fresh = {m_mul(a, b) for a in closed for b in closed} - closed
        if not fresh:
            return frozenset(closed)
        closed |= fresh
    raise IterationBudgetExceeded(f"multiplicative closure not stable after {max_iter} rounds")


def orbit(n: int, start: MElement | None = None, variable: str = "x") -> list:
    """a0 = start (default Small(x)), a(k+1) = Small(x) * (1 + ak)."""
    x = Small(IdPolynomial(Var(variable)))
    a = x if start is None else start
    out = [a]
    for _ in range(n - 1):
        a = m_mul(x, m_add(M_UNIT, a))
        out.append(a)
    return out
