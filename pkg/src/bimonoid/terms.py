"""Terms over {+, *, 0, 1} and variables.

Terms are hash-consed: building the same tree twice returns the same
object, so `==` is identity and costs O(1).  Every node caches its size
and a few structural flags, which keeps the predicates below constant
time.  Nothing here recurses on the Python stack, so very deep terms
(long right combs, for instance) are fine.
"""
from __future__ import annotations

import re
import threading
import weakref
from typing import Callable, Iterator

from .errors import InvalidPosition, TermSyntaxError

IDENTIFIER = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
METAVARIABLE = re.compile(r"[yz][1-9]?\Z")

# structural flags cached on every node
HAS_ZERO = 1
UNIT_FACTOR = 2     # contains 1*s or s*1
MONOMIAL = 4        # built from variables and * only
LEFT_MONOMIAL = 8   # every * node has a monomial left child
HAS_META = 16

_table: weakref.WeakValueDictionary = weakref.WeakValueDictionary()
_lock = threading.Lock()


def _intern(key, build):
    node = _table.get(key)
    if node is not None:
        return node
    with _lock:
        node = _table.get(key)
        if node is None:
            node = build()
            _table[key] = node
        return node


class Term:
    """Base class of the five term shapes (plus metavariables for rules)."""

    __slots__ = ("size", "flags", "_weight", "_code", "__weakref__")

    is_leaf = True

    def __repr__(self):
        text = render(self) if self.size <= 200 else render(self)[:200] + "..."
        return f"{type(self).__name__}<{text}>"

    def __str__(self):
        return render(self)

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self


def _init(node, size, flags):
    node.size = size
    node.flags = flags
    node._weight = None
    node._code = None
    return node


class Zero(Term):
    __slots__ = ()

    def __new__(cls):
        return _intern(("0",), lambda: _init(object.__new__(cls), 1, HAS_ZERO | LEFT_MONOMIAL))

    def __reduce__(self):
        return (Zero, ())


class One(Term):
    __slots__ = ()

    def __new__(cls):
        return _intern(("1",), lambda: _init(object.__new__(cls), 1, LEFT_MONOMIAL))

    def __reduce__(self):
        return (One, ())


class Var(Term):
    __slots__ = ("name",)
    __match_args__ = ("name",)

    def __new__(cls, name: str):
        if not isinstance(name, str) or not IDENTIFIER.match(name):
            raise ValueError(f"invalid variable name {name!r}")

        def build():
            node = _init(object.__new__(cls), 1, MONOMIAL | LEFT_MONOMIAL)
            node.name = name
            return node

        return _intern(("v", name), build)

    def __reduce__(self):
        return (Var, (self.name,))


class Meta(Term):
    """A rule metavariable such as z1 or y2. Never part of object terms."""

    __slots__ = ("name",)
    __match_args__ = ("name",)

    def __new__(cls, name: str):
        if not isinstance(name, str) or not IDENTIFIER.match(name):
            raise ValueError(f"invalid metavariable name {name!r}")

        def build():
            node = _init(object.__new__(cls), 1, HAS_META | LEFT_MONOMIAL)
            node.name = name
            return node

        return _intern(("m", name), build)

    def __reduce__(self):
        return (Meta, (self.name,))


class Plus(Term):
    __slots__ = ("left", "right")
    __match_args__ = ("left", "right")
    is_leaf = False
    symbol = "+"

    def __new__(cls, left: Term, right: Term):
        if not (isinstance(left, Term) and isinstance(right, Term)):
            raise TypeError("Plus expects two terms")

        def build():
            lf, rf = left.flags, right.flags
            flags = ((lf | rf) & (HAS_ZERO | UNIT_FACTOR | HAS_META)) | (lf & rf & LEFT_MONOMIAL)
            node = _init(object.__new__(cls), 1 + left.size + right.size, flags)
            node.left = left
            node.right = right
            return node

        return _intern(("+", id(left), id(right)), build)

    def __reduce__(self):
        return (Plus, (self.left, self.right))


class Times(Term):
    __slots__ = ("left", "right")
    __match_args__ = ("left", "right")
    is_leaf = False
    symbol = "*"

    def __new__(cls, left: Term, right: Term):
        if not (isinstance(left, Term) and isinstance(right, Term)):
            raise TypeError("Times expects two terms")

        def build():
            lf, rf = left.flags, right.flags
            flags = (lf | rf) & (HAS_ZERO | UNIT_FACTOR | HAS_META)
            if left is ONE or right is ONE:
                flags |= UNIT_FACTOR
            flags |= lf & rf & MONOMIAL
            if lf & MONOMIAL and rf & LEFT_MONOMIAL:
                flags |= LEFT_MONOMIAL
            node = _init(object.__new__(cls), 1 + left.size + right.size, flags)
            node.left = left
            node.right = right
            return node

        return _intern(("*", id(left), id(right)), build)

    def __reduce__(self):
        return (Times, (self.left, self.right))


ZERO = Zero()
ONE = One()

Position = tuple


# ---------------------------------------------------------------- traversal

def postorder(t: Term) -> Iterator[Term]:
    """Yield each distinct node of t once, children before parents."""
    seen = set()
    stack = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if node in seen:
            continue
        if expanded or node.is_leaf:
            seen.add(node)
            yield node
            continue
        stack.append((node, True))
        stack.append((node.right, False))
        stack.append((node.left, False))


def transform(t: Term, visit: Callable, ctx=None) -> Term:
    """Rebuild t bottom-up without recursion.

    visit(node, ctx) returns either a finished Term or a pair
    (jobs, combine): jobs is a list of (subterm, ctx) pairs to transform
    first, and combine receives their results in order.  Results are
    memoised per (node, ctx), so shared subtrees are visited once.
    """
    results = {}
    plans = {}
    root = (t, ctx)
    stack = [root]
    while stack:
        key = stack[-1]
        if key in results:
            stack.pop()
            continue
        plan = plans.get(key)
        if plan is None:
            out = visit(*key)
            if isinstance(out, Term):
                results[key] = out
                stack.pop()
                continue
            plans[key] = out
            stack.extend(job for job in reversed(out[0]) if job not in results)
            continue
        jobs, combine = plan
        results[key] = combine(*[results[job] for job in jobs])
        del plans[key]
        stack.pop()
    return results[root]


def variables(t: Term) -> set:
    return {node.name for node in postorder(t) if isinstance(node, Var)}


def metavariables(t: Term) -> set:
    return {node for node in postorder(t) if isinstance(node, Meta)}


def depth(t: Term) -> int:
    heights = {}
    for node in postorder(t):
        heights[node] = 0 if node.is_leaf else 1 + max(heights[node.left], heights[node.right])
    return heights[t]


# ---------------------------------------------------------------- size, positions

def size(t: Term) -> int:
    return t.size


def positions(t: Term) -> Iterator[Position]:
    """All positions of t in pre-order (root first, then left, then right)."""
    stack = [(t, ())]
    while stack:
        node, w = stack.pop()
        yield w
        if not node.is_leaf:
            stack.append((node.right, w + (2,)))
            stack.append((node.left, w + (1,)))


def subterm_at(t: Term, w: Position) -> Term:
    node = t
    for i, step in enumerate(w):
        if node.is_leaf or step not in (1, 2):
            raise InvalidPosition(f"{format_position(w)} is not a position of the term (fails at step {i + 1})")
        node = node.left if step == 1 else node.right
    return node


def replace_at(t: Term, w: Position, u: Term) -> Term:
    path = []
    node = t
    for i, step in enumerate(w):
        if node.is_leaf or step not in (1, 2):
            raise InvalidPosition(f"{format_position(w)} is not a position of the term (fails at step {i + 1})")
        path.append(node)
        node = node.left if step == 1 else node.right
    for parent, step in zip(reversed(path), reversed(w)):
        if step == 1:
            u = type(parent)(u, parent.right)
        else:
            u = type(parent)(parent.left, u)
    return u


def format_position(w: Position) -> str:
    return ".".join(map(str, w)) if w else "ε"


def parse_position(text: str) -> Position:
    text = text.strip()
    if text in ("", "ε", "e"):
        return ()
    try:
        w = tuple(int(part) for part in text.split("."))
    except ValueError:
        raise InvalidPosition(f"malformed position {text!r}") from None
    if any(step not in (1, 2) for step in w):
        raise InvalidPosition(f"malformed position {text!r}")
    return w


# ---------------------------------------------------------------- simple terms

def is_simple(t: Term) -> bool:
    return t is ZERO or not t.flags & (HAS_ZERO | UNIT_FACTOR)


def simplify(t: Term) -> Term:
    """Remove 0 and unit factors innermost-first (the unit and zero laws)."""
    if is_simple(t):
        return t

    def visit(node, _):
        if node.is_leaf or is_simple(node):
            return node
        return [(node.left, None), (node.right, None)], lambda l, r: _smart(node, l, r)

    return transform(t, visit)


def _smart(node, l, r):
    if isinstance(node, Plus):
        if l is ZERO:
            return r
        if r is ZERO:
            return l
        return Plus(l, r)
    if l is ZERO or r is ZERO:
        return ZERO
    if l is ONE:
        return r
    if r is ONE:
        return l
    return Times(l, r)


# ---------------------------------------------------------------- builders

def sum_of(items, right_comb: bool = True) -> Term:
    """Fold a nonempty sequence with +, right-nested by default."""
    items = list(items)
    if not items:
        raise ValueError("empty sum")
    if right_comb:
        acc = items[-1]
        for item in reversed(items[:-1]):
            acc = Plus(item, acc)
        return acc
    acc = items[0]
    for item in items[1:]:
        acc = Plus(acc, item)
    return acc


def product_of(items, right_comb: bool = True) -> Term:
    items = list(items)
    if not items:
        raise ValueError("empty product")
    if right_comb:
        acc = items[-1]
        for item in reversed(items[:-1]):
            acc = Times(item, acc)
        return acc
    acc = items[0]
    for item in items[1:]:
        acc = Times(acc, item)
    return acc


def flatten(t: Term, kind) -> list:
    """Operands of the maximal `kind` chain rooted at t, in source order."""
    if not isinstance(t, kind):
        return [t]
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, kind):
            stack.append(node.right)
            stack.append(node.left)
        else:
            out.append(node)
    return out


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_]*)|(\d+)|([+*()]))")
_PRECEDENCE = {"+": 1, "*": 2}


def parse(text: str, *, metavariables: bool = False) -> Term:
    """Parse infix term text.

    `*` binds tighter than `+`, both associate to the left, and the tree
    is returned exactly as written.  With metavariables=True the names
    z, z1..z9, y, y1..y9 denote rule metavariables.
    """
    operands: list = []
    ops: list = []          # pending ("+" | "*" | "(", offset)
    expect_term = True
    pos = 0
    n = len(text)

    def reduce_top():
        op, _ = ops.pop()
        right = operands.pop()
        left = operands.pop()
        operands.append(Plus(left, right) if op == "+" else Times(left, right))

    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TermSyntaxError(pos, f"unexpected character {text[pos]!r}")
        start = m.start(m.lastindex)
        name, number, punct = m.groups()
        pos = m.end()
        if expect_term:
            if punct == "(":
                ops.append(("(", start))
            elif name is not None:
                if metavariables and METAVARIABLE.match(name):
                    operands.append(Meta(name))
                else:
                    operands.append(Var(name))
                expect_term = False
            elif number is not None:
                if number not in ("0", "1"):
                    raise TermSyntaxError(start, f"only the constants 0 and 1 are allowed, found {number!r}")
                operands.append(ZERO if number == "0" else ONE)
                expect_term = False
            else:
                raise TermSyntaxError(start, f"expected a term, found {punct!r}")
        elif punct in ("+", "*"):
            while ops and ops[-1][0] != "(" and _PRECEDENCE[ops[-1][0]] >= _PRECEDENCE[punct]:
                reduce_top()
            ops.append((punct, start))
            expect_term = True
        elif punct == ")":
            while ops and ops[-1][0] != "(":
                reduce_top()
            if not ops:
                raise TermSyntaxError(start, "unmatched ')'")
            ops.pop()
        else:
            raise TermSyntaxError(start, f"expected an operator, found {(name or number or punct)!r}")
    if expect_term:
        raise TermSyntaxError(n, "unexpected end of input" if text.strip() else "empty input")
    while ops:
        if ops[-1][0] == "(":
            raise TermSyntaxError(ops[-1][1], "unclosed '('")
        reduce_top()
    return operands[0]


# ---------------------------------------------------------------- rendering

PRETTY = "pretty"
FULL_PARENS = "full-parens"


def _leaf_text(node) -> str:
    if node is ZERO:
        return "0"
    if node is ONE:
        return "1"
    return node.name


def render(t: Term, mode: str = PRETTY) -> str:
    """Infix text. full-parens wraps every binary node and round-trips
    exactly; pretty keeps only the parentheses the grammar needs."""
    if mode not in (PRETTY, FULL_PARENS):
        raise ValueError(f"unknown render mode {mode!r}")
    full = mode == FULL_PARENS
    out = []
    stack: list = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        if item.is_leaf:
            out.append(_leaf_text(item))
            continue
        op = " + " if isinstance(item, Plus) else " * "
        if full:
            stack.extend((")", item.right, op, item.left, "("))
            continue
        if isinstance(item, Plus):
            wrap_left = False
            wrap_right = isinstance(item.right, Plus)
        else:
            wrap_left = isinstance(item.left, Plus)
            wrap_right = not item.right.is_leaf
        if wrap_right:
            stack.extend((")", item.right, "("))
        else:
            stack.append(item.right)
        stack.append(op)
        if wrap_left:
            stack.extend((")", item.left, "("))
        else:
            stack.append(item.left)
    return "".join(out)
