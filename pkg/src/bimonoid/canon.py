"""AC-canonical forms of terms.

A term is flattened into a tree whose sum nodes hold an unordered
multiset of summands and whose product nodes hold an ordered list of
factors.  Each such tree gets an interned `Code`; two simple terms are
equal modulo associativity of + and *, and commutativity of +, exactly
when their codes are the same object.
"""
from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass
from functools import cmp_to_key

from .errors import NotAProductTerm, NotASumTerm, NotSimple
from .terms import (
    ONE, ZERO, Meta, Plus, Term, Times, Var, flatten, is_simple, product_of, sum_of,
)

LEAF, PROD, SUM = 0, 1, 2


class Code:
    """Interned canonical fingerprint of a flattened term.

    Codes are compared by identity for equality.  The order (`<`) is
    leaves before products before sums; leaves 0 < 1 < variables (by
    name) < metavariables; products and sums compare their child codes
    lexicographically.  Sum children are stored sorted.
    """

    __slots__ = ("kind", "symbol", "children", "_term", "_id_code", "__weakref__")

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __repr__(self):
        from .terms import render
        return f"Code<{render(term_of(self))}>"

    def __reduce__(self):
        return (_unpickle_code, (self.kind, self.symbol, self.children))


_codes: weakref.WeakValueDictionary = weakref.WeakValueDictionary()
_codes_lock = threading.Lock()


def _make(kind, symbol, children) -> Code:
    key = (kind, symbol, children)
    code = _codes.get(key)
    if code is not None:
        return code
    with _codes_lock:
        code = _codes.get(key)
        if code is None:
            code = object.__new__(Code)
            code.kind = kind
            code.symbol = symbol
            code.children = children
            code._term = None
            code._id_code = None
            _codes[key] = code
        return code


def _unpickle_code(kind, symbol, children):
    return _make(kind, symbol, children)


def leaf_code(node: Term) -> Code:
    if node is ZERO:
        return _make(LEAF, (0, ""), ())
    if node is ONE:
        return _make(LEAF, (1, ""), ())
    if isinstance(node, Var):
        return _make(LEAF, (2, node.name), ())
    if isinstance(node, Meta):
        return _make(LEAF, (3, node.name), ())
    raise TypeError(f"not a leaf: {node!r}")


ZERO_CODE = leaf_code(ZERO)
ONE_CODE = leaf_code(ONE)


def compare(a: Code, b: Code) -> int:
    """Three-way comparison of codes, without recursion."""
    if a is b:
        return 0
    frames = [(a, b)]
    while frames:
        a, b = frames.pop()
        if a.kind != b.kind:
            return -1 if a.kind < b.kind else 1
        if a.kind == LEAF:
            return -1 if a.symbol < b.symbol else 1
        ca, cb = a.children, b.children
        for i in range(min(len(ca), len(cb))):
            x, y = ca[i], cb[i]
            if x is y:
                continue
            if x.kind != y.kind or x.kind == LEAF:
                return -1 if (x.kind, x.symbol) < (y.kind, y.symbol) else 1
            # x and y differ somewhere below; that difference decides.
            frames.append((x, y))
            break
        else:
            if len(ca) != len(cb):
                return -1 if len(ca) < len(cb) else 1
            return 0
    return 0


_sort_key = cmp_to_key(compare)


def make_sum(children, dedup: bool = False) -> Code:
    """Code of the sum of `children`, flattening nested sums."""
    items = []
    for c in children:
        if c.kind == SUM:
            items.extend(c.children)
        else:
            items.append(c)
    items.sort(key=_sort_key)
    if dedup:
        kept = [items[0]]
        for c in items[1:]:
            if c is not kept[-1]:
                kept.append(c)
        items = kept
    if len(items) == 1:
        return items[0]
    return _make(SUM, None, tuple(items))


def make_product(children, drop_units: bool = False) -> Code:
    """Code of the product of `children` in order, flattening nested products."""
    items = []
    for c in children:
        if c.kind == PROD:
            items.extend(c.children)
        elif not (drop_units and c is ONE_CODE):
            items.append(c)
    if not items:
        return ONE_CODE
    if len(items) == 1:
        return items[0]
    return _make(PROD, None, tuple(items))


def _term_code(t: Term) -> Code:
    """AC code of an arbitrary term (0 and 1 are ordinary leaves)."""
    if t._code is not None:
        return t._code
    stack = [(t, False)]
    while stack:
        node, ready = stack.pop()
        if node._code is not None:
            continue
        if node.is_leaf:
            node._code = leaf_code(node)
            continue
        parts = flatten(node, type(node))
        if ready:
            codes = [p._code for p in parts]
            node._code = make_sum(codes) if isinstance(node, Plus) else make_product(codes)
            continue
        stack.append((node, True))
        stack.extend((p, False) for p in parts if p._code is None)
    return t._code


def term_of(code: Code) -> Term:
    """The canonical term of a code: right-nested sums and products,
    summands in ascending code order."""
    if code._term is not None:
        return code._term
    stack = [(code, False)]
    while stack:
        c, ready = stack.pop()
        if c._term is not None:
            continue
        if c.kind == LEAF:
            rank, name = c.symbol
            c._term = (ZERO, ONE, None, None)[rank] or (Var(name) if rank == 2 else Meta(name))
            continue
        if ready:
            parts = [child._term for child in c.children]
            c._term = sum_of(parts) if c.kind == SUM else product_of(parts)
            continue
        stack.append((c, True))
        stack.extend((child, False) for child in c.children if child._term is None)
    return code._term


def id_code(code: Code, drop_units: bool = True) -> Code:
    """Drop repeated summands everywhere, bottom-up.

    With drop_units, a sum that collapses to 1 inside a product also
    disappears from the product, so simple terms stay simple.  Without
    it the result is exactly the AC-plus-idempotence class.
    """
    if drop_units and code._id_code is not None:
        return code._id_code
    done = {}
    stack = [(code, False)]
    while stack:
        c, ready = stack.pop()
        if c in done:
            continue
        if drop_units and c._id_code is not None:
            done[c] = c._id_code
            continue
        if c.kind == LEAF:
            done[c] = c
            continue
        if ready:
            kids = [done[child] for child in c.children]
            if c.kind == SUM:
                done[c] = make_sum(kids, dedup=True)
            else:
                done[c] = make_product(kids, drop_units=drop_units)
            if drop_units:
                c._id_code = done[c]
            continue
        stack.append((c, True))
        stack.extend((child, False) for child in c.children if child not in done)
    return done[code]


def codes_below(code: Code):
    """Every distinct code reachable from `code`, itself included."""
    seen = {code}
    stack = [code]
    while stack:
        c = stack.pop()
        for child in c.children:
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return seen


# ---------------------------------------------------------------- public operations

def _require_simple(*terms):
    for s in terms:
        if not is_simple(s):
            raise NotSimple(f"not a simple term: {s}")


def sum_product_decomposition(s: Term) -> list:
    if not isinstance(s, Plus) or not is_simple(s):
        raise NotASumTerm(f"not a simple sum term: {s}")
    return flatten(s, Plus)


def product_sum_decomposition(s: Term) -> list:
    if not isinstance(s, Times) or not is_simple(s):
        raise NotAProductTerm(f"not a simple product term: {s}")
    return flatten(s, Times)


def code(s: Term) -> Code:
    _require_simple(s)
    return _term_code(s)


def ac_equal(s: Term, t: Term) -> bool:
    _require_simple(s, t)
    return _term_code(s) is _term_code(t)


def canonical_term(s: Term) -> Term:
    _require_simple(s)
    return term_of(_term_code(s))


def id_reduce(s: Term) -> Term:
    _require_simple(s)
    return term_of(id_code(_term_code(s)))


def ac_plus_code(t: Term) -> Code:
    """Code modulo associativity and commutativity of + only.

    Products stay binary, so (x*y)*z and x*(y*z) get different codes."""
    memo = {}
    stack = [(t, False)]
    while stack:
        node, ready = stack.pop()
        if node in memo:
            continue
        if node.is_leaf:
            memo[node] = leaf_code(node)
            continue
        parts = flatten(node, Plus) if isinstance(node, Plus) else [node.left, node.right]
        if ready:
            codes = [memo[p] for p in parts]
            memo[node] = make_sum(codes) if isinstance(node, Plus) else _make(PROD, None, tuple(codes))
            continue
        stack.append((node, True))
        stack.extend((p, False) for p in parts if p not in memo)
    return memo[t]


# ---------------------------------------------------------------- labeled trees

SUM_LABEL = "⊞"
PROD_LABEL = "⊠"


@dataclass(frozen=True)
class LabeledTree:
    """Flattened tree of a simple term.

    kind is "sum", "prod" or "leaf"; children of a product node carry
    their 1-based `index`.
    """
    kind: str
    symbol: str | None = None
    index: int | None = None
    children: tuple = ()

    @property
    def inner_label(self) -> str:
        if self.kind == "sum":
            return SUM_LABEL
        if self.kind == "prod":
            return PROD_LABEL
        return self.symbol

    @property
    def label(self) -> str:
        if self.index is None:
            return self.inner_label
        return f"({self.index},{self.inner_label})"


def labeled_tree(s: Term) -> LabeledTree:
    _require_simple(s)
    built = {}

    def leaf_symbol(node):
        return "0" if node is ZERO else "1" if node is ONE else node.name

    # children are built before their parent; sums keep source order
    stack = [(s, False)]
    while stack:
        node, ready = stack.pop()
        if node in built:
            continue
        if node.is_leaf:
            built[node] = LabeledTree("leaf", leaf_symbol(node))
            continue
        parts = flatten(node, type(node))
        if not ready:
            stack.append((node, True))
            stack.extend((p, False) for p in parts if p not in built)
            continue
        if isinstance(node, Plus):
            built[node] = LabeledTree("sum", children=tuple(built[p] for p in parts))
        else:
            kids = []
            for i, p in enumerate(parts, 1):
                child = built[p]
                kids.append(LabeledTree(child.kind, child.symbol, i, child.children))
            built[node] = LabeledTree("prod", children=tuple(kids))
    return built[s]


def to_dot(s: Term, name: str = "labeled_tree") -> str:
    tree = labeled_tree(s)
    lines = [f"digraph {name} {{"]
    counter = 0
    stack = [(tree, None)]
    edges = []
    while stack:
        node, parent = stack.pop()
        ident = f"n{counter}"
        counter += 1
        label = node.label.replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  {ident} [label="{label}"];')
        if parent is not None:
            edges.append(f"  {parent} -> {ident};")
        stack.extend((child, ident) for child in reversed(node.children))
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
