"""Independent reference implementations used to check the library.

Nothing here touches canonical codes, the rewriting engine, or the
polynomial operations under test; it works on terms only through their
constructors and fields.
"""
from __future__ import annotations

import random
from collections import deque

from bimonoid.terms import ONE, ZERO, Plus, Times, Var


# ---------------------------------------------------------------- exhaustive enumeration

def simple_terms_of_size(size: int, leaves=("x", "y")) -> list:
    """Every simple term with exactly `size` symbols over the leaves and 1."""
    atoms = [ONE] + [Var(v) for v in leaves]
    table = {1: atoms}
    for n in range(3, size + 1, 2):
        out = []
        for left in range(1, n - 1, 2):
            for a in table[left]:
                for b in table[n - 1 - left]:
                    out.append(Plus(a, b))
                    if a is not ONE and b is not ONE:
                        out.append(Times(a, b))
        table[n] = out
    return table[size] + ([ZERO] if size == 1 else [])


# ---------------------------------------------------------------- one-step rewriting

def _children(t):
    return () if t.is_leaf else (t.left, t.right)


def _rebuild(t, i, child):
    return type(t)(child, t.right) if i == 0 else type(t)(t.left, child)


def neighbours(t, local):
    """All terms reached by applying `local` (node -> iterable of nodes)
    at one position of t."""
    out = list(local(t))
    for i, child in enumerate(_children(t)):
        for new in neighbours(child, local):
            out.append(_rebuild(t, i, new))
    return out


def ac_local(u):
    if isinstance(u, Plus):
        yield Plus(u.right, u.left)
        if isinstance(u.right, Plus):
            yield Plus(Plus(u.left, u.right.left), u.right.right)
        if isinstance(u.left, Plus):
            yield Plus(u.left.left, Plus(u.left.right, u.right))
    elif isinstance(u, Times):
        if isinstance(u.right, Times):
            yield Times(Times(u.left, u.right.left), u.right.right)
        if isinstance(u.left, Times):
            yield Times(u.left.left, Times(u.left.right, u.right))


def ac_classes(terms) -> list:
    """Partition `terms` (closed under AC) into BFS components."""
    seen = {}
    classes = []
    for t in terms:
        if t in seen:
            continue
        label = len(classes)
        comp = [t]
        seen[t] = label
        queue = deque([t])
        while queue:
            u = queue.popleft()
            for v in neighbours(u, ac_local):
                if v not in seen:
                    seen[v] = label
                    comp.append(v)
                    queue.append(v)
        classes.append(comp)
    return classes


def sb_local_factory(fillers):
    """Both directions of e1-e8; inverse steps insert the given fillers."""

    def local(u):
        yield from ac_local(u)
        # e3: u + 0 <-> u, with commutativity handled by e2
        if isinstance(u, Plus) and u.right is ZERO:
            yield u.left
        yield Plus(u, ZERO)
        # e5, e6
        if isinstance(u, Times) and u.left is ONE:
            yield u.right
        if isinstance(u, Times) and u.right is ONE:
            yield u.left
        yield Times(ONE, u)
        yield Times(u, ONE)
        # e7, e8
        if isinstance(u, Times) and (u.left is ZERO or u.right is ZERO):
            yield ZERO
        if u is ZERO:
            for f in fillers:
                yield Times(f, ZERO)
                yield Times(ZERO, f)

    return local


def sb_closure(s, cap: int, fillers=(ONE, Var("x"), Var("y"))) -> set:
    """Every term reachable from s by identity steps that never exceed
    size `cap`."""
    local = sb_local_factory(fillers)
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in neighbours(u, local):
            if v.size <= cap and v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


# ---------------------------------------------------------------- random identity steps

def _identity_steps(u, rng, theory):
    """Candidate replacements for node u under one identity, either way."""
    out = list(ac_local(u))
    out.append(Plus(u, ZERO))
    out.append(Plus(ZERO, u))
    out.append(Times(ONE, u))
    out.append(Times(u, ONE))
    if isinstance(u, Plus) and (u.left is ZERO or u.right is ZERO):
        out.append(u.right if u.left is ZERO else u.left)
    if isinstance(u, Times) and u.left is ONE:
        out.append(u.right)
    if isinstance(u, Times) and u.right is ONE:
        out.append(u.left)
    if isinstance(u, Times) and (u.left is ZERO or u.right is ZERO):
        out.append(ZERO)
    if u is ZERO:
        filler = Var(rng.choice("xyz"))
        out.append(Times(filler, ZERO))
        out.append(Times(ZERO, filler))
    if theory in ("rd", "idrd"):
        if isinstance(u, Times) and isinstance(u.left, Plus):
            out.append(Plus(Times(u.left.left, u.right), Times(u.left.right, u.right)))
        if (isinstance(u, Plus) and isinstance(u.left, Times) and isinstance(u.right, Times)
                and u.left.right is u.right.right):
            out.append(Times(Plus(u.left.left, u.right.left), u.left.right))
    if theory == "idrd":
        out.append(Plus(u, u))
        if isinstance(u, Plus) and u.left is u.right:
            out.append(u.left)
    return out


def perturb(t, rng: random.Random, theory: str = "sb", steps: int = 4, max_size: int = 200):
    """Apply `steps` random identity steps of the theory at random positions."""
    for _ in range(steps):
        positions = []
        stack = [((), t)]
        while stack:
            w, u = stack.pop()
            positions.append((w, u))
            for i, child in enumerate(_children(u)):
                stack.append((w + (i,), child))
        w, u = rng.choice(positions)
        options = [v for v in _identity_steps(u, rng, theory) if t.size - u.size + v.size <= max_size]
        if not options:
            continue
        new = rng.choice(options)
        t = _replace(t, w, new)
    return t


def _replace(t, w, new):
    if not w:
        return new
    return _rebuild(t, w[0], _replace(_children(t)[w[0]], w[1:], new))


# ---------------------------------------------------------------- reference polynomial algebra
#
# A polynomial is a tuple of summands.  A summand is "1" or a pair
# (variables, tail) where tail is None or a polynomial with at least two
# summands.  Keys sort summands, so equal keys mean equal classes.

UNIT = "1"


def _mk(vs, q, idem):
    if not q:
        return ()
    if q == (UNIT,):
        return ((vs, None),)
    if len(q) == 1:
        ws, tail = q[0]
        return ((vs + ws, tail),)
    return ((vs, q),)


def _norm(summands, idem):
    items = sorted(summands, key=repr)
    if idem:
        items = sorted(set(items), key=repr)
    return tuple(items)


def ref_mul(p, q, idem=False):
    if not q:
        return ()
    out = []
    for a in p:
        if a == UNIT:
            out.extend(q)
        else:
            vs, tail = a
            out.extend(_mk(vs, q if tail is None else ref_mul(tail, q, idem), idem))
    return _norm(out, idem)


def ref_add(p, q, idem=False):
    return _norm(p + q, idem)


def ref_normal(t, idem: bool = False):
    """Reference polynomial of any term (recursive; small terms only)."""
    if t is ZERO:
        return ()
    if t is ONE:
        return (UNIT,)
    if isinstance(t, Var):
        return (((t.name,), None),)
    a, b = ref_normal(t.left, idem), ref_normal(t.right, idem)
    if isinstance(t, Plus):
        return ref_add(a, b, idem)
    return ref_mul(a, b, idem)


def ref_size(p) -> int:
    """Size of the smallest term for a reference polynomial."""
    if not p:
        return 1
    total = 0
    for a in p:
        if a == UNIT:
            total += 1
        else:
            vs, tail = a
            total += 2 * len(vs) - 1 + (0 if tail is None else 1 + ref_size(tail))
    return total + len(p) - 1
