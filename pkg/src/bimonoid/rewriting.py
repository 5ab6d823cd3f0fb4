"""The rewrite systems R (rho1..rho8) and R_id (R plus rho9).

R orients the unit and zero laws, reassociates products to the right
and distributes sums on the left of a product.  It terminates and is
confluent, and its normal forms are the polynomial terms.

Three engines share the rule set:
  * a position-based stepper (rewrite_step, random strategies),
  * an innermost normaliser that walks the term with an explicit stack
    and memoises repeated subterms,
  * a leftmost-outermost normaliser that re-checks a parent only when
    a step at a child's root could have created a redex there.
All three perform exactly the steps their strategy prescribes, so step
counts and traces agree with the naive definition.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple

from .canon import _term_code, id_reduce, term_of
from .config import load_settings
from .errors import StepBudgetExceeded, TermSizeExceeded
from .terms import (
    ONE, ZERO, Meta, Plus, Term, Times, format_position, parse, positions, postorder,
    render, replace_at, subterm_at, transform,
)


# ---------------------------------------------------------------- rules

@dataclass(frozen=True)
class Rule:
    name: str
    lhs: Term
    rhs: Term
    build: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        missing = {m.name for m in postorder(self.rhs) if isinstance(m, Meta)} - \
                  {m.name for m in postorder(self.lhs) if isinstance(m, Meta)}
        if missing:
            raise ValueError(f"rule {self.name}: right side uses unbound {sorted(missing)}")
        object.__setattr__(self, "build", _compile(self.rhs))

    @property
    def distributive(self) -> bool:
        return self.name == "rho8"

    def __str__(self):
        return f"{self.name}: {render(self.lhs)} -> {render(self.rhs)}"


def _compile(rhs: Term):
    """A closure that instantiates rhs under a substitution."""
    if isinstance(rhs, Meta):
        return lambda s: s[rhs]
    if rhs.is_leaf:
        return lambda s: rhs
    left, right, kind = _compile(rhs.left), _compile(rhs.right), type(rhs)
    return lambda s: kind(left(s), right(s))


def rule(name: str, lhs: str, rhs: str) -> Rule:
    return Rule(name, parse(lhs, metavariables=True), parse(rhs, metavariables=True))


_R = (
    rule("rho1", "0 + z", "z"),
    rule("rho2", "z + 0", "z"),
    rule("rho3", "1 * z", "z"),
    rule("rho4", "z * 1", "z"),
    rule("rho5", "0 * z", "0"),
    rule("rho6", "z * 0", "0"),
    rule("rho7", "(z1 * z2) * z3", "z1 * (z2 * z3)"),
    rule("rho8", "(z1 + z2) * z3", "(z1 * z3) + (z2 * z3)"),
)
_RHO9 = rule("rho9", "z + z", "z")


def rules_R() -> tuple:
    return _R


def rules_R_id() -> tuple:
    return _R + (_RHO9,)


class _Index:
    """Rules grouped by the root symbol of their left side."""

    def __init__(self, rules):
        self.rules = tuple(rules)
        self.by_type = {Plus: [], Times: []}
        for r in self.rules:
            self.by_type.setdefault(type(r.lhs), []).append(r)
        self.idempotent = any(r.name == "rho9" for r in self.rules)


_indexes: dict = {}


def _index(rules) -> _Index:
    rules = tuple(rules)
    idx = _indexes.get(rules)
    if idx is None:
        idx = _indexes[rules] = _Index(rules)
    return idx


# ---------------------------------------------------------------- matching

def match(lhs: Term, t: Term, subst=None):
    """The substitution phi with phi(lhs) = t, or None.

    Metavariables in t itself are treated as constants."""
    subst = {} if subst is None else dict(subst)
    stack = [(lhs, t)]
    while stack:
        p, u = stack.pop()
        if isinstance(p, Meta):
            bound = subst.get(p)
            if bound is None:
                subst[p] = u
            elif bound is not u:
                return None
        elif p.is_leaf:
            if p is not u:
                return None
        elif type(p) is not type(u):
            return None
        else:
            stack.append((p.right, u.right))
            stack.append((p.left, u.left))
    return subst


def substitute(t: Term, subst) -> Term:
    def visit(node, _):
        if isinstance(node, Meta):
            return subst.get(node, node)
        if node.is_leaf:
            return node
        return [(node.left, None), (node.right, None)], type(node)

    return transform(t, visit)


def _root_step(t: Term, idx: _Index):
    for r in idx.by_type.get(type(t), ()):
        s = match(r.lhs, t)
        if s is not None:
            return r, r.build(s)
    return None


def _root_matches(t: Term, idx: _Index) -> list:
    out = []
    for r in idx.by_type.get(type(t), ()):
        s = match(r.lhs, t)
        if s is not None:
            out.append((r, r.build(s)))
    return out


# ---------------------------------------------------------------- weight

def weight(t: Term) -> int:
    """Leaves weigh 2, |s+t| = |s|+|t| and |s*t| = |s|^2 |t|."""
    if t._weight is not None:
        return t._weight
    for node in postorder(t):
        if node._weight is not None:
            continue
        if node.is_leaf:
            node._weight = 2
        elif isinstance(node, Plus):
            node._weight = node.left._weight + node.right._weight
        else:
            w = node.left._weight
            node._weight = w * w * node.right._weight
    return t._weight


# ---------------------------------------------------------------- strategies

LEFTMOST_INNERMOST = "leftmost-innermost"
LEFTMOST_OUTERMOST = "leftmost-outermost"
RIGHTMOST_INNERMOST = "rightmost-innermost"
RANDOM = "random"

ALIASES = {
    "innermost": LEFTMOST_INNERMOST,
    "left-first": LEFTMOST_OUTERMOST,
    "right-first": RIGHTMOST_INNERMOST,
}


def resolve_strategy(strategy):
    """Normalise a strategy argument to (name, rng or None).

    Accepts the three names above, their aliases innermost, left-first
    and right-first, "random:<seed>", or a random.Random instance.
    """
    if isinstance(strategy, random.Random):
        return RANDOM, strategy
    if not isinstance(strategy, str):
        raise ValueError(f"unknown strategy {strategy!r}")
    name = ALIASES.get(strategy, strategy)
    if name in (LEFTMOST_INNERMOST, LEFTMOST_OUTERMOST, RIGHTMOST_INNERMOST):
        return name, None
    if name.startswith("random"):
        _, _, seed = name.partition(":")
        try:
            return RANDOM, random.Random(int(seed) if seed else 0)
        except ValueError:
            raise ValueError(f"bad random seed in {strategy!r}") from None
    raise ValueError(f"unknown strategy {strategy!r}")


def _redexes(t: Term, idx: _Index, order: str):
    """Yield (position, node) for every subterm with a root redex, in the
    visiting order of the strategy (pre-order for outermost, post-order
    for innermost)."""
    if order == LEFTMOST_OUTERMOST:
        stack = [(t, ())]
        while stack:
            node, w = stack.pop()
            if _root_step(node, idx) is not None:
                yield w, node
            if not node.is_leaf:
                stack.append((node.right, w + (2,)))
                stack.append((node.left, w + (1,)))
        return
    first, second = (1, 2) if order == LEFTMOST_INNERMOST else (2, 1)
    stack = [(t, (), False)]
    while stack:
        node, w, ready = stack.pop()
        if ready or node.is_leaf:
            if _root_step(node, idx) is not None:
                yield w, node
            continue
        stack.append((node, w, True))
        for side in (second, first):
            stack.append((node.left if side == 1 else node.right, w + (side,), False))


def rewrite_step(t: Term, trs=None, strategy=LEFTMOST_INNERMOST):
    """One rewrite step: (new term, rule name, position), or None when t
    is a normal form."""
    idx = _index(rules_R() if trs is None else trs)
    name, rng = resolve_strategy(strategy)
    if name == RANDOM:
        found = list(_redexes(t, idx, LEFTMOST_OUTERMOST))
        if not found:
            return None
        w, node = rng.choice(found)
        r, contractum = rng.choice(_root_matches(node, idx))
        return replace_at(t, w, contractum), r.name, w
    for w, node in _redexes(t, idx, name):
        r, contractum = _root_step(node, idx)
        return replace_at(t, w, contractum), r.name, w
    return None


# ---------------------------------------------------------------- normal forms

class TraceStep(NamedTuple):
    rule: str
    position: tuple
    term: Term

    def format(self, mode: str = "full-parens") -> str:
        return f"{self.rule} @ {format_position(self.position)} : {render(self.term, mode)}"


@dataclass
class NormalFormReport:
    result: Term
    total_steps: int = 0
    distributivity_steps: int = 0
    trace: list | None = None


class _Counter:
    __slots__ = ("steps", "dist", "budget", "max_size")

    def __init__(self, budget, max_size):
        self.steps = 0
        self.dist = 0
        self.budget = budget
        self.max_size = max_size

    def tick(self, r: Rule, new: Term, k: int = 1, d: int | None = None):
        self.steps += k
        self.dist += (k if r.distributive else 0) if d is None else d
        if self.steps > self.budget:
            raise StepBudgetExceeded(f"more than {self.budget} rewrite steps")
        if new.size > self.max_size:
            raise TermSizeExceeded(f"term size {new.size} exceeds the cap {self.max_size}")


def _rebuild(parent: Term, side: int, child: Term) -> Term:
    if side == 1:
        return type(parent)(child, parent.right)
    return type(parent)(parent.left, child)


def _context(stack, new: Term):
    """Whole term and position when the top frame's node becomes `new`."""
    cur = new
    for i in range(len(stack) - 2, -1, -1):
        cur = _rebuild(stack[i][0], stack[i + 1][2], cur)
    return tuple(f[2] for f in stack[1:]), cur


def _innermost(t, idx, right_first, counter, trace):
    normal = set()
    memo = {}
    first, second = (2, 1) if right_first else (1, 2)
    # frame: [node, phase, side, start node, steps at start, dist at start]
    stack = [[t, 0, 0, t, 0, 0]]
    while True:
        f = stack[-1]
        node = f[0]
        if f[1] == 0:
            if node.is_leaf or node in normal:
                result = node
            elif trace is None and node in memo:
                result, k, d = memo[node]
                if k:
                    counter.steps += k
                    counter.dist += d
                    if counter.steps > counter.budget:
                        raise StepBudgetExceeded(f"more than {counter.budget} rewrite steps")
            else:
                f[1] = 1
                child = node.left if first == 1 else node.right
                stack.append([child, 0, first, child, counter.steps, counter.dist])
                continue
        elif f[1] == 1:
            f[1] = 2
            child = node.left if second == 1 else node.right
            stack.append([child, 0, second, child, counter.steps, counter.dist])
            continue
        else:
            hit = _root_step(node, idx)
            if hit is None:
                normal.add(node)
                result = node
            else:
                r, new = hit
                counter.tick(r, new)
                if trace is not None:
                    trace.append(TraceStep(r.name, *_context(stack, new)))
                f[0] = new
                f[1] = 0
                continue
        stack.pop()
        if trace is None and f[3] is not result:
            memo[f[3]] = (result, counter.steps - f[4], counter.dist - f[5])
        if not stack:
            return result
        parent = stack[-1]
        parent[0] = _rebuild(parent[0], f[2], result)


def _outermost(t, idx, counter, trace):
    normal = set()
    # frame: [node, phase, side]; phase 0 = check root, 1 = in left, 2 = in right
    stack = [[t, 0, 0]]
    while True:
        f = stack[-1]
        node = f[0]
        if f[1] == 0:
            hit = _root_step(node, idx)
            if hit is not None:
                r, new = hit
                counter.tick(r, new)
                if trace is not None:
                    trace.append(TraceStep(r.name, *_context(stack, new)))
                f[0] = new
                if len(stack) > 1 and _root_step(_rebuild(stack[-2][0], f[2], new), idx) is not None:
                    result = new   # the parent just became a redex: hand over early
                else:
                    continue
            elif node.is_leaf or node in normal:
                result = node
            else:
                f[1] = 1
                stack.append([node.left, 0, 1])
                continue
        else:
            result = node
            normal.add(node)
        stack.pop()
        if not stack:
            return result
        parent = stack[-1]
        parent[0] = _rebuild(parent[0], f[2], result)
        if _root_step(parent[0], idx) is not None:
            parent[1] = 0
        elif parent[1] == 1:
            parent[1] = 2
            stack.append([parent[0].right, 0, 2])
        else:
            parent[1] = 3   # both children done, root is not a redex


def _stepwise(t, idx, order, rng, counter, trace):
    while True:
        if rng is not None:
            found = list(_redexes(t, idx, LEFTMOST_OUTERMOST))
            if not found:
                return t
            w, node = rng.choice(found)
            r, contractum = rng.choice(_root_matches(node, idx))
        else:
            hit = next(_redexes(t, idx, order), None)
            if hit is None:
                return t
            w, node = hit
            r, contractum = _root_step(node, idx)
        t = replace_at(t, w, contractum)
        counter.tick(r, t)
        if trace is not None:
            trace.append(TraceStep(r.name, w, t))


def normal_form(t: Term, trs=None, strategy=LEFTMOST_INNERMOST, *, trace: bool = False,
                step_budget: int | None = None, max_term_size: int | None = None) -> NormalFormReport:
    """Rewrite t to its normal form, counting steps.

    Caps default to the BF_STEP_BUDGET / BF_MAX_TERM_SIZE settings.
    """
    idx = _index(rules_R() if trs is None else trs)
    name, rng = resolve_strategy(strategy)
    if step_budget is None or max_term_size is None:
        settings = load_settings()
        step_budget = settings.step_budget if step_budget is None else step_budget
        max_term_size = settings.max_term_size if max_term_size is None else max_term_size
    counter = _Counter(step_budget, max_term_size)
    steps = [] if trace else None
    if t.size > max_term_size:
        raise TermSizeExceeded(f"term size {t.size} exceeds the cap {max_term_size}")
    if name == RANDOM:
        result = _stepwise(t, idx, name, rng, counter, steps)
    elif name == LEFTMOST_OUTERMOST:
        if idx.idempotent:
            # rho9 can be enabled by steps deep below, so fall back to the stepper
            result = _stepwise(t, idx, name, None, counter, steps)
        else:
            result = _outermost(t, idx, counter, steps)
    else:
        result = _innermost(t, idx, name == RIGHTMOST_INNERMOST, counter, steps)
    return NormalFormReport(result, counter.steps, counter.dist, steps)


def is_normal(t: Term, trs=None) -> bool:
    idx = _index(rules_R() if trs is None else trs)
    return next(_redexes(t, idx, LEFTMOST_OUTERMOST), None) is None


def normal_form_id(t: Term, strategy=LEFTMOST_INNERMOST, **caps) -> Term:
    """The idempotent normal form, canonical modulo AC.

    R-normalise, then drop repeated summands (a product factor that
    collapses to 1 disappears with it), and repeat until stable.
    """
    return normal_form_id_report(t, strategy, **caps).result


def normal_form_id_report(t: Term, strategy=LEFTMOST_INNERMOST, **caps) -> NormalFormReport:
    report = normal_form(t, rules_R_id(), strategy, **caps)
    u = report.result
    while True:
        v = normal_form(id_reduce(u), rules_R(), LEFTMOST_INNERMOST, **caps).result
        v = term_of(_term_code(v))
        if v is u:
            break
        u = v
    report.result = u
    return report


# ---------------------------------------------------------------- unification

def _occurs(var: Meta, t: Term) -> bool:
    return any(node is var for node in postorder(t))


def mgu(s: Term, t: Term):
    """Most general unifier of two terms with metavariables, or None.

    Variables of X and the constants 0, 1 are rigid.  The result is
    idempotent: no bound metavariable occurs in any binding.
    """
    subst: dict = {}
    stack = [(s, t)]
    while stack:
        a, b = stack.pop()
        a = substitute(a, subst) if subst else a
        b = substitute(b, subst) if subst else b
        if a is b:
            continue
        if not isinstance(a, Meta) and isinstance(b, Meta):
            a, b = b, a
        if isinstance(a, Meta):
            if _occurs(a, b):
                return None
            subst = {k: substitute(v, {a: b}) for k, v in subst.items()}
            subst[a] = b
            continue
        if a.is_leaf or b.is_leaf or type(a) is not type(b):
            return None
        stack.append((a.right, b.right))
        stack.append((a.left, b.left))
    return subst


def rename(r: Rule, prefix: str = "y") -> Rule:
    """Copy of r whose metavariables z, z1, z2, ... become y, y1, y2, ..."""
    mapping = {m: Meta(prefix + m.name[1:]) for m in postorder(r.lhs) if isinstance(m, Meta)}
    return Rule(r.name, substitute(r.lhs, mapping), substitute(r.rhs, mapping))


@dataclass(frozen=True)
class CriticalPair:
    outer: str
    inner: str
    position: tuple
    unifier: tuple
    left: Term
    right: Term

    def __str__(self):
        return (f"{self.outer}/{self.inner} @ {format_position(self.position)}: "
                f"<{render(self.left, 'full-parens')}, {render(self.right, 'full-parens')}>")


def critical_pairs(trs=None) -> list:
    """All critical pairs: overlaps of a renamed rule into a non-variable
    position of another, excluding a rule with itself at the root."""
    rules = rules_R() if trs is None else tuple(trs)
    out = []
    for outer in rules:
        for inner in rules:
            renamed = rename(inner)
            for w in positions(outer.lhs):
                sub = subterm_at(outer.lhs, w)
                if isinstance(sub, Meta) or (w == () and outer is inner):
                    continue
                phi = mgu(sub, renamed.lhs)
                if phi is None:
                    continue
                left = substitute(outer.rhs, phi)
                right = replace_at(substitute(outer.lhs, phi), w, substitute(renamed.rhs, phi))
                unifier = tuple(sorted((k.name, render(v)) for k, v in phi.items()))
                out.append(CriticalPair(outer.name, inner.name, w, unifier, left, right))
    return out


def joinable(pair: CriticalPair, trs=None) -> bool:
    rules = rules_R() if trs is None else trs
    return normal_form(pair.left, rules).result is normal_form(pair.right, rules).result
