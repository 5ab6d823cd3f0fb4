"""Concrete strong bimonoids used as evaluation targets.

A model bundles a carrier (described in words, sampled for checks),
the two operations and the two constants, plus the flags it claims.
`register_model` spot-checks the claimed laws on random triples before
accepting a model.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import ModelError

CAP = 2 ** 31


@dataclass(frozen=True)
class BimonoidModel:
    name: str
    carrier: str
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    sample: Callable[[random.Random], Any] = field(repr=False)
    right_distributive: bool = False
    idempotent: bool = False
    parse_value: Callable[[str], Any] = field(default=str, repr=False)
    format_value: Callable[[Any], str] = field(default=str, repr=False)


def _laws(m: BimonoidModel):
    add, mul, zero, one = m.add, m.mul, m.zero, m.one
    laws = [
        ("e1 additive associativity", lambda a, b, c: add(a, add(b, c)) == add(add(a, b), c)),
        ("e2 additive commutativity", lambda a, b, c: add(a, b) == add(b, a)),
        ("e3 additive unit", lambda a, b, c: add(a, zero) == a),
        ("e4 multiplicative associativity", lambda a, b, c: mul(a, mul(b, c)) == mul(mul(a, b), c)),
        ("e5 left unit", lambda a, b, c: mul(one, a) == a),
        ("e6 right unit", lambda a, b, c: mul(a, one) == a),
        ("e7 right zero", lambda a, b, c: mul(a, zero) == zero),
        ("e8 left zero", lambda a, b, c: mul(zero, a) == zero),
    ]
    if m.right_distributive:
        laws.append(("e9 right distributivity",
                     lambda a, b, c: mul(add(a, b), c) == add(mul(a, c), mul(b, c))))
    if m.idempotent:
        laws.append(("e11 idempotence", lambda a, b, c: add(a, a) == a))
    return laws


def check_model(m: BimonoidModel, trials: int = 200, seed: int = 0) -> list:
    """Laws (by name) that failed on some random triple."""
    rng = random.Random(seed)
    specials = [m.zero, m.one]
    failed = []
    for name, law in _laws(m):
        for i in range(trials):
            triple = [specials[i % 2] if (i + j) % 7 == 0 else m.sample(rng) for j in range(3)]
            if not law(*triple):
                failed.append(name)
                break
    return failed


_registry: dict = {}


def register_model(m: BimonoidModel, trials: int = 200, seed: int = 0) -> BimonoidModel:
    failed = check_model(m, trials, seed)
    if failed:
        raise ModelError(f"model {m.name!r} violates: {', '.join(failed)}")
    _registry[m.name] = m
    return m


def get_model(name: str) -> BimonoidModel:
    try:
        return _registry[name]
    except KeyError:
        raise ModelError(f"unknown model {name!r}") from None


def registered_models() -> list:
    return list(_registry.values())


# ---------------------------------------------------------------- Boolean

def _parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("1", "true", "t"):
        return True
    if value in ("0", "false", "f"):
        return False
    raise ValueError(f"not a truth value: {text!r}")


BOOLEAN = BimonoidModel(
    name="bool",
    carrier="truth values",
    zero=False,
    one=True,
    add=lambda a, b: a or b,
    mul=lambda a, b: a and b,
    sample=lambda rng: rng.random() < 0.5,
    right_distributive=True,
    idempotent=True,
    parse_value=_parse_bool,
    format_value=lambda v: "true" if v else "false",
)


# ---------------------------------------------------------------- plus-min

INF = math.inf


def _parse_extended(text: str):
    value = text.strip().lower()
    if value in ("inf", "infinity", "∞"):
        return INF
    n = int(value)
    if n < 0:
        raise ValueError("natural numbers only")
    return min(n, CAP)


def _format_extended(v) -> str:
    return "inf" if v == INF else str(v)


def _saturating_add(a, b):
    s = a + b
    return s if s == INF else min(s, CAP)


PLUS_MIN = BimonoidModel(
    name="plusmin",
    carrier="naturals capped at 2^31, plus infinity",
    zero=0,
    one=INF,
    add=_saturating_add,
    mul=min,
    sample=lambda rng: INF if rng.random() < 0.1 else rng.choice((rng.randrange(10), rng.randrange(CAP))),
    right_distributive=False,
    idempotent=False,
    parse_value=_parse_extended,
    format_value=_format_extended,
)


# ---------------------------------------------------------------- plus-plus

class _NewZero:
    """The zero adjoined to the naturals in the plus-plus model."""

    def __repr__(self):
        return "zero"

    def __reduce__(self):
        return "NEW_ZERO"


NEW_ZERO = _NewZero()


def _pp_add(a, b):
    if a is NEW_ZERO:
        return b
    if b is NEW_ZERO:
        return a
    return min(a + b, CAP)


def _pp_mul(a, b):
    if a is NEW_ZERO or b is NEW_ZERO:
        return NEW_ZERO
    return min(a + b, CAP)


def _parse_pp(text: str):
    value = text.strip().lower()
    if value in ("zero", "z", "𝟘"):
        return NEW_ZERO
    n = int(value)
    if n < 0:
        raise ValueError("natural numbers only")
    return min(n, CAP)


PLUS_PLUS = BimonoidModel(
    name="plusplus",
    carrier="naturals capped at 2^31, plus a new zero",
    zero=NEW_ZERO,
    one=0,
    add=_pp_add,
    mul=_pp_mul,
    sample=lambda rng: NEW_ZERO if rng.random() < 0.1 else rng.choice((rng.randrange(10), rng.randrange(CAP))),
    right_distributive=False,
    idempotent=False,
    parse_value=_parse_pp,
    format_value=lambda v: "zero" if v is NEW_ZERO else str(v),
)


# ---------------------------------------------------------------- words

class _Infinity:
    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return "WORD_INF"


WORD_INF = _Infinity()


def _common_prefix(u, v):
    if u is WORD_INF:
        return v
    if v is WORD_INF:
        return u
    n = 0
    for a, b in zip(u, v):
        if a != b:
            break
        n += 1
    return u[:n]


def _concat(u, v):
    if u is WORD_INF or v is WORD_INF:
        return WORD_INF
    return u + v


def _parse_word(text: str):
    value = text.strip()
    if value.lower() in ("inf", "∞"):
        return WORD_INF
    if value in ("eps", "ε"):
        return ""
    return value


WORDS = BimonoidModel(
    name="words",
    carrier="words over {a, b, c} plus infinity",
    zero=WORD_INF,
    one="",
    add=_common_prefix,
    mul=_concat,
    sample=lambda rng: WORD_INF if rng.random() < 0.1 else "".join(rng.choice("abc") for _ in range(rng.randrange(5))),
    right_distributive=False,
    idempotent=True,
    parse_value=_parse_word,
    format_value=lambda v: "inf" if v is WORD_INF else (v or "ε"),
)


def builtin_models() -> list:
    return [BOOLEAN, PLUS_MIN, PLUS_PLUS, WORDS]


for _m in builtin_models():
    register_model(_m)


# ---------------------------------------------------------------- finite models

def self_map_model(k: int = 3, idempotent: bool = False) -> BimonoidModel:
    """Maps on {0..k-1} fixing 0, added pointwise and composed.

    Addition is pointwise modulo k (or max, when idempotent).  The
    product f*g applies g first, then f, so (f+g)*h = f*h + g*h while
    the mirror law generally fails.  The carrier is finite: k^(k-1)
    maps.
    """
    combine = max if idempotent else (lambda a, b: (a + b) % k)
    maps = [(0,) + rest for rest in itertools.product(range(k), repeat=k - 1)]
    return BimonoidModel(
        name=f"maps{k}{'-max' if idempotent else ''}",
        carrier=f"maps on {{0..{k - 1}}} fixing 0",
        zero=(0,) * k,
        one=tuple(range(k)),
        add=lambda f, g: tuple(combine(a, b) for a, b in zip(f, g)),
        mul=lambda f, g: tuple(f[g[i]] for i in range(k)),
        sample=lambda rng: rng.choice(maps),
        right_distributive=True,
        idempotent=idempotent,
        parse_value=lambda text: tuple(int(v) for v in text.split(":")),
        format_value=lambda f: ":".join(map(str, f)),
    )
