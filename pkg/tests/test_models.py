import random

import pytest

from bimonoid.errors import ModelError
from bimonoid.models import (
    BOOLEAN, CAP, NEW_ZERO, PLUS_MIN, PLUS_PLUS, WORD_INF, WORDS, BimonoidModel, builtin_models,
    check_model, get_model, register_model, registered_models, self_map_model,
)


def test_four_builtins_registered():
    names = [m.name for m in builtin_models()]
    assert names == ["bool", "plusmin", "plusplus", "words"]
    assert all(get_model(n) is m for n, m in zip(names, builtin_models()))
    assert set(builtin_models()) <= set(registered_models())


def test_flags():
    assert (BOOLEAN.right_distributive, BOOLEAN.idempotent) == (True, True)
    assert (PLUS_MIN.right_distributive, PLUS_MIN.idempotent) == (False, False)
    assert (PLUS_PLUS.right_distributive, PLUS_PLUS.idempotent) == (False, False)
    assert (WORDS.right_distributive, WORDS.idempotent) == (False, True)


def test_words():
    assert WORDS.mul("ab", "c") == "abc"
    assert WORDS.add("abc", "abd") == "ab"
    assert WORDS.add(WORD_INF, "ab") == "ab"
    assert WORDS.mul(WORD_INF, "ab") is WORD_INF
    # left distributive, not right distributive
    u, v, w = "a", "b", "c"
    assert WORDS.mul(u, WORDS.add(v, w)) == WORDS.add(WORDS.mul(u, v), WORDS.mul(u, w))
    assert WORDS.mul(WORDS.add(v, w), u) != WORDS.add(WORDS.mul(v, u), WORDS.mul(w, u))


def test_plus_plus():
    assert PLUS_PLUS.add(NEW_ZERO, 5) == 5
    assert PLUS_PLUS.mul(NEW_ZERO, 5) is NEW_ZERO
    assert PLUS_PLUS.mul(2, 3) == 5 and PLUS_PLUS.add(2, 3) == 5


def test_plus_min_is_not_right_distributive():
    # min(1 + 1, 1) = 1 but min(1, 1) + min(1, 1) = 2
    a = b = c = 1
    assert PLUS_MIN.mul(PLUS_MIN.add(a, b), c) != PLUS_MIN.add(PLUS_MIN.mul(a, c), PLUS_MIN.mul(b, c))
    assert "e9 right distributivity" in check_model(
        BimonoidModel(**{**PLUS_MIN.__dict__, "right_distributive": True}))


def test_saturation():
    assert PLUS_MIN.add(CAP, 5) == CAP
    assert PLUS_PLUS.mul(CAP, CAP) == CAP


def test_value_text():
    assert PLUS_MIN.parse_value("inf") == float("inf")
    assert PLUS_MIN.format_value(PLUS_MIN.parse_value("17")) == "17"
    assert BOOLEAN.parse_value("true") is True
    with pytest.raises(ValueError):
        BOOLEAN.parse_value("maybe")
    assert WORDS.format_value(WORDS.parse_value("ε")) == "ε"
    assert PLUS_PLUS.parse_value("zero") is NEW_ZERO


def test_register_rejects_wrong_claims():
    broken = BimonoidModel(
        name="broken", carrier="integers mod 5", zero=0, one=1,
        add=lambda a, b: (a + b) % 5, mul=lambda a, b: (a - b) % 5,
        sample=lambda rng: rng.randrange(5))
    with pytest.raises(ModelError):
        register_model(broken)
    with pytest.raises(ModelError):
        get_model("broken")


@pytest.mark.parametrize("idem", [False, True])
def test_self_maps(idem):
    m = register_model(self_map_model(3, idem))
    assert check_model(m, trials=500, seed=3) == []
    rng = random.Random(0)
    # left distributivity fails somewhere
    failures = 0
    for _ in range(500):
        a, b, c = (m.sample(rng) for _ in range(3))
        failures += m.mul(a, m.add(b, c)) != m.add(m.mul(a, b), m.mul(a, c))
    assert failures > 0
