import random

import pytest
from hypothesis import given, settings, strategies as st

from bimonoid.errors import InvalidOperand, IterationBudgetExceeded
from bimonoid.generate import ac_shuffle, random_id_polynomial
from bimonoid.mx import (
    M_LARGE, M_UNIT, M_ZERO, MElement, Small, is_large, is_subpolynomial, m_add, m_inject,
    m_mul, multiplicative_closure, orbit, p_witness, weak_closure,
)
from bimonoid.poly import IdPolynomial, add_id, mul_id
from bimonoid.terms import ONE, ZERO, parse

Id = IdPolynomial.parse
X = Small(Id("x"))


def nontrivial(rng, max_size=13):
    return random_id_polynomial(rng, max_size, allow_trivial=False)


def elements(rng):
    u = rng.random()
    if u < 0.1:
        return M_ZERO
    if u < 0.2:
        return M_UNIT
    return m_inject(random_id_polynomial(rng, 9))


class TestSubpolynomial:
    def test_examples(self):
        assert is_subpolynomial(Id("x"), Id("x*(1+x)"))
        assert is_subpolynomial(Id("x+y"), Id("y+x"))
        assert not is_subpolynomial(Id("x*y"), Id("y*x"))

    def test_groups_of_summands_and_runs_of_factors(self):
        assert is_subpolynomial(Id("x + z"), Id("x + (y + z)"))
        assert is_subpolynomial(Id("y * z"), Id("x * (y * (z * w))"))
        assert not is_subpolynomial(Id("x * z"), Id("x * (y * z)"))
        assert is_subpolynomial(Id("1 + x"), Id("y * (x + 1)"))

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 10 ** 9))
    def test_reflexive_and_monotone(self, seed):
        rng = random.Random(seed)
        p, q = random_id_polynomial(rng, 13), random_id_polynomial(rng, 13)
        assert is_subpolynomial(p, p)
        if not (q.is_zero or p.is_zero or p.is_one):
            assert is_subpolynomial(p, add_id(p, q))
            assert is_subpolynomial(p, mul_id(Id("x"), p))


class TestLarge:
    def test_examples(self):
        assert is_large(Id("x*(y*(z*w))"))
        assert not is_large(Id("x*y"))
        assert is_large(Id("x*(y*z)"))

    def test_sum_shapes(self):
        assert is_large(Id("x*((y*(z+w)) + (v*(z+w)))"))
        assert is_large(Id("x*((y*z) + z)"))          # one summand is the bare tail
        assert is_large(Id("x*((y*(a+b)) + (a+b))"))  # bare tail that is itself a sum
        assert not is_large(Id("x*((y*(a+b)) + a)"))
        assert not is_large(Id("x*((y*z) + (v*w))"))
        assert not is_large(Id("x*(z + w)"))
        assert is_large(Id("u + (v * (x*((y*z) + z)))"))

    def test_rejects_trivial(self):
        with pytest.raises(InvalidOperand):
            is_large(IdPolynomial(ZERO))
        with pytest.raises(InvalidOperand):
            is_large(IdPolynomial(ONE))

    @pytest.mark.parametrize("n", range(0, 17))
    def test_witnesses_are_not_large(self, n):
        assert not is_large(p_witness(n))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 10 ** 9))
    def test_triple_products_are_large(self, seed):
        rng = random.Random(seed)
        p, q, r = (nontrivial(rng) for _ in range(3))
        assert is_large(mul_id(p, mul_id(q, r)))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 10 ** 9))
    def test_absorption(self, seed):
        rng = random.Random(seed)
        a, b, c = (nontrivial(rng, 9) for _ in range(3))
        p = mul_id(a, mul_id(b, c))
        q = nontrivial(rng)
        assert is_large(add_id(p, q)) and is_large(add_id(q, p))
        assert is_large(mul_id(p, q)) and is_large(mul_id(q, p))


class TestQuotient:
    def test_inject(self):
        assert m_inject(IdPolynomial(ZERO)) is M_ZERO or m_inject(IdPolynomial(ZERO)) == M_ZERO
        assert m_inject(mul_id(Id("x"), mul_id(Id("x"), Id("x")))) == M_LARGE
        assert m_inject(Id("x")) == Small(Id("x"))

    def test_small_must_be_nontrivial(self):
        with pytest.raises(InvalidOperand):
            Small(IdPolynomial(ONE))
        with pytest.raises(InvalidOperand):
            MElement("small")

    def test_operations(self):
        y, z = Small(Id("y")), Small(Id("z"))
        assert m_mul(X, m_mul(y, z)) == M_LARGE
        assert m_mul(X, y) == Small(Id("x*y"))
        assert m_mul(M_LARGE, M_ZERO) == M_ZERO == m_mul(M_ZERO, M_LARGE)
        assert m_mul(M_LARGE, M_UNIT) == M_LARGE == m_mul(M_UNIT, M_LARGE)
        assert m_mul(M_LARGE, X) == M_LARGE == m_mul(X, M_LARGE)
        assert m_add(M_LARGE, M_ZERO) == M_LARGE
        assert m_add(M_LARGE, X) == M_LARGE
        assert m_add(X, y) == Small(Id("x + y"))

    def test_printing(self):
        assert [str(e) for e in (M_LARGE, M_ZERO, M_UNIT, Small(Id("x*(1+x)")))] == \
            ["LARGE", "0", "1", "x * (1 + x)"]

    @settings(max_examples=300, deadline=None)
    @given(st.integers(0, 10 ** 9))
    def test_axioms(self, seed):
        rng = random.Random(seed)
        a, b, c = elements(rng), elements(rng), elements(rng)
        assert m_add(a, m_add(b, c)) == m_add(m_add(a, b), c)
        assert m_add(a, b) == m_add(b, a)
        assert m_add(a, M_ZERO) == a
        assert m_add(a, a) == a
        assert m_mul(a, m_mul(b, c)) == m_mul(m_mul(a, b), c)
        assert m_mul(M_UNIT, a) == a == m_mul(a, M_UNIT)
        assert m_mul(a, M_ZERO) == M_ZERO == m_mul(M_ZERO, a)
        assert m_mul(m_add(a, b), c) == m_add(m_mul(a, c), m_mul(b, c))

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 10 ** 9))
    def test_well_defined(self, seed):
        rng = random.Random(seed)
        p, q = random_id_polynomial(rng, 13), random_id_polynomial(rng, 13)
        # another representative of the same class
        p2 = IdPolynomial.of(ac_shuffle(rng, p.rep))
        assert m_inject(p2) == m_inject(p)
        large1 = mul_id(Id("x"), mul_id(Id("y"), Id("z")))
        large2 = mul_id(nontrivial(rng), mul_id(nontrivial(rng), nontrivial(rng)))
        b = m_inject(q)
        assert m_add(m_inject(large1), b) == m_add(m_inject(large2), b)
        assert m_mul(m_inject(large1), b) == m_mul(m_inject(large2), b)
        assert m_mul(b, m_inject(large1)) == m_mul(b, m_inject(large2))
        # the operations commute with injection
        assert m_add(m_inject(p), b) == m_inject(add_id(p, q))
        assert m_mul(m_inject(p), b) == m_inject(mul_id(p, q))


class TestWitnesses:
    def test_first_terms(self):
        assert p_witness(0) == Id("x")
        assert p_witness(1) == Id("x*(1+x)")
        assert p_witness(2) == Id("x*(1+(x*(1+x)))")

    def test_growth_and_distinctness(self):
        ws = [p_witness(n) for n in range(17)]
        assert len(set(ws)) == 17
        assert all(a.size < b.size for a, b in zip(ws, ws[1:]))

    def test_orbit_matches_witnesses(self):
        assert [a.payload for a in orbit(17)] == [p_witness(n) for n in range(17)]


class TestClosures:
    def test_multiplicative(self):
        assert multiplicative_closure([X]) == {M_UNIT, X, Small(Id("x*x")), M_LARGE}

    def test_weak_closure(self):
        closure = weak_closure([X])
        assert {M_ZERO, M_UNIT, X, M_LARGE} <= closure
        assert len(closure) == 9
        for a in closure:
            assert m_mul(a, X) in closure
            for b in closure:
                assert m_add(a, b) in closure

    def test_empty_seed(self):
        assert weak_closure([]) == {M_ZERO, M_UNIT}

    def test_budget(self):
        with pytest.raises(IterationBudgetExceeded):
            weak_closure([X, Small(Id("y"))], max_iter=1)

    def test_two_generators_finite(self):
        assert len(weak_closure([X, Small(Id("y"))])) < 10 ** 4
