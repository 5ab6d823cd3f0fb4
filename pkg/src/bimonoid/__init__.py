"""Free strong bimonoids: terms, canonical forms, polynomials and rewriting."""
from .canon import (
    ac_equal, canonical_term, code, id_reduce, labeled_tree, product_sum_decomposition,
    sum_product_decomposition, to_dot,
)
from .config import Settings, load_settings
from .equivalence import Theory, equivalent, evaluate, to_id_polynomial, to_polynomial, to_simple
from .errors import *  # noqa: F401,F403
from .models import BimonoidModel, builtin_models, register_model, self_map_model
from .mx import (
    M_LARGE, M_UNIT, M_ZERO, MElement, Small, is_large, is_subpolynomial, m_add, m_inject,
    m_mul, p_witness, weak_closure,
)
from .poly import (
    IdPolynomial, Polynomial, add, add_id, is_id_reduced, is_monomial_term,
    is_polynomial_term, mul_direct, mul_id, mul_rd, mul_rd_inductive,
)
from .rewriting import (
    critical_pairs, is_normal, joinable, mgu, normal_form, normal_form_id, rewrite_step,
    rules_R, rules_R_id, weight,
)
from .terms import (
    ONE, ZERO, Meta, Plus, Term, Times, Var, is_simple, parse, render, replace_at,
    simplify, subterm_at,
)

__version__ = "0.1.0"
