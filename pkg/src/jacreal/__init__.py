"""Exact minimal state-space realizations with the state matrix in Jacobson normal form.

Works over prime fields GF(p) and the rationals::

    >>> from jacreal import GF, parse_expr, RatMatrix, realize_full, transfer_of
    >>> F = GF(5)
    >>> T = RatMatrix(F, [[parse_expr("1/(s^2+s+2)^2", F)]])
    >>> r = realize_full(T)
    >>> r.dimension, transfer_of(r) == T
    (4, True)
"""
from .errors import (
    FactorizationError,
    FieldMismatchError,
    InvariantViolation,
    JacrealError,
    ParseError,
    UsageError,
)
from .factor import Factorization, factor, factor_seed, is_irreducible
from .field import GF, QQ, Field, FieldElement, field_arith, field_inverse
from .jnf import JacobsonForm, elementary_divisors, jacobson_matrix, jacobson_normal_form
from .mcmillan import SmithMcMillan, smith_mcmillan, smith_mcmillan_from_fixture
from .poly import (
    PadicExpansion,
    Poly,
    coeff_matrix,
    padic_expand,
    poly_divmod,
    poly_ext_gcd,
    poly_gcd,
)
from .polymat import (
    PolyMatrix,
    SmithDecomposition,
    is_unimodular,
    polymat_add,
    polymat_det,
    polymat_mul,
    s_minus,
    smith_form,
)
from .problem import ProblemFile, format_expr, format_problem, parse_expr, parse_problem
from .ratfun import PrimeComponent, RatFun, RatMatrix, partial_fractions, pi_minus, pi_minus_matrix
from .realize import (
    Realization,
    companion,
    direct_sum,
    jacobson_block,
    m_matrix,
    realize_full,
    realize_prime_component,
    realize_rank1,
)
from .verify import MinimalityReport, is_minimal, mcmillan_degree, resolvent, transfer_of

__version__ = "0.1.0"
