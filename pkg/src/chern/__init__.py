"""Exact Hilbert-Samuel coefficients, index of reducibility and Cohen-Macaulay verdicts
for graded quotients of polynomial rings."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ArgumentError,
    ChernError,
    InvariantError,
    NotStabilized,
    ParseError,
    ResourceError,
    SemanticError,
    StructuralError,
)
from .scalars import QQ, Fp  # noqa: E402
from .poly import PolyRing, Polynomial, divide_reduce, poly_arith  # noqa: E402
from .monomials import compare_monomials, make_order  # noqa: E402
from .groebner import groebner  # noqa: E402
from .ideal import (  # noqa: E402
    Ideal,
    RingPresentation,
    colon_by_element,
    colon_by_ideal,
    ideal_equals,
    ideal_intersection,
    ideal_membership,
    ideal_power,
    ideal_product,
    ideal_sum,
)
from .quotient import (  # noqa: E402
    INFINITE,
    colength,
    contained_in_m_power,
    index_of_reducibility,
    is_m_primary,
    is_parameter_ideal,
    krull_dimension,
    reduction_check,
)
from .hilbert import (  # noqa: E402
    chern_coefficient,
    fit_binomial_polynomial,
    hilbert_samuel_table,
    irreducible_multiplicity,
    irreducible_table,
)
from .theorems import batch_verify, cohen_macaulay_report, verify_inequalities  # noqa: E402
from .corpus import build_goto_sakurai, standard_entries  # noqa: E402
from .script import parse_script, print_script  # noqa: E402

__all__ = [n for n in dir() if not n.startswith("_")]
