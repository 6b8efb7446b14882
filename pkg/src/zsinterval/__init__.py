"""Zero-sum sequences over integer intervals ``[-m, M]``.

Closed formula and exhaustive oracle for the Davenport constant, the defect
``rho(m, M)``, ordering constructions, Jacobsthal bounds and prime-table
record searches.
"""

from .davenport import (
    DavenportReport,
    check_inverse_rho0,
    check_inverse_rho1,
    davenport_formula,
    davenport_oracle,
    enumerate_extremal,
    structure_MM1_check,
)
from .effective_bounds import (
    JacobsthalReport,
    deng_zeng_gate,
    jacobsthal,
    jacobsthal_g,
    prop4_crossover_check,
    rho_upper_bound,
)
from .errors import (
    ArithmeticOverflow,
    BudgetExceeded,
    Conflict,
    DomainError,
    NotPresent,
    NotZeroSum,
    ParseError,
    PreconditionViolated,
    ZeroMultiplicity,
    ZeroValue,
)
from .ordering import OrderingResult, order_lemma2, order_lemma3, order_lemma4, verify_window
from .record_search import (
    PrimeTable,
    exists_partner,
    min_argument_scan,
    min_partner,
    sporadic_rho_exact_check,
)
from .rho_chi import Interval, RhoWitness, chi, rho, rho_period
from .zsseq import (
    ZSeq,
    extremal_construct,
    is_minimal,
    is_zero_sum,
    parse_seq,
    reduce_by_gcd,
    seq_length_bound,
    two_value_check,
)

__version__ = "0.1.0"

__all__ = [
    "ArithmeticOverflow",
    "BudgetExceeded",
    "check_inverse_rho0",
    "check_inverse_rho1",
    "chi",
    "Conflict",
    "davenport_formula",
    "davenport_oracle",
    "DavenportReport",
    "deng_zeng_gate",
    "DomainError",
    "enumerate_extremal",
    "exists_partner",
    "extremal_construct",
    "Interval",
    "is_minimal",
    "is_zero_sum",
    "jacobsthal",
    "jacobsthal_g",
    "JacobsthalReport",
    "min_argument_scan",
    "min_partner",
    "NotPresent",
    "NotZeroSum",
    "order_lemma2",
    "order_lemma3",
    "order_lemma4",
    "OrderingResult",
    "parse_seq",
    "ParseError",
    "PreconditionViolated",
    "PrimeTable",
    "prop4_crossover_check",
    "reduce_by_gcd",
    "rho",
    "rho_period",
    "rho_upper_bound",
    "RhoWitness",
    "seq_length_bound",
    "sporadic_rho_exact_check",
    "structure_MM1_check",
    "two_value_check",
    "verify_window",
    "ZeroMultiplicity",
    "ZeroValue",
    "ZSeq",
]
