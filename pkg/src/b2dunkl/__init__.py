"""Exact B2 Dunkl operators, the intertwining operator V, and the hypergeometric identities behind it."""

from .dunkl import Kappa, apply_T, check_commutativity, parse_rational
from .errors import (
    B2Error,
    DivisionByZero,
    InvalidWeight,
    KappaOutOfRange,
    NotBalanced,
    NotDivisible,
    NotHomogeneous,
    NotTerminating,
    PoleInDegreeFactor,
    RangeError,
    SingularParameter,
    SingularSystem,
    VarSetMismatch,
    ZeroDenominatorTerm,
)
from .hyper import eval_F, hyp, pochhammer
from .intertwine import apply_V, apply_V_oracle, compute_V, kernel_K, kernel_K0
from .moments import MultiIndex4, s, s_double, s_single, xi, xi0
from .poly import GROUP, Polynomial, VarSet, act
from .quad import gauss_jacobi, numeric_bessel, numeric_moment, numeric_Vint

__version__ = "0.1.0"

__all__ = [
    "B2Error",
    "DivisionByZero",
    "GROUP",
    "InvalidWeight",
    "Kappa",
    "KappaOutOfRange",
    "MultiIndex4",
    "NotBalanced",
    "NotDivisible",
    "NotHomogeneous",
    "NotTerminating",
    "PoleInDegreeFactor",
    "Polynomial",
    "RangeError",
    "SingularParameter",
    "SingularSystem",
    "VarSet",
    "VarSetMismatch",
    "ZeroDenominatorTerm",
    "act",
    "apply_T",
    "apply_V",
    "apply_V_oracle",
    "check_commutativity",
    "compute_V",
    "eval_F",
    "gauss_jacobi",
    "hyp",
    "kernel_K",
    "kernel_K0",
    "numeric_Vint",
    "numeric_bessel",
    "numeric_moment",
    "parse_rational",
    "pochhammer",
    "s",
    "s_double",
    "s_single",
    "xi",
    "xi0",
]
