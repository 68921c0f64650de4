"""Exact verification tools for (m,p)- and (m,inf)-isometries."""

from .errors import (
    BoundExceeded,
    CommutatorNonzero,
    DimensionMismatch,
    DuplicateNode,
    InsufficientData,
    IsolabError,
    LengthMismatch,
    NotMSequence,
    UnsupportedParameter,
    VerificationFailed,
)
from .mseq import MVerdict, extend_negative, interpolating_poly, is_m_sequence, subsample
from .polycore import (
    Polynomial,
    alt_sum,
    binomial,
    lagrange_interpolate,
    min_interp_degree,
    poly_eval,
    poly_scale_arg,
)

__version__ = "0.1.0"
