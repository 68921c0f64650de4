"""m-sequences: rational sequences killed by the m-th alternating binomial sum.

A prefix ``(a_0, ..., a_N)`` is an m-sequence on its horizon when
``sum_k (-1)^k C(m,k) a_{r+k}`` vanishes for every shift ``r`` with
``r + m <= N``; equivalently it agrees with a polynomial of degree <= m-1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import InsufficientData, IsolabError, NotMSequence
from .polycore import (
    Polynomial,
    RationalLike,
    alt_sum,
    format_rational,
    lagrange_interpolate,
    to_rational,
)

SequencePrefix = Tuple[Fraction, ...]


@dataclass(frozen=True)
class MVerdict:
    """Outcome of a finite check.

    On failure ``witness_shift`` and a nonzero ``residual`` are always set.
    The optional fields locate the failure more precisely for callers that
    check several sequences at once (grid rows, operator witnesses, ...).
    """

    holds: bool
    witness_shift: Optional[int] = None
    residual: Optional[Fraction] = None
    location: Optional[str] = None
    witness: Optional[Tuple[Fraction, ...]] = None
    maxima: Optional[Tuple[Fraction, Fraction]] = None

    def __post_init__(self):
        if not self.holds and (
            self.witness_shift is None or self.residual is None or self.residual == 0
        ):
            raise IsolabError("a failing verdict needs a shift and a nonzero residual")

    def __bool__(self) -> bool:
        return self.holds


HOLDS = MVerdict(True)


def as_prefix(values: Sequence[RationalLike]) -> SequencePrefix:
    prefix = tuple(to_rational(v) for v in values)
    if not prefix:
        raise IsolabError("a sequence prefix must be nonempty")
    return prefix


def is_m_sequence(prefix: Sequence[RationalLike], m: int) -> MVerdict:
    """Check the m-th alternating sum at every shift, lowest shift first."""
    if m < 1:
        raise IsolabError("m must be positive")
    prefix = as_prefix(prefix)
    if len(prefix) < m + 1:
        raise InsufficientData(f"need at least {m + 1} terms, have {len(prefix)}")
    for r in range(len(prefix) - m):
        res = alt_sum(prefix, m, r)
        if res != 0:
            return MVerdict(False, witness_shift=r, residual=res)
    return HOLDS


def interpolating_poly(prefix: Sequence[RationalLike], m: int) -> Polynomial:
    """Fit q of degree <= m-1 on the first m terms and verify it on the rest."""
    prefix = as_prefix(prefix)
    if len(prefix) < m:
        raise InsufficientData(f"need at least {m} terms, have {len(prefix)}")
    q = lagrange_interpolate([(n, prefix[n]) for n in range(m)])
    for n in range(m, len(prefix)):
        if q(n) != prefix[n]:
            raise NotMSequence(
                f"degree <= {m - 1} fit disagrees at n={n}: "
                f"{q(n)} != {prefix[n]}"
            )
    return q


def subsample(
    prefix: Sequence[RationalLike], r: int, offset: int = 0
) -> SequencePrefix:
    """Return (a_{offset + r n})_n for every index still inside the prefix."""
    if r < 1:
        raise IsolabError("stride must be positive")
    prefix = as_prefix(prefix)
    if not 0 <= offset < len(prefix):
        raise IsolabError(f"offset {offset} outside prefix of length {len(prefix)}")
    return prefix[offset::r]


def extend_negative(q: Polynomial, d: int) -> Fraction:
    """Value of the interpolating polynomial at -d."""
    return q(-d)


def dumps_prefix(prefix: Sequence[RationalLike]) -> str:
    return json.dumps([format_rational(to_rational(v)) for v in prefix])


def loads_prefix(text: str) -> SequencePrefix:
    data = json.loads(text)
    if not isinstance(data, list):
        raise IsolabError("a sequence prefix must be a JSON array")
    for v in data:
        if not isinstance(v, (str, int)) or isinstance(v, bool):
            raise IsolabError(f"sequence entries must be 'num/den' strings, got {v!r}")
    return as_prefix(data)
