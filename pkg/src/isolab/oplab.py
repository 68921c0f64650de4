"""Concrete operators on Q^d with exact norm gauges.

Every "for all x" statement is checked on a finite witness list only; a
passing verdict means "holds on these samples".  Witness lists are built
deterministically: operator-specific probes first, then the standard basis,
then pseudo-random rational vectors drawn from ``random.Random(seed)``.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import mseq
from .errors import CommutatorNonzero, DimensionMismatch, InsufficientData, IsolabError
from .mseq import HOLDS, MVerdict
from .polycore import RationalLike, format_rational, to_rational

DEFAULT_SEED = 20190613

Vector = Tuple[Fraction, ...]
Matrix = Tuple[Tuple[Fraction, ...], ...]


# -- exact dense linear algebra ---------------------------------------------

def identity_matrix(d: int) -> Matrix:
    return tuple(
        tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_vec(a: Matrix, x: Sequence[Fraction]) -> Vector:
    return tuple(sum(c * v for c, v in zip(row, x)) for row in a)


def mat_pow(a: Matrix, k: int) -> Matrix:
    result = identity_matrix(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def mat_inv(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse over the rationals."""
    d = len(a)
    aug = [list(row) + list(e) for row, e in zip(a, identity_matrix(d))]
    for col in range(d):
        pivot = next((r for r in range(col, d) if aug[r][col] != 0), None)
        if pivot is None:
            raise IsolabError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(d):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return tuple(tuple(row[d:]) for row in aug)


# -- norms and operators ----------------------------------------------------

@dataclass(frozen=True)
class NormSpec:
    """Either ``p_norm(p)`` or ``weighted_max(weights)``.

    For p-norms the exact quantity is ||x||_p^p = sum |x_i|^p, which is
    rational for integer p; the norm itself generally is not.
    """

    kind: str
    p: Optional[int] = None
    weights: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        if self.kind == "p":
            if not isinstance(self.p, int) or self.p < 1:
                raise IsolabError("p-norm exponent must be an integer >= 1")
        elif self.kind == "weighted_max":
            if not self.weights:
                raise IsolabError("weighted_max needs weights")
            w = tuple(to_rational(v) for v in self.weights)
            if any(v <= 0 for v in w):
                raise IsolabError("weights must be positive")
            object.__setattr__(self, "weights", w)
        else:
            raise IsolabError(f"unknown norm kind {self.kind!r}")

    @classmethod
    def p_norm(cls, p: int) -> "NormSpec":
        return cls("p", p=p)

    @classmethod
    def weighted_max(cls, weights: Sequence[RationalLike]) -> "NormSpec":
        return cls("weighted_max", weights=tuple(weights))

    def gauge(self, x: Sequence[Fraction]) -> Fraction:
        """||x||^p for p-norms, ||x|| for weighted max norms."""
        if self.kind == "p":
            return sum((abs(v) ** self.p for v in x), Fraction(0))
        return max(w * abs(v) for w, v in zip(self.weights, x))

    def to_dict(self) -> dict:
        if self.kind == "p":
            return {"kind": "p", "p": self.p}
        return {"kind": "weighted_max", "weights": [format_rational(w) for w in self.weights]}

    @classmethod
    def from_dict(cls, data: dict) -> "NormSpec":
        kind = data.get("kind")
        if kind == "p":
            p = data.get("p")
            if isinstance(p, bool) or not isinstance(p, int):
                raise IsolabError("'p' must be an integer")
            return cls.p_norm(p)
        if kind == "weighted_max":
            return cls.weighted_max([to_rational(w) for w in data.get("weights", [])])
        raise IsolabError(f"unknown norm kind {kind!r}")


@dataclass(frozen=True)
class Operator:
    matrix: Matrix
    norm: NormSpec

    def __post_init__(self):
        m = tuple(tuple(to_rational(v) for v in row) for row in self.matrix)
        d = len(m)
        if d == 0 or any(len(row) != d for row in m):
            raise DimensionMismatch("operator matrix must be square and nonempty")
        if self.norm.kind == "weighted_max" and len(self.norm.weights) != d:
            raise DimensionMismatch(
                f"{len(self.norm.weights)} weights for a {d}-dimensional operator"
            )
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def apply(self, x: Sequence[Fraction]) -> Vector:
        return mat_vec(self.matrix, x)

    def power(self, k: int) -> "Operator":
        return Operator(mat_pow(self.matrix, k), self.norm)

    def inverse(self) -> "Operator":
        return Operator(mat_inv(self.matrix), self.norm)

    def with_norm(self, norm: NormSpec) -> "Operator":
        return Operator(self.matrix, norm)

    def compose(self, other: "Operator") -> "Operator":
        """self @ other (apply ``other`` first)."""
        return Operator(mat_mul(self.matrix, other.matrix), self.norm)

    def commutes_with(self, other: "Operator") -> bool:
        return mat_mul(self.matrix, other.matrix) == mat_mul(other.matrix, self.matrix)

    def is_identity(self) -> bool:
        return self.matrix == identity_matrix(self.dim)

    def to_json(self) -> str:
        return json.dumps(
            {
                "dim": self.dim,
                "matrix": [[format_rational(v) for v in row] for row in self.matrix],
                "norm": self.norm.to_dict(),
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "Operator":
        data = json.loads(text)
        try:
            op = cls(
                tuple(tuple(to_rational(v) for v in row) for row in data["matrix"]),
                NormSpec.from_dict(data["norm"]),
            )
        except (KeyError, TypeError) as exc:
            raise IsolabError(f"malformed operator JSON: {exc}") from None
        if data.get("dim", op.dim) != op.dim:
            raise DimensionMismatch("'dim' disagrees with the matrix")
        return op


@dataclass(frozen=True)
class Gauge:
    """Orbit gauge of one witness; ``mode`` is ``"power_p"`` or ``"plain"``."""

    values: Tuple[Fraction, ...]
    mode: str


def _check_vector(T: Operator, x: Sequence[RationalLike]) -> Vector:
    x = tuple(to_rational(v) for v in x)
    if len(x) != T.dim:
        raise DimensionMismatch(f"vector of length {len(x)} for a {T.dim}-dimensional operator")
    return x


def orbit_gauge(
    T: Operator, x: Sequence[RationalLike], horizon: int, stride: int = 1
) -> Gauge:
    """Gauges of T^(stride*n) x for n = 0..horizon."""
    if horizon < 0 or stride < 1:
        raise IsolabError("horizon must be >= 0 and stride >= 1")
    x = _check_vector(T, x)
    step = T.power(stride) if stride > 1 else T
    values = [T.norm.gauge(x)]
    for _ in range(horizon):
        x = step.apply(x)
        values.append(T.norm.gauge(x))
    mode = "power_p" if T.norm.kind == "p" else "plain"
    return Gauge(tuple(values), mode)


def default_horizon(m: int) -> int:
    return 4 * (m + 1)


def default_witnesses(
    dim: int,
    count: int = 100,
    seed: int = DEFAULT_SEED,
    probes: Sequence[Sequence[RationalLike]] = (),
) -> List[Vector]:
    """Probes, then e_1..e_d, then ``count`` seeded random rational vectors."""
    rng = random.Random(seed)
    out: List[Vector] = []
    seen = set()

    def add(v):
        v = tuple(to_rational(c) for c in v)
        if v not in seen:
            seen.add(v)
            out.append(v)

    for v in probes:
        add(v)
    for i in range(dim):
        add(tuple(int(i == j) for j in range(dim)))
    for _ in range(count):
        add(
            tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(dim))
        )
    return out


def check_mp_isometry(
    T: Operator,
    m: int,
    witnesses: Sequence[Sequence[RationalLike]],
    horizon: Optional[int] = None,
    stride: int = 1,
) -> MVerdict:
    """Check that ||T^(stride n) x||^p is an m-sequence for every witness."""
    if T.norm.kind != "p":
        raise IsolabError("(m,p) checks need a p-norm")
    horizon = default_horizon(m) if horizon is None else horizon
    if horizon < m:
        raise InsufficientData(f"horizon {horizon} too short for m={m}")
    for x in witnesses:
        g = orbit_gauge(T, x, horizon, stride)
        v = mseq.is_m_sequence(g.values, m)
        if not v:
            return MVerdict(
                False, v.witness_shift, v.residual, witness=_check_vector(T, x)
            )
    return HOLDS


def check_minf_isometry(
    T: Operator,
    m: int,
    witnesses: Sequence[Sequence[RationalLike]],
    horizon: Optional[int] = None,
    stride: int = 1,
) -> MVerdict:
    """Check the even/odd max equality on every window of every witness orbit.

    p-norm gauges are p-th powers, which order the same way as the norms.
    """
    from .minf import is_minf_sequence

    horizon = default_horizon(m) if horizon is None else horizon
    if horizon < m:
        raise InsufficientData(f"horizon {horizon} too short for m={m}")
    for x in witnesses:
        g = orbit_gauge(T, x, horizon, stride)
        v = is_minf_sequence(g.values, m)
        if not v:
            return MVerdict(
                False,
                v.witness_shift,
                v.residual,
                witness=_check_vector(T, x),
                maxima=v.maxima,
            )
    return HOLDS


# -- named operators ----------------------------------------------------------

def jordan_unipotent(size: int) -> Operator:
    """Upper bidiagonal all-ones block with the Euclidean norm.

    ||J^n x||^2 is a polynomial of degree 2(size-1) in n, so J is a
    (2 size - 1, 2)-isometry.
    """
    if size < 2:
        raise IsolabError("size must be at least 2")
    return Operator(
        tuple(
            tuple(Fraction(int(j in (i, i + 1))) for j in range(size))
            for i in range(size)
        ),
        NormSpec.p_norm(2),
    )


def example_root_fail() -> Operator:
    """T(x, y) = (2y, x/2): T^2 = I but T is no (m,p)-isometry."""
    return Operator(
        ((Fraction(0), Fraction(2)), (Fraction(1, 2), Fraction(0))),
        NormSpec.p_norm(2),
    )


def example_power_fail_3inf() -> Operator:
    """Cyclic shift (x1,x2,x3,x4) -> (x2,x3,x4,x1) under max(2|x1|,2|x2|,|x3|,|x4|)."""
    return Operator(
        tuple(
            tuple(Fraction(int(j == (i + 1) % 4)) for j in range(4)) for i in range(4)
        ),
        NormSpec.weighted_max((2, 2, 1, 1)),
    )


# -- theorem audits -----------------------------------------------------------

def product_grid(
    S: Operator, T: Operator, x: Sequence[RationalLike], horizon: int
) -> Tuple[Tuple[Fraction, ...], ...]:
    """Entries ||S^i T^j x||^p for i, j = 1..horizon."""
    x = _check_vector(S, x)
    rows = []
    v = S.apply(x)
    for _ in range(horizon):
        row = []
        w = T.apply(v)
        for _ in range(horizon):
            row.append(S.norm.gauge(w))
            w = T.apply(w)
        rows.append(tuple(row))
        v = S.apply(v)
    return tuple(rows)


def product_check(
    S: Operator,
    T: Operator,
    m: int,
    n: int,
    witnesses: Sequence[Sequence[RationalLike]],
    horizon: Optional[int] = None,
) -> MVerdict:
    """Audit the commuting-product theorem with S an (m,p)- and T an (n,p)-isometry.

    Per witness the grid ||S^i T^j x||^p must be an (n-1, m-1)-polynomial
    matrix and its diagonal, the gauge of ST, an (m+n-1)-sequence.
    """
    from .polymatrix import Grid, check_grid

    if S.dim != T.dim:
        raise DimensionMismatch("S and T act on different spaces")
    if S.norm != T.norm:
        raise DimensionMismatch("S and T carry different norms")
    if S.norm.kind != "p":
        raise IsolabError("product checks need a p-norm")
    if not S.commutes_with(T):
        raise CommutatorNonzero("ST != TS")
    horizon = max(m, n) + 3 if horizon is None else horizon
    for x in witnesses:
        g = Grid(product_grid(S, T, x, horizon), row_bound=n - 1, col_bound=m - 1)
        v = check_grid(g)
        if not v:
            return MVerdict(
                False, v.witness_shift, v.residual,
                location=f"grid {v.location}", witness=_check_vector(S, x),
            )
        v = mseq.is_m_sequence(g.diagonal(), m + n - 1)
        if not v:
            return MVerdict(
                False, v.witness_shift, v.residual,
                location="diagonal", witness=_check_vector(S, x),
            )
    return HOLDS


@dataclass(frozen=True)
class RootCheck:
    """Premise/conclusion audit for the gcd root theorem.

    ``contradiction`` is True only if both premises held on the samples and
    the conclusion failed, which would refute the theorem.
    """

    r: int
    s: int
    d: int
    premise_r: MVerdict
    premise_s: MVerdict
    conclusion: MVerdict

    @property
    def premise(self) -> bool:
        return self.premise_r.holds and self.premise_s.holds

    @property
    def contradiction(self) -> bool:
        return self.premise and not self.conclusion.holds

    @property
    def holds(self) -> bool:
        return not self.contradiction


def _strided_check(gauges, stride: int, m: int, offsets: int):
    for x, g in gauges:
        for off in range(offsets + 1):
            sub = mseq.subsample(g, stride, off)
            if len(sub) < m + 1:
                break
            v = mseq.is_m_sequence(sub, m)
            if not v:
                return MVerdict(
                    False, v.witness_shift, v.residual,
                    location=f"stride {stride} offset {off}", witness=x,
                )
    return HOLDS


def root_gcd_check(
    T: Operator,
    r: int,
    s: int,
    m: int,
    witnesses: Sequence[Sequence[RationalLike]],
    horizon: Optional[int] = None,
) -> RootCheck:
    """If T^r and T^s pass (m,p) then T^gcd(r,s) must pass too.

    Premises are checked on every orbit point T^k x with k = 0..horizon,
    because the argument needs q^s at T^k x, not just at x.
    """
    if T.norm.kind != "p":
        raise IsolabError("(m,p) checks need a p-norm")
    if r < 1 or s < 1:
        raise IsolabError("r and s must be positive")
    horizon = default_horizon(m) if horizon is None else horizon
    d = math.gcd(r, s)
    length = horizon + max(r, s) * (m + horizon)
    gauges = [
        (_check_vector(T, x), orbit_gauge(T, x, length).values) for x in witnesses
    ]
    return RootCheck(
        r=r,
        s=s,
        d=d,
        premise_r=_strided_check(gauges, r, m, horizon),
        premise_s=_strided_check(gauges, s, m, horizon),
        conclusion=_strided_check(gauges, d, m, horizon),
    )
