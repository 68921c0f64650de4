"""Exact one-variable polynomials over the rationals.

Everything here works on :class:`fractions.Fraction`; nothing touches
floating point.  Sequences are plain Python sequences of rationals indexed
from zero.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from .errors import DuplicateNode, InsufficientData, IsolabError

RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def to_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction.

    Strings must look like ``"a/b"`` or ``"a"``; decimal and float input is
    refused so that results stay exact.
    """
    if isinstance(value, bool):
        raise IsolabError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise IsolabError(f"not a rational literal: {value!r}")
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise IsolabError(f"zero denominator: {value!r}") from None
    raise IsolabError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero when k > n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def alt_sum(prefix: Sequence[RationalLike], m: int, r: int = 0) -> Fraction:
    """Return sum_{k=0}^{m} (-1)^k C(m,k) a_{r+k}.

    This is (-1)^m times the classical m-th forward difference at ``r``; the
    two vanish together.
    """
    if m < 0 or r < 0:
        raise IsolabError("m and r must be nonnegative")
    if len(prefix) < r + m + 1:
        raise InsufficientData(
            f"need {r + m + 1} terms for m={m} at shift {r}, have {len(prefix)}"
        )
    total = Fraction(0)
    for k in range(m + 1):
        term = binomial(m, k) * to_rational(prefix[r + k])
        total += -term if k % 2 else term
    return total


def _strip(coeffs: Iterable[Fraction]) -> Tuple[Fraction, ...]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with rational coefficients, ``coeffs[i]`` multiplying t^i."""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", _strip(to_rational(c) for c in self.coeffs)
        )

    @classmethod
    def constant(cls, c: RationalLike) -> "Polynomial":
        return cls((to_rational(c),))

    @classmethod
    def monomial(cls, degree: int, c: RationalLike = 1) -> "Polynomial":
        return cls((Fraction(0),) * degree + (to_rational(c),))

    @property
    def degree(self) -> int:
        """Degree, with -1 standing in for the zero polynomial's -inf."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t: RationalLike) -> Fraction:
        t = to_rational(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = to_rational(other)
            return Polynomial(tuple(c * a for a in self.coeffs))
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def format(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = var if i == 1 else f"{var}^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.format()


def poly_eval(q: Polynomial, t: RationalLike) -> Fraction:
    return q(t)


def poly_scale_arg(q: Polynomial, r: RationalLike) -> Polynomial:
    """Return s with s(t) = q(r*t)."""
    r = to_rational(r)
    return Polynomial(tuple(c * r**i for i, c in enumerate(q.coeffs)))


def lagrange_interpolate(
    points: Sequence[Tuple[RationalLike, RationalLike]]
) -> Polynomial:
    """Unique polynomial of degree <= len(points)-1 through ``points``."""
    if not points:
        raise IsolabError("need at least one point")
    nodes = [to_rational(x) for x, _ in points]
    values = [to_rational(y) for _, y in points]
    if len(set(nodes)) != len(nodes):
        raise DuplicateNode("interpolation nodes must be distinct")
    result = Polynomial()
    for k, (xk, yk) in enumerate(zip(nodes, values)):
        if yk == 0:
            continue
        basis = Polynomial.constant(1)
        denom = Fraction(1)
        for i, xi in enumerate(nodes):
            if i == k:
                continue
            basis = basis * Polynomial((-xi, Fraction(1)))
            denom *= xk - xi
        result = result + basis * (yk / denom)
    return result


def difference_table(prefix: Sequence[RationalLike]) -> list:
    """Rows of successive forward differences, row d holding Delta^d a."""
    row = [to_rational(a) for a in prefix]
    table = [row]
    while len(row) > 1:
        row = [b - a for a, b in zip(row, row[1:])]
        table.append(row)
    return table


def min_interp_degree(prefix: Sequence[RationalLike]) -> int:
    """Smallest degree consistent with the prefix.

    A prefix of N points can never certify degree above N-2, so N-1 is
    reported when nothing smaller fits ("no compression").
    """
    if not prefix:
        raise IsolabError("empty prefix")
    table = difference_table(prefix)
    for d in range(len(prefix) - 1):
        if all(v == 0 for v in table[d + 1]):
            return d
    return len(prefix) - 1
