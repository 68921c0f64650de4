"""Finite windows of (n, m)-polynomial matrices and their two-variable fits.

Rows and columns are indexed from 1.  Row ``i`` is the y-coordinate and
column ``j`` the x-coordinate, so ``entries[i-1][j-1] == r(i, j)``.  A grid
carries ``row_bound`` n (degree of every row in x) and ``col_bound`` m
(degree of every column in y).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .errors import InsufficientData, IsolabError, VerificationFailed
from .mseq import HOLDS, MVerdict, is_m_sequence
from .polycore import (
    Polynomial,
    RationalLike,
    format_rational,
    lagrange_interpolate,
    to_rational,
)


@dataclass(frozen=True)
class Grid:
    entries: Tuple[Tuple[Fraction, ...], ...]
    row_bound: int
    col_bound: int

    def __post_init__(self):
        rows = tuple(tuple(to_rational(v) for v in row) for row in self.entries)
        if not rows or not rows[0]:
            raise IsolabError("grid must be nonempty")
        if any(len(row) != len(rows[0]) for row in rows):
            raise IsolabError("grid rows must have equal length")
        if self.row_bound < 0 or self.col_bound < 0:
            raise IsolabError("degree bounds must be nonnegative")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(row[j - 1] for row in self.entries)

    def diagonal(self) -> Tuple[Fraction, ...]:
        return tuple(self.entries[k][k] for k in range(min(self.rows, self.cols)))

    def to_json(self) -> str:
        return json.dumps(
            {
                "rows": self.rows,
                "cols": self.cols,
                "row_bound": self.row_bound,
                "col_bound": self.col_bound,
                "index_base": 1,
                "entries": [[format_rational(v) for v in row] for row in self.entries],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "Grid":
        data = json.loads(text)
        try:
            grid = cls(
                entries=data["entries"],
                row_bound=int(data["row_bound"]),
                col_bound=int(data["col_bound"]),
            )
        except (KeyError, TypeError) as exc:
            raise IsolabError(f"malformed grid JSON: {exc}") from None
        if grid.rows != data.get("rows", grid.rows) or grid.cols != data.get(
            "cols", grid.cols
        ):
            raise IsolabError("grid 'rows'/'cols' disagree with 'entries'")
        return grid


@dataclass(frozen=True)
class TwoVarPoly:
    """r(y, x) = sum coeffs[i][j] * y^i * x^j."""

    coeffs: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_rational(c) for c in row) for row in self.coeffs)
        width = max((len(row) for row in rows), default=0)
        rows = tuple(row + (Fraction(0),) * (width - len(row)) for row in rows)
        object.__setattr__(self, "coeffs", rows)

    @classmethod
    def from_terms(cls, terms: dict) -> "TwoVarPoly":
        """Build from ``{(y_power, x_power): coefficient}``."""
        if not terms:
            return cls(())
        ydeg = max(i for i, _ in terms)
        xdeg = max(j for _, j in terms)
        grid = [[Fraction(0)] * (xdeg + 1) for _ in range(ydeg + 1)]
        for (i, j), c in terms.items():
            grid[i][j] += to_rational(c)
        return cls(tuple(tuple(row) for row in grid))

    def terms(self) -> dict:
        return {
            (i, j): c
            for i, row in enumerate(self.coeffs)
            for j, c in enumerate(row)
            if c != 0
        }

    @property
    def y_degree(self) -> int:
        return max((i for i, _ in self.terms()), default=-1)

    @property
    def x_degree(self) -> int:
        return max((j for _, j in self.terms()), default=-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, TwoVarPoly) and self.terms() == other.terms()

    def __hash__(self):
        return hash(frozenset(self.terms().items()))

    def __call__(self, y: RationalLike, x: RationalLike) -> Fraction:
        return eval_two_var(self, y, x)

    def __str__(self) -> str:
        terms = sorted(self.terms().items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][0]))
        if not terms:
            return "0"
        out = ""
        for (i, j), c in terms:
            factors = []
            if j:
                factors.append("x" if j == 1 else f"x^{j}")
            if i:
                factors.append("y" if i == 1 else f"y^{i}")
            mag = abs(c)
            body = "*".join(factors) if factors else str(mag)
            if factors and mag != 1:
                body = f"{mag}*{body}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += f" {'-' if c < 0 else '+'} {body}"
        return out


def eval_two_var(r: TwoVarPoly, y: RationalLike, x: RationalLike) -> Fraction:
    y, x = to_rational(y), to_rational(x)
    total = Fraction(0)
    for i, row in enumerate(r.coeffs):
        inner = Fraction(0)
        for c in reversed(row):
            inner = inner * x + c
        total += inner * y**i
    return total


def sample_grid(r: TwoVarPoly, rows: int, cols: int, row_bound: int, col_bound: int) -> Grid:
    """Tabulate ``r`` on {1..rows} x {1..cols}."""
    return Grid(
        tuple(
            tuple(eval_two_var(r, i, j) for j in range(1, cols + 1))
            for i in range(1, rows + 1)
        ),
        row_bound=row_bound,
        col_bound=col_bound,
    )


def check_grid(g: Grid) -> MVerdict:
    """Check every row has degree <= row_bound and every column <= col_bound.

    Rows are scanned before columns, each in index order; the first failure
    is reported with its 1-based row/column number in ``location``.
    """
    n, m = g.row_bound, g.col_bound
    if g.rows < m + 2 or g.cols < n + 2:
        raise InsufficientData(
            f"a ({n},{m}) check needs at least {m + 2} rows and {n + 2} columns, "
            f"grid is {g.rows}x{g.cols}"
        )
    for i in range(1, g.rows + 1):
        v = is_m_sequence(g.entries[i - 1], n + 1)
        if not v:
            return MVerdict(False, v.witness_shift, v.residual, location=f"row {i}")
    for j in range(1, g.cols + 1):
        v = is_m_sequence(g.column(j), m + 1)
        if not v:
            return MVerdict(False, v.witness_shift, v.residual, location=f"column {j}")
    return HOLDS


def interpolate_two_var(g: Grid) -> TwoVarPoly:
    """Recover r in P^{m,n}[y,x] from the grid by Lagrange-combining rows.

    Each of the first m+1 rows is fitted by a degree <= n polynomial p_k,
    then r(y, x) = sum_k p_k(x) L_k(y) / L_k(k).  Every grid entry is then
    checked against r; a grid whose later rows disagree is not a polynomial
    matrix with the stated bounds and raises VerificationFailed.
    """
    n, m = g.row_bound, g.col_bound
    if g.rows < m + 1 or g.cols < n + 1:
        raise InsufficientData(
            f"need at least {m + 1} rows and {n + 1} columns, grid is {g.rows}x{g.cols}"
        )
    row_polys = []
    for k in range(1, m + 2):
        row = g.entries[k - 1]
        p = lagrange_interpolate([(j, row[j - 1]) for j in range(1, n + 2)])
        for j in range(n + 2, g.cols + 1):
            if p(j) != row[j - 1]:
                raise VerificationFailed(f"row {k} is not of degree <= {n} (column {j})")
        row_polys.append(p)

    coeffs = [[Fraction(0)] * (n + 1) for _ in range(m + 1)]
    for k, p in enumerate(row_polys, start=1):
        basis = lagrange_interpolate([(i, 1 if i == k else 0) for i in range(1, m + 2)])
        for a, ya in enumerate(basis.coeffs):
            for b, xb in enumerate(p.coeffs):
                coeffs[a][b] += ya * xb
    r = TwoVarPoly(tuple(tuple(row) for row in coeffs))

    for i in range(1, g.rows + 1):
        for j in range(1, g.cols + 1):
            if eval_two_var(r, i, j) != g[i, j]:
                raise VerificationFailed(
                    f"interpolant built from rows 1..{m + 1} misses entry ({i},{j}): "
                    f"{eval_two_var(r, i, j)} != {g[i, j]}"
                )
    return r


def diagonal_poly(r: TwoVarPoly) -> Polynomial:
    """q(t) = r(t, t)."""
    out = {}
    for (i, j), c in r.terms().items():
        out[i + j] = out.get(i + j, Fraction(0)) + c
    if not out:
        return Polynomial()
    return Polynomial(tuple(out.get(d, Fraction(0)) for d in range(max(out) + 1)))
