"""(m, inf)-sequences, their binary window graphs, and counting.

Binary words are strings over ``"01"``; a 1 marks a term attaining the
sequence maximum.  Windows of length m+1 are valid when both parity classes
contain a 1.  The window graph for m has the valid windows as vertices, in
lexicographic order, and an edge u -> v whenever u[1:] == v[:-1].
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    BoundExceeded,
    InsufficientData,
    IsolabError,
    LengthMismatch,
    UnsupportedParameter,
)
from .mseq import HOLDS, MVerdict
from .polycore import RationalLike, to_rational

MAX_GRAPH_M = 12
MAX_ENUM_BITS = 24
MAX_HAMILTONIAN_VERTICES = 32

BinaryWord = str


def as_word(bits: Union[str, Sequence[int]]) -> BinaryWord:
    word = bits if isinstance(bits, str) else "".join(str(int(b)) for b in bits)
    if set(word) - {"0", "1"}:
        raise IsolabError(f"not a binary word: {bits!r}")
    return word


def is_valid_window(w: Union[str, Sequence[int]], m: int) -> bool:
    w = as_word(w)
    if len(w) != m + 1:
        raise LengthMismatch(f"window of length {len(w)} for m={m}")
    return "1" in w[0::2] and "1" in w[1::2]


def is_binary_minf(word: Union[str, Sequence[int]], m: int) -> MVerdict:
    """Every length-(m+1) factor must be a valid window."""
    word = as_word(word)
    if m < 1:
        raise IsolabError("m must be positive")
    if len(word) < m + 1:
        raise InsufficientData(f"need at least {m + 1} bits, have {len(word)}")
    for r in range(len(word) - m):
        if not is_valid_window(word[r : r + m + 1], m):
            even = max(int(word[k]) for k in range(r, r + m + 1) if k % 2 == 0)
            odd = max(int(word[k]) for k in range(r, r + m + 1) if k % 2 == 1)
            if even == odd:
                # All zeros: the maxima agree, but every window of a genuine
                # sequence contains its maximum.  Residual -1 marks the gap.
                return MVerdict(False, r, Fraction(-1), location="window without a maximum",
                                maxima=(Fraction(0), Fraction(0)))
            return MVerdict(False, r, Fraction(even - odd),
                            maxima=(Fraction(even), Fraction(odd)))
    return HOLDS


def is_minf_sequence(
    prefix: Union[str, Sequence[RationalLike]], m: int
) -> MVerdict:
    """Check max over even k == max over odd k on every window [r, r+m].

    Strings are treated as binary words (see :func:`is_binary_minf`); other
    sequences are compared literally.  On failure ``residual`` is the even
    maximum minus the odd maximum and ``maxima`` holds both.
    """
    if isinstance(prefix, str):
        return is_binary_minf(prefix, m)
    if m < 1:
        raise IsolabError("m must be positive")
    values = [to_rational(v) for v in prefix]
    if len(values) < m + 1:
        raise InsufficientData(f"need at least {m + 1} terms, have {len(values)}")
    for r in range(len(values) - m):
        even = max(values[k] for k in range(r, r + m + 1) if k % 2 == 0)
        odd = max(values[k] for k in range(r, r + m + 1) if k % 2 == 1)
        if even != odd:
            return MVerdict(False, r, even - odd, maxima=(even, odd))
    return HOLDS


def binary_projection(prefix: Sequence[RationalLike]) -> BinaryWord:
    """Mark with 1 the terms equal to the prefix maximum.

    Only meaningful once the prefix spans a couple of windows; a short prefix
    may not contain the true maximum.
    """
    values = [to_rational(v) for v in prefix]
    top = max(values)
    return "".join("1" if v == top else "0" for v in values)


# -- window graphs ------------------------------------------------------------

@dataclass(frozen=True)
class WindowGraph:
    """Directed overlap graph on valid (m+1)-bit windows.

    ``labels[i]`` is the conventional pattern index P<label> of ``vertices[i]``; labels
    survive pruning so that pruned graphs keep their original names.
    """

    m: int
    vertices: Tuple[BinaryWord, ...]
    edges: Tuple[Tuple[int, int], ...]
    labels: Tuple[int, ...]

    def successors(self, i: int) -> List[int]:
        return [v for u, v in self.edges if u == i]

    def predecessors(self, i: int) -> List[int]:
        return [u for u, v in self.edges if v == i]

    def name(self, i: int) -> str:
        return f"P{self.labels[i]}"

    def index_of_label(self, label: int) -> int:
        return self.labels.index(label)

    def index_of(self, word: str) -> int:
        return self.vertices.index(word)

    def subgraph(self, keep: Sequence[int]) -> "WindowGraph":
        keep = sorted(set(keep))
        pos = {old: new for new, old in enumerate(keep)}
        return WindowGraph(
            m=self.m,
            vertices=tuple(self.vertices[i] for i in keep),
            edges=tuple((pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos),
            labels=tuple(self.labels[i] for i in keep),
        )

    def adjacency(self) -> List[List[int]]:
        n = len(self.vertices)
        a = [[0] * n for _ in range(n)]
        for u, v in self.edges:
            a[u][v] = 1
        return a

    def to_json(self) -> str:
        return json.dumps(
            {
                "m": self.m,
                "vertices": list(self.vertices),
                "edges": [list(e) for e in self.edges],
                "labels": list(self.labels),
            }
        )

    def to_dot(self) -> str:
        lines = [f'digraph window_graph_m{self.m} {{']
        for i, w in enumerate(self.vertices):
            lines.append(f'  {self.name(i)} [label="{w}"];')
        for u, v in sorted(self.edges, key=lambda e: (self.vertices[e[0]], self.vertices[e[1]])):
            lines.append(f"  {self.name(u)} -> {self.name(v)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def label_base(m: int) -> int:
    """First P-label: the (3,inf) listing starts at P1, the others at P0."""
    return 1 if m == 3 else 0


def predicted_vertex_count(m: int) -> int:
    return (2 ** math.ceil((m + 1) / 2) - 1) * (2 ** ((m + 1) // 2) - 1)


def build_window_graph(m: int) -> WindowGraph:
    if m < 1:
        raise IsolabError("m must be positive")
    if m > MAX_GRAPH_M:
        raise BoundExceeded(f"m={m} exceeds the practical bound {MAX_GRAPH_M}")
    width = m + 1
    vertices = tuple(
        w
        for w in (format(k, f"0{width}b") for k in range(2**width))
        if is_valid_window(w, m)
    )
    index = {w: i for i, w in enumerate(vertices)}
    edges = []
    for i, w in enumerate(vertices):
        for bit in "01":
            j = index.get(w[1:] + bit)
            if j is not None:
                edges.append((i, j))
    base = label_base(m)
    return WindowGraph(m, vertices, tuple(edges), tuple(range(base, base + len(vertices))))


@dataclass(frozen=True)
class GraphReport:
    in_degree_zero: Tuple[int, ...]
    out_degree_zero: Tuple[int, ...]
    pruned: WindowGraph


def graph_analysis(g: WindowGraph) -> GraphReport:
    """Boundary vertices of ``g`` (as labels) and the graph left after
    repeatedly deleting vertices with no predecessor or no successor."""
    n = len(g.vertices)
    indeg = [0] * n
    outdeg = [0] * n
    for u, v in g.edges:
        outdeg[u] += 1
        indeg[v] += 1
    in0 = tuple(g.labels[i] for i in range(n) if indeg[i] == 0)
    out0 = tuple(g.labels[i] for i in range(n) if outdeg[i] == 0)

    alive = set(range(n))
    while True:
        sub = [(u, v) for u, v in g.edges if u in alive and v in alive]
        has_in = {v for _, v in sub}
        has_out = {u for u, _ in sub}
        dead = {i for i in alive if i not in has_in or i not in has_out}
        if not dead:
            break
        alive -= dead
    return GraphReport(in0, out0, g.subgraph(sorted(alive)))


# -- counting -------------------------------------------------------------------

def _valid_window_table(m: int) -> np.ndarray:
    width = m + 1
    table = np.zeros(2**width, dtype=bool)
    for k in range(2**width):
        # bit t of k is position t of the window
        w = "".join("1" if (k >> t) & 1 else "0" for t in range(width))
        table[k] = is_valid_window(w, m)
    return table


def enumerate_count(m: int, bits: int) -> int:
    """Brute force: test every one of the 2^bits words window by window."""
    if bits < m + 1:
        raise IsolabError(f"bits must be at least m+1={m + 1}")
    if bits > MAX_ENUM_BITS:
        raise BoundExceeded(f"bits={bits} exceeds {MAX_ENUM_BITS}")
    table = _valid_window_table(m)
    words = np.arange(2**bits, dtype=np.uint32)
    ok = np.ones(2**bits, dtype=bool)
    mask = np.uint32(2 ** (m + 1) - 1)
    for pos in range(bits - m):
        ok &= table[(words >> np.uint32(pos)) & mask]
    return int(ok.sum())


def no_run_count(run: int, n: int) -> int:
    """Number of n-bit words with no ``run`` consecutive zeros.

    For run=2 this is F_n with F_{-1}=F_0=1; for run=3 it is G_n with
    G_{n+1} = G_n + G_{n-1} + G_{n-2}.
    """
    if n < 0:
        raise IsolabError("n must be nonnegative")
    seq = [2**k for k in range(min(n, run - 1) + 1)]
    while len(seq) <= n:
        seq.append(sum(seq[-run:]))
    return seq[n]


def fibonacci(n: int) -> int:
    """F_n with F_{-1} = F_0 = 1."""
    if n == -1:
        return 1
    return no_run_count(2, n)


def predicted_count(m: int, bits: int) -> int:
    """Closed form for odd m: the two parity classes independently avoid
    (m+1)/2 consecutive zeros."""
    if m < 1 or m % 2 == 0:
        raise UnsupportedParameter(f"closed form only covers odd m, got m={m}")
    if bits < m + 1:
        raise UnsupportedParameter(f"closed form needs bits >= m+1={m + 1}")
    run = (m + 1) // 2
    return no_run_count(run, (bits + 1) // 2) * no_run_count(run, bits // 2)


def path_count(g: WindowGraph, k: int) -> int:
    """Number of directed walks with k edges: the entry sum of A^k."""
    if k < 0:
        raise IsolabError("k must be nonnegative")
    n = len(g.vertices)
    a = g.adjacency()

    def mul(x, y):
        cols = list(zip(*y))
        return [[sum(p * q for p, q in zip(row, col)) for col in cols] for row in x]

    result = [[int(i == j) for j in range(n)] for i in range(n)]
    while k:
        if k & 1:
            result = mul(result, a)
        a = mul(a, a)
        k >>= 1
    return sum(map(sum, result))


# -- Hamiltonicity --------------------------------------------------------------

@dataclass(frozen=True)
class HamiltonianResult:
    cycle: Optional[Tuple[int, ...]]
    certificate: Optional[int] = None

    @property
    def found(self) -> bool:
        return self.cycle is not None


def cycle_word(g: WindowGraph, cycle: Sequence[int]) -> BinaryWord:
    """One period of the periodic word traced by a closed walk."""
    return "".join(g.vertices[i][0] for i in cycle)


def periodic_walk(g: WindowGraph, period: BinaryWord) -> Tuple[int, ...]:
    """Closed walk traced by the windows of the periodic extension of
    ``period``; raises if some window is not a vertex of ``g``."""
    width = g.m + 1
    ext = period * (width // len(period) + 2)
    index = {w: i for i, w in enumerate(g.vertices)}
    try:
        return tuple(index[ext[i : i + width]] for i in range(len(period)))
    except KeyError as exc:
        raise IsolabError(f"window {exc.args[0]} of {period!r} is not a vertex") from None


def unique_predecessor_certificate(g: WindowGraph) -> Optional[int]:
    """Label of a vertex that is the only predecessor of two distinct other
    vertices.  A Hamiltonian cycle leaves each vertex once, so such a vertex
    rules one out."""
    n = len(g.vertices)
    preds = [set(g.predecessors(i)) for i in range(n)]
    for u in range(n):
        owned = [v for v in g.successors(u) if v != u and preds[v] == {u}]
        if len(owned) >= 2:
            return g.labels[u]
    return None


def hamiltonian_cycle(g: WindowGraph) -> HamiltonianResult:
    """Backtracking search from the first vertex, successors in label order."""
    n = len(g.vertices)
    if n > MAX_HAMILTONIAN_VERTICES:
        raise BoundExceeded(f"{n} vertices exceeds {MAX_HAMILTONIAN_VERTICES}")
    if n == 0:
        return HamiltonianResult(None)
    succ = [sorted(set(g.successors(i)), key=lambda v: g.labels[v]) for i in range(n)]
    if n == 1:
        return HamiltonianResult((0,) if 0 in succ[0] else None)

    path = [0]
    used = [False] * n
    used[0] = True

    def extend() -> bool:
        if len(path) == n:
            return 0 in succ[path[-1]]
        for v in succ[path[-1]]:
            if not used[v]:
                used[v] = True
                path.append(v)
                if extend():
                    return True
                path.pop()
                used[v] = False
        return False

    if extend():
        return HamiltonianResult(tuple(path))
    return HamiltonianResult(None, unique_predecessor_certificate(g))


# -- step sequences and their powers --------------------------------------------

def step_word(m: int, length: int) -> BinaryWord:
    """m-1 zeros followed by ones, truncated to ``length`` bits."""
    return ("0" * (m - 1) + "1" * max(length, 0))[:length]


def minimal_minf_parameter(word: BinaryWord) -> Optional[int]:
    """Smallest m' with every (m'+1)-window valid, or None if none fits."""
    for mm in range(1, len(word)):
        if is_binary_minf(word, mm):
            return mm
    return None


@dataclass(frozen=True)
class OffsetResult:
    offset: int
    word: BinaryWord
    at_target: MVerdict
    at_m: MVerdict
    tightest: Optional[int]


@dataclass(frozen=True)
class StepPowerReport:
    """Stride-k subsamples of the step word checked at ceil(m/k) and at m."""

    m: int
    k: int
    target: int
    offsets: Tuple[OffsetResult, ...]

    @property
    def holds(self) -> bool:
        return all(o.at_target.holds for o in self.offsets)

    @property
    def holds_at_m(self) -> bool:
        return all(o.at_m.holds for o in self.offsets)

    @property
    def verdict(self) -> MVerdict:
        for o in self.offsets:
            if not o.at_target:
                v = o.at_target
                return MVerdict(False, v.witness_shift, v.residual,
                                location=f"offset {o.offset}", maxima=v.maxima)
        return HOLDS


def step_power_check(m: int, k: int, horizon: Optional[int] = None) -> StepPowerReport:
    """Subsample the step word with stride k at offsets 0..k-1."""
    if m < 1 or k < 1:
        raise IsolabError("m and k must be positive")
    target = -(-m // k)
    length = k * (m + 3) + m if horizon is None else horizon
    word = step_word(m, length)
    results = []
    for off in range(k):
        sub = word[off::k]
        if len(sub) < m + 1:
            raise InsufficientData(f"horizon {length} too short for offset {off}")
        results.append(
            OffsetResult(
                offset=off,
                word=sub,
                at_target=is_binary_minf(sub, target),
                at_m=is_binary_minf(sub, m),
                tightest=minimal_minf_parameter(sub),
            )
        )
    return StepPowerReport(m, k, target, tuple(results))
