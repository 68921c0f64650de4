"""Acceptance criteria, one function per criterion.

Run under pytest (``pytest tests/test_acceptance.py -s`` shows the report
lines) or directly with ``python tests/test_acceptance.py``.  All checks are
exact; there are no tolerances to tune.
"""
import hashlib
import random
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from isolab.minf import (  # noqa: E402
    build_window_graph,
    cycle_word,
    enumerate_count,
    graph_analysis,
    hamiltonian_cycle,
    path_count,
    periodic_walk,
)
from isolab.mseq import extend_negative, interpolating_poly, is_m_sequence, subsample  # noqa: E402
from isolab.oplab import (  # noqa: E402
    check_minf_isometry,
    check_mp_isometry,
    default_witnesses,
    example_power_fail_3inf,
    example_root_fail,
    jordan_unipotent,
    orbit_gauge,
    root_gcd_check,
)
from isolab.polycore import Polynomial, min_interp_degree  # noqa: E402
from isolab.polymatrix import (  # noqa: E402
    Grid,
    TwoVarPoly,
    diagonal_poly,
    interpolate_two_var,
    sample_grid,
)
from oracles import fib_table  # noqa: E402

SEED = 20190613
EXAMPLE_ROWS = (
    (5, 8, 11, 14, 17),
    (6, 7, 6, 3, -2),
    (7, 6, 1, -8, -21),
    (8, 5, -4, -19, -40),
)


def _fmt(values):
    return "(" + ", ".join(str(v) for v in values) + ")" if values is not None else "-"


def _rotations(word):
    return {word[i:] + word[:i] for i in range(len(word))}


def criterion_1():
    g = build_window_graph(3)
    idx = {g.name(i): i for i in range(len(g.vertices))}
    p4 = sorted(g.name(v) for v in g.successors(idx["P4"]))
    p1 = sorted(g.name(v) for v in g.successors(idx["P1"]))
    ok = len(g.vertices) == 9 and len(g.edges) == 15 and p4 == ["P1"] and p1 == ["P2", "P3"]
    return ok, f"|V|={len(g.vertices)} |E|={len(g.edges)} P4->{p4} P1->{p1}"


def criterion_2():
    g = build_window_graph(4)
    rep = graph_analysis(g)
    ok = (
        len(g.vertices) == 21
        and rep.in_degree_zero == (0, 3, 4)
        and rep.out_degree_zero == (9, 13, 15)
        and len(rep.pruned.vertices) == 15
    )
    return ok, (
        f"|V|={len(g.vertices)} in0={rep.in_degree_zero} out0={rep.out_degree_zero} "
        f"pruned={len(rep.pruned.vertices)}"
    )


def criterion_3():
    g = build_window_graph(3)
    h = hamiltonian_cycle(g)
    word = cycle_word(g, h.cycle) if h.found else None
    rotation = word is not None and word in _rotations("110011011110")
    pruned = graph_analysis(build_window_graph(4)).pruned
    h4 = hamiltonian_cycle(pruned)
    cert = not h4.found and h4.certificate == 10
    walk = periodic_walk(g, "110011011110")
    ok = h.found and rotation and cert
    return ok, (
        f"m=3 cycle found={h.found} word={word} ({len(word or '')} bits) "
        f"rotation-of-110011011110={rotation} [110011011110 traces a closed walk of "
        f"length {len(walk)} over {len(set(walk))} distinct vertices]; "
        f"m=4 pruned hamiltonian={h4.found} certificate=P{h4.certificate}"
    )


def criterion_4():
    f = fib_table(30)

    def formula(bits):
        return f[(bits + 1) // 2] * f[bits // 2]

    counts_ok = all(enumerate_count(3, b) == formula(b) for b in range(4, 21))
    small_ok = enumerate_count(3, 4) == 9 and enumerate_count(3, 5) == 15
    g = build_window_graph(3)
    paths_ok = all(
        path_count(g, k) == f[2 + (k + 1) // 2] * f[2 + k // 2] for k in range(17)
    )
    return counts_ok and small_ok and paths_ok, (
        f"enumeration==F-product b=4..20: {counts_ok}; (9,15) at b=4,5: {small_ok}; "
        f"paths==formula k=0..16: {paths_ok}"
    )


def criterion_5():
    T = example_power_fail_3inf()
    ws = default_witnesses(4, 1000, SEED, probes=[(0, 1, 0, 0)])
    base = check_minf_isometry(T, 3, ws, horizon=12)
    sq = check_minf_isometry(T, 3, ws, horizon=12, stride=2)
    sq_ok = (not sq.holds) and sq.witness == (0, 1, 0, 0) and sq.maxima == (2, 1)
    cube = check_minf_isometry(T, 3, ws, horizon=12, stride=3)
    R = example_root_fail()
    rws = default_witnesses(2, 200, SEED, probes=[(0, 1)])
    r2 = R.power(2).is_identity() and check_mp_isometry(R.power(2), 1, rws).holds
    r_fails = all(
        (not (v := check_mp_isometry(R, m, rws))) and v.witness == (0, 1) for m in range(1, 7)
    )
    ok = base.holds and sq_ok and cube.holds and r2 and r_fails
    return ok, (
        f"T (3,inf) on {len(ws)} witnesses: {base.holds}; T^2 falsified at "
        f"{_fmt(sq.witness)} maxima {_fmt(sq.maxima)}; T^3: {cube.holds}; root-fail T^2=I (1,2): {r2}; "
        f"T fails m=1..6 at (0,1): {r_fails}"
    )


def criterion_6():
    details = []
    ok = True
    for k in (2, 3, 4):
        J = jordan_unipotent(k)
        ws = default_witnesses(k, 50, SEED)
        passes = check_mp_isometry(J, 2 * k - 1, ws)
        fails = check_mp_isometry(J, 2 * k - 2, ws)
        ok &= passes.holds and not fails.holds
        if k == 3:
            res_ok = fails.witness_shift == 0 and fails.residual == 6 and fails.witness == (0, 0, 1)
            ok &= res_ok
            details.append(f"k=3 residual {fails.residual} at shift {fails.witness_shift}")
        Jinv = J.inverse()
        for x in ws[:20]:
            q = interpolating_poly(orbit_gauge(J, x, 4 * k).values, 2 * k - 1)
            ok &= q.degree % 2 == 0
            ok &= all(
                extend_negative(q, d) == orbit_gauge(Jinv, x, d).values[d] for d in range(1, 6)
            )
        details.append(f"k={k} pass({2 * k - 1})={passes.holds} fail({2 * k - 2})={not fails.holds}")
    return bool(ok), "; ".join(details) + "; even degrees and negative extension checked"


def criterion_7():
    rng = random.Random(SEED)
    contradictions = 0
    checks = 0
    for J, m in ((jordan_unipotent(2), 3), (jordan_unipotent(3), 5)):
        ws = default_witnesses(J.dim, 200, SEED)
        for x in ws:
            g = orbit_gauge(J, x, 4 * (m + 1) * 4).values
            premise = is_m_sequence(g, m).holds
            for r in (2, 3, 4):
                checks += 1
                sub = subsample(g, r, rng.randrange(4))
                if premise and not is_m_sequence(sub, m).holds:
                    contradictions += 1
            r, s = rng.randint(1, 4), rng.randint(1, 4)
            mr = min_interp_degree(subsample(g, r)[: 2 * m + 2]) + 1
            ms = min_interp_degree(subsample(g, s)[: 2 * m + 2]) + 1
            l = min(mr, ms)
            qr = interpolating_poly(subsample(g, r), l)
            qs = interpolating_poly(subsample(g, s), l)
            checks += 1
            if qr.degree != qs.degree or qr.degree > l - 1:
                contradictions += 1
    J = jordan_unipotent(2)
    res = root_gcd_check(J, 2, 3, 3, default_witnesses(2, 200, SEED))
    checks += 1
    contradictions += res.contradiction
    ok = contradictions == 0 and res.premise and res.conclusion.holds
    return ok, (
        f"{checks} premise=>conclusion audits, {contradictions} contradictions; "
        f"root gcd(2,3)=1 premise={res.premise} conclusion={res.conclusion.holds}"
    )


def criterion_8():
    g = Grid(EXAMPLE_ROWS, row_bound=2, col_bound=1)
    r = interpolate_two_var(g)
    expected = TwoVarPoly.from_terms(
        {(0, 0): 1, (0, 1): 2, (0, 2): 1, (1, 0): 1, (1, 1): 1, (1, 2): -1}
    )
    diag = [diagonal_poly(r)(k) for k in range(1, 5)]
    rng = random.Random(SEED)
    round_trips = 0
    for _ in range(100):
        m, n = rng.randint(0, 4), rng.randint(0, 4)
        r0 = TwoVarPoly.from_terms(
            {(i, j): Fraction(rng.randint(-20, 20), rng.randint(1, 6))
             for i in range(m + 1) for j in range(n + 1)}
        )
        grid = sample_grid(r0, m + 2, n + 2, row_bound=n, col_bound=m)
        round_trips += interpolate_two_var(grid) == r0
    ok = r == expected and diag == [5, 7, 1, -19] and round_trips == 100
    return ok, f"r = {r}; diagonal {_fmt(diag)}; round trips {round_trips}/100"


def criterion_9():
    rng = random.Random(SEED)
    agree = holds_seen = fails_seen = 0
    total = 0
    for _ in range(200):
        deg = rng.randint(0, 8)
        q = Polynomial(tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(deg + 1)))
        values = [q(n) for n in range(deg + 6)]
        if rng.random() < 0.5:
            values[rng.randrange(len(values))] += rng.randint(1, 5)
        d = min_interp_degree(values)
        for m in range(1, len(values)):
            total += 1
            lhs = is_m_sequence(values, m).holds
            agree += lhs == (d <= m - 1)
            holds_seen += lhs
            fails_seen += not lhs
    ok = agree == total and holds_seen > 0 and fails_seen > 0
    return ok, f"{agree}/{total} agree (holding {holds_seen}, failing {fails_seen})"


CLI_RUNS = [
    ["graph", "--m", "3", "--format", "dot", "--hamiltonian"],
    ["graph", "--m", "4", "--format", "json", "--prune", "--analyze", "--hamiltonian"],
    ["check-op", "--example", "power-fail-3inf", "--stride", "2", "--infty", "--m", "3"],
    ["check-op", "--example", "jordan:3", "--m", "5", "--seed", "11"],
    ["count", "--m", "3", "--bits", "10", "--predicted"],
    ["paths", "--m", "3", "--k", "16"],
    ["step-check", "--m", "4", "--k", "2"],
]


def _cli_digest(argv):
    proc = subprocess.run(
        [sys.executable, "-m", "isolab", *argv], capture_output=True, check=False
    )
    return proc.returncode, hashlib.sha256(proc.stdout).hexdigest()


def criterion_10():
    same = [_cli_digest(a) == _cli_digest(a) for a in CLI_RUNS]
    return all(same), f"{sum(same)}/{len(same)} commands byte-identical across runs"


CRITERIA = [
    (1, "Figure-1 structure", criterion_1),
    (2, "Figure-2/3 structure", criterion_2),
    (3, "Hamiltonicity", criterion_3),
    (4, "Counting", criterion_4),
    (5, "Counterexample suite", criterion_5),
    (6, "Jordan witnesses", criterion_6),
    (7, "Theorem suite", criterion_7),
    (8, "Polynomial-matrix suite", criterion_8),
    (9, "Equivalence property", criterion_9),
    (10, "Determinism", criterion_10),
]


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn):
    ok, detail = fn()
    print(f"\ncriterion {number:2d} {title}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for number, title, fn in CRITERIA:
        ok, detail = fn()
        failures += not ok
        print(f"criterion {number:2d} {title}: {'PASS' if ok else 'FAIL'} - {detail}")
    sys.exit(1 if failures else 0)
