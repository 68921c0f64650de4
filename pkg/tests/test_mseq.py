from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isolab.errors import InsufficientData, IsolabError, NotMSequence
from isolab.mseq import (
    MVerdict,
    dumps_prefix,
    extend_negative,
    interpolating_poly,
    is_m_sequence,
    loads_prefix,
    subsample,
)
from isolab.polycore import Polynomial, min_interp_degree, poly_scale_arg
from oracles import nth_difference, orbit_sq_norms, solve_vandermonde

F = Fraction
JORDAN2 = [[1, 1], [0, 1]]

rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 5))
polys = st.lists(rationals, max_size=8).map(Polynomial)


def test_jordan_gauge_oracle():
    assert orbit_sq_norms(JORDAN2, (0, 1), 5) == [1, 2, 5, 10, 17, 26]


def test_is_m_sequence_examples():
    assert is_m_sequence([5, 8, 11, 14, 17], 2).holds
    assert is_m_sequence(orbit_sq_norms(JORDAN2, (0, 1), 5), 3).holds
    v = is_m_sequence([1, 4, 1, 4, 1, 4], 3)
    assert not v.holds and v.witness_shift == 0
    assert v.residual == -nth_difference([1, 4, 1, 4], 3) == -12


def test_is_m_sequence_reports_first_shift():
    v = is_m_sequence([0, 0, 0, 0, 1, 0], 2)
    assert (v.witness_shift, v.residual) == (2, 1)


def test_is_m_sequence_short():
    with pytest.raises(InsufficientData):
        is_m_sequence([1, 2], 2)


def test_verdict_invariant():
    with pytest.raises(IsolabError):
        MVerdict(False)
    with pytest.raises(IsolabError):
        MVerdict(False, 0, F(0))


def test_interpolating_poly_examples():
    assert interpolating_poly([F(3, 2)] * 5, 1) == Polynomial.constant(F(3, 2))
    q = interpolating_poly([1, 2, 5, 10, 17, 26], 3)
    assert q.coeffs == solve_vandermonde([(0, 1), (1, 2), (2, 5)]) == (1, 0, 1)
    q = interpolating_poly([5, 8, 11, 14, 17], 2)
    assert q == Polynomial((5, 3))
    assert [q(n) for n in range(5)] == [5, 8, 11, 14, 17]


def test_interpolating_poly_rejects():
    with pytest.raises(NotMSequence):
        interpolating_poly([1, 4, 1, 4], 3)


def test_subsample_examples():
    assert subsample([1, 2, 5, 10, 17, 26], 2, 0) == (1, 5, 17)
    assert subsample([2, 2, 1, 1, 2, 2, 1, 1], 2, 0) == (2, 1, 2, 1)
    assert subsample([0, 1, 2, 3, 4, 5], 3, 1) == (1, 4)
    with pytest.raises(IsolabError):
        subsample([1, 2], 1, 2)


def test_extend_negative_examples():
    sq = Polynomial((1, 0, 1))
    # J^{-1}(0,1) = (-1,1)
    assert extend_negative(sq, 1) == 2 == (-1) ** 2 + 1 ** 2
    assert extend_negative(Polynomial.constant(4), 7) == 4
    assert extend_negative(Polynomial((5, 3)), 2) == -1


def test_prefix_json_round_trip():
    prefix = (F(1, 2), F(-3), F(7, 9))
    text = dumps_prefix(prefix)
    assert text == '["1/2", "-3", "7/9"]'
    assert loads_prefix(text) == prefix
    with pytest.raises(IsolabError):
        loads_prefix("[0.5]")
    with pytest.raises(IsolabError):
        loads_prefix("[]")


@settings(max_examples=60)
@given(polys, st.integers(1, 5), st.integers(0, 6), st.integers(0, 2))
def test_subsample_closure(q, r, offset, slack):
    m = max(q.degree, 0) + 1 + slack
    a = [q(n) for n in range(offset + r * (m + 4) + 1)]
    assert is_m_sequence(a, m)
    assert is_m_sequence(subsample(a, r, offset), m)


@settings(max_examples=60)
@given(st.lists(rationals, min_size=2, max_size=12), st.integers(1, 11))
def test_equivalence_with_min_degree(values, m):
    if len(values) < m + 1:
        m = len(values) - 1
    assert is_m_sequence(values, m).holds == (min_interp_degree(values) <= m - 1)


@settings(max_examples=40)
@given(polys, st.integers(1, 4), st.integers(1, 4))
def test_min_lemma_degrees_agree(q, r, s):
    """Strided interpolants q(r t) and q(s t) share a degree bounded by
    the smaller m."""
    deg = max(q.degree, 0)
    a = [q(n) for n in range(r * s * (deg + 3) + 1)]
    m, n = deg + 1, deg + 2
    ar, as_ = subsample(a, r), subsample(a, s)
    assert is_m_sequence(ar, m) and is_m_sequence(as_, n)
    qr, qs = interpolating_poly(ar, m), interpolating_poly(as_, m)
    assert qr.degree == qs.degree <= min(m, n) - 1
    assert poly_scale_arg(qr, s) == poly_scale_arg(qs, r)
