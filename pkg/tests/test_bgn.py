from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, strategies as st

from fmcoh.bgn import (
    STABLE,
    ZERO,
    BGNTest,
    BGNType,
    bgn_feasible,
    delta_alpha,
    esta_bgn_test,
    ext_dimension,
    safe_epsilon,
    transform_bgn,
)
from fmcoh.chern import ChernCharacter, DomainError, slope
from fmcoh.systems import SystemType, gl_nonempty


@st.composite
def bgn_types(draw, r_max=12, d_max=12):
    r = draw(st.integers(2, r_max))
    k = draw(st.integers(1, r - 1))
    d = draw(st.integers(1, d_max))
    return BGNType(r, d, k)


def test_bgn_type_validation():
    assert BGNType(3, 2, 1).quotient == ChernCharacter(2, 2)
    with pytest.raises(DomainError):
        BGNType(2, 2, 2)
    with pytest.raises(DomainError):
        BGNType(3, 0, 1)
    with pytest.raises(DomainError, match="gcd"):
        BGNType(3, 2, 1, STABLE)
    assert BGNType(3, 3, 1, STABLE).quotient_status == STABLE


def test_ext_dimension_examples():
    assert ext_dimension(ChernCharacter(2, 3)) == 3
    assert ext_dimension(ChernCharacter(1, 1)) == 1
    with pytest.raises(DomainError, match="not guaranteed"):
        ext_dimension(ChernCharacter(2, 0))


def test_bgn_feasible_examples():
    assert bgn_feasible(3, 2, 1) == (True, "ok")
    res = bgn_feasible(3, 1, 2)
    assert not res and "dimension 1" in res.reason
    assert not bgn_feasible(2, 5, 2)
    assert not bgn_feasible(3, 0, 1)
    assert not bgn_feasible(3, 2, 0)


def test_transform_bgn_examples():
    assert transform_bgn(1, BGNType(3, 2, 1), "phi") == BGNType(5, 2, 1)
    assert transform_bgn(1, BGNType(5, 2, 1), "psi") == BGNType(3, 2, 1)
    assert transform_bgn(1, BGNType(3, 3, 1, STABLE), "phi") == BGNType(6, 3, 1, STABLE)
    with pytest.raises(DomainError, match="not a BGN type"):
        transform_bgn(1, BGNType(3, 2, 1), "psi")
    with pytest.raises(DomainError, match="positive integer"):
        transform_bgn(True, BGNType(3, 2, 1), "phi")


def test_delta_alpha_examples():
    t = BGNType(3, 2, 1)
    eps = Fraction(1, 10)
    assert delta_alpha(t, 1, 1, ZERO, eps) == Fraction(1, 15)
    assert delta_alpha(t, 2, 1, ChernCharacter(1, 1), eps) == Fraction(1, 60)
    # slope-matched and k'/r' = k/r: both terms vanish
    assert delta_alpha(BGNType(4, 2, 2), 2, 1, ChernCharacter(1, 1), eps) == 0


def test_delta_alpha_errors():
    t = BGNType(3, 2, 1)
    with pytest.raises(DomainError, match="torsion"):
        delta_alpha(t, 1, 1, ChernCharacter(0, 1), Fraction(1, 10))
    with pytest.raises(DomainError, match="r' = k'"):
        delta_alpha(t, 2, 1, ZERO, Fraction(1, 10))
    with pytest.raises(DomainError, match="r' - k'"):
        delta_alpha(t, 2, 1, ChernCharacter(2, 1), Fraction(1, 10))
    with pytest.raises(DomainError, match="epsilon"):
        delta_alpha(t, 1, 1, ZERO, 0)


def test_esta_bgn_test_examples():
    assert esta_bgn_test(BGNType(3, 2, 1), 2, 1, 1) is BGNTest.COMPATIBLE
    with pytest.raises(DomainError, match="not a wall subextension"):
        esta_bgn_test(BGNType(4, 2, 1), 2, 1, 0)
    assert esta_bgn_test(BGNType(4, 2, 2), 2, 1, 1) is BGNTest.VIOLATING


@given(bgn_types(), st.integers(1, 6))
def test_round_trips(t, a):
    assert transform_bgn(a, transform_bgn(a, t, "phi"), "psi") == t
    try:
        back = transform_bgn(a, t, "psi")
    except DomainError:
        assert t.r - a * t.d <= t.k
        return
    assert transform_bgn(a, back, "phi") == t


@given(st.integers(1, 15), st.integers(1, 15), st.integers(1, 15), st.integers(1, 5))
def test_feasibility_orbit_invariant(r, d, k, a):
    # for r <= k the rank condition alone can flip along the orbit
    assume(k < r)
    assert bool(bgn_feasible(r, d, k)) == bool(bgn_feasible(r + a * d, d, k))


@given(bgn_types())
def test_inclusion_chain(t):
    s = SystemType(*t.astuple())
    if gl_nonempty(s):
        assert bgn_feasible(*t.astuple())
    if gcd(t.r - t.k, t.d) == 1 and bgn_feasible(*t.astuple()):
        BGNType(t.r, t.d, t.k, STABLE)
        assert gl_nonempty(s)


@st.composite
def bgn_with_subs(draw):
    t = draw(bgn_types(r_max=8, d_max=8))
    subs = []
    for _ in range(draw(st.integers(1, 6))):
        fr = draw(st.integers(1, t.r - t.k))
        kp = draw(st.integers(0, t.k))
        # a subsheaf of a semistable F has slope at most mu(F)
        fd = draw(st.integers(-6, 6))
        assume(Fraction(fd, fr) <= slope(t.quotient))
        subs.append((fr + kp, kp, ChernCharacter(fr, fd)))
    return t, subs


@given(bgn_with_subs())
def test_safe_epsilon_keeps_strictly_lower_slopes_positive(case):
    t, subs = case
    eps = safe_epsilon(t, subs)
    assert 0 < eps < slope(t.quotient)
    for r_sub, k_sub, f_sub in subs:
        value = delta_alpha(t, r_sub, k_sub, f_sub, eps)
        if slope(f_sub) < slope(t.quotient):
            assert value > 0
            # no sign change anywhere below eps
            assert delta_alpha(t, r_sub, k_sub, f_sub, eps / 7) > 0
