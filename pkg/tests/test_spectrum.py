import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adzeta.errors import ConfigError, ContinuationUnavailable, NonPositiveEigenvalue, PoleAt
from adzeta.spectrum import (
    Arithmetic,
    erfc_trace,
    heat_trace_Y,
    load_spectrum_file,
    make_spectrum,
    parse_spectrum_text,
    POISSON_SWITCH_T,
    preset,
    regularized_count,
    scaled,
    small_t_terms,
    union,
    zeta_B2,
    zeta_B2_at_0,
    zeta_B2_deriv0,
    zeta_B2_direct,
    zeta_B2_mellin,
)
from adzeta import specfun


# ---------------------------------------------------------------- construction


def test_arithmetic_presets():
    s = make_spectrum("arithmetic", {"alpha": 1.0, "beta": 0.0}, 10_000)
    assert s.lam[0] == 1.0 and s.lam[-1] == 10_000.0 and np.all(s.mult == 1)
    h = make_spectrum("arithmetic", {"alpha": 1.0, "beta": -0.5}, 10_000)
    assert np.array_equal(h.lam, np.arange(1, 10_001) - 0.5)


def test_explicit_sorted_and_merged():
    s = make_spectrum("explicit", [(2, 1), (1, 3)])
    assert s.entries == [(1.0, 3), (2.0, 1)]
    m = make_spectrum("explicit", [(2, 1), (1, 3), (2, 2)])
    assert m.entries == [(1.0, 3), (2.0, 3)]


@pytest.mark.parametrize("bad", [[(0.0, 1)], [(1.0, 1), (-2.0, 1)]])
def test_nonpositive_rejected(bad):
    with pytest.raises(NonPositiveEigenvalue):
        make_spectrum("explicit", bad)


def test_arithmetic_first_eigenvalue_must_be_positive():
    with pytest.raises(NonPositiveEigenvalue):
        make_spectrum("arithmetic", {"alpha": 1.0, "beta": -1.0})


def test_spectrum_is_immutable(integer_spec):
    with pytest.raises(ValueError):
        integer_spec.lam[0] = 5.0


def test_parse_spectrum_text_errors():
    s = parse_spectrum_text("# comment\n1.5 2\n0.5 1  # trailing\n")
    assert s.entries == [(0.5, 1), (1.5, 2)]
    with pytest.raises(ConfigError) as exc:
        parse_spectrum_text("1.0 1\nfoo 2\n")
    assert exc.value.line == 2
    with pytest.raises(NonPositiveEigenvalue) as exc2:
        parse_spectrum_text("1.0 1\n-0.5 1\n", source="spec.txt")
    assert "spec.txt" in str(exc2.value) and "2" in str(exc2.value)


def test_load_spectrum_file(tmp_path):
    p = tmp_path / "y.txt"
    p.write_text("1 2\n3 1\n")
    assert load_spectrum_file(str(p)).entries == [(1.0, 2), (3.0, 1)]


# ---------------------------------------------------------------- heat trace


def test_heat_trace_integer_t1(integer_spec):
    # 2 sum exp(-n^2) by mpmath nsum, 30 digits
    assert heat_trace_Y(integer_spec, 1.0) == pytest.approx(0.772637204826652153031250551158, rel=1e-14)


def test_heat_trace_half_integer_small_t(half_spec):
    # 2 sum exp(-(n - 1/2)^2 * 0.05) by mpmath nsum
    assert heat_trace_Y(half_spec, 0.05) == pytest.approx(7.92665459521202180668119653386, rel=1e-13)


def test_poisson_matches_direct_at_t001(integer_spec):
    direct = 2.0 * math.fsum(math.exp(-n * n * 0.01) for n in range(1, 10_001))
    assert heat_trace_Y(integer_spec, 0.01) == pytest.approx(direct, rel=1e-12)


@pytest.mark.parametrize("name", ["integer", "half-integer"])
def test_poisson_switch_continuous(name):
    s = preset(name)
    t = POISSON_SWITCH_T
    a = heat_trace_Y(s, math.nextafter(t, 0.0))
    b = heat_trace_Y(s, math.nextafter(t, 1.0))
    assert a == pytest.approx(b, rel=1e-13)


@pytest.mark.parametrize("name", ["integer", "half-integer"])
def test_heat_trace_completely_monotone(name):
    s = preset(name)
    ts = np.geomspace(1e-3, 20.0, 60)
    v = np.array([heat_trace_Y(s, float(t)) for t in ts])
    assert np.all(v > 0)
    assert np.all(np.diff(v) < 0)
    # convex in t: secant slopes increase
    slopes = np.diff(v) / np.diff(ts)
    assert np.all(np.diff(slopes) > 0)


def test_heat_trace_large_t_vanishes(integer_spec):
    assert heat_trace_Y(integer_spec, 50.0) < 1e-20
    assert heat_trace_Y(integer_spec, 800.0) == 0.0


def test_small_t_terms_reproduce_heat_trace(integer_spec, half_spec):
    for s in (integer_spec, half_spec):
        t = 1e-3
        approx = sum(c * t ** e for e, c in small_t_terms(s))
        assert heat_trace_Y(s, t) == pytest.approx(approx, rel=1e-12)


@pytest.mark.parametrize("t", [1e-4, 3e-3, 0.05, 0.5, 2.0])
def test_erfc_trace_matches_direct(half_spec, t):
    direct = math.fsum(specfun.erfc(l * math.sqrt(t)) for l in half_spec.lam)
    assert erfc_trace(half_spec, t) == pytest.approx(direct, rel=1e-11)


# ---------------------------------------------------------------- zeta


def test_zeta_integer_values(integer_spec):
    assert zeta_B2(integer_spec, 0.0) == pytest.approx(-1.0, abs=1e-14)
    assert zeta_B2(integer_spec, 2.0) == pytest.approx(math.pi ** 4 / 45.0, rel=1e-13)
    assert zeta_B2(integer_spec, 2.0) == pytest.approx(zeta_B2_direct(integer_spec, 2.0), rel=1e-12)
    # 2 zeta_R(-1), 2 zeta_R(3) (mpmath)
    assert zeta_B2(integer_spec, -0.5) == pytest.approx(-1.0 / 6.0, abs=1e-13)
    assert zeta_B2(integer_spec, 1.5) == pytest.approx(2.40411380631918857079947632302, rel=1e-13)


def test_zeta_half_integer_values(half_spec):
    assert zeta_B2(half_spec, 0.0) == pytest.approx(0.0, abs=1e-14)
    # 2 zeta_H(-1, 1/2) and 2 zeta_H(4, 1/2) (mpmath)
    assert zeta_B2(half_spec, -0.5) == pytest.approx(1.0 / 12.0, abs=1e-13)
    assert zeta_B2(half_spec, 2.0) == pytest.approx(32.4696970113341457454801108962, rel=1e-13)


def test_zeta_derivative_at_zero(integer_spec, half_spec):
    # -2 ln(2 pi) and -2 ln 2 (mpmath)
    assert zeta_B2_deriv0(integer_spec) == pytest.approx(-3.67575413281869096712131894562, abs=1e-12)
    assert zeta_B2_deriv0(half_spec) == pytest.approx(-1.38629436111989061883446424292, abs=1e-12)


def test_zeta_pole(integer_spec):
    with pytest.raises(PoleAt):
        zeta_B2(integer_spec, 0.5)


def test_regularized_count(integer_spec, half_spec):
    assert zeta_B2_at_0(integer_spec) == pytest.approx(-1.0)
    assert regularized_count(integer_spec) == pytest.approx(-0.5)
    assert regularized_count(half_spec) == pytest.approx(0.0, abs=1e-14)


def test_doubled_multiplicity_doubles(integer_spec):
    d = scaled(integer_spec, 2)
    assert zeta_B2_at_0(d) == 2.0 * zeta_B2_at_0(integer_spec)
    assert regularized_count(d) == 2.0 * regularized_count(integer_spec)
    assert heat_trace_Y(d, 0.3) == pytest.approx(2.0 * heat_trace_Y(integer_spec, 0.3), rel=1e-15)


@pytest.mark.parametrize("s", [2.0, 3.0, 1.5, 0.75, 2.0 + 1.5j, -0.5])
@pytest.mark.parametrize("name", ["integer", "half-integer"])
def test_mellin_route_matches_hurwitz(name, s):
    spec = preset(name)
    a = zeta_B2(spec, s)
    b = zeta_B2_mellin(spec, s)
    assert abs(a - b) <= 1e-9 * max(1.0, abs(a))


@pytest.mark.parametrize("s", [0.3, 1.0, 2.0, 4.5])
def test_zeta_real_on_real_axis(integer_spec, s):
    z = zeta_B2(integer_spec, complex(s))
    assert abs(z.imag) < 1e-13


def test_explicit_zeta_is_finite_sum():
    s = make_spectrum("explicit", [(0.7, 2), (1.3, 1), (2.9, 4)])
    for x in (2.0, 0.8, -0.5, 0.2 + 1j):
        exact = zeta_B2_direct(s, x)
        assert abs(zeta_B2(s, x) - exact) < 1e-9 * max(1.0, abs(exact))
    assert zeta_B2(s, 0.0) == pytest.approx(14.0)


def test_explicit_continuation_strip():
    s = make_spectrum("explicit", [(1.0, 1)])
    with pytest.raises(ContinuationUnavailable):
        zeta_B2(s, -1.5)


@given(st.lists(st.tuples(st.floats(0.3, 5.0), st.integers(1, 3)), min_size=1, max_size=4),
       st.lists(st.tuples(st.floats(0.3, 5.0), st.integers(1, 3)), min_size=1, max_size=4))
def test_zeta_linear_under_union(a, b):
    sa = make_spectrum("explicit", a)
    sb = make_spectrum("explicit", b)
    su = union(sa, sb)
    for x in (2.0, 1.2, 0.6, 3.0 + 0.5j, 0.9):
        lhs = zeta_B2(su, x)
        rhs = zeta_B2(sa, x) + zeta_B2(sb, x)
        assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(lhs))


@given(st.floats(min_value=0.2, max_value=3.0), st.floats(min_value=-0.45, max_value=2.0))
def test_arithmetic_scaling(alpha, beta_frac):
    beta = beta_frac * alpha if beta_frac > -1.0 else 0.0
    s = make_spectrum(Arithmetic(alpha, beta), None, 50_000)
    assert zeta_B2(s, 2.0) == pytest.approx(zeta_B2_direct(s, 2.0), rel=1e-9)
