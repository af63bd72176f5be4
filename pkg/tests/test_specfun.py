import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from adzeta import specfun
from adzeta.errors import PoleAt

SQRT_PI = math.sqrt(math.pi)


def rel(a, b):
    return abs(a - b) / abs(b)


# ---------------------------------------------------------------- gamma


def test_gamma_trivial_values():
    assert specfun.gamma(1.0) == pytest.approx(1.0, rel=1e-15)
    assert specfun.gamma(0.5) == pytest.approx(SQRT_PI, rel=1e-14)


@pytest.mark.parametrize("s, expected", [
    # mpmath at 30 digits
    (0.3 + 2j, 0.0574653375695880334598999936647 - 0.0749849125826461381758161169924j),
    (-2.5, -0.945308720482941881225689324449),
    (7.25, 1155.38101391998968720270376797),
    (-4.7 + 3j, 0.00000376486939409205256730919011036 + 0.0000154341344801717364717578344322j),
])
def test_gamma_against_mpmath(s, expected):
    assert rel(specfun.gamma(s), expected) < 1e-13


def test_gamma_returns_float_for_real_input():
    assert isinstance(specfun.gamma(2.5), float)
    assert isinstance(specfun.gamma(2.5 + 0j), complex)


@pytest.mark.parametrize("s", [0, -1, -7, 0j, -3 + 0j])
def test_gamma_poles(s):
    with pytest.raises(PoleAt):
        specfun.gamma(s)


def _duplication_residual(s):
    lhs = complex(specfun.gamma(s + 0.5))
    rhs = SQRT_PI * complex(specfun.gamma(2 * s)) / (2 ** (2 * s - 1) * complex(specfun.gamma(s)))
    return abs(lhs - rhs) / abs(lhs)


@pytest.mark.parametrize("s", [0.3, 1.7, 2 + 1j])
def test_duplication_examples(s):
    assert _duplication_residual(s) < 1e-12


def test_duplication_grid():
    # 100 points of the strip -5 < Re s < 10, |Im s| < 10, avoiding poles of all three factors
    res = []
    for re in np.linspace(-4.8, 9.7, 10):
        for im in np.linspace(-9.5, 9.5, 10):
            s = complex(re + 0.013, im + 0.021)
            res.append(_duplication_residual(s))
    assert max(res) < 1e-12


def test_gamma_strip_against_mpmath():
    worst = 0.0
    for re in np.linspace(-4.9, 9.9, 15):
        for im in np.linspace(-9.9, 9.9, 9):
            s = complex(re + 0.017, im)
            ref = complex(mpmath.gamma(mpmath.mpc(s.real, s.imag)))
            worst = max(worst, abs(specfun.gamma(s) - ref) / abs(ref))
    assert worst < 1e-13


@given(st.floats(min_value=0.05, max_value=40.0))
def test_lgamma_matches_log_gamma(x):
    assert specfun.lgamma_pos(x) == pytest.approx(math.lgamma(x), abs=1e-13, rel=1e-13)


# ---------------------------------------------------------------- erfc


def test_erfc_values():
    assert specfun.erfc(0.0) == 1.0
    # quadrature of 2/sqrt(pi) int_1^inf exp(-s^2) ds with mpmath at 30 digits
    assert specfun.erfc(1.0) == pytest.approx(0.157299207050285130658779364917, abs=1e-15)


@pytest.mark.parametrize("x", [0.5, 1.0, 3.0])
def test_erfc_symmetry(x):
    assert specfun.erfc(-x) + specfun.erfc(x) == pytest.approx(2.0, abs=1e-15)


def test_erfc_absolute_accuracy():
    worst = 0.0
    for x in np.linspace(-30, 30, 1201):
        worst = max(worst, abs(specfun.erfc(x) - float(mpmath.erfc(float(x)))))
    assert worst < 1e-14


def test_erfc_monotone_and_gaussian_bound():
    xs = np.linspace(0.0, 12.0, 1000)
    vals = [specfun.erfc(x) for x in xs]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert all(0.0 < v <= math.exp(-x * x) for x, v in zip(xs, vals))


@given(st.floats(min_value=-5.0, max_value=25.0))
def test_erfcx_consistent_with_erfc(x):
    ref = float(mpmath.erfc(x) * mpmath.exp(x * x))
    assert specfun.erfcx(x) == pytest.approx(ref, rel=1e-13)


# ---------------------------------------------------------------- Hurwitz zeta


def test_hurwitz_special_values():
    assert specfun.hurwitz_zeta(0.0, 1.0) == pytest.approx(-0.5, abs=1e-14)
    assert specfun.hurwitz_zeta(0.0, 0.5) == pytest.approx(0.0, abs=1e-14)
    assert specfun.hurwitz_zeta(-1.0, 1.0) == pytest.approx(-1.0 / 12.0, abs=1e-11)


def test_hurwitz_pole():
    with pytest.raises(PoleAt):
        specfun.hurwitz_zeta(1.0, 0.3)


def test_hurwitz_direct_tail():
    # zeta(3) minus the first 10^4 terms against the Euler-Maclaurin tail of the direct sum
    n = 10_000
    partial = math.fsum(k ** -3.0 for k in range(1, n + 1))
    tail = 1.0 / (2 * n * n) - 1.0 / (2 * n ** 3) + 1.0 / (4 * n ** 4)
    assert specfun.hurwitz_zeta(3.0, 1.0) - partial == pytest.approx(tail, abs=1e-10)


@pytest.mark.parametrize("s, a, expected", [
    # mpmath.zeta(s, a), 30 digits
    (2.5, 0.75, 2.49154238551193522445412267963),
    (-0.5, 1.5, -0.646218315605952604082249857195),
    (0.3 + 4j, 0.5, -1.28471998546591869424258278513 + 0.0242348905968465702905931348754j),
])
def test_hurwitz_against_mpmath(s, a, expected):
    assert rel(specfun.hurwitz_zeta(s, a), expected) < 1e-11


@given(st.floats(min_value=-1.0, max_value=10.0).filter(lambda s: abs(s - 1.0) > 1e-3),
       st.floats(min_value=0.1, max_value=5.0))
def test_hurwitz_random_real(s, a):
    ref = float(mpmath.zeta(s, a))
    assert specfun.hurwitz_zeta(s, a) == pytest.approx(ref, rel=1e-11, abs=1e-13)


@given(st.floats(min_value=0.1, max_value=5.0))
def test_hurwitz_shift_identity(a):
    # zeta(s, a) - zeta(s, a + 1) = a^{-s}
    s = 2.3 + 1.1j
    diff = specfun.hurwitz_zeta(s, a) - specfun.hurwitz_zeta(s, a + 1.0)
    assert abs(diff - a ** (-s)) < 1e-12 * max(1.0, abs(a ** (-s)))


def test_hurwitz_deriv0_against_numeric():
    a = 0.7
    h = 1e-5
    num = (specfun.hurwitz_zeta(h, a) - specfun.hurwitz_zeta(-h, a)) / (2 * h)
    assert specfun.hurwitz_zeta_deriv0(a) == pytest.approx(num, abs=1e-8)


# ---------------------------------------------------------------- Gamma-limit function


def test_gamma_limit_at_zero():
    assert specfun.gamma_limit_F(0.0) == pytest.approx(-0.5 * math.log(2.0), abs=1e-14)


def test_gamma_limit_at_one():
    assert specfun.gamma_limit_F(1.0) == pytest.approx(-0.125, abs=1e-14)


@pytest.mark.parametrize("s, expected", [
    # mpmath, 30 digits, from the defining difference
    (0.05, -0.308518937122788607652860020291),
    (1e-3, -0.3457240792497012266513220392),
    (0.5, -0.161018670952500863350502145055),
    (1 + 1j, -0.0777096193058033012486252080517 + 0.00438504570868390193821126279502j),
])
def test_gamma_limit_against_mpmath(s, expected):
    assert abs(specfun.gamma_limit_F(s) - expected) < 1e-14


def test_gamma_limit_near_zero_richardson():
    f0 = specfun.gamma_limit_F(0.0)
    a, b = specfun.gamma_limit_F_naive(1e-2), specfun.gamma_limit_F_naive(1e-3)
    extrap = (10.0 * b - a) / 9.0
    assert abs(extrap - f0) < 1e-4
    assert abs(specfun.gamma_limit_F(1e-4) - f0) < 1e-3


def test_gamma_limit_lipschitz_at_zero():
    f0 = specfun.gamma_limit_F(0.0)
    hs = [10.0 ** -k for k in range(2, 7)]
    ratios = [abs(specfun.gamma_limit_F(h) - f0) / h for h in hs]
    assert max(ratios) < 10.0


@given(st.complex_numbers(max_magnitude=0.099, allow_nan=False, allow_infinity=False))
def test_gamma_limit_series_matches_mpmath(s):
    if abs(s) < 1e-12:
        return
    ms = mpmath.mpc(s.real, s.imag)
    with mpmath.workdps(40):
        ref = complex(mpmath.gamma(ms + 0.5) / (4 * ms * mpmath.sqrt(mpmath.pi)) - mpmath.gamma(ms) / 4)
    assert abs(complex(specfun.gamma_limit_F(s)) - ref) < 1e-13


def test_gamma_limit_branches_agree_at_switch():
    s = 0.1
    assert specfun.gamma_limit_F(s - 1e-12) == pytest.approx(specfun.gamma_limit_F(s + 1e-12), abs=1e-11)


# ---------------------------------------------------------------- incomplete Gamma


@given(st.floats(min_value=1e-3, max_value=50.0))
def test_incomplete_gamma_s1(x):
    assert specfun.incomplete_gamma_upper(1.0, x) == pytest.approx(math.exp(-x), rel=1e-13)


def test_incomplete_gamma_small_x_limit():
    assert specfun.incomplete_gamma_upper(2.0, 1e-8) == pytest.approx(1.0, abs=1e-7)


def test_incomplete_gamma_quadrature_oracle():
    # mpmath.quad of int_3^inf t^{1.5} e^{-t} dt, 30 digits
    assert specfun.incomplete_gamma_upper(2.5, 3.0) == pytest.approx(0.407069175871302998434239174728, rel=1e-11)


@pytest.mark.parametrize("s, x, expected", [
    # mpmath.gammainc(s, x)
    (-1.0, 0.3, 1.56371741726321293251185681588),
    (0.0, 2.0, 0.0489005107080611195672398352281),
    (-0.5, 4.0, 0.00173350012738884556730719824717),
    (1.5 + 1j, 0.7, 0.471223249420653960994513523536 + 0.269015549230371931634899104003j),
])
def test_incomplete_gamma_against_mpmath(s, x, expected):
    assert rel(specfun.incomplete_gamma_upper(s, x), expected) < 1e-12


@given(st.floats(min_value=-3.0, max_value=6.0), st.floats(min_value=0.01, max_value=30.0))
def test_incomplete_gamma_random(s, x):
    if abs(s - round(s)) < 1e-6 and s <= 0:
        s = round(s)
    ref = float(mpmath.gammainc(s, x))
    assert specfun.incomplete_gamma_upper(s, x) == pytest.approx(ref, rel=1e-11)


def test_compensated_sum_beats_naive():
    vals = [1.0, 1e100, 1.0, -1e100]
    assert specfun.compensated_sum(vals) == 2.0
    assert specfun.compensated_sum([1 + 1j, 1e-16j]) == pytest.approx(1 + 1j)
