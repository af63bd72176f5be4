import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adzeta import modes
from adzeta.errors import ContinuationUnavailable
from adzeta.regsum import (
    ProblemFamily,
    aggregate_zeta,
    aggregate_zeta_deriv0,
    aps_family,
    chiral_family,
    circle_family,
    circle_heat_zeta,
    log_det_naive,
    log_det_regularized,
    regularized_constant_sum,
    remainder_sum,
    template_coefficients,
)
from adzeta.spectrum import make_spectrum, preset, scaled


@pytest.fixture(scope="module")
def five_modes():
    return make_spectrum("explicit", [(0.7, 2), (1.3, 1), (2.9, 4), (3.5, 1), (5.0, 2)])


@pytest.mark.parametrize("name", ["integer", "half-integer"])
@pytest.mark.parametrize("make", [circle_family, aps_family, chiral_family])
def test_total_zeta_vanishes_at_zero(name, make):
    # no zero modes and no boundary constant in the heat expansion of the glued problems
    assert aggregate_zeta(preset(name), make(4.0), 0.0) == pytest.approx(0.0, abs=1e-12)


def test_aggregate_against_brute_force_head(integer_spec):
    fam = aps_family(3.0)
    head = integer_spec.head(50)
    brute = math.fsum(m * modes.zeta_mode(p, 2.0) for lam, m in zip(head.lam, head.mult)
                      for p in fam.scalar_problems(float(lam)))
    assert aggregate_zeta(head, fam, 2.0) == pytest.approx(brute, rel=1e-12)
    # the full spectrum differs from the head only by the lambda > 50 contributions, O(sum n^-3)
    full = aggregate_zeta(integer_spec, fam, 2.0)
    assert 0.0 < full - brute < 1e-3


@pytest.mark.parametrize("name", ["integer", "half-integer"])
@pytest.mark.parametrize("make", [circle_family, aps_family, chiral_family])
def test_two_routes_to_log_det(name, make):
    spec = preset(name)
    fam = make(3.0)
    assert -aggregate_zeta_deriv0(spec, fam) == pytest.approx(log_det_regularized(spec, fam), abs=1e-5)


@pytest.mark.parametrize("name", ["integer", "half-integer"])
def test_circle_heat_route(name):
    spec = preset(name)
    rz = circle_heat_zeta(spec, 3.0)
    fam = circle_family(3.0)
    assert rz.value_at(2.0) == pytest.approx(aggregate_zeta(spec, fam, 2.0), rel=1e-10)
    assert rz.value_at(1.5 + 0.5j) == pytest.approx(aggregate_zeta(spec, fam, 1.5 + 0.5j), rel=1e-9)
    assert rz.value_at(0.0) == pytest.approx(0.0, abs=1e-14)
    assert -rz.derivative_at_0() == pytest.approx(log_det_regularized(spec, fam), abs=1e-7)


@pytest.mark.parametrize("make", [circle_family, aps_family, chiral_family])
def test_finite_list_regularized_equals_naive(five_modes, make):
    fam = make(2.0)
    assert log_det_regularized(five_modes, fam) == pytest.approx(log_det_naive(five_modes, fam), rel=1e-13)


def test_components_reported(integer_spec):
    comp = {}
    total = log_det_regularized(integer_spec, aps_family(2.0), comp)
    assert set(comp) == {"linear", "log", "constant", "remainder"}
    assert total == pytest.approx(math.fsum(comp.values()), rel=1e-15)


@pytest.mark.parametrize("make", [circle_family, aps_family])
def test_doubled_multiplicity_doubles_log_det(integer_spec, make):
    fam = make(2.0)
    d = scaled(integer_spec, 2)
    assert log_det_regularized(d, fam) == pytest.approx(2.0 * log_det_regularized(integer_spec, fam), rel=1e-13)


def test_regularized_constant_sum(integer_spec, half_spec):
    assert regularized_constant_sum(integer_spec, math.log(4.0)) == pytest.approx(-math.log(2.0), rel=1e-14)
    assert regularized_constant_sum(half_spec, math.log(4.0)) == pytest.approx(0.0, abs=1e-14)
    assert regularized_constant_sum(integer_spec, 0.0) == 0.0


def test_template_coefficients_aps():
    coeffs = template_coefficients(aps_family(2.0))
    # four scalars of length 3: D-R+ / R+-D in both orientations
    assert sorted(c[0] for c in coeffs) == [3.0] * 4
    assert sum(c[1] for c in coeffs) == 0.0
    assert sum(c[2] for c in coeffs) == 4


def test_remainder_decays_with_length(integer_spec):
    # circle: sum 2 ln(1 - e^{-lambda L}) with L = 2R + 2
    a = abs(remainder_sum(integer_spec, circle_family(2.0)))
    b = abs(remainder_sum(integer_spec, circle_family(6.0)))
    assert b < a * math.exp(-8.0) * 1.01
    # the APS Robin pairs have a pure exponential determinant
    assert remainder_sum(integer_spec, aps_family(2.0)) == 0.0


def test_continuation_domain(integer_spec):
    with pytest.raises(ContinuationUnavailable):
        aggregate_zeta(integer_spec, aps_family(2.0), -0.7)


def test_family_validation():
    with pytest.raises(ValueError):
        ProblemFamily("torus", 2.0)
    with pytest.raises(ValueError):
        circle_family(0.0)


@settings(max_examples=15)
@given(st.lists(st.tuples(st.floats(0.4, 4.0), st.integers(1, 3)), min_size=1, max_size=3),
       st.lists(st.tuples(st.floats(0.4, 4.0), st.integers(1, 3)), min_size=1, max_size=3))
def test_log_det_additive_over_spectra(a, b):
    from adzeta.spectrum import union

    sa, sb = make_spectrum("explicit", a), make_spectrum("explicit", b)
    fam = aps_family(2.0)
    lhs = log_det_regularized(union(sa, sb), fam)
    rhs = log_det_regularized(sa, fam) + log_det_regularized(sb, fam)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)
