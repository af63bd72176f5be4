import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adzeta import specfun
from adzeta.adiabatic import (
    ModelGeometry,
    ParametrixCutoffs,
    aps_vs_chiral,
    circle_kernel,
    convolution_defect,
    correction_kernel,
    duhamel_defect,
    fit_decay_rate,
    gluing_target,
    large_time_tail,
    parametrix_defect,
    parametrix_kernel,
    spectral_gap,
    theorem1_gap,
    theorem2_gap,
)
from adzeta.config import parse_config
from adzeta.adiabatic import run_experiment
from adzeta.spectrum import make_spectrum, preset, zeta_B2

LN2 = math.log(2.0)


def _tanh_sum(spec, R):
    # sum_n 2 m_n ln tanh^2(lambda_n (R + 1)), the chiral gluing gap written per mode
    l = R + 1.0
    return math.fsum(2.0 * m * 2.0 * math.log(math.tanh(lam * l)) for lam, m in zip(spec.lam[:400], spec.mult[:400]))


def _aps_sum(spec, R):
    l = R + 1.0
    z0 = float(zeta_B2(spec, 0.0))
    return math.fsum(4.0 * m * math.log1p(-math.exp(-2.0 * lam * l))
                     for lam, m in zip(spec.lam[:400], spec.mult[:400])) - 2.0 * LN2 * z0


@pytest.mark.parametrize("name", ["integer", "half-integer"])
@pytest.mark.parametrize("R", [1.0, 2.0, 5.0, 8.0])
def test_gaps_match_per_mode_closed_forms(name, R):
    spec = preset(name)
    assert theorem1_gap(spec, R) == pytest.approx(_tanh_sum(spec, R), rel=1e-12, abs=1e-14)
    assert theorem2_gap(spec, R) == pytest.approx(_aps_sum(spec, R), rel=1e-12, abs=1e-14)


@pytest.mark.parametrize("name", ["integer", "half-integer"])
@given(R=st.floats(0.5, 12.0))
def test_bridge_identity(name, R):
    # theorem2 - theorem1 = -(aps - chiral on piece 1) - (same on piece 2)
    spec = preset(name)
    lhs = theorem2_gap(spec, R) - theorem1_gap(spec, R)
    rhs = -(aps_vs_chiral(spec, R, 1) + aps_vs_chiral(spec, R, 2))
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_pieces_mirror(integer_spec):
    assert aps_vs_chiral(integer_spec, 3.0, 1) == pytest.approx(aps_vs_chiral(integer_spec, 3.0, 2), rel=1e-14)
    with pytest.raises(ValueError):
        aps_vs_chiral(integer_spec, 3.0, 3)


def test_targets(integer_spec, half_spec):
    assert gluing_target(integer_spec, "theorem1") == 0.0
    assert gluing_target(integer_spec, "theorem2") == pytest.approx(2.0 * LN2)
    assert gluing_target(half_spec, "theorem2") == pytest.approx(0.0, abs=1e-14)
    assert gluing_target(integer_spec, "aps-vs-chiral") == pytest.approx(-LN2)


def test_integer_limits(integer_spec):
    assert theorem1_gap(integer_spec, 8.0) == pytest.approx(0.0, abs=1e-4)
    assert theorem2_gap(integer_spec, 8.0) == pytest.approx(2.0 * LN2, abs=1e-6)
    assert aps_vs_chiral(integer_spec, 8.0, 2) == pytest.approx(-LN2, abs=1e-6)


def test_half_integer_decay_rate(half_spec):
    # gap ~ 4 ln(1 - e^{-2 lambda_min l}) ~ -4 e^{-(R+1)}: rate 2 lambda_min = 1
    Rs = [4.0, 6.0, 8.0, 10.0]
    fit = fit_decay_rate(Rs, [theorem1_gap(half_spec, R) for R in Rs])
    assert fit[0] == pytest.approx(1.0, abs=0.01)
    assert fit[2] > 0.9999


def test_components_recorded(integer_spec):
    comp = {}
    theorem2_gap(integer_spec, 2.0, comp)
    assert {"ln_det_circle", "ln_det_aps_piece1", "ln_det_aps_piece2"} <= set(comp)


# ---------------------------------------------------------------- gap and large time


@pytest.mark.parametrize("family", ["all", "circle", "chiral", "aps"])
@pytest.mark.parametrize("name", ["integer", "half-integer"])
def test_spectral_gap_at_least_lambda_min_sq(name, family):
    spec = preset(name)
    for R in (1.0, 4.0, 9.0):
        assert spectral_gap(spec, R, family) >= spec.lambda_min ** 2 * (1.0 - 1e-12)


def test_spectral_gap_attained_by_circle(integer_spec):
    assert spectral_gap(integer_spec, 4.0, "circle") == pytest.approx(1.0, rel=1e-14)


def test_large_time_tail(integer_spec):
    assert large_time_tail(integer_spec, 4.0, 0.5) == pytest.approx(0.170138, rel=1e-4)
    assert large_time_tail(integer_spec, 9.0, 0.5) < large_time_tail(integer_spec, 4.0, 0.5)
    assert large_time_tail(integer_spec, 4.0, 0.99) < large_time_tail(integer_spec, 4.0, 0.25)
    with pytest.raises(ValueError):
        large_time_tail(integer_spec, 4.0, 1.0)


def test_large_time_tail_direct_sum():
    # one mode on the circle: sum_k E1(mu_k T) over the circle levels
    spec = make_spectrum("explicit", [(1.0, 1)])
    R, eps = 4.0, 0.5
    T = R ** eps
    L = 2.0 * R + 2.0
    mus = [1.0] + [1.0 + (2 * math.pi * k / L) ** 2 for k in range(1, 40) for _ in (0, 1)]
    exact = 2.0 * math.fsum(float(specfun.incomplete_gamma_upper(0.0, mu * T)) for mu in mus)
    assert large_time_tail(spec, R, eps) == pytest.approx(exact, rel=1e-10)


# ---------------------------------------------------------------- parametrix


def test_cutoff_layout():
    c = ParametrixCutoffs(7.0)
    for x in (0.0, 1.9, 3.5, 4.2, 6.5):
        p1, s1, p2, s2 = c.values(x)
        assert s1 + s2 == pytest.approx(1.0)
        # phi_i = 1 on the support of psi_i
        if s1 > 0.0:
            assert p1 == 1.0
        if s2 > 0.0:
            assert p2 == 1.0


def test_circle_kernel_symmetric_and_periodic():
    lam, R, t = 0.7, 3.0, 0.8
    L = 2 * R + 2
    assert circle_kernel(lam, L, t, 0.3, 1.1) == pytest.approx(circle_kernel(lam, L, t, 1.1, 0.3), rel=1e-15)
    assert circle_kernel(lam, L, t, 0.3, 1.1) == pytest.approx(circle_kernel(lam, L, t, 0.3 + L, 1.1), rel=1e-12)


def test_parametrix_is_exact_near_diagonal_for_small_t():
    lam, R = 1.0, 7.0
    assert parametrix_kernel(lam, R, 0.05, 0.0, 0.0) == pytest.approx(
        circle_kernel(lam, 2 * R + 2, 0.05, 0.0, 0.0), rel=1e-14)


def test_correction_vanishes_near_collar_center():
    R = 7.0
    for t in (0.3, 1.0):
        for d in (0.0, 0.5, 0.99 * R / 7.0):
            assert correction_kernel(1.0, R, t, d, 0.0) == 0.0


@pytest.mark.parametrize("x,y", [(0.0, 0.0), (0.4, -1.0), (1.0, 1.5), (1.5, 0.3)])
def test_duhamel_matches_convolution(x, y):
    a = duhamel_defect(1.0, 3.0, 1.0, x, y)
    b = convolution_defect(1.0, 3.0, 1.0, x, y)
    assert a == pytest.approx(b, rel=1e-8, abs=1e-20)


def test_parametrix_defect_decays():
    vals = [parametrix_defect(1.0, R, 1.0) for R in (3.0, 4.0, 5.0)]
    assert vals[0] == pytest.approx(2.3357e-8, rel=1e-3)
    assert vals[0] > vals[1] > vals[2] > 0.0
    fit = fit_decay_rate([R * R for R in (3.0, 4.0, 5.0)], vals)
    assert fit[0] > 0.0


def test_parametrix_quadrature_method_small_grid():
    a = parametrix_defect(1.0, 3.0, 1.0, n_points=5, method="quadrature")
    b = parametrix_defect(1.0, 3.0, 1.0, n_points=5)
    assert a == pytest.approx(b, rel=1e-8)


def test_fit_decay_rate():
    rate, icpt, r2 = fit_decay_rate([1, 2, 3, 4], [3 * math.exp(-1.5 * x) for x in (1, 2, 3, 4)])
    assert rate == pytest.approx(1.5) and icpt == pytest.approx(math.log(3)) and r2 == pytest.approx(1.0)
    assert fit_decay_rate([1, 2], [0.1, 0.01]) is None
    assert fit_decay_rate([1, 2, 3], [0.0, 0.0, 0.1]) is None


def test_model_geometry():
    g = ModelGeometry(3.0)
    assert g.circumference == 8.0 and g.piece_length == 4.0
    with pytest.raises(ValueError):
        ModelGeometry(0.0)


# ---------------------------------------------------------------- run_experiment


def _run(text):
    return run_experiment(parse_config(text))


def test_run_theorem2_integer_passes():
    rep = _run("experiment = theorem2\nspectrum = integer\n")
    assert rep.passed and rep.target == pytest.approx(2 * LN2)
    assert [r.R for r in rep.rows] == [2.0, 4.0, 6.0, 8.0]
    assert rep.fitted_rate == pytest.approx(2.0, abs=0.01)
    assert any("doubled" in n or "two copies" in n for n in rep.notes)


def test_run_records_point_errors(tmp_path):
    p = tmp_path / "y.txt"
    p.write_text("1 1\n")
    rep = run_experiment(parse_config("experiment = cylinder-identity\nspectrum = y.txt\ns_samples = 0.5 0; 2 0\n",
                                      base_dir=str(tmp_path)))
    assert rep.rows[0].error is not None and rep.rows[1].error is None
    assert not rep.passed


@pytest.mark.parametrize("text", [
    "experiment = zeta-at-zero\nspectrum = half-integer\nR_grid = 2, 4\n",
    "experiment = spectral-gap\nspectrum = integer\n",
    "experiment = gamma-limit\nspectrum = integer\n",
    "experiment = mode-det\nspectrum = integer\nbc = chiral+\nlambda = 0.5\n",
    "experiment = parametrix\nspectrum = integer\nR_grid = 3, 4, 5\n",
])
def test_run_other_experiments_pass(text):
    assert _run(text).passed


def test_large_time_tail_envelope(integer_spec):
    # tail <= C R^{1-eps} exp(-lambda_min^2 R^eps): the normalized ratio stays bounded and shrinks
    eps = 0.5
    ratios = [large_time_tail(integer_spec, R, eps) * math.exp(R ** eps) / R ** (1 - eps) for R in (4, 9, 16, 25)]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert max(ratios) < 1.0


def test_spectral_gap_run_reports_tail():
    rep = _run("experiment = spectral-gap\nspectrum = integer\nepsilon = 0.25\nR_grid = 4\n")
    assert rep.rows[0].components["large_time_tail"] == pytest.approx(large_time_tail(preset("integer"), 4.0, 0.25))
