"""Zeta-regularized aggregation of per-mode problems over the tangential spectrum.

Every scalar problem p(lambda) has a heat trace that splits into a boundary-local
template plus a remainder that is exponentially small in lambda * length:

    theta_p(t) = span (4 pi t)^{-1/2} e^{-lambda^2 t} + (b/2) e^{-lambda^2 t}
                 + n_R (erfc(lambda sqrt t) - e^{-lambda^2 t})/2 + r_p(t).

Summing the template over modes gives zeta_{B^2} at shifted arguments in closed
form; the remainder is summed mode by mode. The same split applied to the
closed-form log-determinants gives ``log_det_regularized``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import modes, specfun
from .errors import ContinuationUnavailable, UnsupportedBC
from .modes import BC, Circle, Interval, ModeProblem, PairKind, PairProblem
from .quadrature import mellin
from .spectrum import (TangentialSpectrum, heat_trace_remainder, heat_trace_Y, small_t_terms, zeta_B2,
                       zeta_B2_deriv0)

__all__ = [
    "ProblemFamily",
    "circle_family",
    "chiral_family",
    "aps_family",
    "RegularizedZeta",
    "circle_heat_zeta",
    "aggregate_zeta",
    "aggregate_zeta_deriv0",
    "log_det_regularized",
    "log_det_naive",
    "remainder_sum",
    "regularized_constant_sum",
    "template_coefficients",
]

# modes with 2 lambda l beyond this contribute below 1e-17
_REMAINDER_CUTOFF = 40.0


@dataclass(frozen=True)
class ProblemFamily:
    """A rule lambda -> list of pair problems on the model geometry at stretch R.

    kind: "circle" (whole circle of circumference 2R+2), "chiral" or "aps"
    (the two pieces of length R+1 between the cuts). ``pieces`` selects which
    of the two pieces are included; piece 1 carries the minus/negative-projection
    condition, piece 2 the plus/positive one.
    """

    kind: str
    R: float
    pieces: tuple[int, ...] = (1, 2)
    collar: float = 1.0

    def __post_init__(self):
        if self.kind not in ("circle", "chiral", "aps"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if not self.R > 0.0:
            raise ValueError("R must be positive")

    @property
    def piece_length(self) -> float:
        return self.R + self.collar

    @property
    def circumference(self) -> float:
        return 2.0 * self.piece_length

    @property
    def min_span(self) -> float:
        return self.piece_length

    def pair_problems(self, lam: float) -> list[PairProblem]:
        if self.kind == "circle":
            return [PairProblem(lam, PairKind.CHIRAL_PLUS, Circle(self.circumference))]
        geo = Interval(self.piece_length, BC.DIRICHLET, BC.DIRICHLET)
        if self.kind == "chiral":
            kinds = {1: PairKind.CHIRAL_MINUS, 2: PairKind.CHIRAL_PLUS}
        else:
            kinds = {1: PairKind.APS_LEFT, 2: PairKind.APS_RIGHT}
        return [PairProblem(lam, kinds[i], geo) for i in self.pieces]

    def scalar_problems(self, lam: float) -> list[ModeProblem]:
        out: list[ModeProblem] = []
        for pp in self.pair_problems(lam):
            out.extend(modes.expand_pair(pp))
        return out

    def describe(self) -> str:
        return f"{self.kind}(R={self.R:g}, pieces={list(self.pieces)})"


def circle_family(R: float) -> ProblemFamily:
    return ProblemFamily("circle", R)


def chiral_family(R: float, pieces: Sequence[int] = (1, 2)) -> ProblemFamily:
    return ProblemFamily("chiral", R, tuple(pieces))


def aps_family(R: float, pieces: Sequence[int] = (1, 2)) -> ProblemFamily:
    return ProblemFamily("aps", R, tuple(pieces))


# ---------------------------------------------------------------- templates


def template_coefficients(family: ProblemFamily) -> list[tuple[float, float, int]]:
    """(span, b, n_Robin) for each scalar problem of one mode pair (independent of lambda)."""
    out = []
    for p in family.scalar_problems(1.0):
        cf = modes.closed_parts(p)
        if cf.a != 1.0:
            raise UnsupportedBC(f"{p.label}: no boundary-local template")
        out.append((p.span, cf.b, cf.robin_ends))
    return out


def _rgamma(z: complex) -> complex:
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        return 0j
    return 1.0 / complex(specfun.gamma(z))


def _template_total(spec: TangentialSpectrum, family: ProblemFamily, z: complex) -> complex:
    coeffs = template_coefficients(family)
    span_sum = sum(c[0] for c in coeffs)
    b_sum = sum(c[1] for c in coeffs)
    r_sum = sum(c[2] for c in coeffs)
    rg = _rgamma(z)
    total = 0j
    if span_sum:
        if rg != 0:
            total += span_sum / math.sqrt(4.0 * math.pi) * complex(specfun.gamma(z - 0.5)) * rg \
                * 0.5 * complex(zeta_B2(spec, z - 0.5))
    zb = None
    if b_sum:
        zb = complex(zeta_B2(spec, z))
        total += 0.5 * b_sum * 0.5 * zb
    if r_sum and rg != 0:
        zb = complex(zeta_B2(spec, z)) if zb is None else zb
        total += r_sum * complex(specfun.gamma_limit_F(z)) * zb * rg
    return total


def _mode_cut(family: ProblemFamily) -> float:
    return _REMAINDER_CUTOFF / (2.0 * family.min_span)


def aggregate_zeta(spec: TangentialSpectrum, family: ProblemFamily, s):
    """zeta_total(s) = sum_n m_n sum_p zeta_p(s; lambda_n).

    Template part through zeta_{B^2}; remainder sum_n m_n [zeta_p - template_p](s)
    with zeta_p from the enumerated roots of each scalar problem. Valid for
    Re(s) > -1/2 away from the pole of zeta_{B^2}(s - 1/2).
    """
    z = complex(s)
    if z.real <= -0.5:
        raise ContinuationUnavailable(f"aggregate_zeta needs Re(s) > -1/2, got {s}")
    total = _template_total(spec, family, z)
    rem = []
    lam_cut = _mode_cut(family)
    for lam_i, m_i in zip(spec.lam, spec.mult):
        if lam_i > lam_cut:
            break
        for p in family.scalar_problems(float(lam_i)):
            e = complex(modes.zeta_mode(p, z)) - complex(modes.template_zeta(p, z))
            rem.append(m_i * e)
    total += specfun.compensated_sum(rem) if rem else 0j
    return total.real if not isinstance(s, complex) else complex(total)


def aggregate_zeta_deriv0(spec: TangentialSpectrum, family: ProblemFamily, h: float = 1e-4) -> float:
    """d/ds zeta_total at 0: central differences at h and h/2 plus one Richardson step."""
    def d(step):
        return (aggregate_zeta(spec, family, step) - aggregate_zeta(spec, family, -step)) / (2.0 * step)

    d1 = d(h)
    d2 = d(0.5 * h)
    return (4.0 * d2 - d1) / 3.0


def remainder_sum(spec: TangentialSpectrum, family: ProblemFamily) -> float:
    """sum_n m_n sum_p [ln det_p - template_p](lambda_n) from the closed forms."""
    terms = []
    lam_cut = _mode_cut(family)
    for lam_i, m_i in zip(spec.lam, spec.mult):
        if lam_i > lam_cut:
            break
        for p in family.scalar_problems(float(lam_i)):
            terms.append(m_i * modes.closed_parts(p).remainder)
    return math.fsum(terms)


def log_det_regularized(spec: TangentialSpectrum, family: ProblemFamily, components: dict | None = None) -> float:
    """ln det_zeta of the family operator, = -zeta_total'(0).

    ln det = sum_types [span * zeta(-1/2)/2 - b zeta'(0)/4 + c zeta(0)/2] + remainder sum,
    where per scalar type ln det_p = lambda span + b ln(lambda) + c + remainder_p.
    """
    coeffs = []
    for p in family.scalar_problems(1.0):
        cf = modes.closed_parts(p)
        if cf.a != 1.0:
            raise UnsupportedBC(f"{p.label}: no regularizable template")
        coeffs.append((p.span, cf.b, cf.c))
    span_sum = math.fsum(c[0] for c in coeffs)
    b_sum = math.fsum(c[1] for c in coeffs)
    c_sum = math.fsum(c[2] for c in coeffs)
    parts = {
        "linear": span_sum * 0.5 * float(zeta_B2(spec, -0.5)) if span_sum else 0.0,
        "log": -0.25 * b_sum * zeta_B2_deriv0(spec) if b_sum else 0.0,
        "constant": 0.5 * c_sum * float(zeta_B2(spec, 0.0)) if c_sum else 0.0,
        "remainder": remainder_sum(spec, family),
    }
    if components is not None:
        components.update(parts)
    return math.fsum(parts.values())


def log_det_naive(spec: TangentialSpectrum, family: ProblemFamily, count: int | None = None) -> float:
    """Plain sum_n m_n sum_p ln det_p over the first ``count`` entries (no regularization)."""
    n = len(spec.lam) if count is None else count
    terms = []
    for lam_i, m_i in zip(spec.lam[:n], spec.mult[:n]):
        for p in family.scalar_problems(float(lam_i)):
            terms.append(m_i * modes.zeta_det_closed(p))
    return math.fsum(terms)


def regularized_constant_sum(spec: TangentialSpectrum, kappa: float) -> float:
    """kappa added once per positive-eigenvalue pair, regularized: kappa * zeta_{B^2}(0)/2."""
    if kappa == 0.0:
        return 0.0
    return kappa * 0.5 * float(zeta_B2(spec, 0.0))


# ---------------------------------------------------------------- heat-trace representation


@dataclass
class RegularizedZeta:
    """zeta(s) = (1/Gamma(s)) int_0^inf t^{s-1} (theta(t) - kernel_dimension) dt, Mellin split at t = 1.

    ``asymptotic_terms`` lists (exponent, coefficient) of the small-t expansion
    of theta; they are subtracted on (0, 1] and added back as c/(s + e). The
    last quadrature values are kept in ``numeric_small_t`` / ``numeric_large_t``.
    ``remainder``, when given, evaluates theta minus those terms directly and
    is used on (0, 1] in place of the cancelling difference.
    """

    theta: Callable[[float], float]
    asymptotic_terms: list[tuple[float, float]]
    kernel_dimension: int = 0
    numeric_small_t: dict = field(default_factory=dict)
    numeric_large_t: dict = field(default_factory=dict)
    remainder: Callable[[float], float] | None = None

    def value_at(self, s):
        z = complex(s)
        terms = list(self.asymptotic_terms)
        k = self.kernel_dimension
        for e, _ in terms:
            if z + e == 0 and e != 0.0:
                raise ContinuationUnavailable(f"pole of the continuation at s = {s}")
        const = dict(terms).get(0.0, 0.0) - k
        if z == 0:
            return const if not isinstance(s, complex) else complex(const)

        def rest(t):
            if self.remainder is not None:
                return self.remainder(t)
            return self.theta(t) - sum(c * t ** e for e, c in terms)

        def large(t):
            return self.theta(t) - k

        small_v = mellin(rest, s, upper=1.0, what="RegularizedZeta small-t")
        large_v = mellin(large, s, lower=1.0, what="RegularizedZeta large-t")
        self.numeric_small_t = {"s": s, "value": small_v}
        self.numeric_large_t = {"s": s, "value": large_v}
        poles = sum(c / (z + e) for e, c in terms if e != 0.0) + (const / z if const else 0.0)
        total = (complex(small_v) + complex(large_v) + poles) * _rgamma(z)
        return total.real if not isinstance(s, complex) else complex(total)

    def derivative_at_0(self, h: float = 1e-4) -> float:
        def d(step):
            return (self.value_at(step) - self.value_at(-step)) / (2.0 * step)

        return (4.0 * d(0.5 * h) - d(h)) / 3.0


def _circle_theta1(L: float, t: float) -> float:
    # sum_{k in Z} exp(-(2 pi k / L)^2 t), direct or via Poisson
    if t * (2.0 * math.pi / L) ** 2 > 1.0:
        q = (2.0 * math.pi / L) ** 2 * t
        terms = [1.0] + [2.0 * math.exp(-q * k * k) for k in range(1, 40) if q * k * k < 745.0]
        return math.fsum(terms)
    pref = L / math.sqrt(4.0 * math.pi * t)
    terms = [1.0] + [2.0 * math.exp(-(k * L) ** 2 / (4.0 * t)) for k in range(1, 40)
                     if (k * L) ** 2 / (4.0 * t) < 745.0]
    return pref * math.fsum(terms)


def _circle_images(L: float, t: float) -> float:
    # theta_circle(t) - L / sqrt(4 pi t)
    pref = L / math.sqrt(4.0 * math.pi * t)
    return pref * math.fsum(2.0 * math.exp(-(k * L) ** 2 / (4.0 * t)) for k in range(1, 40)
                            if (k * L) ** 2 / (4.0 * t) < 745.0)


def circle_heat_zeta(spec: TangentialSpectrum, R: float) -> RegularizedZeta:
    """Heat-trace route for the circle family: theta = Tr_Y(t) * theta_circle(t).

    Each pair contributes two periodic scalars and Tr_Y already carries the 2.
    """
    L = 2.0 * (R + 1.0)
    pref = L / math.sqrt(4.0 * math.pi)
    terms = [(e - 0.5, c * pref) for e, c in small_t_terms(spec)]

    def theta(t):
        return heat_trace_Y(spec, t) * _circle_theta1(L, t)

    def remainder(t):
        # Tr_Y th_c - (Tr_Y - r_Y) pref/sqrt(t) = Tr_Y (th_c - pref/sqrt t) + r_Y pref/sqrt t
        return heat_trace_Y(spec, t) * _circle_images(L, t) + heat_trace_remainder(spec, t) * pref / math.sqrt(t)

    return RegularizedZeta(theta, terms, remainder=remainder)
