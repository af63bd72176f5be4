"""Scalar problems -d^2/du^2 + lambda^2 on an interval or a circle.

Boundary conditions are stated with the *inward* derivative at each end:
RobinPlus means  d_n y = +lambda y  with d_n = d/du at the left end and
-d/du at the right end. With this convention the cut condition of a mode pair
under the positive spectral projection is (Dirichlet, RobinPlus) on its two
scalar components, and the operator stays strictly above lambda^2.

Three independent descriptions are provided for each problem:

* ``char_fn`` / ``eigenvalues``: the secular function and its roots,
* ``zeta_det_oracle`` / ``zeta_mode``: spectral zeta and log-determinant from
  the enumerated roots plus their asymptotic (Hurwitz) completion,
* ``zeta_det_closed``: closed forms ln(2 * B_right(y)) of Gel'fand-Yaglom type.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from . import specfun
from .errors import BracketingFailure, NonPositiveEigenvalue, UnsupportedBC

__all__ = [
    "BC",
    "Interval",
    "Circle",
    "ModeProblem",
    "PairKind",
    "PairProblem",
    "expand_pair",
    "char_fn",
    "eigenvalues",
    "default_mu_max",
    "weyl_count",
    "ModeRoots",
    "mode_roots",
    "zeta_mode",
    "zeta_det_oracle",
    "zeta_at_zero_mode",
    "zeta_at_zero_heat_fit",
    "heat_trace_mode",
    "local_heat_trace",
    "ClosedForm",
    "closed_parts",
    "zeta_det_closed",
    "template_zeta",
    "SUPPORTED_PAIRS",
]


class BC(enum.Enum):
    DIRICHLET = "D"
    NEUMANN = "N"
    ROBIN_PLUS = "R+"
    ROBIN_MINUS = "R-"

    @classmethod
    def parse(cls, text: str) -> "BC":
        for bc in cls:
            if bc.value == text or bc.name == text.upper():
                return bc
        raise ValueError(f"unknown boundary condition {text!r}")


@dataclass(frozen=True)
class Interval:
    length: float
    left: BC
    right: BC

    def __post_init__(self):
        if not self.length > 0.0:
            raise ValueError("interval length must be positive")


@dataclass(frozen=True)
class Circle:
    circumference: float

    def __post_init__(self):
        if not self.circumference > 0.0:
            raise ValueError("circumference must be positive")


@dataclass(frozen=True)
class ModeProblem:
    lam: float
    geometry: Interval | Circle

    def __post_init__(self):
        if not self.lam > 0.0:
            raise NonPositiveEigenvalue(self.lam, "ModeProblem.lambda")

    @property
    def label(self) -> str:
        g = self.geometry
        if isinstance(g, Circle):
            return "P"
        return g.left.value + g.right.value

    @property
    def span(self) -> float:
        g = self.geometry
        return g.circumference if isinstance(g, Circle) else g.length


class PairKind(enum.Enum):
    CHIRAL_PLUS = "chiral+"
    CHIRAL_MINUS = "chiral-"
    APS_RIGHT = "aps>"
    APS_LEFT = "aps<"


@dataclass(frozen=True)
class PairProblem:
    lam: float
    kind: PairKind
    geometry: Interval | Circle  # for intervals the stored end conditions are ignored


def _interval(length: float, left: BC, right: BC) -> Interval:
    return Interval(length, left, right)


def expand_pair(p: PairProblem) -> tuple[ModeProblem, ModeProblem]:
    """The (f, g) scalar problems of a mode pair, f along phi and g along G phi.

    On a piece [0, l] whose two ends are both cuts, the far end sees the
    reversed normal, so chirality and the sign of the projection swap there.
    """
    if isinstance(p.geometry, Circle):
        m = ModeProblem(p.lam, p.geometry)
        return m, m
    length = p.geometry.length
    D, N, R = BC.DIRICHLET, BC.NEUMANN, BC.ROBIN_PLUS
    table = {
        PairKind.CHIRAL_PLUS: ((D, N), (N, D)),
        PairKind.CHIRAL_MINUS: ((N, D), (D, N)),
        PairKind.APS_RIGHT: ((D, R), (R, D)),
        PairKind.APS_LEFT: ((R, D), (D, R)),
    }
    (fl, fr), (gl, gr) = table[p.kind]
    return (ModeProblem(p.lam, _interval(length, fl, fr)),
            ModeProblem(p.lam, _interval(length, gl, gr)))


# ---------------------------------------------------------------- secular function


def _left_data(bc: BC, lam: float) -> tuple[float, float]:
    # (y(0), y'(0)) solving the left condition
    if bc is BC.DIRICHLET:
        return 0.0, 1.0
    if bc is BC.NEUMANN:
        return 1.0, 0.0
    return 1.0, (lam if bc is BC.ROBIN_PLUS else -lam)


def _right_weights(bc: BC, lam: float) -> tuple[float, float]:
    # B_right = wy * y(l) + wd * y'(l)
    if bc is BC.DIRICHLET:
        return 1.0, 0.0
    if bc is BC.NEUMANN:
        return 0.0, 1.0
    return (lam if bc is BC.ROBIN_PLUS else -lam), 1.0


def _fundamental(nu, length):
    """cos(w l), sin(w l)/w, -w sin(w l) for signed nu with w^2 = nu |nu|."""
    nu = np.asarray(nu, dtype=float)
    x = np.abs(nu) * length
    pos = nu >= 0
    with np.errstate(over="ignore", invalid="ignore"):
        c = np.where(pos, np.cos(x), np.cosh(x))
        small = x < 1e-4
        sinc = np.where(pos, np.sin(x), np.sinh(x)) / np.where(small, 1.0, np.abs(nu))
        x2 = np.where(pos, -x * x, x * x)
        sinc = np.where(small, length * (1.0 + x2 / 6.0 + x2 * x2 / 120.0), sinc)
        wsin = np.where(pos, -np.abs(nu) * np.sin(x), np.abs(nu) * np.sinh(x))
    return c, sinc, wsin


def _char_nu(p: ModeProblem, nu):
    g = p.geometry
    y0, y1 = _left_data(g.left, p.lam)
    wy, wd = _right_weights(g.right, p.lam)
    c, sinc, wsin = _fundamental(nu, g.length)
    y = y0 * c + y1 * sinc
    dy = y0 * wsin + y1 * c
    return wy * y + wd * dy


def char_fn(p: ModeProblem, mu):
    """Secular function of an interval problem; its zeros in mu are the eigenvalues.

    Built from the fundamental system cos(w u), sin(w u)/w with w^2 = mu - lambda^2,
    which is entire in w^2, so the function is analytic across mu = lambda^2.
    Its value at mu = 0 is B_right of the solution with unit left data.
    """
    if not isinstance(p.geometry, Interval):
        raise ValueError("char_fn needs an interval geometry")
    w2 = np.asarray(mu, dtype=float) - p.lam ** 2
    nu = np.sign(w2) * np.sqrt(np.abs(w2))
    out = _char_nu(p, nu)
    return float(out) if np.ndim(out) == 0 else out


def default_mu_max(p: ModeProblem) -> float:
    """lambda^2 + (200 pi / l)^2, raised so that the top root is at least 30 lambda."""
    w = 200.0 * math.pi / p.span * (2.0 if isinstance(p.geometry, Circle) else 1.0)
    return p.lam ** 2 + max(w, 30.0 * p.lam) ** 2


def weyl_count(p: ModeProblem, mu_max: float) -> float:
    """Leading Weyl count span * sqrt(mu_max - lambda^2) / pi (no boundary offset)."""
    return p.span * math.sqrt(max(mu_max - p.lam ** 2, 0.0)) / math.pi


def _char_scalar(y0: float, y1: float, wy: float, wd: float, length: float, nu: float) -> float:
    x = abs(nu) * length
    if nu >= 0.0:
        c = math.cos(x)
        sinc = math.sin(x) / nu if x >= 1e-4 else length * (1.0 - x * x / 6.0 + x ** 4 / 120.0)
        wsin = -nu * math.sin(x)
    else:
        c = math.cosh(x)
        sinc = math.sinh(x) / -nu if x >= 1e-4 else length * (1.0 + x * x / 6.0 + x ** 4 / 120.0)
        wsin = -nu * math.sinh(x)
    return wy * (y0 * c + y1 * sinc) + wd * (y0 * wsin + y1 * c)


def _sign_changes(p: ModeProblem, nu_max: float, spacing: float):
    n = int(math.ceil((nu_max + p.lam) / spacing)) + 1
    grid = -p.lam + spacing * np.arange(n)
    vals = _char_nu(p, grid)
    idx = np.nonzero(vals[:-1] * vals[1:] < 0.0)[0]
    exact = np.nonzero(vals[1:] == 0.0)[0] + 1
    return grid, idx, exact


@lru_cache(maxsize=4096)
def _interval_levels(p: ModeProblem, mu_max: float) -> tuple[float, ...]:
    g = p.geometry
    nu_max = math.sqrt(mu_max - p.lam ** 2)
    spacing = math.pi / (8.0 * g.length)
    grid, idx, exact = _sign_changes(p, nu_max, spacing)
    for _ in range(4):
        spacing *= 0.5
        grid2, idx2, exact2 = _sign_changes(p, nu_max, spacing)
        stable = len(idx2) + len(exact2) == len(idx) + len(exact)
        grid, idx, exact = grid2, idx2, exact2
        if stable:
            break
    else:
        raise BracketingFailure(f"{p.label} lambda={p.lam}: root count unstable after 4 refinements")
    y0, y1 = _left_data(g.left, p.lam)
    wy, wd = _right_weights(g.right, p.lam)
    args = (y0, y1, wy, wd, g.length)
    f = lambda nu: _char_scalar(*args, nu)  # noqa: E731
    roots = [brentq(f, grid[i], grid[i + 1], xtol=1e-15, rtol=4.0 * np.finfo(float).eps, maxiter=200)
             for i in idx]
    roots += [float(grid[i]) for i in exact]
    nus = np.array(sorted(r for r in roots if r <= nu_max))
    return tuple(float(v) for v in p.lam ** 2 + nus * np.abs(nus))


def eigenvalues(p: ModeProblem, mu_max: float | None = None) -> np.ndarray:
    """All eigenvalues <= mu_max in ascending order, repeated by multiplicity."""
    mu_max = default_mu_max(p) if mu_max is None else float(mu_max)
    if not mu_max > p.lam ** 2:
        raise ValueError("mu_max must exceed lambda^2")
    if isinstance(p.geometry, Circle):
        h = 2.0 * math.pi / p.geometry.circumference
        kmax = int(math.floor(math.sqrt(mu_max - p.lam ** 2) / h))
        out = [p.lam ** 2]
        for k in range(1, kmax + 1):
            v = p.lam ** 2 + (h * k) ** 2
            out += [v, v]
        return np.array(out)
    mus = np.array(_interval_levels(p, mu_max))
    if mus.size and mus[0] <= 0.0:
        raise NonPositiveEigenvalue(float(mus[0]), f"{p.label} problem")
    return mus


# ---------------------------------------------------------------- spectral zeta from roots


class ModeRoots(NamedTuple):
    """Distinct levels mu_k with degeneracies, plus the fitted asymptotic lattice (k + a) h."""

    mus: np.ndarray
    degen: np.ndarray
    h: float
    offset: float
    tail_degen: int
    first_asym: int  # J: levels below J are summed exactly


@lru_cache(maxsize=4096)
def _mode_roots_cached(p: ModeProblem, mu_max: float) -> ModeRoots:
    lam2 = p.lam ** 2
    if isinstance(p.geometry, Circle):
        h = 2.0 * math.pi / p.geometry.circumference
        kmax = int(math.floor(math.sqrt(mu_max - lam2) / h))
        k = np.arange(kmax + 1, dtype=float)
        mus = lam2 + (h * k) ** 2
        degen = np.where(k == 0, 1, 2)
        return ModeRoots(mus, degen, h, 0.0, 2, 1)
    mus = eigenvalues(p, mu_max)
    h = math.pi / p.geometry.length
    w2 = mus - lam2
    omega = np.sqrt(np.clip(w2, 0.0, None))
    k = np.arange(len(mus))
    top = slice(max(len(mus) - 20, 0), len(mus))
    est = float(np.median(omega[top] / h - k[top]))
    offset = round(2.0 * est) / 2.0
    first = int(np.sum(w2 <= 0.0)) + 1
    while first + offset <= 0.0:
        first += 1
    return ModeRoots(mus, np.ones(len(mus), dtype=int), h, offset, 1, first)


def mode_roots(p: ModeProblem, mu_max: float | None = None) -> ModeRoots:
    return _mode_roots_cached(p, default_mu_max(p) if mu_max is None else float(mu_max))


def _tail_coeffs(r: ModeRoots) -> tuple[float, float, float]:
    """A, B, C in mu_k - (w0_k)^2 = A + B / w0_k^2 + C / w0_k^4, least squares over the top levels."""
    K = len(r.mus)
    lo = max(r.first_asym, K - 40)
    k = np.arange(lo, K)
    w0 = (k + r.offset) * r.h
    y = r.mus[lo:K] - w0 * w0
    if K - lo < 6:
        return float(y[-1]), 0.0, 0.0
    basis = np.vstack([np.ones_like(w0), w0 ** -2, w0 ** -4]).T
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    return float(coef[0]), float(coef[1]), float(coef[2])


def zeta_mode(p: ModeProblem, s, mu_max: float | None = None):
    """Spectral zeta sum_k mu_k^{-s} of one scalar problem, valid for Re(s) > -1/2.

    Levels k < J are summed exactly. Above that mu_k^{-s} is split into
    (w0_k)^{-2s}, summed as a Hurwitz zeta, plus a correction that is
    O(k^{-2s-2}) and summed directly to the last enumerated root. The rest is
    the first two terms of the binomial tail.
    """
    r = mode_roots(p, mu_max)
    z = complex(s)
    if z.real <= -0.5:
        raise ValueError("zeta_mode is only valid for Re(s) > -1/2")
    J, K, a, h, d = r.first_asym, len(r.mus), r.offset, r.h, r.tail_degen
    ln_mu = np.log(r.mus)
    head = [complex(r.degen[k]) * np.exp(-z * ln_mu[k]) for k in range(J)]
    lattice = d * np.exp(-2.0 * z * math.log(h)) * complex(specfun.hurwitz_zeta(2.0 * z, J + a))
    w0 = (np.arange(J, K) + a) * h
    ln_w0 = np.log(w0)
    corr = d * (np.exp(-z * ln_mu[J:K]) - np.exp(-2.0 * z * ln_w0))
    A, B, C = _tail_coeffs(r)
    # (1 + x)^{-s} - 1 with x = A/w^2 + B/w^4 + C/w^6, to third order
    c2 = -z * A
    c4 = 0.5 * z * (z + 1.0) * A * A - z * B
    c6 = -z * C + z * (z + 1.0) * A * B - z * (z + 1.0) * (z + 2.0) / 6.0 * A ** 3
    tail = d * sum(c * np.exp(-(2.0 * z + j) * math.log(h)) * complex(specfun.hurwitz_zeta(2.0 * z + j, K + a))
                   for c, j in ((c2, 2), (c4, 4), (c6, 6)))
    total = (specfun.compensated_sum(head) + lattice
             + complex(math.fsum(corr.real), math.fsum(corr.imag)) + tail)
    return total.real if not isinstance(s, complex) else complex(total)


def zeta_det_oracle(p: ModeProblem, mu_max: float | None = None) -> float:
    """ln det_zeta = -zeta'(0) from the enumerated roots and their Hurwitz completion."""
    r = mode_roots(p, mu_max)
    J, K, a, h, d = r.first_asym, len(r.mus), r.offset, r.h, r.tail_degen
    ln_mu = np.log(r.mus)
    head = math.fsum(r.degen[:J] * ln_mu[:J])
    lattice = d * (2.0 * math.log(h) * (0.5 - (J + a)) - 2.0 * specfun.hurwitz_zeta_deriv0(J + a))
    w0 = (np.arange(J, K) + a) * h
    corr = d * math.fsum(ln_mu[J:K] - 2.0 * np.log(w0))
    A, B, C = _tail_coeffs(r)
    # ln(1 + x), x = A/w^2 + B/w^4 + C/w^6
    tail = d * (A / h ** 2 * specfun.hurwitz_zeta(2.0, K + a)
                + (B - 0.5 * A * A) / h ** 4 * specfun.hurwitz_zeta(4.0, K + a)
                + (C - A * B + A ** 3 / 3.0) / h ** 6 * specfun.hurwitz_zeta(6.0, K + a))
    return head + lattice + corr + tail


def zeta_at_zero_mode(p: ModeProblem, mu_max: float | None = None) -> float:
    """zeta_p(0) read off the root lattice: sum_{k<J} d_k + d (1/2 - J - a)."""
    r = mode_roots(p, mu_max)
    J = r.first_asym
    return float(np.sum(r.degen[:J])) + r.tail_degen * (0.5 - J - r.offset)


def heat_trace_mode(p: ModeProblem, t: float, mu_max: float | None = None) -> float:
    """sum_k exp(-mu_k t) over enumerated eigenvalues (needs exp(-mu_max t) negligible)."""
    mus = eigenvalues(p, mu_max)
    return math.fsum(np.exp(-mus * t))


def _eigenfunction(p: ModeProblem, mu: float):
    y0, y1 = _left_data(p.geometry.left, p.lam)
    w2 = mu - p.lam * p.lam
    w = math.sqrt(abs(w2))
    if w < 1e-12:
        return lambda u: y0 + y1 * u
    if w2 > 0.0:
        return lambda u: y0 * math.cos(w * u) + y1 * math.sin(w * u) / w
    return lambda u: y0 * math.cosh(w * u) + y1 * math.sinh(w * u) / w


def local_heat_trace(p: ModeProblem, t: float, upto: float) -> float:
    """sum_k exp(-mu_k t) int_0^upto psi_k^2 for the normalized interval eigenfunctions.

    An eigenfunction-expansion value of int_0^upto K(t; u, u) du, independent
    of any image-charge formula.
    """
    if not isinstance(p.geometry, Interval):
        raise ValueError("local_heat_trace needs an interval problem")
    from scipy.integrate import quad

    length = p.geometry.length
    mus = eigenvalues(p, p.lam ** 2 + 60.0 / t)
    terms = []
    for mu in mus:
        y = _eigenfunction(p, float(mu))
        n_pts = max(50, int(4.0 * math.sqrt(max(mu, 1.0)) * length))
        part, _ = quad(lambda u: y(u) ** 2, 0.0, upto, limit=n_pts, epsabs=0.0, epsrel=1e-13)
        rest, _ = quad(lambda u: y(u) ** 2, upto, length, limit=n_pts, epsabs=0.0, epsrel=1e-13)
        terms.append(math.exp(-mu * t) * part / (part + rest))
    return math.fsum(terms)


def zeta_at_zero_heat_fit(p: ModeProblem, t_min: float = 2e-4, t_max: float = 2e-2) -> float:
    """Constant term of the small-t heat trace, by least squares in powers of sqrt(t).

    theta(t) - span/sqrt(4 pi t) is fitted by c0 + c1 t^{1/2} + ... + c4 t^2;
    Robin ends produce the odd powers. Independent of the root-lattice route.
    """
    mu_max = max(default_mu_max(p), 40.0 / t_min + p.lam ** 2)
    mus = eigenvalues(p, mu_max)
    ts = np.geomspace(t_min, t_max, 40)
    y = np.array([math.fsum(np.exp(-mus * t)) for t in ts]) - p.span / np.sqrt(4.0 * math.pi * ts)
    basis = np.vstack([ts ** (0.5 * j) for j in range(5)]).T
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    return float(coef[0])


# ---------------------------------------------------------------- closed forms


class ClosedForm(NamedTuple):
    """ln det = a * lambda * span + b * ln(lambda) + c + remainder."""

    a: float
    b: float
    c: float
    remainder: float
    robin_ends: int

    def total(self, lam: float, span: float) -> float:
        return self.a * lam * span + self.b * math.log(lam) + self.c + self.remainder


_EXP_LEFT = {BC.DIRICHLET: -1, BC.NEUMANN: 0, BC.ROBIN_PLUS: 0, BC.ROBIN_MINUS: 0}
_EXP_RIGHT = {BC.DIRICHLET: 0, BC.NEUMANN: 1, BC.ROBIN_PLUS: 1, BC.ROBIN_MINUS: 1}

SUPPORTED_PAIRS = tuple(
    (l, r) for l in (BC.DIRICHLET, BC.NEUMANN, BC.ROBIN_PLUS) for r in (BC.DIRICHLET, BC.NEUMANN, BC.ROBIN_PLUS)
) + ((BC.DIRICHLET, BC.ROBIN_MINUS), (BC.ROBIN_MINUS, BC.DIRICHLET))


def closed_parts(p: ModeProblem) -> ClosedForm:
    """Template decomposition of the closed-form log-determinant.

    At mu = 0 (w = i lambda) the solution with unit left data gives
    2 B_right = e^{lambda l} (P + Q e^{-2 lambda l}); P and Q are monomials
    in lambda of degree b, so ln det = lambda l + b ln(lambda) + ln P(1)
    + ln(1 + (Q/P) e^{-2 lambda l}).
    """
    g = p.geometry
    lam = p.lam
    if isinstance(g, Circle):
        L = g.circumference
        return ClosedForm(1.0, 0.0, 0.0, 2.0 * math.log1p(-math.exp(-lam * L)), 0)
    if (g.left, g.right) not in SUPPORTED_PAIRS:
        raise UnsupportedBC(f"no validated closed form for {p.label}")
    y0, y1 = _left_data(g.left, 1.0)
    wy, wd = _right_weights(g.right, 1.0)
    P = wy * (y0 + y1) + wd * (y0 + y1)
    Q = wy * (y0 - y1) + wd * (y1 - y0)
    b = float(_EXP_LEFT[g.left] + _EXP_RIGHT[g.right])
    n_r = int(g.left is BC.ROBIN_PLUS) + int(g.right is BC.ROBIN_PLUS)
    e = math.exp(-2.0 * lam * g.length)
    if P == 0.0:
        # Dirichlet / RobinMinus: det = Q lambda^b e^{-lambda l}
        return ClosedForm(-1.0, b, math.log(Q), 0.0, n_r)
    return ClosedForm(1.0, b, math.log(P), math.log1p(Q / P * e), n_r)


def zeta_det_closed(p: ModeProblem) -> float:
    """Closed-form ln det_zeta(-d^2 + lambda^2) for the supported boundary pairs."""
    return closed_parts(p).total(p.lam, p.span)


def template_zeta(p: ModeProblem, s):
    """Mellin transform of the boundary-local heat template, divided by Gamma(s).

    span (4 pi t)^{-1/2} e^{-lambda^2 t} + (b/2) e^{-lambda^2 t}
    + n_R (erfc(lambda sqrt t) - e^{-lambda^2 t})/2
    maps to span/sqrt(4 pi) Gamma(s-1/2)/Gamma(s) lambda^{1-2s} + (b/2) lambda^{-2s}
    + 2 n_R F(s) lambda^{-2s}/Gamma(s), F the Gamma-limit function.
    """
    cf = closed_parts(p)
    if cf.a != 1.0:
        raise UnsupportedBC(f"{p.label} has no boundary-local heat template")
    z = complex(s)
    lam = p.lam
    rg = _rgamma(z)
    lam_pow = np.exp(-2.0 * z * math.log(lam))
    val = (p.span / math.sqrt(4.0 * math.pi) * complex(specfun.gamma(z - 0.5)) * rg * lam * lam_pow
           + 0.5 * cf.b * lam_pow
           + 2.0 * cf.robin_ends * complex(specfun.gamma_limit_F(z)) * lam_pow * rg)
    return val.real if not isinstance(s, complex) else complex(val)


def _rgamma(z: complex) -> complex:
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        return 0j
    return 1.0 / complex(specfun.gamma(z))
