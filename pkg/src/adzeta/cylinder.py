"""Half-infinite cylinder [0, inf) x Y: heat kernels per mode and the cut-off integrals.

Everything is decomposed over the tangential modes. For one mode pair
(phi, G phi) with eigenvalue lambda the scalar kernels are image-charge
formulas on the half-line. Under the positive spectral projection the G phi
component carries the Robin kernel

    e^{-lambda^2 t} [g(u - v) + g(u + v)] - lambda e^{lambda (u+v)} erfc((u+v)/(2 sqrt t) + lambda sqrt t),

g the free Gaussian, which satisfies (d/du - lambda) K = 0 at u = 0.

Convergence strips of the direct integrals (infinite spectrum, Tr_Y ~ t^{-1/2}):
T1 needs Re s > 1, T3 needs Re s > 1/2, T2 converges for every s, and so do
g_R and F1. The appendix identity is asserted for Re s > 1.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels, specfun
from .errors import OutsideConvergenceStrip
from .modes import PairKind
from .quadrature import integrate, mellin
from .spectrum import TangentialSpectrum, erfc_trace, heat_trace_Y, small_t_terms, zeta_B2

__all__ = [
    "CutoffKind",
    "CutoffFunction",
    "quintic",
    "indicator",
    "KernelKind",
    "ScalarKernelKind",
    "scalar_kernel",
    "mode_pair_kernels",
    "pair_diagonal_trace",
    "chiral_boundary_identity",
    "interval_trace_from_kernels",
    "t1",
    "t1_closed",
    "t2",
    "t3",
    "t_split",
    "s_of_s",
    "g_R",
    "f1",
    "f2",
    "f1_bound",
    "appendix_lhs",
    "appendix_rhs",
    "appendix_identity",
    "appendix_zeta_at_zero",
    "appendix_zeta_at_zero_details",
]

_SQRT_PI = specfun.SQRT_PI
_EPSABS_INNER = 1e-17
_EPSREL_INNER = 1e-11
_EPSABS_OUTER = 1e-16
_EPSREL_OUTER = 1e-10


# ---------------------------------------------------------------- cut-off functions


class CutoffKind(enum.Enum):
    SMOOTHSTEP_QUINTIC = "quintic"
    INDICATOR = "indicator"


@dataclass(frozen=True)
class CutoffFunction:
    """1 on [0, a], 0 on [b, inf), monotone in between.

    The quintic step is 1 - (10x^3 - 15x^4 + 6x^5), x = (u-a)/(b-a): C^2 with
    |phi'| <= 15/(8(b-a)). The indicator jumps at a and has phi' = 0 a.e.
    """

    kind: CutoffKind
    a: float
    b: float

    def __post_init__(self):
        if self.a < 0.0 or not self.b > self.a:
            raise ValueError("cut-off support needs 0 <= a < b")

    @property
    def derivative_bound(self) -> float:
        if self.kind is CutoffKind.INDICATOR:
            return 0.0
        return 15.0 / (8.0 * (self.b - self.a))

    def value(self, u: float) -> float:
        if u <= self.a:
            return 1.0
        if self.kind is CutoffKind.INDICATOR or u >= self.b:
            return 0.0
        x = (u - self.a) / (self.b - self.a)
        return 1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x)

    def deriv(self, u: float) -> float:
        if self.kind is CutoffKind.INDICATOR or u <= self.a or u >= self.b:
            return 0.0
        x = (u - self.a) / (self.b - self.a)
        return -30.0 * x * x * (1.0 - x) ** 2 / (self.b - self.a)

    def second_deriv(self, u: float) -> float:
        if self.kind is CutoffKind.INDICATOR or u <= self.a or u >= self.b:
            return 0.0
        w = self.b - self.a
        x = (u - self.a) / w
        return -60.0 * x * (1.0 - x) * (1.0 - 2.0 * x) / (w * w)

    def integral(self) -> float:
        """int_0^inf phi."""
        if self.kind is CutoffKind.INDICATOR:
            return self.a
        return self.a + 0.5 * (self.b - self.a)


def quintic(a: float, b: float) -> CutoffFunction:
    return CutoffFunction(CutoffKind.SMOOTHSTEP_QUINTIC, a, b)


def indicator(a: float, b: float | None = None) -> CutoffFunction:
    return CutoffFunction(CutoffKind.INDICATOR, a, a + 1.0 if b is None else b)


# ---------------------------------------------------------------- scalar kernels


class KernelKind(enum.Enum):
    FREE_LINE = "free"
    DIRICHLET_HALF_LINE = "dirichlet"
    NEUMANN_HALF_LINE = "neumann"
    APS_ROBIN_HALF_LINE = "aps-robin"


@dataclass(frozen=True)
class ScalarKernelKind:
    tag: KernelKind
    lam: float | None = None


def _gauss(x: float, t: float) -> float:
    return math.exp(-x * x / (4.0 * t)) / math.sqrt(4.0 * math.pi * t)


def _robin_correction(lam: float, t: float, w: float) -> float:
    # lambda e^{lambda w} erfc(w/(2 sqrt t) + lambda sqrt t), overflow-free
    rt = math.sqrt(t)
    z = w / (2.0 * rt) + lam * rt
    return lam * specfun.erfcx(z) * math.exp(-w * w / (4.0 * t) - lam * lam * t)


def scalar_kernel(kind: ScalarKernelKind | KernelKind, lam: float, t: float, u: float, v: float) -> float:
    """Heat kernel of -d^2/du^2 + lambda^2 on the line or half-line at (t; u, v)."""
    tag = kind.tag if isinstance(kind, ScalarKernelKind) else kind
    if not t > 0.0:
        raise ValueError("t must be positive")
    damp = math.exp(-lam * lam * t)
    direct = _gauss(u - v, t)
    if tag is KernelKind.FREE_LINE:
        return damp * direct
    image = _gauss(u + v, t)
    if tag is KernelKind.DIRICHLET_HALF_LINE:
        return damp * (direct - image)
    if tag is KernelKind.NEUMANN_HALF_LINE:
        return damp * (direct + image)
    return damp * (direct + image) - _robin_correction(lam, t, u + v)


def mode_pair_kernels(bc: PairKind | str, lam: float) -> tuple[ScalarKernelKind, ScalarKernelKind]:
    """Scalar kernels of the (phi, G phi) components at the cut for a pair condition."""
    if isinstance(bc, str):
        bc = {"chiral+": PairKind.CHIRAL_PLUS, "chiral-": PairKind.CHIRAL_MINUS, "aps": PairKind.APS_RIGHT,
              "aps>": PairKind.APS_RIGHT}[bc]
    D = ScalarKernelKind(KernelKind.DIRICHLET_HALF_LINE)
    N = ScalarKernelKind(KernelKind.NEUMANN_HALF_LINE)
    if bc is PairKind.CHIRAL_PLUS:
        return D, N
    if bc is PairKind.CHIRAL_MINUS:
        return N, D
    return D, ScalarKernelKind(KernelKind.APS_ROBIN_HALF_LINE, lam)


def _diag_integral(kind: ScalarKernelKind, lam: float, t: float, lo: float, hi: float) -> float:
    return integrate(lambda u: scalar_kernel(kind, lam, t, u, u), lo, hi,
                     epsabs=1e-16, epsrel=1e-13, what="kernel diagonal")


def pair_diagonal_trace(bc: PairKind | str, lam: float, t: float, R: float) -> tuple[float, float]:
    """int_0^R of each scalar kernel diagonal of the pair (no tangential trace factor)."""
    k1, k2 = mode_pair_kernels(bc, lam)
    return _diag_integral(k1, lam, t, 0.0, R), _diag_integral(k2, lam, t, 0.0, R)


def chiral_boundary_identity(spec: TangentialSpectrum, t: float, R: float) -> tuple[float, float]:
    """Sum of the four chiral diagonal integrals over [0, R], against (4 pi t)^{-1/2} 2R Tr_Y.

    Both chiral pieces contribute a Dirichlet and a Neumann component per mode,
    so the image terms cancel exactly and only the free part survives.
    """
    if not (t > 0.0 and R > 0.0):
        raise ValueError("t and R must be positive")
    terms = []
    for lam_i, m_i in zip(spec.lam, spec.mult):
        if lam_i * lam_i * t > 745.0:
            break
        for bc in (PairKind.CHIRAL_PLUS, PairKind.CHIRAL_MINUS):
            a, b = pair_diagonal_trace(bc, float(lam_i), t, R)
            terms += [m_i * a, m_i * b]
    lhs = math.fsum(terms)
    rhs = 2.0 * R / math.sqrt(4.0 * math.pi * t) * heat_trace_Y(spec, t)
    return lhs, rhs


def interval_trace_from_kernels(bc_left: str, bc_right: str, lam: float, length: float, t: float) -> float:
    """Heat trace of an interval problem assembled from two half-line kernels.

    Each half of the interval sees only its own end; the neglected paths that
    bounce off both ends are O(exp(-length^2 / (4 t))).
    """
    table = {"D": KernelKind.DIRICHLET_HALF_LINE, "N": KernelKind.NEUMANN_HALF_LINE,
             "R+": KernelKind.APS_ROBIN_HALF_LINE}
    half = 0.5 * length
    return math.fsum(_diag_integral(ScalarKernelKind(table[e], lam), lam, t, 0.0, half)
                     for e in (bc_left, bc_right))


# ---------------------------------------------------------------- T-split, S, g_R


def _require(term: str, s, bound: float, strip: str):
    if not complex(s).real > bound:
        raise OutsideConvergenceStrip(term, s, strip)


def _rgamma(z: complex) -> complex:
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        return 0j
    return 1.0 / complex(specfun.gamma(z))


def _out(val: complex, s):
    return complex(val) if isinstance(s, complex) else float(complex(val).real)


def t1(spec: TangentialSpectrum, s, phi: CutoffFunction):
    """(4 pi)^{-1/2} int phi * int_0^inf t^{s-3/2} Tr_Y dt by quadrature (Re s > 1)."""
    _require("T1", s, 1.0, "Re(s) > 1")
    val = mellin(lambda t: heat_trace_Y(spec, t) / math.sqrt(t), s, epsabs=_EPSABS_OUTER,
                 epsrel=_EPSREL_OUTER, what="T1")
    return _out(complex(val) * phi.integral() / math.sqrt(4.0 * math.pi), s)


def t1_closed(spec: TangentialSpectrum, s, phi: CutoffFunction):
    """Closed form (4 pi)^{-1/2} (int phi) Gamma(s - 1/2) zeta_{B^2}(s - 1/2); continues T1."""
    z = complex(s)
    val = phi.integral() / math.sqrt(4.0 * math.pi) * complex(specfun.gamma(z - 0.5)) \
        * complex(zeta_B2(spec, z - 0.5))
    return _out(val, s)


def _weighted_u_integral(spec: TangentialSpectrum, weight, lo: float, hi: float, t: float, power: int) -> float:
    # int_lo^hi weight(u) sum_n m_n lambda_n^power e^{2 lambda_n u} erfc(u/sqrt t + lambda_n sqrt t) du
    lam, mult = spec.lam, spec.mult

    def f(u):
        w = weight(u)
        if w == 0.0:
            return 0.0
        return w * kernels.aps_weight_sum(lam, mult, u, t, power)

    return integrate(f, lo, hi, epsabs=_EPSABS_INNER, epsrel=_EPSREL_INNER, what="u-integral")


def t2(spec: TangentialSpectrum, s, phi: CutoffFunction):
    """1/2 int_0^inf t^{s-1} int phi'(u) sum m e^{2 u lambda} erfc(u/sqrt t + lambda sqrt t) du dt.

    phi' lives on [a, b] where the integrand is <= exp(-a^2/t - lambda^2 t):
    entire in s and O(exp(-2 a lambda_min)).
    """
    if phi.kind is CutoffKind.INDICATOR:
        return _out(0.0, s)

    def inner(t):
        return 0.5 * _weighted_u_integral(spec, phi.deriv, phi.a, phi.b, t, 0)

    return _out(mellin(inner, s, epsabs=_EPSABS_OUTER, epsrel=_EPSREL_OUTER, what="T2"), s)


def _phi_gauss(phi: CutoffFunction, t: float) -> float:
    # int_0^inf phi(u) exp(-u^2/t) du
    rt = math.sqrt(t)
    head = 0.5 * _SQRT_PI * rt * (1.0 - specfun.erfc(phi.a / rt))
    if phi.kind is CutoffKind.INDICATOR:
        return head
    mid = integrate(lambda u: phi.value(u) * math.exp(-u * u / t), phi.a, phi.b,
                    epsabs=_EPSABS_INNER, epsrel=_EPSREL_INNER, what="phi gauss")
    return head + mid


def _one_minus_phi_gauss(phi: CutoffFunction, t: float) -> float:
    # int_0^inf (1 - phi(u)) exp(-u^2/t) du
    rt = math.sqrt(t)
    if phi.kind is CutoffKind.INDICATOR:
        return 0.5 * _SQRT_PI * rt * specfun.erfc(phi.a / rt)
    tail = 0.5 * _SQRT_PI * rt * specfun.erfc(phi.b / rt)
    mid = integrate(lambda u: (1.0 - phi.value(u)) * math.exp(-u * u / t), phi.a, phi.b,
                    epsabs=_EPSABS_INNER, epsrel=_EPSREL_INNER, what="1-phi gauss")
    return tail + mid


def _f2_integral(spec: TangentialSpectrum, s, phi: CutoffFunction):
    # (2 sqrt pi)^{-1} int t^{s-3/2} Tr_Y int phi e^{-u^2/t} du dt
    _require("F2", s, 0.5, "Re(s) > 1/2")
    val = mellin(lambda t: heat_trace_Y(spec, t) * _phi_gauss(phi, t) / math.sqrt(t), s,
                 epsabs=_EPSABS_OUTER, epsrel=_EPSREL_OUTER, what="F2")
    return complex(val) / (2.0 * _SQRT_PI)


def _gamma_quarter(spec: TangentialSpectrum, z: complex) -> complex:
    # Gamma(s + 1/2) / (4 s sqrt pi) zeta_{B^2}(s)
    return complex(specfun.gamma(z + 0.5)) / (4.0 * z * _SQRT_PI) * complex(zeta_B2(spec, z))


def t3(spec: TangentialSpectrum, s, phi: CutoffFunction):
    """Gamma(s+1/2)/(4 s sqrt pi) zeta_{B^2}(s) - (2 sqrt pi)^{-1} int t^{s-3/2} Tr_Y int phi e^{-u^2/t} (Re s > 1/2)."""
    _require("T3", s, 0.5, "Re(s) > 1/2")
    z = complex(s)
    return _out(_gamma_quarter(spec, z) - _f2_integral(spec, s, phi), s)


def s_of_s(spec: TangentialSpectrum, s):
    """S(s) = F(s) zeta_{B^2}(s), F(s) = Gamma(s+1/2)/(4 s sqrt pi) - Gamma(s)/4 (regular at 0)."""
    z = complex(s)
    return _out(complex(specfun.gamma_limit_F(z)) * complex(zeta_B2(spec, z)), s)


def g_R(spec: TangentialSpectrum, s, phi: CutoffFunction):
    """(2 sqrt pi)^{-1} int t^{s-1} Tr_Y int (1 - phi(u)) e^{-u^2/t} du / sqrt(t) dt; entire in s."""
    val = mellin(lambda t: heat_trace_Y(spec, t) * _one_minus_phi_gauss(phi, t) / math.sqrt(t), s,
                 epsabs=_EPSABS_OUTER, epsrel=_EPSREL_OUTER, what="g_R")
    return _out(complex(val) / (2.0 * _SQRT_PI), s)


def t_split(spec: TangentialSpectrum, s, phi: CutoffFunction, continued: bool = False):
    """(T1, T2, T3). Direct integrals by default; ``continued=True`` uses the closed
    T1 and T3 = S + g_R so that any s away from poles is allowed."""
    if continued:
        z = complex(s)
        tt3 = complex(s_of_s(spec, z)) + complex(g_R(spec, z, phi))
        return t1_closed(spec, s, phi), t2(spec, s, phi), _out(tt3, s)
    return t1(spec, s, phi), t2(spec, s, phi), t3(spec, s, phi)


# ---------------------------------------------------------------- appendix integrals

_SMALL_T_SWITCH = 2e-3


def f1(spec: TangentialSpectrum, s, rho: CutoffFunction):
    """F1(s) = int_0^inf t^{s-1} int rho'(u) sum m e^{2 lambda u} erfc(u/sqrt t + lambda sqrt t) du dt (entire)."""
    if rho.kind is CutoffKind.INDICATOR:
        return _out(0.0, s)

    def inner(t):
        return _weighted_u_integral(spec, rho.deriv, rho.a, rho.b, t, 0)

    return _out(mellin(inner, s, epsabs=_EPSABS_OUTER, epsrel=_EPSREL_OUTER, what="F1"), s)


def f2(spec: TangentialSpectrum, s, rho: CutoffFunction):
    """F2(s) = (2 sqrt pi)^{-1} int_0^inf t^{s-3/2} Tr_Y int rho(u) e^{-u^2/t} du dt (Re s > 1/2)."""
    return _out(_f2_integral(spec, s, rho), s)


def f1_bound(spec: TangentialSpectrum, s, rho: CutoffFunction) -> tuple[float, float, float]:
    """(c1, c2, bound) with |F1(s)| <= c1 int t^{Re s - 1} e^{-c2/t} Tr_Y dt.

    On supp rho' one has e^{2 lambda u} erfc(...) <= exp(-u^2/t - lambda^2 t) <= exp(-a^2/t) e^{-lambda^2 t};
    with int |rho'| = 1 this gives c1 = 1/2, c2 = a^2.
    """
    c1 = 0.5
    c2 = rho.a * rho.a
    sig = complex(s).real
    val = mellin(lambda t: math.exp(-c2 / t) * heat_trace_Y(spec, t), sig, epsabs=_EPSABS_OUTER,
                 epsrel=_EPSREL_OUTER, what="F1 bound")
    return c1, c2, c1 * val


def _cyl_diag_u_integral(spec: TangentialSpectrum, rho: CutoffFunction, t: float) -> float:
    # int rho(u) sum m lambda e^{2 lambda u} erfc(u/sqrt t + lambda sqrt t) du
    if t < _SMALL_T_SWITCH:
        # rho = 1 where the integrand lives; the exact half-line integral is
        # sum m (e^{-lambda^2 t} - erfc(lambda sqrt t))/2, error O(exp(-a^2/t))
        return 0.25 * heat_trace_Y(spec, t) - 0.5 * erfc_trace(spec, t)
    head = _weighted_u_integral(spec, lambda u: 1.0, 0.0, rho.a, t, 1)
    if rho.kind is CutoffKind.INDICATOR:
        return head
    return head + _weighted_u_integral(spec, rho.value, rho.a, rho.b, t, 1)


def appendix_lhs(spec: TangentialSpectrum, s, rho: CutoffFunction):
    """int_0^inf t^{s-1} int rho(x) tr E_cyl(t; x, x) dx dt for the positive-projection cylinder.

    Per mode pair the diagonal is (Dirichlet + Robin) = 2 e^{-lambda^2 t} (4 pi t)^{-1/2}
    - lambda e^{2 lambda u} erfc(u/sqrt t + lambda sqrt t); summed over modes.
    """
    _require("appendix lhs", s, 1.0, "Re(s) > 1")
    vol = rho.integral()

    def integrand(t):
        return heat_trace_Y(spec, t) / math.sqrt(4.0 * math.pi * t) * vol - _cyl_diag_u_integral(spec, rho, t)

    return _out(mellin(integrand, s, epsabs=_EPSABS_OUTER, epsrel=_EPSREL_OUTER, what="appendix lhs"), s)


def appendix_rhs(spec: TangentialSpectrum, s, rho: CutoffFunction, parts: dict | None = None):
    """T1(rho) - F2 + Gamma(s+1/2)/(4 s sqrt pi) zeta_{B^2}(s) + F1/2."""
    _require("appendix rhs", s, 1.0, "Re(s) > 1")
    z = complex(s)
    comp = {
        "T1": complex(t1_closed(spec, z, rho)),
        "F2": complex(f2(spec, z, rho)),
        "gamma_term": _gamma_quarter(spec, z),
        "F1": complex(f1(spec, z, rho)),
    }
    if parts is not None:
        parts.update(comp)
    return _out(comp["T1"] - comp["F2"] + comp["gamma_term"] + 0.5 * comp["F1"], s)


def appendix_identity(spec: TangentialSpectrum, s, rho: CutoffFunction):
    return appendix_lhs(spec, s, rho), appendix_rhs(spec, s, rho)


def _fit_heat_constant(spec: TangentialSpectrum) -> tuple[float, float]:
    # least squares of Tr_Y(t) on (t^{-1/2}, 1) over small t
    ts = np.array([1e-4, 2e-4, 5e-4, 1e-3, 2e-3])
    y = np.array([heat_trace_Y(spec, float(t)) for t in ts])
    basis = np.vstack([ts ** -0.5, np.ones_like(ts)]).T
    (c_half, c0), *_ = np.linalg.lstsq(basis, y, rcond=None)
    return float(c_half), float(c0)


def appendix_zeta_at_zero_details(spec: TangentialSpectrum, rho: CutoffFunction) -> dict:
    """Residues at s = 0 of the four cylinder terms, each obtained independently.

    s * T1 -> 0 (T1 regular), s * F1 -> 0 (F1 entire),
    s * Gamma(s+1/2)/(4 s sqrt pi) zeta(s) -> Gamma(1/2) zeta_{B^2}(0) / (4 sqrt pi),
    s * F2 -> c0 / 4 with c0 the constant of the small-t heat-trace fit.
    The cylinder contribution to zeta(0) is the difference of the last two.
    """
    quarter_gamma = specfun.gamma(0.5) / (4.0 * _SQRT_PI) * float(zeta_B2(spec, 0.0))
    c_half, c0 = _fit_heat_constant(spec)
    quarter_heat = 0.25 * c0
    t1_at_0 = float(t1_closed(spec, 0.0, rho))
    f1_at_0 = float(f1(spec, 0.0, rho))
    # regular part of F2 at 0: subtract (sqrt(pi t)/2)(c_half t^{-1/2} + c0) on (0, 1]
    rt_pi = _SQRT_PI

    def rest(t):
        return (heat_trace_Y(spec, t) * _phi_gauss(rho, t)
                - 0.5 * rt_pi * math.sqrt(t) * (c_half / math.sqrt(t) + c0)) / math.sqrt(t)

    small = mellin(rest, 0.0, upper=1.0, epsabs=1e-13, epsrel=1e-9, what="F2 regular part")
    large = mellin(lambda t: heat_trace_Y(spec, t) * _phi_gauss(rho, t) / math.sqrt(t), 0.0, lower=1.0,
                   epsabs=1e-13, epsrel=1e-9, what="F2 regular part")
    # the subtracted c_half piece integrates to (sqrt(pi)/2) c_half / (s - 1/2) on (0, 1]
    f2_regular = (small + large - rt_pi * c_half) / (2.0 * rt_pi)
    return {
        "quarter_gamma": quarter_gamma,
        "quarter_heat": quarter_heat,
        "c_half": c_half,
        "c0": c0,
        "T1_at_0": t1_at_0,
        "F1_at_0": f1_at_0,
        "F2_regular_at_0": f2_regular,
        "zeta_at_zero": quarter_gamma - quarter_heat,
    }


def appendix_zeta_at_zero(spec: TangentialSpectrum, rho: CutoffFunction) -> float:
    """Cylinder contribution to zeta(0) of the positive-projection problem (expected 0)."""
    return appendix_zeta_at_zero_details(spec, rho)["zeta_at_zero"]
