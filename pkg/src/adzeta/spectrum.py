"""Positive spectrum {lambda_n, m_n} of the tangential operator B.

The full spectrum of B is {+lambda_n, -lambda_n}, each with multiplicity m_n
(eigensections phi_n and G phi_n), so every trace or zeta value below carries
an explicit factor 2 relative to the positive half.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels, specfun
from .errors import ConfigError, ContinuationUnavailable, NonPositiveEigenvalue, PoleAt, TruncationInsufficient
from .quadrature import mellin

__all__ = [
    "Arithmetic",
    "ExplicitList",
    "TangentialSpectrum",
    "make_spectrum",
    "preset",
    "PRESETS",
    "load_spectrum_file",
    "parse_spectrum_text",
    "scaled",
    "union",
    "heat_trace_Y",
    "heat_tail_bound",
    "heat_trace_remainder",
    "small_t_terms",
    "zeta_B2",
    "zeta_B2_mellin",
    "zeta_B2_direct",
    "zeta_B2_deriv0",
    "zeta_B2_at_0",
    "regularized_count",
    "erfc_trace",
]

POISSON_SWITCH_T = 0.1
DEFAULT_CUTOFF = 10_000
_TAIL_REL = 1e-13


@dataclass(frozen=True)
class Arithmetic:
    """lambda_n = alpha * n + beta for n >= 1, each with multiplicity ``multiplicity``."""

    alpha: float
    beta: float
    multiplicity: int = 1

    @property
    def offset(self) -> float:
        # zeta_H argument: lambda_n = alpha (n - 1 + offset)
        return 1.0 + self.beta / self.alpha

    @property
    def poisson_ok(self) -> bool:
        r = self.beta / self.alpha
        return r == 0.0 or r == -0.5


@dataclass(frozen=True)
class ExplicitList:
    """A finite list of eigenvalues; treated as the whole positive spectrum."""


@dataclass(frozen=True, eq=False)
class TangentialSpectrum:
    lam: np.ndarray
    mult: np.ndarray
    family: Arithmetic | ExplicitList
    cutoff_count: int
    name: str = field(default="custom")

    def __post_init__(self):
        self.lam.setflags(write=False)
        self.mult.setflags(write=False)

    @property
    def entries(self) -> list[tuple[float, int]]:
        return [(float(a), int(b)) for a, b in zip(self.lam, self.mult)]

    @property
    def lambda_min(self) -> float:
        return float(self.lam[0])

    @property
    def is_arithmetic(self) -> bool:
        return isinstance(self.family, Arithmetic)

    def head(self, count: int) -> "TangentialSpectrum":
        """Explicit spectrum made of the first ``count`` entries."""
        count = min(count, len(self.lam))
        return TangentialSpectrum(self.lam[:count].copy(), self.mult[:count].copy(), ExplicitList(), count,
                                  f"{self.name}[:{count}]")

    def __repr__(self) -> str:
        return f"TangentialSpectrum({self.name!r}, family={self.family!r}, n={len(self.lam)})"


def make_spectrum(family, params, cutoff_count: int = DEFAULT_CUTOFF, name: str | None = None) -> TangentialSpectrum:
    """Build a validated spectrum.

    ``family`` is ``"arithmetic"`` (params: mapping with alpha, beta and an
    optional multiplicity) or ``"explicit"`` (params: iterable of
    (lambda, multiplicity) pairs), or an :class:`Arithmetic` instance.
    """
    if cutoff_count < 1:
        raise ValueError("cutoff_count must be >= 1")
    if isinstance(family, Arithmetic) or family == "arithmetic":
        fam = family if isinstance(family, Arithmetic) else Arithmetic(
            float(params["alpha"]), float(params["beta"]), int(params.get("multiplicity", 1)))
        if fam.alpha <= 0.0:
            raise ValueError("alpha must be positive")
        if fam.alpha + fam.beta <= 0.0:
            raise NonPositiveEigenvalue(fam.alpha + fam.beta, "first arithmetic eigenvalue")
        if fam.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")
        n = np.arange(1, cutoff_count + 1, dtype=float)
        lam = fam.alpha * n + fam.beta
        mult = np.full(cutoff_count, float(fam.multiplicity))
        return TangentialSpectrum(lam, mult, fam, cutoff_count,
                                  name or f"arithmetic({fam.alpha:g},{fam.beta:g})")
    if family != "explicit":
        raise ValueError(f"unknown spectrum family {family!r}")
    merged: dict[float, int] = {}
    for i, (lam_i, m_i) in enumerate(params):
        lam_i = float(lam_i)
        if not lam_i > 0.0:
            raise NonPositiveEigenvalue(lam_i, f"entry {i + 1}")
        if int(m_i) != m_i or m_i < 1:
            raise ValueError(f"entry {i + 1}: multiplicity must be a positive integer")
        merged[lam_i] = merged.get(lam_i, 0) + int(m_i)
    if not merged:
        raise ValueError("explicit spectrum is empty")
    keys = sorted(merged)
    lam = np.array(keys, dtype=float)
    mult = np.array([merged[k] for k in keys], dtype=float)
    return TangentialSpectrum(lam, mult, ExplicitList(), len(keys), name or "explicit")


PRESETS = {
    "integer": Arithmetic(1.0, 0.0, 1),
    "half-integer": Arithmetic(1.0, -0.5, 1),
}


def preset(name: str, cutoff_count: int = DEFAULT_CUTOFF) -> TangentialSpectrum:
    if name not in PRESETS:
        raise KeyError(f"unknown spectrum preset {name!r}; known: {sorted(PRESETS)}")
    return make_spectrum(PRESETS[name], None, cutoff_count, name=name)


def parse_spectrum_text(text: str, source: str = "<text>") -> TangentialSpectrum:
    """Two columns per line (lambda multiplicity); '#' starts a comment."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split()
        if len(cols) != 2:
            raise ConfigError(f"{source}: expected 'lambda multiplicity'", line=lineno, field="spectrum")
        try:
            lam_i = float(cols[0])
            m_i = int(cols[1])
        except ValueError as exc:
            raise ConfigError(f"{source}: {exc}", line=lineno, field="spectrum") from None
        if not lam_i > 0.0:
            raise NonPositiveEigenvalue(lam_i, f"{source} line {lineno}")
        pairs.append((lam_i, m_i))
    return make_spectrum("explicit", pairs, name=os.path.basename(source))


def load_spectrum_file(path: str) -> TangentialSpectrum:
    with open(path, encoding="utf-8") as fh:
        return parse_spectrum_text(fh.read(), source=path)


def scaled(spec: TangentialSpectrum, factor: int) -> TangentialSpectrum:
    """Same eigenvalues, multiplicities multiplied by ``factor``."""
    fam = spec.family
    if isinstance(fam, Arithmetic):
        fam = Arithmetic(fam.alpha, fam.beta, fam.multiplicity * factor)
    return TangentialSpectrum(spec.lam.copy(), spec.mult * factor, fam, spec.cutoff_count,
                              f"{factor}x{spec.name}")


def union(a: TangentialSpectrum, b: TangentialSpectrum) -> TangentialSpectrum:
    """Disjoint union of two explicit spectra (multiplicities add on coincidences)."""
    if a.is_arithmetic or b.is_arithmetic:
        raise ValueError("union is only defined for explicit spectra")
    return make_spectrum("explicit", a.entries + b.entries, name=f"{a.name}+{b.name}")


# ---------------------------------------------------------------- heat trace


def heat_tail_bound(spec: TangentialSpectrum, t: float, count: int | None = None) -> float:
    """Bound on 2 * sum_{n > count} m_n exp(-lambda_n^2 t) for the materialized spectrum."""
    fam = spec.family
    if not isinstance(fam, Arithmetic):
        return 0.0
    n = spec.cutoff_count if count is None else count
    x = (fam.alpha * n + fam.beta) * math.sqrt(t)
    return 2.0 * fam.multiplicity * specfun.SQRT_PI / (2.0 * fam.alpha * math.sqrt(t)) * specfun.erfc(x)


def _poisson_images(fam: Arithmetic, t: float) -> list[float]:
    a2t = fam.alpha * fam.alpha * t
    r = fam.beta / fam.alpha
    out = []
    k = 1
    while True:
        g = math.exp(-math.pi * math.pi * k * k / a2t)
        if g == 0.0 or g < 1e-18:
            return out
        out.append(2.0 * g * (1.0 if r == 0.0 else (-1.0) ** k))
        k += 1


def _poisson_one_sided(fam: Arithmetic, t: float) -> float:
    a2t = fam.alpha * fam.alpha * t
    pref = specfun.SQRT_PI / (fam.alpha * math.sqrt(t))
    r = fam.beta / fam.alpha
    terms = [1.0]
    k = 1
    while True:
        g = math.exp(-math.pi * math.pi * k * k / a2t)
        if g == 0.0 or g < 1e-18:
            break
        terms.append(2.0 * g * (1.0 if r == 0.0 else (-1.0) ** k))
        k += 1
    two_sided = pref * specfun.compensated_sum(terms)
    return (two_sided - 1.0) / 2.0 if r == 0.0 else two_sided / 2.0


def heat_trace_Y(spec: TangentialSpectrum, t: float) -> float:
    """Tr_Y exp(-t B^2) = 2 sum_n m_n exp(-lambda_n^2 t)."""
    if not t > 0.0:
        raise ValueError("t must be positive")
    fam = spec.family
    if isinstance(fam, Arithmetic) and t < POISSON_SWITCH_T and fam.poisson_ok:
        return 2.0 * fam.multiplicity * _poisson_one_sided(fam, t)
    val = 2.0 * kernels.heat_sum(spec.lam, spec.mult, t)
    tail = heat_tail_bound(spec, t)
    if tail > _TAIL_REL * (val + 1.0):
        raise TruncationInsufficient(
            f"heat trace at t={t:g}: tail bound {tail:.2e} with {spec.cutoff_count} entries")
    return val


def heat_trace_remainder(spec: TangentialSpectrum, t: float) -> float:
    """Tr_Y minus its small-t terms, without cancellation where Poisson applies."""
    fam = spec.family
    if isinstance(fam, Arithmetic) and t < POISSON_SWITCH_T and fam.poisson_ok:
        pref = specfun.SQRT_PI / (fam.alpha * math.sqrt(t))
        return fam.multiplicity * pref * specfun.compensated_sum(_poisson_images(fam, t) or [0.0])
    return heat_trace_Y(spec, t) - sum(c * t ** e for e, c in small_t_terms(spec))


def small_t_terms(spec: TangentialSpectrum) -> list[tuple[float, float]]:
    """Small-t expansion of Tr_Y as [(exponent, coefficient)], up to an O(t) or exponentially small rest.

    Arithmetic: c t^{-1/2} + zeta_{B^2}(0) with c = m sqrt(pi)/alpha.
    Explicit (finite) list: the constant Tr_Y(0) = 2 sum m_n.
    """
    fam = spec.family
    if isinstance(fam, Arithmetic):
        c_half = fam.multiplicity * specfun.SQRT_PI / fam.alpha
        c0 = -fam.multiplicity * (1.0 + 2.0 * fam.beta / fam.alpha)
        return [(-0.5, c_half), (0.0, c0)]
    return [(0.0, 2.0 * float(np.sum(spec.mult)))]


# ---------------------------------------------------------------- zeta_{B^2}


def _is_real(s) -> bool:
    return not isinstance(s, complex)


def zeta_B2(spec: TangentialSpectrum, s):
    """zeta_{B^2}(s) = 2 sum_n m_n lambda_n^{-2s}, analytically continued."""
    fam = spec.family
    if isinstance(fam, Arithmetic):
        z = complex(s)
        if z == 0.5:
            raise PoleAt(s, "zeta_B2")
        val = 2.0 * fam.multiplicity * complex(specfun.hurwitz_zeta(2.0 * z, fam.offset)) \
            * np.exp(-2.0 * z * math.log(fam.alpha))
        return val.real if _is_real(s) else complex(val)
    return zeta_B2_mellin(spec, s)


def zeta_B2_direct(spec: TangentialSpectrum, s, count: int | None = None):
    """Partial sum 2 sum_{n<=count} m_n lambda_n^{-2s} (exact for explicit lists)."""
    n = len(spec.lam) if count is None else count
    z = complex(s)
    logs = np.log(spec.lam[:n])
    terms = 2.0 * spec.mult[:n] * np.exp(-2.0 * z * logs)
    val = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return val.real if _is_real(s) else val


def _large_t_part(spec: TangentialSpectrum, s) -> complex:
    # int_1^inf t^{s-1} Tr_Y dt = 2 sum m lambda^{-2s} Gamma(s, lambda^2)
    z = complex(s)
    terms = []
    for lam_i, m_i in zip(spec.lam, spec.mult):
        x = lam_i * lam_i
        if x > 60.0 + abs(z):
            break
        g = complex(specfun.incomplete_gamma_upper(z, x))
        terms.append(2.0 * m_i * g * np.exp(-2.0 * z * math.log(lam_i)))
    return complex(specfun.compensated_sum(terms)) if terms else 0j


def zeta_B2_mellin(spec: TangentialSpectrum, s):
    """Mellin-split continuation of zeta_{B^2}.

    (1/Gamma(s)) [ int_0^1 t^{s-1}(Tr_Y - sum c_e t^e) dt + sum c_e/(s+e) + int_1^inf t^{s-1} Tr_Y dt ].
    For explicit lists only the constant is subtracted, so the supported strip is Re s > -1.
    """
    z = complex(s)
    terms = small_t_terms(spec)
    if not spec.is_arithmetic and z.real <= -1.0:
        raise ContinuationUnavailable(f"explicit spectrum: Re(s) = {z.real} outside Re(s) > -1")
    for e, _ in terms:
        if z + e == 0 and e != 0.0:
            raise PoleAt(s, "zeta_B2")
    if z == 0:
        # 1/Gamma(s) kills everything except the constant term
        return dict(terms).get(0.0, 0.0) if _is_real(s) else complex(dict(terms).get(0.0, 0.0))
    if _is_nonpositive_int(z):
        raise ContinuationUnavailable(f"s = {s} not supported by the Mellin route")

    def rest(t):
        return heat_trace_Y(spec, t) - sum(c * t ** e for e, c in terms)

    small = mellin(rest, s, upper=1.0, what="zeta_B2 small-t")
    poles = sum(c / (z + e) for e, c in terms)
    total = complex(small) + poles + _large_t_part(spec, s)
    val = total / complex(specfun.gamma(z))
    return val.real if _is_real(s) else val


def _is_nonpositive_int(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def zeta_B2_deriv0(spec: TangentialSpectrum) -> float:
    """d/ds zeta_{B^2}(s) at s = 0."""
    fam = spec.family
    if isinstance(fam, Arithmetic):
        a = fam.offset
        return 2.0 * fam.multiplicity * (-2.0 * math.log(fam.alpha) * (0.5 - a)
                                         + 2.0 * specfun.hurwitz_zeta_deriv0(a))
    # finite list: termwise derivative of 2 sum m lambda^{-2s}
    return -4.0 * math.fsum(spec.mult * np.log(spec.lam))


def zeta_B2_at_0(spec: TangentialSpectrum) -> float:
    return float(zeta_B2(spec, 0.0))


def regularized_count(spec: TangentialSpectrum) -> float:
    """zeta_{B^2}(0)/2: the regularized number of positive-eigenvalue mode pairs."""
    return 0.5 * zeta_B2_at_0(spec)


def _ierfc(y: float) -> float:
    # int_y^inf erfc
    return math.exp(-y * y) / specfun.SQRT_PI - y * specfun.erfc(y)


def _erfc_sum_em(fam: Arithmetic, t: float) -> float:
    # Euler-Maclaurin for sum_{n>=1} erfc(c n + d), c = alpha sqrt(t), d = beta sqrt(t)
    c = fam.alpha * math.sqrt(t)
    y = c + fam.beta * math.sqrt(t)
    gauss = 2.0 / specfun.SQRT_PI * math.exp(-y * y)
    terms = [_ierfc(y) / c, 0.5 * specfun.erfc(y)]
    herm = [1.0, 2.0 * y]
    for k in range(1, 16):
        herm.append(2.0 * y * herm[k] - 2.0 * k * herm[k - 1])
    fact = 2.0
    for j, b in enumerate(specfun._BERNOULLI_EVEN[:8], start=1):
        k = 2 * j - 1
        deriv = -(c ** k) * gauss * herm[k - 1]  # (-1)^k with k odd
        terms.append(-b / fact * deriv)
        fact *= (2 * j + 1) * (2 * j + 2)
    return fam.multiplicity * specfun.compensated_sum(terms)


def erfc_trace(spec: TangentialSpectrum, t: float) -> float:
    """sum_n m_n erfc(lambda_n sqrt(t)).

    Direct summation, or Euler-Maclaurin in n for arithmetic families once
    alpha sqrt(t) < 0.2 (where direct sums need ~30/sqrt(t) terms).
    """
    fam = spec.family
    if isinstance(fam, Arithmetic) and fam.alpha * math.sqrt(t) < 0.2:
        return _erfc_sum_em(fam, t)
    if isinstance(fam, Arithmetic) and spec.lam[-1] * math.sqrt(t) < 27.3:
        raise TruncationInsufficient(f"erfc trace at t={t:g}: {spec.cutoff_count} entries too few")
    return kernels.erfc_sum(spec.lam, spec.mult, t)


def iter_modes(spec: TangentialSpectrum, lam_max: float | None = None) -> Iterable[tuple[float, float]]:
    for lam_i, m_i in zip(spec.lam, spec.mult):
        if lam_max is not None and lam_i > lam_max:
            break
        yield float(lam_i), float(m_i)
