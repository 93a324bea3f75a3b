"""Numerical volumes of the counting regions and the covolume constants
that turn them into per-class counting coefficients."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy import integrate

from .classnum import omega
from .pell import kappa, regulator
from .theory import GAMMA_G


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class RegionVolume:
    M: float
    value: float
    ratio_to_leading: float
    abserr: float


def _quad(f, a, b, *, epsabs, epsrel=1e-12, points=None, limit=500):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, err = integrate.quad(f, a, b, epsabs=epsabs, epsrel=epsrel, points=points, limit=limit)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(f"quadrature on [{a}, {b}] did not converge: {exc}") from exc
    if not math.isfinite(value) or err > epsabs + epsrel * abs(value):
        raise QuadratureError(f"quadrature on [{a}, {b}] error estimate {err:.3g} too large")
    return value, err


def definite_volume(M: float) -> RegionVolume:
    """Hyperbolic area of {sqrt(max(1-y^2,0)) <= x <= sqrt(y(M-y)), 1/M <= y <= M}."""
    if M <= 1:
        raise ValueError(f"M must exceed 1, got {M}")
    tol = 1e-7 * M

    def low(y):
        # sqrt(y(M-y)) - sqrt(1-y^2), rationalised against cancellation at y = 1/M
        top, bot = y * (M - y), 1 - y * y
        return (top - bot) / ((math.sqrt(top) + math.sqrt(bot)) * y * y)

    def high(y):
        return math.sqrt(y * (M - y)) / (y * y)

    # sqrt(y(M-y))/y^2 ~ y^{-3/2}: substitute y = w^-2 on [1, M] to tame the decay
    def high_sub(w):
        y = 1.0 / (w * w)
        return high(y) * 2.0 / (w * w * w)

    v1, e1 = _quad(low, 1.0 / M, 1.0, epsabs=tol / 2, points=[2.0 / M, 10.0 / M])
    v2, e2 = _quad(high_sub, 1.0 / math.sqrt(M), 1.0, epsabs=tol / 2)
    value = v1 + v2
    return RegionVolume(M, value, value / M, e1 + e2)


def indefinite_volume(M: float) -> RegionVolume:
    """(1/2) [u0 pi/2 + int_{u0}^{M} arcsin((M-u)/sqrt(1+u^2)) du], u0 = (M^2-1)/(2M)."""
    if M <= 1:
        raise ValueError(f"M must exceed 1, got {M}")
    u0 = (M * M - 1) / (2 * M)

    def f(u):
        return math.asin(min(1.0, (M - u) / math.sqrt(1 + u * u)))

    tail, err = _quad(f, u0, M, epsabs=1e-9 * M)
    value = 0.5 * (u0 * math.pi / 2 + tail)
    return RegionVolume(M, value, value / (M / 2), err / 2)


def arcsin_constant() -> float:
    """pi/4 + int_{1/2}^{1} arcsin((1-v)/v) dv; the limiting indefinite ratio."""
    tail, _ = _quad(lambda v: math.asin((1 - v) / v), 0.5, 1.0, epsabs=1e-13)
    return math.pi / 4 + tail


@dataclass(frozen=True)
class CovolumeConstants:
    gamma_g: float

    @staticmethod
    def definite_covolume(d: int) -> float:
        return math.pi / omega(d)

    @staticmethod
    def indefinite_covolume(d: int) -> float:
        # 2 log(eps^(2/kappa))
        return 2 * (2 / kappa(d)) * regulator(d)


def covolume_constants() -> CovolumeConstants:
    return CovolumeConstants(GAMMA_G)


def reassembled_coefficient(n: int, k: int) -> float:
    """Per-class coefficient as stabilizer covolume x leading region volume / covol(Gamma\\G)."""
    d = 4 * n // (k * k)
    consts = covolume_constants()
    if n < 0:
        return consts.definite_covolume(d) * (1 / math.sqrt(-n)) / consts.gamma_g
    return consts.indefinite_covolume(d) * (1 / (2 * math.sqrt(n))) / consts.gamma_g
