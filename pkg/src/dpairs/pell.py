"""Fundamental units of real quadratic orders and the Pell-type equation
t^2 - d s^2 = 4.

Units of O_d are written (x + y*sqrt(d)) / 2 with x = y*d (mod 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import is_discriminant, is_square, isqrt

MAX_PERIOD = 10_000_000


class PellError(ArithmeticError):
    pass


@dataclass(frozen=True)
class UnitData:
    d: int
    t: int
    s: int
    eps_x: int
    eps_y: int
    norm: int
    kappa: int
    regulator: float


def _check_d(d: int) -> None:
    if d <= 0 or not is_discriminant(d):
        raise ValueError(f"{d} is not a positive discriminant")
    if is_square(d):
        raise ValueError(f"{d} is a perfect square")


def unit_mul(u: tuple[int, int], v: tuple[int, int], d: int) -> tuple[int, int]:
    """Product of (x1 + y1 sqrt d)/2 and (x2 + y2 sqrt d)/2 in the same coordinates."""
    x1, y1 = u
    x2, y2 = v
    return (x1 * x2 + d * y1 * y2) // 2, (x1 * y2 + x2 * y1) // 2


def unit_pow(u: tuple[int, int], j: int, d: int) -> tuple[int, int]:
    result = (2, 0)
    while j:
        if j & 1:
            result = unit_mul(result, u, d)
        u = unit_mul(u, u, d)
        j >>= 1
    return result


@lru_cache(maxsize=None)
def _fundamental_xy(d: int) -> tuple[int, int]:
    # Continued fraction of w = (delta + sqrt d)/2, tracked exactly as
    # (P + sqrt d)/Q. The period starts at index 1; after one full period the
    # unit is p_{l-1} - q_{l-1} * conj(w).
    delta = d % 2
    r = isqrt(d)
    P, Q = delta, 2
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    first = None
    for i in range(MAX_PERIOD + 2):
        a = (P + r) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        P = a * Q - P
        Q = (d - P * P) // Q
        if i == 0:
            first = (P, Q)
        elif (P, Q) == first:
            # p/q is now the convergent of index i = l (one past the period)
            p_l, q_l = p_prev, q_prev
            x = 2 * p_l - q_l * delta
            y = q_l
            if x * x - d * y * y not in (4, -4):
                raise PellError(f"continued fraction produced a non-unit for d={d}")
            return x, y
    raise PellError(f"continued fraction period of w for d={d} exceeds {MAX_PERIOD}")


def _log_unit(x: int, y: int, d: int) -> float:
    if x < 1 << 50:
        return math.log((x + y * math.sqrt(d)) / 2)
    # eps = x - conj(eps) and |conj(eps)| = 1/eps, negligible against x
    return math.log(x)


@lru_cache(maxsize=None)
def fundamental_unit(d: int) -> UnitData:
    _check_d(d)
    x, y = _fundamental_xy(d)
    norm = (x * x - d * y * y) // 4
    if norm == -1:
        t, s = unit_mul((x, y), (x, y), d)
        kappa = 1
    else:
        t, s = x, y
        kappa = 2
    return UnitData(d, t, s, x, y, norm, kappa, _log_unit(x, y, d))


def pell4_min(d: int) -> tuple[int, int]:
    """Minimal positive (t, s) with t^2 - d s^2 = 4."""
    u = fundamental_unit(d)
    return u.t, u.s


def kappa(d: int) -> int:
    return fundamental_unit(d).kappa


def regulator(d: int) -> float:
    return fundamental_unit(d).regulator


def in_order(x: int, y: int, d0: int, f: int) -> bool:
    """Whether (x + y sqrt d0)/2 lies in the order of discriminant d0 f^2."""
    if y % f:
        return False
    return (x - (y // f) * d0 * f * f) % 2 == 0


@lru_cache(maxsize=None)
def unit_index(d0: int, f: int) -> int:
    """Index [O_{d0}^x : O_{d0 f^2}^x]."""
    if f < 1:
        raise ValueError(f"f must be positive, got {f}")
    if f == 1:
        return 1
    if d0 < 0:
        from .classnum import omega

        return omega(d0) // omega(d0 * f * f)
    eps = _fundamental_xy(d0)
    power = eps
    j = 1
    # the index divides f * prod(1 - chi/p) times the torsion factor, so this cap is generous
    while not in_order(*power, d0, f):
        j += 1
        if j > 4 * f * f + 4:
            raise PellError(f"unit index search for d0={d0}, f={f} did not terminate")
        power = unit_mul(power, eps, d0)
    return j
