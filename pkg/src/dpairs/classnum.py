"""Class numbers h(d), narrow class numbers h+(d) and the ring class number formula."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import factorize, is_discriminant, is_square, kronecker
from .bqf import indefinite_cycles, reduced_definite_forms
from .pell import kappa, unit_index


@dataclass(frozen=True)
class ClassData:
    d: int
    h: int
    h_plus: int
    omega: int | None


def _check(d: int) -> None:
    if not is_discriminant(d):
        raise ValueError(f"{d} is not a discriminant")
    if is_square(d):
        raise ValueError(f"{d} is a perfect square; use bqf.canonical_split for that regime")


def omega(d: int) -> int:
    """Order of the SL2(Z)-stabilizer of a primitive definite form of discriminant d."""
    if d >= 0 or not is_discriminant(d):
        raise ValueError(f"omega needs a negative discriminant, got {d}")
    if d == -4:
        return 4
    if d == -3:
        return 6
    return 2


@lru_cache(maxsize=None)
def narrow_class_number(d: int) -> int:
    """Number of proper classes of primitive forms of positive nonsquare discriminant d."""
    _check(d)
    if d < 0:
        raise ValueError(f"narrow class number is defined here for d > 0, got {d}")
    return len(indefinite_cycles(d))


@lru_cache(maxsize=None)
def class_number(d: int) -> int:
    _check(d)
    if d < 0:
        return len(reduced_definite_forms(d))
    h_plus = narrow_class_number(d)
    k = kappa(d)
    if h_plus % k:
        raise ArithmeticError(f"h+({d}) = {h_plus} is not divisible by kappa = {k}")
    return h_plus // k


def class_data(d: int) -> ClassData:
    if d < 0:
        h = class_number(d)
        return ClassData(d, h, h, omega(d))
    return ClassData(d, class_number(d), narrow_class_number(d), None)


def ring_class_rhs(d0: int, f: int) -> Fraction:
    """h(d0) f / [O_d0^x : O_{d0 f^2}^x] * prod_{p | f} (1 - chi_d0(p)/p)."""
    value = Fraction(class_number(d0) * f, unit_index(d0, f))
    for p in factorize(f).primes():
        value *= 1 - Fraction(kronecker(d0, p), p)
    return value


def ring_class_check(d0: int, f: int) -> bool:
    return Fraction(class_number(d0 * f * f)) == ring_class_rhs(d0, f)
