"""Leading-order predictions for per-class and total counts of D(n)-pairs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import badesa_factor, split_discriminant
from .bqf import DEFINITE, INDEFINITE, SPLIT, class_representatives, regime_of_discriminant
from .classnum import class_number, omega
from .pell import kappa, regulator

LINEAR = "T"
T_LOG_T = "T log T"

# covolume of SL2(Z) in SL2(R) under the normalisation used throughout
GAMMA_G = math.pi**2 / 6


@dataclass(frozen=True)
class Prediction:
    regime: str
    coefficient: float
    growth: str

    def value_at(self, T: float) -> float:
        if self.growth == T_LOG_T:
            return self.coefficient * T * math.log(T)
        return self.coefficient * T


def regime_of(n: int) -> str:
    if n == 0:
        raise ValueError("n must be nonzero")
    return regime_of_discriminant(4 * n)


def _content_discriminant(n: int, k: int) -> int:
    D = 4 * n
    if k < 1 or D % (k * k):
        raise ValueError(f"content {k} does not divide 4n = {D} squarely")
    d = D // (k * k)
    if d % 4 not in (0, 1):
        raise ValueError(f"4n/k^2 = {d} is not a discriminant")
    return d


def predict_class(n: int, k: int) -> Prediction:
    """Leading term of the number of pairs whose form lies in a given class of content k."""
    regime = regime_of(n)
    d = _content_discriminant(n, k)
    if regime == DEFINITE:
        coef = 6 / (omega(d) * math.pi * math.sqrt(-n))
        return Prediction(regime, coef, LINEAR)
    if regime == INDEFINITE:
        coef = 12 * regulator(d) / (kappa(d) * math.pi**2 * math.sqrt(n))
        return Prediction(regime, coef, LINEAR)
    return Prediction(SPLIT, 6 / (math.pi**2 * math.sqrt(n)), T_LOG_T)


def predict_total(n: int) -> Prediction:
    regime = regime_of(n)
    if regime == SPLIT:
        return Prediction(SPLIT, 12 / math.pi**2, T_LOG_T)
    sp = split_discriminant(4 * n)
    local = badesa_factor(sp.f, sp.d0)
    h0 = class_number(sp.d0)
    if regime == DEFINITE:
        coef = 12 * h0 * local / (omega(sp.d0) * math.pi * math.sqrt(-n))
    else:
        coef = 12 * regulator(sp.d0) * h0 * local / (math.pi**2 * math.sqrt(n))
    return Prediction(regime, coef, LINEAR)


def summed_class_coefficient(n: int) -> float:
    return math.fsum(predict_class(n, lab.content).coefficient for lab in class_representatives(n))


def consistency_check(n: int, rel_tol: float = 1e-9) -> bool:
    """Whether the per-class predictions summed over all classes reproduce the total."""
    total = predict_total(n).coefficient
    return math.isclose(summed_class_coefficient(n), total, rel_tol=rel_tol, abs_tol=0.0)


def split_total_matches(k0: int) -> bool:
    """For n = k0^2, the class count times 6/(pi^2 k0) must equal 12/pi^2 exactly."""
    classes = len(class_representatives(k0 * k0))
    # both sides in units of 1/pi^2
    return classes * Fraction(6, k0) == 12
