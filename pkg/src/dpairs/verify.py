"""Named verification suites shared by the command line and the test-suite."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .arith import is_fundamental, is_square, kronecker, badesa_factor, factorize
from .bqf import QuadForm, class_representatives, orbit_oracle
from .classnum import ring_class_check
from .pairs import count_by_class, enumerate_pairs, enumerate_pairs_bruteforce
from .pell import fundamental_unit, unit_mul
from .theory import consistency_check, predict_class, split_total_matches
from .volumes import arcsin_constant, definite_volume, indefinite_volume, reassembled_coefficient

SUITES = ("identities", "volumes", "oracle")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: str
    tolerance: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: {self.measured} (tolerance {self.tolerance})"


# -- identities -------------------------------------------------------------------


def nonsquare_ns(limit: int) -> list[int]:
    return [n for n in range(-limit, limit + 1) if n and not is_square(4 * n)]


def fundamental_discriminants(limit: int) -> list[int]:
    return [d for d in range(-limit, limit + 1) if is_fundamental(d)]


def check_consistency(limit: int = 200) -> CheckResult:
    bad = [n for n in nonsquare_ns(limit) if not consistency_check(n)]
    return CheckResult(
        f"total = sum of class predictions, 0 < |n| <= {limit}",
        not bad,
        f"{len(bad)} failures" + (f" (first n={bad[0]})" if bad else ""),
        "rel 1e-9",
    )


def check_ring_class(d_limit: int = 60, f_limit: int = 8) -> CheckResult:
    bad = [
        (d0, f)
        for d0 in fundamental_discriminants(d_limit)
        for f in range(1, f_limit + 1)
        if not ring_class_check(d0, f)
    ]
    return CheckResult(
        f"ring class number formula, |d0| <= {d_limit}, f <= {f_limit}",
        not bad,
        f"{len(bad)} failures",
        "exact",
    )


def badesa_direct(f: int, d0: int) -> Fraction:
    """sum over l | f of l * prod_{p | l} (1 - chi_d0(p)/p), summed directly."""
    total = Fraction(0)
    for l in range(1, f + 1):
        if f % l:
            continue
        term = Fraction(l)
        for p in factorize(l).primes():
            term *= 1 - Fraction(kronecker(d0, p), p)
        total += term
    return total


def check_badesa_lemma(f_limit: int = 2000) -> CheckResult:
    bad = [
        (f, d0)
        for d0 in (-4, -3, 5, 8, -20)
        for f in range(1, f_limit + 1)
        if badesa_direct(f, d0) != badesa_factor(f, d0)
    ]
    return CheckResult(
        f"local factor is multiplicative, f <= {f_limit}", not bad, f"{len(bad)} failures", "exact"
    )


def check_split_class_count(k_limit: int = 10) -> CheckResult:
    counts = {k: len(class_representatives(k * k)) for k in range(1, k_limit + 1)}
    bad = [k for k, v in counts.items() if v != 2 * k or not split_total_matches(k)]
    return CheckResult(
        f"2k classes for discriminant (2k)^2, k <= {k_limit}", not bad, f"{len(bad)} failures", "exact"
    )


def pell_unit_relation_holds(d: int) -> bool:
    u = fundamental_unit(d)
    power = unit_mul((u.eps_x, u.eps_y), (u.eps_x, u.eps_y), d) if u.kappa == 1 else (u.eps_x, u.eps_y)
    return (
        power == (u.t, u.s)
        and u.t * u.t - d * u.s * u.s == 4
        and u.eps_x * u.eps_x - d * u.eps_y * u.eps_y == 4 * u.norm
        and u.kappa == (1 if u.norm == -1 else 2)
    )


def check_pell_units(d_limit: int = 500) -> CheckResult:
    ds = [d for d in range(2, d_limit + 1) if d % 4 in (0, 1) and not is_square(d)]
    bad = [d for d in ds if not pell_unit_relation_holds(d)]
    return CheckResult(
        f"(t + s sqrt d)/2 = eps^(2/kappa), d <= {d_limit}", not bad, f"{len(bad)} failures", "exact"
    )


# -- volumes ----------------------------------------------------------------------

VOLUME_MS = (1e2, 1e3, 1e4)


def check_arcsin_constant() -> CheckResult:
    value = arcsin_constant()
    return CheckResult("arcsin integral", abs(value - 1) <= 1e-9, f"{value:.15f}", "1 +- 1e-9")


def check_volume_ratio(kind: str, M: float) -> CheckResult:
    vol = definite_volume(M) if kind == "definite" else indefinite_volume(M)
    tol = 10 / math.sqrt(M)
    dev = abs(vol.ratio_to_leading - 1)
    return CheckResult(
        f"{kind} region volume ratio at M={M:g}", dev <= tol, f"{vol.ratio_to_leading:.8f}", f"+-{tol:.4g}"
    )


def valid_small_discriminants(limit: int = 200) -> list[int]:
    return [d for d in range(-limit, limit + 1) if d % 4 in (0, 1) and d != 0 and not is_square(d)]


def check_reassembly(limit: int = 200) -> CheckResult:
    # n = d with content 2 has 4n/k^2 = d, so every discriminant is reachable
    worst = 0.0
    for d in valid_small_discriminants(limit):
        want = predict_class(d, 2).coefficient
        got = reassembled_coefficient(d, 2)
        worst = max(worst, abs(got - want) / want)
    return CheckResult(
        f"covolume x volume / (pi^2/6) reproduces class coefficients, |d'| <= {limit}",
        worst <= 1e-9,
        f"max rel err {worst:.2e}",
        "rel 1e-9",
    )


# -- oracle -------------------------------------------------------------------------


def check_enumerators(n_limit: int = 12, Ts=(10, 50, 200)) -> CheckResult:
    bad = []
    for n in range(-n_limit, n_limit + 1):
        if not n:
            continue
        for T in Ts:
            fast = sorted((r.a, r.c) for r in enumerate_pairs(n, T, classify=False))
            slow = sorted((r.a, r.c) for r in enumerate_pairs_bruteforce(n, T, classify=False))
            if fast != slow:
                bad.append((n, T))
    return CheckResult(
        f"fast and brute-force pair sets agree, |n| <= {n_limit}, T in {list(Ts)}",
        not bad,
        f"{len(bad)} mismatches",
        "exact",
    )


def orbit_classify(n: int, T: int) -> Counter:
    """Per-class pair counts, assigning each pair form to a class by orbit search."""
    inventory = class_representatives(n)
    forms = [r.form for r in enumerate_pairs_bruteforce(n, T, classify=False)]
    bound = 4 * max([max(map(abs, f)) for f in forms] + [max(map(abs, lab.canonical)) for lab in inventory])
    owner: dict[QuadForm, object] = {}
    for lab in inventory:
        for f in orbit_oracle(lab.canonical, bound):
            owner[f] = lab
    counts: Counter = Counter()
    for f in forms:
        if f not in owner:
            raise LookupError(f"orbit search with bound {bound} did not reach {f}")
        counts[owner[f]] += 1
    return counts


def check_orbit_classification(n_limit: int = 8, T: int = 50) -> CheckResult:
    bad = []
    for n in range(-n_limit, n_limit + 1):
        if not n:
            continue
        table = count_by_class(n, T)
        ours = {lab: v for lab, v in table.per_class.items() if v}
        if ours != dict(orbit_classify(n, T)):
            bad.append(n)
    return CheckResult(
        f"reduction labels match orbit search, |n| <= {n_limit}, T = {T}",
        not bad,
        f"{len(bad)} mismatches",
        "exact",
    )


SUITE_CHECKS: dict[str, list[Callable[[], CheckResult]]] = {
    "identities": [
        check_consistency,
        check_ring_class,
        check_badesa_lemma,
        check_split_class_count,
        check_pell_units,
    ],
    "volumes": [check_arcsin_constant]
    + [lambda M=M, k=k: check_volume_ratio(k, M) for k in ("definite", "indefinite") for M in VOLUME_MS]
    + [check_reassembly],
    "oracle": [check_enumerators, check_orbit_classification],
}


def run_suite(name: str) -> Iterator[CheckResult]:
    if name not in SUITE_CHECKS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    for check in SUITE_CHECKS[name]:
        yield check()
