"""Enumeration and class-wise counting of D(n)-pairs {a, c}, |a|, |c| <= T.

A pair is owned by its larger element a: for m = |a| the square roots
B = sqrt(ac + n) run over the residues r with r^2 = n (mod m), and
c = (B^2 - n) / a is then forced. This visits each pair exactly once.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator

from .arith import SPFSieve, crt_combine, is_square, isqrt, sqrt_mod_prime_power
from .bqf import (
    SPLIT,
    ClassInventory,
    ClassLabel,
    Classifier,
    QuadForm,
    class_label,
    class_representatives,
    discriminant,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PairRecord:
    a: int
    c: int
    b: int
    class_label: ClassLabel | None = None

    @property
    def form(self) -> QuadForm:
        return QuadForm(self.a, self.b, self.c)


@dataclass
class CountTable:
    n: int
    T: int
    per_class: dict[ClassLabel, int] = field(default_factory=dict)
    total: int = 0

    def merge(self, other: CountTable) -> None:
        for lab, v in other.per_class.items():
            self.per_class[lab] = self.per_class.get(lab, 0) + v
        self.total += other.total


class RootTable:
    """Square roots of a fixed n modulo every m in a sieve's range."""

    def __init__(self, n: int, sieve: SPFSieve):
        self.n = n
        self.sieve = sieve

    def roots(self, m: int) -> list[int]:
        if m == 1:
            return [0]
        n = self.n
        roots, mod = [0], 1
        for p, e in self.sieve.factor_pairs(m):
            part = sqrt_mod_prime_power(n, p, e)
            if not part:
                return []
            q = p**e
            if mod == 1:
                roots = list(part)
            else:
                roots = crt_combine(roots, mod, part, q)
            mod *= q
        return roots


def _ceil_sqrt(x: int) -> int:
    if x <= 0:
        return 0
    r = isqrt(x)
    return r if r * r == x else r + 1


def _pairs_for_modulus(n: int, T: int, m: int, roots: list[int], include_b_zero: bool):
    """(a, c, B) for the pairs whose larger element has |a| = m."""
    out = []
    # a = m > 0: n - Tm <= B^2 < n + m^2, B^2 != n
    lo = _ceil_sqrt(n - T * m)
    top = n + m * m - 1
    hi = isqrt(top) if top >= 0 else -1
    if hi >= lo:
        for r in roots:
            B = lo + (r - lo) % m
            while B <= hi:
                q = B * B - n
                if q != 0 and (B or include_b_zero):
                    out.append((m, q // m, B))
                B += m
    # a = -m < 0: n + m^2 < B^2 <= n + Tm
    lo = _ceil_sqrt(n + m * m + 1)
    top = n + T * m
    hi = isqrt(top) if top >= 0 else -1
    if hi >= lo:
        for r in roots:
            B = lo + (r - lo) % m
            while B <= hi:
                if B or include_b_zero:
                    out.append((-m, (n - B * B) // m, B))
                B += m
    return out


def enumerate_pairs(
    n: int,
    T: int,
    *,
    include_b_zero: bool = True,
    classify: bool = True,
    sieve: SPFSieve | None = None,
) -> Iterator[PairRecord]:
    """Every D(n)-pair {a, c} with a > c and |a|, |c| <= T, once each."""
    if n == 0:
        raise ValueError("n must be nonzero")
    if T < 1:
        raise ValueError(f"T must be positive, got {T}")
    table = RootTable(n, sieve if sieve is not None and sieve.limit >= T else SPFSieve(T))
    for m in range(1, T + 1):
        for a, c, B in _pairs_for_modulus(n, T, m, table.roots(m), include_b_zero):
            form = QuadForm(a, 2 * B, c)
            yield PairRecord(a, c, 2 * B, class_label(form) if classify else None)


def enumerate_pairs_bruteforce(
    n: int, T: int, *, include_b_zero: bool = True, classify: bool = True
) -> Iterator[PairRecord]:
    """Quadratic-time reference enumeration."""
    if n == 0:
        raise ValueError("n must be nonzero")
    values = [v for v in range(-T, T + 1) if v]
    for a in values:
        for c in values:
            if c >= a:
                break
            m = a * c + n
            if m < 0 or not is_square(m):
                continue
            B = isqrt(m)
            if B == 0 and not include_b_zero:
                continue
            form = QuadForm(a, 2 * B, c)
            yield PairRecord(a, c, 2 * B, class_label(form) if classify else None)


# -- counting -------------------------------------------------------------------


def _split_class_c(a: int, B: int, k: int) -> int:
    # [a, 2B, c] with B^2 - ac = k^2 factors as (ax + (B-k)y)(ax + (B+k)y)/a.
    # The isotropic vector (-(k+B), a)/g, completed by (r, s), gives
    # [0, 2k, (g + 2ks)/(a/g)] where (k+B)/g * s = -1 (mod a/g).
    g = gcd(k + B, a)
    y = a // g
    if y == 1 or y == -1:
        s = 0
    else:
        s = -pow((k + B) // g, -1, abs(y))
    return ((g + 2 * k * s) // y) % (2 * k)


_worker_state: dict = {}


def _init_worker(n, T, inventory, include_b_zero, sieve):
    _worker_state.update(
        n=n,
        T=T,
        classifier=Classifier(inventory),
        include_b_zero=include_b_zero,
        table=RootTable(n, sieve),
    )


def _count_range(lo: int, hi: int) -> tuple[Counter, int]:
    st = _worker_state
    n, T, include_b_zero = st["n"], st["T"], st["include_b_zero"]
    classifier: Classifier = st["classifier"]
    table: RootTable = st["table"]
    counts: Counter = Counter()
    total = 0
    if classifier.regime == SPLIT:
        k = classifier.k
        two_k = 2 * k
        split = _split_class_c
        for m in range(lo, hi):
            for a, c, B in _pairs_for_modulus(n, T, m, table.roots(m), include_b_zero):
                counts[(0, two_k, split(a, B, k))] += 1
                total += 1
    else:
        canon = classifier.canonical
        for m in range(lo, hi):
            for a, c, B in _pairs_for_modulus(n, T, m, table.roots(m), include_b_zero):
                counts[canon(a, 2 * B, c)] += 1
                total += 1
    return counts, total


def _chunks(T: int, pieces: int) -> list[tuple[int, int]]:
    step = max(1, -(-T // pieces))
    return [(lo, min(lo + step, T + 1)) for lo in range(1, T + 1, step)]


def count_by_class(
    n: int,
    T: int,
    inventory: ClassInventory | None = None,
    *,
    include_b_zero: bool = True,
    workers: int = 1,
    oracle: bool = False,
    sieve: SPFSieve | None = None,
) -> CountTable:
    """D_T^Q for every class Q of discriminant 4n, and the total D_T^n."""
    if inventory is None:
        inventory = class_representatives(n)
    if inventory.n != n:
        raise ValueError(f"inventory is for n={inventory.n}, not {n}")
    table = CountTable(n, T, {lab: 0 for lab in inventory.classes})
    if oracle:
        for rec in enumerate_pairs_bruteforce(n, T, include_b_zero=include_b_zero):
            if rec.class_label not in table.per_class:
                raise LookupError(f"pair {rec} has a class outside the inventory")
            table.per_class[rec.class_label] += 1
            table.total += 1
        return table

    if sieve is None or sieve.limit < T:
        sieve = SPFSieve(T)
    classifier = Classifier(inventory)
    args = (n, T, inventory, include_b_zero, sieve)
    if workers <= 1:
        _init_worker(*args)
        results = [_count_range(1, T + 1)]
    else:
        chunks = _chunks(T, 8 * workers)
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=args) as pool:
            results = list(pool.map(_count_range, *zip(*chunks)))
    for counts, total in results:
        for canon, v in counts.items():
            lab = classifier.label(canon)
            table.per_class[lab] += v
        table.total += total
    log.debug("n=%d T=%d: %d pairs", n, T, table.total)
    return table


def degenerate_forms_in_class(Q: QuadForm, T: int) -> int:
    """Forms [a, b, c] in the counting box with a = 0 or c = 0 that are
    equivalent to Q; these exist only for square discriminants and have
    no D(n)-pair behind them."""
    d = discriminant(Q)
    if d <= 0 or not is_square(d):
        return 0
    target = class_label(Q)
    b = isqrt(d)
    count = 0
    for a in range(1, T + 1):  # [a, b, 0] with a > 0
        count += class_label(QuadForm(a, b, 0)) == target
    for c in range(-T, 0):  # [0, b, c] with c < 0
        count += class_label(QuadForm(0, b, c)) == target
    return count


def f_count(Q: QuadForm, T: int, table: CountTable | None = None) -> int:
    """Number of forms [a, b, c] ~ Q with |a|, |c| <= T, a > c, b >= 0."""
    d = discriminant(Q)
    if d % 4:
        raise ValueError(f"{Q} does not have discriminant 4n")
    n = d // 4
    if table is None or table.n != n or table.T != T:
        table = count_by_class(n, T)
    lab = class_label(Q)
    return table.per_class.get(lab, 0) + degenerate_forms_in_class(Q, T)
