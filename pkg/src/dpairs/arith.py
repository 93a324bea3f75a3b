"""Exact integer arithmetic: factorization, divisor sums, Kronecker symbol,
discriminant splitting and square roots modulo composite moduli."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt as _isqrt, prod

import numpy as np


def isqrt(m: int) -> int:
    if m < 0:
        raise ValueError(f"isqrt of negative number {m}")
    return _isqrt(m)


def is_square(m: int) -> bool:
    """True for m = r*r with r >= 0 (so 0 counts as a square)."""
    if m < 0:
        return False
    r = _isqrt(m)
    return r * r == m


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if prod(p**e for p, e in self.factors) != self.value:
            raise ValueError("factors do not multiply to value")
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)) or any(e < 1 for _, e in self.factors):
            raise ValueError("malformed factor list")

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


class SPFSieve:
    """Smallest-prime-factor table for 0..limit, read-only after construction."""

    def __init__(self, limit: int):
        self.limit = max(int(limit), 1)
        spf = np.zeros(self.limit + 1, dtype=np.int64)
        spf[1] = 1
        for p in range(2, isqrt(self.limit) + 1):
            if spf[p] == 0:
                block = spf[p * p :: p]
                block[block == 0] = p
                spf[p] = p
        rest = np.nonzero(spf == 0)[0]
        spf[rest[rest >= 2]] = rest[rest >= 2]
        spf.flags.writeable = False
        self._spf = spf
        # plain list for fast scalar indexing in hot loops
        self._spf_list = spf.tolist()

    def __contains__(self, m: int) -> bool:
        return 1 <= m <= self.limit

    def smallest(self, m: int) -> int:
        return self._spf_list[m]

    def factor_pairs(self, m: int) -> list[tuple[int, int]]:
        spf = self._spf_list
        out = []
        while m > 1:
            p = spf[m]
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        return out


def _trial_division(m: int) -> list[tuple[int, int]]:
    out = []
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if m > 1:
        out.append((m, 1))
    return out


def factorize(m: int, sieve: SPFSieve | None = None) -> Factorization:
    if m < 1:
        raise ValueError(f"cannot factor {m}")
    if sieve is not None and m in sieve:
        pairs = sieve.factor_pairs(m)
    else:
        pairs = _trial_division(m)
    return Factorization(m, tuple(pairs))


def sigma1(m: int) -> int:
    if m < 1:
        raise ValueError(f"sigma1 needs a positive argument, got {m}")
    return prod((p ** (e + 1) - 1) // (p - 1) for p, e in factorize(m).factors)


def kronecker(a: int, b: int) -> int:
    """Kronecker symbol (a/b), extending the Jacobi symbol to all integers b."""
    if a == 0 and b == 0:
        raise ValueError("kronecker(0, 0) is undefined")
    if b == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and b % 2 == 0:
        return 0
    result = 1
    if b < 0:
        b = -b
        if a < 0:
            result = -result
    v = (b & -b).bit_length() - 1
    b >>= v
    if v % 2 and a % 8 in (3, 5):
        result = -result
    # b odd and positive: Jacobi symbol
    a %= b
    while a:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                result = -result
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            result = -result
        a %= b
    return result if b == 1 else 0


def is_discriminant(d: int) -> bool:
    return d != 0 and d % 4 in (0, 1)


def _squarefree(m: int) -> bool:
    return m != 0 and all(e == 1 for _, e in factorize(abs(m)).factors)


def is_fundamental(d: int) -> bool:
    if d == 1 or not is_discriminant(d):
        return False
    if d % 4 == 1:
        return _squarefree(d)
    m = d // 4
    return m % 4 in (2, 3) and _squarefree(m)


@dataclass(frozen=True)
class DiscriminantSplit:
    D: int
    d0: int
    f: int


def split_discriminant(D: int) -> DiscriminantSplit:
    """Write D = d0 * f**2 with d0 fundamental."""
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a discriminant")
    if is_square(D):
        raise ValueError(f"{D} is a perfect square")
    sign = -1 if D < 0 else 1
    core, f = sign, 1
    for p, e in factorize(abs(D)).factors:
        f *= p ** (e // 2)
        if e % 2:
            core *= p
    # core is the squarefree kernel; fix up the 2-part to make it a discriminant
    if core % 4 != 1:
        core *= 4
        f //= 2
    return DiscriminantSplit(D, core, f)


def badesa_factor(f: int, d0: int) -> int:
    """prod over p^e || f of sigma1(p^e) - chi_d0(p) sigma1(p^(e-1))."""
    if f < 1:
        raise ValueError(f"f must be positive, got {f}")
    out = 1
    for p, e in factorize(f).factors:
        s_e = (p ** (e + 1) - 1) // (p - 1)
        s_prev = (p**e - 1) // (p - 1)
        out *= s_e - kronecker(d0, p) * s_prev
    return out


# -- square roots modulo m ---------------------------------------------------


def _tonelli_shanks(n: int, p: int) -> int:
    """One square root of a nonzero quadratic residue n modulo an odd prime p."""
    n %= p
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _sqrt_unit_odd(u: int, p: int, e: int) -> list[int]:
    """Roots of x^2 = u mod p^e, p odd, p not dividing u."""
    if kronecker(u % p, p) != 1:
        return []
    x = _tonelli_shanks(u, p)
    pk = p
    for _ in range(1, e):
        pk2 = pk * p
        # Hensel: x <- x - (x^2 - u) / (2x) mod p^(k+1)
        x = (x - (x * x - u) * pow(2 * x, -1, pk2)) % pk2
        pk = pk2
    return sorted({x % pk, (-x) % pk})


def _sqrt_unit_two(u: int, e: int) -> list[int]:
    """Roots of x^2 = u mod 2^e, u odd."""
    if e == 1:
        return [1]
    if e == 2:
        return [1, 3] if u % 4 == 1 else []
    if u % 8 != 1:
        return []
    x = 1
    for k in range(3, e):
        # x^2 = u mod 2^k; fix the next bit
        if (x * x - u) % (1 << (k + 1)):
            x += 1 << (k - 1)
    mod = 1 << e
    half = mod >> 1
    return sorted({x % mod, (-x) % mod, (x + half) % mod, (-x + half) % mod})


@lru_cache(maxsize=None)
def sqrt_mod_prime_power(n: int, p: int, e: int) -> tuple[int, ...]:
    mod = p**e
    n %= mod
    if n == 0:
        step = p ** ((e + 1) // 2)
        return tuple(range(0, mod, step))
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    if v % 2:
        return ()
    h = v // 2
    # x = p^h * y with y^2 = n mod p^(e - v); y is free mod p^(e - h)
    rest = e - v
    base = _sqrt_unit_two(n, rest) if p == 2 else _sqrt_unit_odd(n, p, rest)
    low = p**rest
    high = p ** (e - h)
    ph = p**h
    roots = {(ph * (y + j * low)) % mod for y in base for j in range(high // low)}
    return tuple(sorted(roots))


def crt_combine(r1: list[int], m1: int, r2: tuple[int, ...] | list[int], m2: int) -> list[int]:
    inv = pow(m1, -1, m2)
    m = m1 * m2
    return [(a + m1 * ((b - a) * inv % m2)) % m for a in r1 for b in r2]


def sqrt_mod(n: int, m: int, factorization: Factorization | None = None) -> list[int]:
    """All x in [0, m) with x^2 = n (mod m), ascending."""
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m == 1:
        return [0]
    if factorization is None:
        factorization = factorize(m)
    roots, mod = [0], 1
    for p, e in factorization.factors:
        part = sqrt_mod_prime_power(n, p, e)
        if not part:
            return []
        q = p**e
        roots = crt_combine(roots, mod, part, q)
        mod *= q
    return sorted(roots)
