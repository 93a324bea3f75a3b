"""Integral binary quadratic forms [a, b, c] = ax^2 + bxy + cy^2 under the
SL2(Z) action g.Q = g Q g^T, with proper-equivalence labels in the definite,
indefinite (nonsquare) and split (square discriminant) regimes."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple

from .arith import is_square, isqrt

DEFINITE = "definite"
INDEFINITE = "indefinite-nonsquare"
SPLIT = "split"


class QuadForm(NamedTuple):
    a: int
    b: int
    c: int

    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def __neg__(self) -> QuadForm:
        return QuadForm(-self.a, -self.b, -self.c)

    def scale(self, k: int) -> QuadForm:
        return QuadForm(k * self.a, k * self.b, k * self.c)

    def divide(self, k: int) -> QuadForm:
        return QuadForm(self.a // k, self.b // k, self.c // k)

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c}]"

    @classmethod
    def parse(cls, text: str) -> QuadForm:
        a, b, c = (int(v) for v in text.strip().strip("[]").split(","))
        return cls(a, b, c)


class UnimodularMatrix(NamedTuple):
    p: int
    q: int
    r: int
    s: int

    def det(self) -> int:
        return self.p * self.s - self.q * self.r

    def __matmul__(self, other: UnimodularMatrix) -> UnimodularMatrix:
        p, q, r, s = self
        P, Q, R, S = other
        return UnimodularMatrix(p * P + q * R, p * Q + q * S, r * P + s * R, r * Q + s * S)

    def inverse(self) -> UnimodularMatrix:
        return UnimodularMatrix(self.s, -self.q, -self.r, self.p)


IDENTITY = UnimodularMatrix(1, 0, 0, 1)
S_GEN = UnimodularMatrix(0, -1, 1, 0)
T_GEN = UnimodularMatrix(1, 1, 0, 1)


def translation(j: int) -> UnimodularMatrix:
    """The matrix sending [a, b, c] to [a, b + 2aj, aj^2 + bj + c]."""
    return UnimodularMatrix(1, 0, j, 1)


def discriminant(Q: QuadForm) -> int:
    return Q.b * Q.b - 4 * Q.a * Q.c


def act(g: UnimodularMatrix, Q: QuadForm) -> QuadForm:
    p, q, r, s = g
    a, b, c = Q
    return QuadForm(
        a * p * p + b * p * q + c * q * q,
        2 * a * p * r + b * (p * s + q * r) + 2 * c * q * s,
        a * r * r + b * r * s + c * s * s,
    )


def e_form(a: int, c: int, n: int) -> QuadForm:
    """The form [a, 2 sqrt(ac + n), c] attached to the D(n)-pair {a, c}."""
    if a == 0 or c == 0:
        raise ValueError("pair elements must be nonzero")
    if a <= c:
        raise ValueError(f"need a > c, got a={a}, c={c}")
    m = a * c + n
    if not is_square(m):
        raise ValueError(f"ac + n = {m} is not a perfect square")
    return QuadForm(a, 2 * isqrt(m), c)


def regime_of_discriminant(d: int) -> str:
    if d < 0:
        return DEFINITE
    if d == 0:
        raise ValueError("degenerate form (discriminant 0)")
    return SPLIT if is_square(d) else INDEFINITE


def ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    """(g, u, v) with u x + v y = g = gcd(x, y) >= 0."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while y:
        q, r = divmod(x, y)
        x, y = y, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if x < 0:
        return -x, -u0, -v0
    return x, u0, v0


def complete_row(x0: int, y0: int) -> UnimodularMatrix:
    """A determinant-one matrix whose first row is the primitive vector (x0, y0)."""
    g, u, v = ext_gcd(x0, y0)
    if g != 1:
        raise ValueError(f"({x0}, {y0}) is not primitive")
    # x0*u + y0*v = 1, so the second row (-v, u) gives det 1
    return UnimodularMatrix(x0, y0, -v, u)


# -- definite ----------------------------------------------------------------


def _gauss_reduce(a: int, b: int, c: int) -> tuple[int, int, int]:
    # positive definite only; no matrix tracking (hot path)
    while True:
        if b > a or b <= -a:
            j = (a - b) // (2 * a)
            c = a * j * j + b * j + c
            b = b + 2 * a * j
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return a, b, c


def reduce_definite(Q: QuadForm) -> tuple[QuadForm, UnimodularMatrix]:
    """Gauss-reduced representative and g with act(g, Q) equal to it."""
    d = discriminant(Q)
    if d >= 0:
        raise ValueError(f"{Q} is not definite")
    if Q.a < 0:
        red, g = reduce_definite(-Q)
        return -red, g
    g = IDENTITY
    a, b, c = Q
    while True:
        if b > a or b <= -a:
            j = (a - b) // (2 * a)
            g = translation(j) @ g
            c = a * j * j + b * j + c
            b = b + 2 * a * j
        if a > c or (a == c and b < 0):
            g = S_GEN @ g
            a, b, c = c, -b, a
            continue
        return QuadForm(a, b, c), g


def is_reduced_definite(Q: QuadForm) -> bool:
    a, b, c = Q
    if a <= 0 or discriminant(Q) >= 0:
        return False
    if not (abs(b) <= a <= c):
        return False
    return b >= 0 if (abs(b) == a or a == c) else True


# -- indefinite, nonsquare discriminant ---------------------------------------


def _rho_b(b: int, c: int, s: int) -> int:
    # the b' = -b (mod 2|c|) in the normalizing window; s = isqrt(d)
    ac = abs(c)
    m = 2 * ac
    if ac > s:
        lo = -ac + 1
    else:
        lo = s - m + 1
    return lo + (-b - lo) % m


def _rho(a: int, b: int, c: int, d: int, s: int) -> tuple[int, int, int]:
    b2 = _rho_b(b, c, s)
    return c, b2, (b2 * b2 - d) // (4 * c)


def is_reduced_indefinite(Q: QuadForm, d: int | None = None) -> bool:
    a, b, _ = Q
    if d is None:
        d = discriminant(Q)
    s = isqrt(d)
    return 0 < b <= s and 2 * abs(a) + b > s and 2 * abs(a) - b <= s


def _is_reduced(a: int, b: int, s: int) -> bool:
    aa = 2 * abs(a)
    return 0 < b <= s and aa + b > s and aa - b <= s


def _reduce_indefinite_fast(a: int, b: int, c: int, d: int, s: int) -> tuple[int, int, int]:
    while not _is_reduced(a, b, s):
        a, b, c = _rho(a, b, c, d, s)
    return a, b, c


def rho(Q: QuadForm) -> tuple[QuadForm, UnimodularMatrix]:
    """Right neighbour: [c, b', c'] with b' = -b mod 2c, and the matrix used."""
    a, b, c = Q
    d = discriminant(Q)
    b2 = _rho_b(b, c, isqrt(d))
    j = (b2 + b) // (2 * c)
    return QuadForm(c, b2, (b2 * b2 - d) // (4 * c)), translation(j) @ S_GEN


def _check_indefinite(Q: QuadForm) -> int:
    d = discriminant(Q)
    if d <= 0 or is_square(d):
        raise ValueError(f"{Q} does not have positive nonsquare discriminant")
    return d


def reduce_indefinite(Q: QuadForm) -> tuple[QuadForm, UnimodularMatrix]:
    d = _check_indefinite(Q)
    g = IDENTITY
    steps = 0
    while not is_reduced_indefinite(Q, d):
        Q, h = rho(Q)
        g = h @ g
        steps += 1
        if steps > 10_000 + 4 * max(map(abs, Q)).bit_length():
            raise RuntimeError(f"indefinite reduction of {Q} did not terminate")
    return Q, g


def _cycle_from_reduced(a: int, b: int, c: int, d: int, s: int) -> list[tuple[int, int, int]]:
    start = (a, b, c)
    cyc = [start]
    cur = _rho(a, b, c, d, s)
    while cur != start:
        cyc.append(cur)
        cur = _rho(*cur, d, s)
    return cyc


def reduce_indefinite_cycle(Q: QuadForm) -> tuple[QuadForm, ...]:
    """The rho-cycle of reduced forms properly equivalent to Q, rotated to
    start at its lexicographically least member."""
    d = _check_indefinite(Q)
    s = isqrt(d)
    red = _reduce_indefinite_fast(*Q, d, s)
    cyc = _cycle_from_reduced(*red, d, s)
    i = cyc.index(min(cyc))
    return tuple(QuadForm(*f) for f in cyc[i:] + cyc[:i])


# -- split (square discriminant) ----------------------------------------------


def _split_reduce(a: int, b: int, c: int, k: int) -> tuple[int, UnimodularMatrix]:
    # Send a primitive zero vector to (1, 0); of the two isotropic lines
    # exactly one yields middle coefficient +2k.
    two_k = 2 * k
    if a == 0:
        zeros = [(1, 0), (-c, b)]
    else:
        zeros = [(two_k - b, 2 * a), (-two_k - b, 2 * a)]
    for x0, y0 in zeros:
        g0 = gcd(x0, y0)
        x0 //= g0
        y0 //= g0
        m = complete_row(x0, y0)
        p, q, r, s = m
        b2 = 2 * a * p * r + b * (p * s + q * r) + 2 * c * q * s
        if b2 == two_k:
            c2 = a * r * r + b * r * s + c * s * s
            j = -(c2 // two_k)
            return c2 % two_k, translation(j) @ m
    raise AssertionError(f"no isotropic line gave +2k for {(a, b, c)}")


def canonical_split(Q: QuadForm) -> QuadForm:
    """The representative [0, 2k, c0], 0 <= c0 < 2k, of Q's class."""
    return canonical_split_with_matrix(Q)[0]


def canonical_split_with_matrix(Q: QuadForm) -> tuple[QuadForm, UnimodularMatrix]:
    d = discriminant(Q)
    if d <= 0 or not is_square(d):
        raise ValueError(f"{Q} does not have positive square discriminant")
    k = isqrt(d) // 2
    c0, g = _split_reduce(*Q, k)
    return QuadForm(0, 2 * k, c0), g


# -- labels and equivalence ----------------------------------------------------


class ClassLabel(NamedTuple):
    canonical: QuadForm
    regime: str

    @property
    def content(self) -> int:
        return self.canonical.content()

    @property
    def signature(self) -> int:
        """+1 / -1 for positive / negative definite classes, 0 otherwise."""
        if self.regime != DEFINITE:
            return 0
        return 1 if self.canonical.a > 0 else -1

    def __str__(self) -> str:
        return str(self.canonical)


def class_label(Q: QuadForm) -> ClassLabel:
    d = discriminant(Q)
    regime = regime_of_discriminant(d)
    if regime == SPLIT:
        return ClassLabel(canonical_split(Q), SPLIT)
    k = Q.content()
    P = Q.divide(k)
    if regime == DEFINITE:
        canon = reduce_definite(P)[0]
    else:
        canon = reduce_indefinite_cycle(P)[0]
    return ClassLabel(canon.scale(k), regime)


def equivalent(Q1: QuadForm, Q2: QuadForm) -> bool:
    """Proper (SL2(Z)) equivalence."""
    d1, d2 = discriminant(Q1), discriminant(Q2)
    if d1 == 0 or d2 == 0:
        raise ValueError("degenerate forms are not supported")
    if d1 != d2 or Q1.content() != Q2.content():
        return False
    return class_label(Q1) == class_label(Q2)


# -- class enumeration -------------------------------------------------------


def reduced_definite_forms(d: int) -> list[QuadForm]:
    """Primitive positive definite Gauss-reduced forms of discriminant d < 0."""
    out = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                out.append(QuadForm(a, b, c))
        a += 1
    return sorted(out)


def reduced_indefinite_forms(d: int) -> list[QuadForm]:
    """All primitive reduced forms of positive nonsquare discriminant d."""
    s = isqrt(d)
    out = []
    for b in range(1, s + 1):
        if (b - d) % 2:
            continue
        N = (b * b - d) // 4  # = a*c < 0
        for a in range(1, -N + 1):
            if 2 * a + b <= s:
                continue
            if 2 * a - b > s:
                break
            if N % a:
                continue
            for sa in (a, -a):
                c = N // sa
                if gcd(gcd(sa, b), c) == 1:
                    out.append(QuadForm(sa, b, c))
    return sorted(out)


def indefinite_cycles(d: int) -> list[tuple[QuadForm, ...]]:
    """The distinct reduced cycles (proper classes) of primitive forms of disc d."""
    s = isqrt(d)
    seen: set[QuadForm] = set()
    cycles = []
    for f in reduced_indefinite_forms(d):
        if f in seen:
            continue
        cyc = _cycle_from_reduced(*f, d, s)
        seen.update(QuadForm(*x) for x in cyc)
        i = cyc.index(min(cyc))
        cycles.append(tuple(QuadForm(*x) for x in cyc[i:] + cyc[:i]))
    return sorted(cycles)


def valid_contents(n: int) -> list[int]:
    """Contents k with k^2 | 4n and 4n/k^2 = 0, 1 (mod 4)."""
    D = 4 * n
    out = []
    k = 1
    while k * k <= abs(D):
        if D % (k * k) == 0 and (D // (k * k)) % 4 in (0, 1):
            out.append(k)
        k += 1
    return out


@dataclass(frozen=True)
class ClassInventory:
    n: int
    classes: tuple[ClassLabel, ...]

    @property
    def regime(self) -> str:
        return regime_of_discriminant(4 * self.n)

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def by_content(self) -> dict[int, list[ClassLabel]]:
        out: dict[int, list[ClassLabel]] = {}
        for lab in self.classes:
            out.setdefault(lab.content, []).append(lab)
        return out


def _sort_key(lab: ClassLabel):
    return (lab.content, -lab.signature, tuple(lab.canonical))


def class_representatives(n: int) -> ClassInventory:
    if n == 0:
        raise ValueError("n must be nonzero")
    D = 4 * n
    regime = regime_of_discriminant(D)
    labels: list[ClassLabel] = []
    if regime == SPLIT:
        two_k = 2 * isqrt(n)
        labels = [ClassLabel(QuadForm(0, two_k, c), SPLIT) for c in range(two_k)]
    else:
        for k in valid_contents(n):
            dk = D // (k * k)
            if regime == DEFINITE:
                for f in reduced_definite_forms(dk):
                    labels.append(ClassLabel(f.scale(k), DEFINITE))
                    labels.append(ClassLabel(-f.scale(k), DEFINITE))
            else:
                for cyc in indefinite_cycles(dk):
                    labels.append(ClassLabel(cyc[0].scale(k), INDEFINITE))
    return ClassInventory(n, tuple(sorted(labels, key=_sort_key)))


# -- stabilizers and orbits ----------------------------------------------------


def stabilizer_generator(Q: QuadForm) -> UnimodularMatrix:
    """The infinite-order generator of the stabilizer of Q under g.Q = g Q g^T.

    The classical matrix [[(t - bs)/2, -cs], [as, (t + bs)/2]] fixes Q under
    Q -> M^T Q M; for the left action used here its transpose is the fixer.
    """
    from .pell import pell4_min

    d = _check_indefinite(Q)
    if Q.content() != 1:
        raise ValueError(f"{Q} is not primitive")
    a, b, c = Q
    t, s = pell4_min(d)
    return UnimodularMatrix((t - b * s) // 2, a * s, -c * s, (t + b * s) // 2)


_GENERATORS = (S_GEN, S_GEN.inverse(), T_GEN, T_GEN.inverse())


def orbit_oracle(Q: QuadForm, coeff_bound: int) -> set[QuadForm]:
    """Forms reachable from Q by generator moves without leaving the box
    max(|a|, |b|, |c|) <= coeff_bound. Slow; ground truth for tests."""
    Q = QuadForm(*Q)
    if max(map(abs, Q)) > coeff_bound:
        return set()
    seen = {Q}
    queue = deque([Q])
    while queue:
        cur = queue.popleft()
        for g in _GENERATORS:
            nxt = act(g, cur)
            if nxt not in seen and max(abs(nxt.a), abs(nxt.b), abs(nxt.c)) <= coeff_bound:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def forms_of_discriminant(d: int, bound: int) -> Iterable[QuadForm]:
    """All forms of discriminant d with coefficients bounded by `bound`."""
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            num = b * b - d
            if a == 0:
                if num == 0:
                    for c in range(-bound, bound + 1):
                        yield QuadForm(0, b, c)
                continue
            if num % (4 * a) == 0:
                c = num // (4 * a)
                if abs(c) <= bound:
                    yield QuadForm(a, b, c)


# -- fast labelling for counting -------------------------------------------------


class Classifier:
    """Maps the form of a pair to the canonical form of its class in an inventory."""

    def __init__(self, inventory: ClassInventory):
        self.inventory = inventory
        self.n = inventory.n
        self.regime = inventory.regime
        self.known = {lab.canonical for lab in inventory.classes}
        if self.regime == SPLIT:
            self.k = isqrt(self.n)
        elif self.regime == INDEFINITE:
            # reduced primitive form -> canonical primitive form, per content
            self.lookup: dict[int, dict[tuple[int, int, int], tuple[int, int, int]]] = {}
            self.roots: dict[int, int] = {}
            for k in valid_contents(self.n):
                dk = 4 * self.n // (k * k)
                table = {}
                for cyc in indefinite_cycles(dk):
                    for f in cyc:
                        table[tuple(f)] = tuple(cyc[0])
                self.lookup[k] = table
                self.roots[k] = isqrt(dk)

    def canonical(self, a: int, b: int, c: int) -> tuple[int, int, int]:
        if self.regime == SPLIT:
            return (0, 2 * self.k, _split_reduce(a, b, c, self.k)[0])
        k = gcd(gcd(a, b), c)
        if k != 1:
            a //= k
            b //= k
            c //= k
        if self.regime == DEFINITE:
            if a > 0:
                ra, rb, rc = _gauss_reduce(a, b, c)
                return (k * ra, k * rb, k * rc)
            ra, rb, rc = _gauss_reduce(-a, -b, -c)
            return (-k * ra, -k * rb, -k * rc)
        d = 4 * self.n // (k * k)
        red = _reduce_indefinite_fast(a, b, c, d, self.roots[k])
        ra, rb, rc = self.lookup[k][red]
        return (k * ra, k * rb, k * rc)

    def label(self, canonical: tuple[int, int, int]) -> ClassLabel:
        form = QuadForm(*canonical)
        if form not in self.known:
            raise LookupError(f"{form} is not in the class inventory for n={self.n}")
        return ClassLabel(form, self.regime)
