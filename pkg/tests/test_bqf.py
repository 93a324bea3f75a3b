import random

import pytest
from hypothesis import given, settings, strategies as st

from dpairs.bqf import (
    IDENTITY,
    S_GEN,
    QuadForm,
    UnimodularMatrix,
    act,
    canonical_split,
    canonical_split_with_matrix,
    class_label,
    class_representatives,
    discriminant,
    e_form,
    equivalent,
    forms_of_discriminant,
    is_reduced_definite,
    orbit_oracle,
    reduce_definite,
    reduce_indefinite,
    reduce_indefinite_cycle,
    stabilizer_generator,
)
from dpairs.classnum import narrow_class_number, class_number
from dpairs.arith import is_square


def random_sl2(rng, steps=6):
    g = IDENTITY
    gens = [S_GEN, UnimodularMatrix(1, 1, 0, 1), UnimodularMatrix(1, -1, 0, 1)]
    for _ in range(steps):
        g = rng.choice(gens) @ g
    return g


def matrix_oracle(g, Q):
    """g Q g^T with the symmetric matrix of Q scaled by 2 to stay integral."""
    p, q, r, s = g
    M = [[2 * Q.a, Q.b], [Q.b, 2 * Q.c]]
    G = [[p, q], [r, s]]
    GM = [[sum(G[i][k] * M[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    R = [[sum(GM[i][k] * G[j][k] for k in range(2)) for j in range(2)] for i in range(2)]
    assert R[0][1] == R[1][0]
    return QuadForm(R[0][0] // 2, R[0][1], R[1][1] // 2)


@pytest.mark.parametrize("Q, d", [((1, 0, 1), -4), ((2, 2, 1), -4), ((1, 0, -2), 8)])
def test_discriminant(Q, d):
    assert discriminant(QuadForm(*Q)) == d


def test_act_examples():
    Q = QuadForm(3, -5, 7)
    assert act(IDENTITY, Q) == Q
    assert act(UnimodularMatrix(0, -1, 1, 0), Q) == QuadForm(7, 5, 3)
    g = UnimodularMatrix(1, 0, 1, 1)
    assert act(g, QuadForm(1, 0, -2)) == matrix_oracle(g, QuadForm(1, 0, -2)) == QuadForm(1, 2, -1)


def test_act_group_laws():
    rng = random.Random(5)
    for _ in range(1000):
        g1, g2 = random_sl2(rng), random_sl2(rng)
        Q = QuadForm(rng.randint(-30, 30), rng.randint(-30, 30), rng.randint(-30, 30))
        assert act(g1 @ g2, Q) == act(g1, act(g2, Q))
        assert act(IDENTITY, Q) == Q
        assert act(g1, Q) == matrix_oracle(g1, Q)
        R = act(g1, Q)
        assert discriminant(R) == discriminant(Q)
        assert R.content() == Q.content()


@pytest.mark.parametrize(
    "a, c, n, form", [(2, 1, -1, (2, 2, 1)), (3, 1, 1, (3, 4, 1)), (1, -1, 1, (1, 0, -1))]
)
def test_e_form(a, c, n, form):
    Q = e_form(a, c, n)
    assert Q == form
    assert discriminant(Q) == 4 * n


@pytest.mark.parametrize("a, c, n", [(2, 1, 1), (1, 2, -1), (0, -1, 1), (1, 1, 0)])
def test_e_form_rejects(a, c, n):
    with pytest.raises(ValueError):
        e_form(a, c, n)


def test_reduce_definite_examples():
    assert reduce_definite(QuadForm(1, 0, 1)) == (QuadForm(1, 0, 1), IDENTITY)
    assert reduce_definite(QuadForm(2, 2, 3))[0] == QuadForm(2, 2, 3)
    red, g = reduce_definite(QuadForm(5, 4, 1))
    assert red == QuadForm(1, 0, 1)
    assert act(g, QuadForm(5, 4, 1)) == red
    # orbit oracle confirms [5,4,1] ~ [1,0,1]
    assert QuadForm(5, 4, 1) in orbit_oracle(QuadForm(1, 0, 1), 10)


def test_reduce_definite_rejects_indefinite():
    with pytest.raises(ValueError):
        reduce_definite(QuadForm(1, 0, -1))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 200), st.integers(-200, 200), st.integers(1, 200), st.booleans())
def test_reduce_definite_properties(a, b, c, negative):
    if b * b - 4 * a * c >= 0:
        return
    Q = QuadForm(a, b, c)
    if negative:
        Q = -Q
    red, g = reduce_definite(Q)
    assert g.det() == 1
    assert act(g, Q) == red
    assert reduce_definite(red)[0] == red
    assert is_reduced_definite(-red if negative else red)


def test_reduce_indefinite_cycle_examples():
    cyc = reduce_indefinite_cycle(QuadForm(1, 2, -1))
    assert QuadForm(1, 2, -1) in cyc and QuadForm(-1, 2, 1) in cyc
    assert reduce_indefinite_cycle(QuadForm(1, 0, -2)) == cyc
    assert QuadForm(1, 0, -2) in orbit_oracle(QuadForm(1, 2, -1), 10)


def test_reduce_indefinite_matrix():
    rng = random.Random(7)
    for _ in range(300):
        Q = QuadForm(rng.randint(-40, 40), rng.randint(-40, 40), rng.randint(-40, 40))
        d = discriminant(Q)
        if d <= 0 or is_square(d):
            continue
        red, g = reduce_indefinite(Q)
        assert g.det() == 1 and act(g, Q) == red
        assert red in reduce_indefinite_cycle(Q)


@pytest.mark.parametrize("Q", [(1, 2, -1), (1, 3, -1), (1, 1, -1)])
def test_reduce_indefinite_cycle_contains_reduced_start(Q):
    Q = QuadForm(*Q)
    assert Q in reduce_indefinite_cycle(Q)


def test_canonical_split_examples():
    assert canonical_split(QuadForm(0, 2, 0)) == QuadForm(0, 2, 0)
    assert canonical_split(QuadForm(0, 2, 5)) == QuadForm(0, 2, 1)
    # [1,2,0] is found in exactly one of the two candidate orbits
    hits = [c for c in (0, 1) if QuadForm(1, 2, 0) in orbit_oracle(QuadForm(0, 2, c), 20)]
    assert hits == [1]
    assert canonical_split(QuadForm(1, 2, 0)) == QuadForm(0, 2, 1)


def test_canonical_split_matrix():
    for k in range(1, 6):
        for Q in forms_of_discriminant(4 * k * k, 12):
            canon, g = canonical_split_with_matrix(Q)
            assert g.det() == 1 and act(g, Q) == canon
            assert canon.a == 0 and canon.b == 2 * k and 0 <= canon.c < 2 * k


def test_equivalent_examples():
    Q = QuadForm(3, 1, 5)
    assert equivalent(Q, Q)
    assert equivalent(QuadForm(1, 0, 1), QuadForm(2, 2, 1))
    assert not equivalent(QuadForm(1, 0, 1), QuadForm(-1, 0, -1))
    with pytest.raises(ValueError):
        equivalent(QuadForm(1, 2, 1), QuadForm(1, 2, 1))


def orbit_components(d, bound):
    comp = {}
    for f in forms_of_discriminant(d, bound):
        if f not in comp:
            for g in orbit_oracle(f, bound):
                comp[g] = f
    return comp


@pytest.mark.parametrize("n", [n for n in range(-12, 13) if n])
def test_equivalence_agrees_with_orbit_oracle(n):
    comp = orbit_components(4 * n, 200)
    small = list(forms_of_discriminant(4 * n, 20))
    labels = {f: class_label(f) for f in small}
    for f1 in small:
        for f2 in small:
            assert (labels[f1] == labels[f2]) == (comp[f1] == comp[f2]), (f1, f2)
    # spot-check the public predicate on a slice of the pairs
    for f1 in small[:15]:
        for f2 in small:
            assert equivalent(f1, f2) == (comp[f1] == comp[f2])


def test_class_representatives_examples():
    inv = class_representatives(-1)
    assert [str(l) for l in inv] == ["[1,0,1]", "[-1,0,-1]"]
    assert len(class_representatives(1)) == 2
    five = class_representatives(5)
    # disc 20 has a single narrow class (eps_20 = 2 + sqrt 5 has norm -1) and disc 5 has one
    assert narrow_class_number(20) == 1 and narrow_class_number(5) == 1
    assert sorted(l.content for l in five) == [1, 2]


@pytest.mark.parametrize("k", range(1, 11))
def test_square_discriminant_has_2k_classes(k):
    inv = class_representatives(k * k)
    assert len(inv) == 2 * k
    assert {l.canonical for l in inv} == {QuadForm(0, 2 * k, c) for c in range(2 * k)}


@pytest.mark.parametrize("n", [n for n in range(-50, 51) if n and not is_square(4 * n)])
def test_inventory_size_matches_class_numbers(n):
    from dpairs.bqf import valid_contents

    expected = 0
    for k in valid_contents(n):
        d = 4 * n // (k * k)
        expected += 2 * class_number(d) if n < 0 else narrow_class_number(d)
    assert len(class_representatives(n)) == expected


def test_stabilizer_examples():
    assert stabilizer_generator(QuadForm(1, 0, -2)) == UnimodularMatrix(3, 2, 4, 3)
    assert stabilizer_generator(QuadForm(1, 1, -1)) == UnimodularMatrix(1, 1, 1, 2)
    with pytest.raises(ValueError):
        stabilizer_generator(QuadForm(2, 0, -4))
    with pytest.raises(ValueError):
        stabilizer_generator(QuadForm(1, 2, 0))


def right_act(M, Q):
    """M^T Q M, the right action under which the classical matrix is written."""
    p, q, r, s = M
    return act(UnimodularMatrix(p, r, q, s), Q)


def test_classical_matrix_is_transpose():
    # [[3, 4], [2, 3]] fixes [1,0,-2] only under the right action
    classical = UnimodularMatrix(3, 4, 2, 3)
    Q = QuadForm(1, 0, -2)
    assert right_act(classical, Q) == Q
    assert act(classical, Q) != Q
    T0 = stabilizer_generator(Q)
    assert (T0.p, T0.r, T0.q, T0.s) == tuple(classical)


def test_stabilizer_fixes_form():
    count = 0
    for a in range(-10, 11):
        for b in range(-10, 11):
            for c in range(-10, 11):
                Q = QuadForm(a, b, c)
                d = discriminant(Q)
                if d <= 0 or d > 200 or is_square(d) or Q.content() != 1:
                    continue
                T0 = stabilizer_generator(Q)
                assert T0.det() == 1
                assert act(T0, Q) == Q
                count += 1
    assert count > 1000


def test_orbit_oracle_examples():
    orb = orbit_oracle(QuadForm(1, 0, 1), 5)
    assert {QuadForm(1, 0, 1), QuadForm(2, 2, 1), QuadForm(1, 2, 2)} <= orb
    gens = [S_GEN, S_GEN.inverse(), UnimodularMatrix(1, 1, 0, 1), UnimodularMatrix(1, -1, 0, 1)]
    for f in orb:
        for g in gens:
            h = act(g, f)
            if max(map(abs, h)) <= 5:
                assert h in orb
    split = orbit_oracle(QuadForm(1, 0, -1), 10)
    for f in forms_of_discriminant(4, 10):
        assert (f in split) == (canonical_split(f) == canonical_split(QuadForm(1, 0, -1)))
