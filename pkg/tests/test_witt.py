import itertools
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from wittk.errors import DomainError, UsageError
from wittk.truncation import TruncationSet, p_typical_lengths, p_typical_set, ts_divide, ts_interval
from wittk.witt import (
    GhostVector,
    WittVector,
    compose_components,
    decompose,
    frobenius,
    from_ghost,
    ghost,
    int_to_p_typ,
    p_typ_to_int,
    p_typ_to_int_bruteforce,
    restrict,
    scalar_int,
    teichmuller,
    unit,
    verschiebung,
    witt_neg,
    zero,
)

S2, S3, S4, S12 = ts_interval(2), ts_interval(3), ts_interval(4), ts_interval(12)


def W(S, *coeffs, modulus=0):
    return WittVector.make(S, coeffs, modulus)


# -- worked examples ----------------------------------------------------------------

def test_ghost_examples():
    assert ghost(W(S2, 1, 0)).values == (1, 1)
    assert ghost(W(S2, 2, -1)).values == (2, 2)
    assert ghost(W(S3, 1, 1, 1)).values == (1, 3, 4)


def test_from_ghost_examples():
    assert from_ghost(GhostVector(S2, (2, 2))) == W(S2, 2, -1)
    assert from_ghost(GhostVector(ts_interval(1), (7,))) == W(ts_interval(1), 7)
    with pytest.raises(DomainError):
        from_ghost(GhostVector(S2, (0, 1)))


def test_addition_examples():
    assert W(S2, 1, 0) + W(S2, 1, 0) == W(S2, 2, -1)
    assert W(S2, 1, 0, modulus=2) + W(S2, 1, 0, modulus=2) == W(S2, 0, 1, modulus=2)
    a = W(S4, 3, -2, 5, 1)
    assert a + zero(S4) == a


def test_negation_examples():
    assert -W(ts_interval(1), 5) == W(ts_interval(1), -5)
    assert -W(S2, 1, 0) == W(S2, -1, -1)
    for cs in itertools.product(range(2), repeat=3):
        a = W(S3, *cs, modulus=2)
        assert (a + witt_neg(a)).is_zero()


def test_multiplication_examples():
    assert teichmuller(2, S3) * teichmuller(3, S3) == teichmuller(6, S3)
    a = W(S4, 3, -2, 5, 1)
    assert a * unit(S4) == a
    assert W(S2, 0, 1) * W(S2, 0, 1) == W(S2, 0, 2)


def test_scalar_examples():
    assert scalar_int(2, W(S2, 1, 0)) == W(S2, 2, -1)
    assert scalar_int(0, W(S4, 1, 2, 3, 4)).is_zero()
    assert scalar_int(3, unit(S2, 2)) == W(S2, 1, 1, modulus=2)
    three = unit(S2, 2) + unit(S2, 2) + unit(S2, 2)
    assert three == W(S2, 1, 1, modulus=2)


def test_teichmuller_examples():
    assert teichmuller(1, S3) == W(S3, 1, 0, 0)
    assert teichmuller(0, S4).is_zero()
    assert ghost(teichmuller(3, S4)).values == (3, 9, 27, 81)


def test_verschiebung_examples():
    assert verschiebung(2, W(ts_interval(1), 7), S2) == W(S2, 0, 7)
    a = W(S4, 1, 2, 3, 4)
    assert verschiebung(1, a, S4) == a
    with pytest.raises(UsageError):
        verschiebung(2, a, S4)


def test_frobenius_examples():
    assert frobenius(2, W(S2, 3, 5)) == W(ts_interval(1), 9 + 10)
    assert frobenius(3, teichmuller(2, S12)) == teichmuller(8, ts_divide(S12, 3))


def test_restrict_examples():
    a = W(S4, 1, 2, 3, 4)
    assert restrict(a, S4) == a
    assert restrict(a, S2) == W(S2, 1, 2)
    with pytest.raises(UsageError):
        restrict(W(S2, 1, 2), S4)


def test_decompose_examples():
    assert decompose(unit(S4, 2), 2) == {1: 1, 3: 1}
    v = verschiebung(3, teichmuller(1, ts_interval(1), 2), S3)
    parts = decompose(v, 2)
    assert parts[1] == 0 and parts[3] != 0


def test_p_typical_examples():
    T = p_typical_set(2, 2)
    assert p_typ_to_int(unit(T, 2)) == 1
    assert p_typ_to_int(W(T, 1, 1, modulus=2)) == 3
    assert p_typ_to_int(W(T, 0, 1, modulus=2)) == 2
    assert int_to_p_typ(1, 2, 2) == unit(T, 2)
    assert int_to_p_typ(3, 2, 2) == W(T, 1, 1, modulus=2)


@pytest.mark.parametrize("p,t", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2)])
def test_p_typical_round_trip_and_bruteforce(p, t):
    T = p_typical_set(p, t)
    for n in range(p**t):
        w = int_to_p_typ(n, p, t)
        assert p_typ_to_int(w) == n
        assert p_typ_to_int_bruteforce(w) == n


def test_decompose_needs_prime_modulus():
    with pytest.raises(DomainError):
        decompose(unit(S4, 4), 2)
    with pytest.raises(DomainError):
        decompose(unit(S4, 4), 4)


def test_modulus_and_set_mismatch():
    with pytest.raises(UsageError):
        W(S2, 1, 0) + W(S3, 1, 0, 0)
    with pytest.raises(UsageError):
        W(S2, 1, 0) + W(S2, 1, 0, modulus=2)
    with pytest.raises(DomainError):
        ghost(W(S2, 1, 0, modulus=3))


def test_json_round_trip():
    a = W(TruncationSet.of([1, 2, 4]), 1, 0, 2, modulus=3)
    assert WittVector.from_json(a.to_json()) == a
    assert a.to_json() == '{"coeffs": [1, 0, 2], "modulus": 3, "set": [1, 2, 4]}'


@pytest.mark.parametrize("p,m", [(2, 4), (3, 3), (2, 6), (5, 2)])
def test_decompose_is_bijective_and_additive(p, m):
    S = ts_interval(m)
    lengths = p_typical_lengths(S, p)
    vecs = [WittVector(S, p, cs) for cs in itertools.product(range(p), repeat=m)]
    images = {}
    for v in vecs:
        parts = decompose(v, p)
        images[v] = tuple(parts[j] for j in lengths)
        assert compose_components(parts, S, p) == v
    assert len(set(images.values())) == p**m
    for a, b in itertools.islice(itertools.product(vecs, repeat=2), 0, None, 7):
        want = tuple((x + y) % p ** lengths[j] for j, x, y in zip(lengths, images[a], images[b]))
        assert images[a + b] == want


# -- properties -----------------------------------------------------------------------

small = st.integers(-6, 6)


def vectors(S):
    return st.lists(small, min_size=len(S), max_size=len(S)).map(lambda cs: WittVector.make(S, cs))


@given(vectors(S12), vectors(S12))
def test_ghost_is_a_ring_map(a, b):
    ga, gb = ghost(a).values, ghost(b).values
    assert ghost(a + b).values == tuple(x + y for x, y in zip(ga, gb))
    assert ghost(a * b).values == tuple(x * y for x, y in zip(ga, gb))
    assert from_ghost(ghost(a)) == a
    assert (a - b) + b == a


@given(st.sampled_from([2, 3, 4, 6]), st.data())
def test_frobenius_verschiebung(n, data):
    x = data.draw(vectors(ts_divide(S12, n)))
    assert frobenius(n, verschiebung(n, x, S12)) == scalar_int(n, x)
    g = ghost(verschiebung(n, x, S12)).values
    gx = ghost(x).values
    T = ts_divide(S12, n)
    assert g == tuple(n * gx[T.index(s // n)] if s % n == 0 else 0 for s in S12)


@given(st.sampled_from([(2, 2), (2, 3), (3, 2), (2, 6), (3, 4)]), st.data())
def test_composition_laws(ab, data):
    a, b = ab
    x = data.draw(vectors(ts_divide(S12, a * b)))
    assert verschiebung(a, verschiebung(b, x, ts_divide(S12, a)), S12) == verschiebung(a * b, x, S12)
    y = data.draw(vectors(S12))
    assert frobenius(a, frobenius(b, y)) == frobenius(a * b, y)


@given(st.sampled_from([(m, n) for m in range(2, 7) for n in range(2, 7) if gcd(m, n) == 1]), st.data())
def test_frobenius_commutes_with_coprime_verschiebung(mn, data):
    m, n = mn
    x = data.draw(vectors(ts_divide(S12, n)))
    assert frobenius(m, verschiebung(n, x, S12)) == verschiebung(n, frobenius(m, x), ts_divide(S12, m))


@given(st.sampled_from([2, 3, 5]), vectors(S12), vectors(S12))
def test_operators_are_homomorphisms(n, a, b):
    assert frobenius(n, a + b) == frobenius(n, a) + frobenius(n, b)
    assert frobenius(n, a * b) == frobenius(n, a) * frobenius(n, b)
    T = ts_divide(S12, n)
    assert restrict(a + b, T) == restrict(a, T) + restrict(b, T)
    assert restrict(a * b, T) == restrict(a, T) * restrict(b, T)
    x, y = restrict(a, T), restrict(b, T)
    assert verschiebung(n, x + y, S12) == verschiebung(n, x, S12) + verschiebung(n, y, S12)


@given(small, small)
def test_teichmuller_multiplicative(c, d):
    assert teichmuller(c * d, S12) == teichmuller(c, S12) * teichmuller(d, S12)


@given(st.sampled_from([2, 3, 4, 6, 9]), st.integers(-5, 5), vectors(S12), vectors(S12))
def test_reduction_commutes(m, n, a, b):
    ra, rb = a.reduce(m), b.reduce(m)
    assert (a + b).reduce(m) == ra + rb
    assert (a * b).reduce(m) == ra * rb
    assert (-a).reduce(m) == -ra
    assert scalar_int(n, a).reduce(m) == scalar_int(n, ra)
    assert frobenius(2, a).reduce(m) == frobenius(2, ra)
    T = ts_divide(S12, 3)
    assert verschiebung(3, restrict(a, T), S12).reduce(m) == verschiebung(3, restrict(ra, T), S12)


@settings(max_examples=50)
@given(st.sampled_from([2, 3]), st.integers(2, 9), st.data())
def test_decompose_additive_random(p, m, data):
    S = ts_interval(m)
    a = WittVector.make(S, data.draw(st.lists(st.integers(0, p - 1), min_size=m, max_size=m)), p)
    b = WittVector.make(S, data.draw(st.lists(st.integers(0, p - 1), min_size=m, max_size=m)), p)
    lengths = p_typical_lengths(S, p)
    da, db, ds = decompose(a, p), decompose(b, p), decompose(a + b, p)
    assert ds == {j: (da[j] + db[j]) % p ** lengths[j] for j in lengths}
