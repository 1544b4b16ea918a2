import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from stickelberger.errors import DimensionMismatch, NotASublattice
from stickelberger.lattice import (INFINITE, IntegerLattice, ambient,
                                   bareiss_determinant, contains,
                                   hnf_from_generators, index_in, intersect,
                                   smallest_positive_on_axis, smith_invariants)


def L(rows, n):
    return hnf_from_generators(rows, n)


def test_hnf_examples():
    assert L([(2, 0), (1, 1), (0, 2)], 2).basis == ((1, 1), (0, 2))
    assert L([], 3).rank == 0
    assert L([(0, 0, 0)], 3).rank == 0
    with pytest.raises(DimensionMismatch):
        L([(1, 2)], 3)


def test_index_examples():
    two = L([(2, 0), (0, 2)], 2)
    assert index_in(two, ambient(2)) == 4
    assert index_in(two, two) == 1
    assert index_in(L([(1, 1), (0, 2)], 2), ambient(2)) == 2
    assert index_in(L([(1, 1)], 2), ambient(2)) == INFINITE
    with pytest.raises(NotASublattice):
        index_in(ambient(2), two)


def test_contains_examples():
    M = L([(1, 1), (0, 2)], 2)
    assert contains(M, (1, 3))
    assert contains(M, (0, 0))
    assert not contains(L([(2, 0), (0, 2)], 2), (1, 0))
    assert contains(IntegerLattice(2, ()), (0, 0))


def test_intersect_examples():
    assert intersect(L([(2,)], 1), L([(3,)], 1)).basis == ((6,),)
    M = L([(1, 1), (0, 2)], 2)
    assert intersect(M, ambient(2)) == M
    assert intersect(L([(1, 1)], 2), L([(1, -1)], 2)).rank == 0


def test_smith_examples():
    assert smith_invariants(L([(2, 0), (0, 2)], 2)) == [2, 2]
    assert smith_invariants(L([(1, 1), (0, 2)], 2)) == [1, 2]
    assert smith_invariants(IntegerLattice(1, ())) == [0]


def is_canonical(lat):
    cols = lat.pivot_columns
    if list(cols) != sorted(set(cols)):
        return False
    for r, (row, c) in enumerate(zip(lat.basis, cols)):
        if row[c] <= 0 or any(row[:c]):
            return False
        if any(not 0 <= lat.basis[s][c] < row[c] for s in range(r)):
            return False
    return True


matrices = st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), max_size=7)))


def rational_rank(rows):
    return Matrix(rows).rank() if rows else 0


@settings(max_examples=150)
@given(matrices, st.randoms())
def test_hnf_canonical_and_invariant(nm, rnd):
    n, rows = nm
    lat = L(rows, n)
    assert is_canonical(lat)
    assert lat.rank == rational_rank(rows)
    assert L(lat.basis, n) == lat
    shuffled = rows[:]
    rnd.shuffle(shuffled)
    assert L(shuffled, n) == lat
    if rows:
        coef = [rnd.randint(-3, 3) for _ in rows]
        combo = [sum(c * r[i] for c, r in zip(coef, rows)) for i in range(n)]
        assert L(rows + [combo], n) == lat
    for r in rows:
        assert contains(lat, r)


@settings(max_examples=100)
@given(matrices)
def test_full_rank_index_is_determinant(nm):
    n, rows = nm
    lat = L(rows, n)
    if lat.rank < n:
        return
    idx = index_in(lat, ambient(n))
    # gcd of maximal minors of the generator matrix, via sympy's SNF
    snf = smith_normal_form(Matrix(rows))
    diag = [abs(snf[i, i]) for i in range(n)]
    prod = 1
    for d in diag:
        prod *= d
    assert idx == prod
    invs = smith_invariants(lat)
    assert sorted(invs) == sorted(diag)
    assert all(b % a == 0 for a, b in zip(invs, invs[1:]))


def full_rank_lattice(rnd, n):
    while True:
        rows = [[rnd.randint(-6, 6) for _ in range(n)] for _ in range(n + 1)]
        lat = L(rows, n)
        if lat.rank == n:
            return lat


@pytest.mark.parametrize("seed", range(30))
def test_index_tower(seed):
    rnd = random.Random(seed)
    n = rnd.randint(1, 5)
    L1 = full_rank_lattice(rnd, n)
    extra = [[rnd.randint(-4, 4) for _ in range(n)] for _ in range(n)]
    L2 = L([[sum(e[k] * b[i] for k, b in enumerate(L1.basis)) for i in range(n)]
            for e in extra] + [[3 * x for x in b] for b in L1.basis], n)
    Z = ambient(n)
    assert index_in(L2, Z) == index_in(L2, L1) * index_in(L1, Z)


@pytest.mark.parametrize("seed", range(30))
def test_intersection(seed):
    rnd = random.Random(100 + seed)
    n = rnd.randint(1, 4)
    A = L([[rnd.randint(-5, 5) for _ in range(n)] for _ in range(rnd.randint(0, n + 1))], n)
    B = L([[rnd.randint(-5, 5) for _ in range(n)] for _ in range(rnd.randint(0, n + 1))], n)
    C = intersect(A, B)
    assert is_canonical(C)
    for row in C.basis:
        assert contains(A, row) and contains(B, row)
    # every small vector lying in both lies in the intersection
    for v in product(range(-6, 7), repeat=min(n, 3)):
        v = list(v) + [0] * (n - len(v))
        if contains(A, v) and contains(B, v):
            assert contains(C, v)
    assert intersect(A, B) == intersect(B, A)


def test_smallest_on_axis():
    assert smallest_positive_on_axis(L([(4, 2), (0, 3)], 2)) == 12
    assert smallest_positive_on_axis(L([(2, 1), (0, 3)], 2)) == 6
    assert smallest_positive_on_axis(L([(1, 1)], 2)) is None


@settings(max_examples=60)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(
    st.lists(st.integers(-20, 20), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_sympy(rows):
    assert bareiss_determinant(rows) == Matrix(rows).det()


def test_json_round_trip():
    lat = L([(3, 1, 4), (1, 5, 9), (2, 6, 5)], 3)
    assert IntegerLattice.from_json(lat.to_json()) == lat
