from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from lowslope import snf
from lowslope.surface import get_surface


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def check_form(m):
    u, d, v = snf.smith_normal_form(m)
    assert snf.is_unimodular(u) and snf.is_unimodular(v)
    assert matmul(matmul(u, m), v) == d
    k = min(len(d), len(d[0]))
    for i in range(len(d)):
        for j in range(len(d[0])):
            if i != j:
                assert d[i][j] == 0
    diag = [d[i][i] for i in range(k)]
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)
    return diag


def test_identity():
    assert check_form([[1, 0], [0, 1]]) == [1, 1]


def test_diag_two_zero():
    u, d, v = snf.smith_normal_form([[2, 0], [0, 0]])
    assert d == [[2, 0], [0, 0]]


def test_chain_classes_g3_trivial():
    s = get_surface(3)
    cols = [s.class_of_name(c) for c in s.chain()]
    m = [list(r) for r in zip(*cols)]
    assert check_form(m) == [1] * 6
    assert oracles.invariant_factors(m) == [1] * 6


def test_known_example():
    assert check_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_against_sympy(m):
    diag = check_form(m)
    expect = oracles.invariant_factors(m)
    assert sorted(diag) == sorted(expect)
    assert diag == sorted(diag, key=lambda x: (x == 0, x))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=0, max_size=7))
def test_lattice_basis_spans_same_lattice(vectors):
    basis = snf.lattice_basis(vectors, 4)
    if not vectors or not any(any(v) for v in vectors):
        assert basis == []
        return
    # same lattice iff the stacked matrices have equal nonzero invariant factors and rank
    a = [f for f in oracles.invariant_factors(vectors) if f]
    b = [f for f in oracles.invariant_factors(basis) if f]
    assert a == b and len(b) == len(basis)
    c = [f for f in oracles.invariant_factors(vectors + basis) if f]
    assert c == a
