"""Hypothesis properties of the rewriting operations and the ledger."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from lowslope import lattice
from lowslope.expr import IDENTITY, Declared, Twist
from lowslope.ledger import InvariantLedger, h1_of_fiber_quotient, slope_report
from lowslope.pipelines import closed_form_invariants, hyperelliptic_base, lantern_walk, slope_limit
from lowslope.relators import relator_library
from lowslope.surface import get_surface, matrix_of_map
from lowslope.words import (
    Factorization,
    fiber_sum,
    find_matches,
    global_conjugate,
    hurwitz_move,
    product_matrix,
    substitute,
)

NAMES3 = ["c_1", "c_2", "c_3", "c_4", "c_5", "c_6", "c_7", "d_2", "e_2", "u", "x", "y", "z", "a_1", "a_4"]
words3 = st.lists(st.sampled_from(NAMES3), min_size=2, max_size=40).map(
    lambda ns: Factorization.from_names(3, ns, 0, is_relator=False)
)
maps3 = st.one_of(
    st.sampled_from(["phi1", "phi2", "psi", "phi1_h2", "send[c_1->x]"]).map(Declared),
    st.sampled_from(NAMES3).map(lambda n: Twist(get_surface(3).named(n))),
)


@settings(max_examples=150, deadline=None)
@given(words3, st.lists(st.tuples(st.integers(0, 10**4), st.booleans()), max_size=10))
def test_hurwitz_preserves_everything(w, moves):
    out = w
    for i, right in moves:
        out = hurwitz_move(out, i % (len(out) - 1), "right" if right else "left")
    assert out.ledger == w.ledger
    assert product_matrix(out) == product_matrix(w)
    assert h1_of_fiber_quotient(out) == h1_of_fiber_quotient(w)


@settings(max_examples=100, deadline=None)
@given(words3, maps3)
def test_global_conjugation(w, m):
    out = global_conjugate(w, m)
    assert out.ledger == w.ledger
    a = matrix_of_map(m, 3)
    expect = lattice.mat_mul(lattice.mat_mul(a, product_matrix(w)), lattice.symplectic_inverse(a))
    assert product_matrix(out) == expect
    assert h1_of_fiber_quotient(out) == h1_of_fiber_quotient(w)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.sampled_from(NAMES3), max_size=6),
    st.lists(st.sampled_from(NAMES3), max_size=6),
    st.integers(1, 2),
    st.booleans(),
)
def test_substitute_deltas(pre, post, h, lantern):
    g = 3
    t = relator_library("lantern", g) if lantern else relator_library("odd_chain", g, h)
    for direction, side in (("forward", t.lhs), ("inverse", t.rhs)):
        names = pre + [str(x) for x in side] + post
        w = Factorization.from_names(g, names, 0, is_relator=False)
        out = substitute(w, len(pre), t, direction)
        sign = 1 if direction == "forward" else -1
        assert (out.n - w.n, out.ledger.sigma - w.ledger.sigma) == (sign * t.delta_n, sign * t.delta_sigma)
        assert product_matrix(out) == product_matrix(w)
        assert len(pre) in find_matches(w, t, direction)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 6), st.sampled_from([IDENTITY, Declared("psi"), Declared("phi1")]))
def test_fiber_sum_additivity(g, m):
    a = hyperelliptic_base(g)
    b = fiber_sum(a, a, IDENTITY)
    c = fiber_sum(b, a, m)
    ra, rc = slope_report(a), slope_report(c)
    assert (rc.K2, rc.chi_f) == (3 * ra.K2, 3 * ra.chi_f)
    assert rc.slope == ra.slope
    assert product_matrix(c) == lattice.identity(2 * g)


@given(st.integers(2, 12), st.integers(0, 2000), st.integers(-2000, 0))
def test_report_identities(g, n, sigma):
    led = InvariantLedger(g, n, sigma)
    if led.four_chi_h % 4 or led.four_chi_f <= 0:
        return
    r = slope_report(led)
    assert r.e == 4 - 4 * g + n
    assert r.c1_squared == 3 * sigma + 2 * r.e
    assert r.K2 == r.c1_squared + 8 * (g - 1)
    assert 4 * r.chi_h == sigma + r.e and r.chi_f == r.chi_h + g - 1
    assert r.slope == Fraction(r.K2, r.chi_f)


@given(st.integers(3, 9), st.integers(1, 8), st.integers(1, 4))
def test_closed_form_approach(g, h, r):
    if h >= g:
        return
    lim = slope_limit(h)
    gaps = [closed_form_invariants(4 * g - 4, g, r, h, n).slope - lim for n in range(10)]
    assert len({(x > 0) - (x < 0) for x in gaps}) == 1
    for a, b in zip(gaps, gaps[1:]):
        assert abs(b) < abs(a) or a == b == 0


@settings(max_examples=20, deadline=None)
@given(st.integers(3, 6), st.sampled_from(["c_1", "c_2", "c_4"]))
def test_lantern_walk_chi_matches_fiber_sum(g, c):
    w = hyperelliptic_base(g)
    for d in ("down", "up"):
        res = lantern_walk(w, c, d)
        assert res.after.chi_f == res.fiber_sum.chi_f
        assert (res.after.slope < res.before.slope) == (d == "down")
