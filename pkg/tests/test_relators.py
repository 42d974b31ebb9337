import pytest

import oracles
from lowslope import lattice
from lowslope.expr import Declared, Named
from lowslope.relators import all_relators, relator_library
from lowslope.surface import SurfaceError, get_surface


def test_odd_chain_h1():
    t = relator_library("odd_chain", 3, 1)
    assert t.lhs == (Named("d_2"), Named("e_2"))
    assert len(t.rhs) == 12 and t.delta_n == 10 and t.delta_sigma == -6


@pytest.mark.parametrize("h", range(1, 5))
def test_odd_chain_counts(h):
    t = relator_library("odd_chain", 5, h)
    assert t.delta_n == 4 * h * h + 6 * h
    assert t.delta_sigma == -2 * h * (h + 2)


@pytest.mark.parametrize("h", range(1, 5))
def test_even_chain_counts(h):
    t = relator_library("even_chain", 5, h)
    assert t.lhs == (Named(f"s_{h}"),)
    assert len(t.rhs) == 2 * h * (4 * h + 2)
    assert t.delta_sigma == -4 * h * (h + 1) + 1


def test_hyperelliptic_length():
    for g in range(2, 9):
        t = relator_library("hyperelliptic", g)
        assert len(t.rhs) == 8 * g + 4 and t.lhs == () and t.delta_sigma == -4 * (g + 1)


def test_lantern_template():
    t = relator_library("lantern", 3)
    assert (t.delta_n, t.delta_sigma) == (1, -1)
    s = get_surface(3)
    assert [s.homology(x) for x in t.rhs] == [
        lattice.combination(3, x1=1),
        lattice.combination(3, x2=1),
        lattice.combination(3, x3=1),
        lattice.combination(3, x1=-1, x2=-1, x3=-1),
    ]


def test_lantern_commuting_transvection_identity():
    """sum <v,a_i> a_i equals the same sum over x, y, z for every basis v."""
    g = 3
    t = oracles.curve_table(g)
    for i in range(2 * g):
        v = oracles.sympy.zeros(2 * g, 1)
        v[i] = 1
        left = sum((oracles.pair(v, t[a], g) * t[a] for a in ("a_1", "a_2", "a_3", "a_4")), oracles.sympy.zeros(2 * g, 1))
        right = sum((oracles.pair(v, t[a], g) * t[a] for a in ("x", "y", "z")), oracles.sympy.zeros(2 * g, 1))
        assert left == right


@pytest.mark.parametrize("g", range(2, 7))
def test_every_template_is_identity_on_homology(g):
    for t in all_relators(g):
        assert t.homology_identity(), t.label
        assert t.closed_product() == lattice.identity(2 * g), t.label


@pytest.mark.parametrize("g", [3, 4])
def test_templates_against_sympy(g):
    tab = oracles.curve_table(g)
    for h in range(1, g):
        t = relator_library("odd_chain", g, h)
        lhs = oracles.ordered_product([tab[str(x)] if str(x) in tab else tab[f"e_{g}"] for x in t.lhs], g)
        rhs = oracles.ordered_product([tab[str(x)] for x in t.rhs], g)
        assert lhs == rhs
    h = oracles.ordered_product([tab[n] for n in oracles.hyperelliptic_names(g)], g)
    assert h == oracles.sympy.eye(2 * g)


def test_parameter_bounds():
    with pytest.raises(SurfaceError):
        relator_library("odd_chain", 3, 3)
    with pytest.raises(SurfaceError):
        relator_library("odd_chain", 3, 0)
    with pytest.raises(SurfaceError):
        relator_library("lantern", 2)
    with pytest.raises(SurfaceError):
        relator_library("braid", 3)


def test_conjugated_template_still_identity():
    t = relator_library("odd_chain", 4, 1).conjugated(Declared("psi"))
    assert t.homology_identity()
    assert t.lhs[0] != Named("d_2")


def test_label():
    assert relator_library("odd_chain", 4, 2).label == "odd_chain(h=2)"
    assert relator_library("lantern", 4).label == "lantern"
