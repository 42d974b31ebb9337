"""Relators on the standard curve system, with their signature contributions.

Each template is a relation ``lhs = rhs`` between positive words.  The
signature delta is the change of sigma when ``lhs`` is replaced by ``rhs``
(the inverse substitution changes sigma by the negative amount).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import lattice
from .expr import CurveExpr, MapExpr
from .surface import SurfaceError, get_surface
from .words import transvection_product


@dataclass(frozen=True)
class RelatorTemplate:
    name: str
    params: tuple[tuple[str, int], ...]
    genus: int
    lhs: tuple[CurveExpr, ...]
    rhs: tuple[CurveExpr, ...]
    delta_sigma: int

    @property
    def delta_n(self) -> int:
        return len(self.rhs) - len(self.lhs)

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"

    def homology_identity(self) -> bool:
        """Both sides act identically on H_1."""
        s = get_surface(self.genus)
        left = transvection_product([s.homology(x) for x in self.lhs], s.dim)
        right = transvection_product([s.homology(x) for x in self.rhs], s.dim)
        return left == right

    def closed_word(self) -> tuple[CurveExpr, ...]:
        """rhs followed by the formal inverse of lhs, as (curve, exponent) pairs."""
        return tuple((x, 1) for x in self.rhs) + tuple((x, -1) for x in reversed(self.lhs))

    def closed_product(self) -> lattice.Matrix:
        s = get_surface(self.genus)
        out = lattice.identity(s.dim)
        for x, k in self.closed_word():
            t = lattice.transvection(s.homology(x))
            out = lattice.mat_mul(out, t if k == 1 else lattice.symplectic_inverse(t))
        return out

    def conjugated(self, m: MapExpr) -> "RelatorTemplate":
        s = get_surface(self.genus)
        m = s.normalize_map(m)
        return RelatorTemplate(
            self.name,
            self.params,
            self.genus,
            tuple(s.image(m, x) for x in self.lhs),
            tuple(s.image(m, x) for x in self.rhs),
            self.delta_sigma,
        )


def odd_chain_sigma(h: int) -> int:
    return -2 * h * (h + 2)


def even_chain_sigma(h: int) -> int:
    return -4 * h * (h + 1) + 1


def hyperelliptic_sigma(g: int) -> int:
    return -4 * (g + 1)


LANTERN_SIGMA = -1


def hyperelliptic_names(g: int) -> list[str]:
    """C_1 ... C_2g C_{2g+1}^2 C_2g ... C_1, twice."""
    up = [f"c_{j}" for j in range(1, 2 * g + 2)]
    half = up + up[::-1]
    return half + half


def relator_library(name: str, g: int, h: int | None = None) -> RelatorTemplate:
    """Instantiate a relator on the genus-g curve system.

    ``name`` is one of ``lantern``, ``odd_chain``, ``even_chain`` or
    ``hyperelliptic``; the chain relators take ``1 <= h <= g-1``.
    """
    s = get_surface(g)
    if name in ("odd_chain", "even_chain"):
        if h is None or not 1 <= h <= g - 1:
            raise SurfaceError(f"{name} needs 1 <= h <= {g - 1}, got h={h}")
    if name == "lantern":
        if g < 3:
            raise SurfaceError("the lantern configuration needs genus >= 3")
        lhs = [s.named(n) for n in ("x", "y", "z")]
        rhs = [s.named(f"a_{i}") for i in range(1, 5)]
        return RelatorTemplate("lantern", (), g, tuple(lhs), tuple(rhs), LANTERN_SIGMA)
    if name == "odd_chain":
        block = [s.named(f"c_{j}") for j in range(1, 2 * h + 2)]
        lhs = (s.named(f"d_{h + 1}"), s.named(f"e_{h + 1}"))
        return RelatorTemplate("odd_chain", (("h", h),), g, lhs, tuple(block * (2 * h + 2)), odd_chain_sigma(h))
    if name == "even_chain":
        block = [s.named(f"c_{j}") for j in range(1, 2 * h + 1)]
        lhs = (s.named(f"s_{h}"),)
        return RelatorTemplate("even_chain", (("h", h),), g, lhs, tuple(block * (4 * h + 2)), even_chain_sigma(h))
    if name == "hyperelliptic":
        rhs = tuple(s.named(n) for n in hyperelliptic_names(g))
        return RelatorTemplate("hyperelliptic", (), g, (), rhs, hyperelliptic_sigma(g))
    raise SurfaceError(f"unknown relator {name!r}")


def all_relators(g: int) -> list[RelatorTemplate]:
    out = [relator_library("hyperelliptic", g)]
    if g >= 3:
        out.append(relator_library("lantern", g))
    for h in range(1, g):
        out.append(relator_library("odd_chain", g, h))
        out.append(relator_library("even_chain", g, h))
    return out
